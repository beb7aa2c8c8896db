#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace eberlein {

using cplx = std::complex<double>;

/// Dense square complex matrix, row-major.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t n) : n_(n), data_(n * n) {}
    Matrix(std::size_t n, std::vector<cplx> row_major);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const cplx> d);

    std::size_t dim() const noexcept { return n_; }
    bool empty() const noexcept { return n_ == 0; }

    cplx& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }

    std::span<cplx> row(std::size_t i) noexcept { return {data_.data() + i * n_, n_}; }
    std::span<const cplx> row(std::size_t i) const noexcept { return {data_.data() + i * n_, n_}; }

    std::span<cplx> data() noexcept { return data_; }
    std::span<const cplx> data() const noexcept { return data_; }

    std::vector<cplx> column(std::size_t j) const;
    std::vector<cplx> diag() const;

    Matrix adjoint() const;
    cplx trace() const;
    double frobenius_norm() const;
    double frobenius_norm_squared() const;
    bool all_finite() const;

    /// Principal submatrix on the given (ordered) index set.
    Matrix submatrix(std::span<const std::size_t> idx) const;

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(cplx s);

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<cplx> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(cplx s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);

/// y = A x
std::vector<cplx> multiply(const Matrix& a, std::span<const cplx> x);

double norm2(std::span<const cplx> v);

/// Largest |a_ij - b_ij|.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Inverse by Gaussian elimination with partial pivoting. Throws NumericalFailure if singular.
Matrix inverse(const Matrix& a);

/// Determinant via LU with partial pivoting.
cplx determinant(const Matrix& a);

}  // namespace eberlein
