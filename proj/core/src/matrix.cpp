#include "eberlein/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "eberlein/error.hpp"

namespace eberlein {

Matrix::Matrix(std::size_t n, std::vector<cplx> row_major) : n_(n), data_(std::move(row_major)) {
    if (data_.size() != n * n) {
        throw InvalidArgument("Matrix: expected " + std::to_string(n * n) + " entries, got " +
                              std::to_string(data_.size()));
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(std::span<const cplx> d) {
    Matrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

std::vector<cplx> Matrix::column(std::size_t j) const {
    std::vector<cplx> c(n_);
    for (std::size_t i = 0; i < n_; ++i) c[i] = (*this)(i, j);
    return c;
}

std::vector<cplx> Matrix::diag() const {
    std::vector<cplx> d(n_);
    for (std::size_t i = 0; i < n_; ++i) d[i] = (*this)(i, i);
    return d;
}

Matrix Matrix::adjoint() const {
    Matrix r(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

cplx Matrix::trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
}

double Matrix::frobenius_norm_squared() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return s;
}

double Matrix::frobenius_norm() const { return std::sqrt(frobenius_norm_squared()); }

bool Matrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

Matrix Matrix::submatrix(std::span<const std::size_t> idx) const {
    Matrix s(idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = 0; b < idx.size(); ++b) s(a, b) = (*this)(idx[a], idx[b]);
    return s;
}

Matrix& Matrix::operator+=(const Matrix& other) {
    if (other.n_ != n_) throw InvalidArgument("Matrix +=: dimension mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
    if (other.n_ != n_) throw InvalidArgument("Matrix -=: dimension mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

Matrix& Matrix::operator*=(cplx s) {
    for (auto& z : data_) z *= s;
    return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(cplx s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
    const std::size_t n = a.dim();
    if (b.dim() != n) throw InvalidArgument("Matrix *: dimension mismatch");
    Matrix c(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto ci = c.row(i);
        for (std::size_t k = 0; k < n; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            auto bk = b.row(k);
            for (std::size_t j = 0; j < n; ++j) ci[j] += aik * bk[j];
        }
    }
    return c;
}

std::vector<cplx> multiply(const Matrix& a, std::span<const cplx> x) {
    if (x.size() != a.dim()) throw InvalidArgument("multiply: dimension mismatch");
    std::vector<cplx> y(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        cplx s = 0.0;
        auto ai = a.row(i);
        for (std::size_t j = 0; j < a.dim(); ++j) s += ai[j] * x[j];
        y[i] = s;
    }
    return y;
}

double norm2(std::span<const cplx> v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s);
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.dim() != b.dim()) throw InvalidArgument("max_abs_diff: dimension mismatch");
    double m = 0.0;
    auto da = a.data();
    auto db = b.data();
    for (std::size_t k = 0; k < da.size(); ++k) m = std::max(m, std::abs(da[k] - db[k]));
    return m;
}

namespace {

// In-place LU with partial pivoting; returns permutation sign, or 0 if singular.
int lu_decompose(Matrix& a, std::vector<std::size_t>& perm) {
    const std::size_t n = a.dim();
    perm.resize(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(a(i, k)) > best) {
                best = std::abs(a(i, k));
                piv = i;
            }
        }
        if (best == 0.0) return 0;
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            std::swap(perm[k], perm[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx f = a(i, k) / a(k, k);
            a(i, k) = f;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return sign;
}

}  // namespace

Matrix inverse(const Matrix& a) {
    const std::size_t n = a.dim();
    Matrix lu = a;
    std::vector<std::size_t> perm;
    if (lu_decompose(lu, perm) == 0) throw NumericalFailure("inverse: matrix is singular");
    Matrix inv(n);
    std::vector<cplx> x(n);
    for (std::size_t col = 0; col < n; ++col) {
        for (std::size_t i = 0; i < n; ++i) x[i] = perm[i] == col ? 1.0 : 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) x[i] -= lu(i, j) * x[j];
        for (std::size_t i = n; i-- > 0;) {
            for (std::size_t j = i + 1; j < n; ++j) x[i] -= lu(i, j) * x[j];
            x[i] /= lu(i, i);
        }
        for (std::size_t i = 0; i < n; ++i) inv(i, col) = x[i];
    }
    return inv;
}

cplx determinant(const Matrix& a) {
    Matrix lu = a;
    std::vector<std::size_t> perm;
    const int sign = lu_decompose(lu, perm);
    if (sign == 0) return 0.0;
    cplx d = static_cast<double>(sign);
    for (std::size_t i = 0; i < a.dim(); ++i) d *= lu(i, i);
    return d;
}

}  // namespace eberlein
