#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "eberlein/error.hpp"
#include "eberlein/matrix.hpp"

namespace eberlein {

/// Complex plane rotation
///
///     [  cos(phi)                -exp(i alpha) sin(phi) ]
///     [  exp(-i alpha) sin(phi)   cos(phi)              ]
///
/// with phi in (-pi/4, pi/4] and alpha in (-pi, pi].
struct RotationParams {
    double phi = 0.0;
    double alpha = 0.0;
};

/// Angles annihilating the off-diagonal entry of the Hermitian 2x2 matrix
/// [[b_pp, b_pq], [conj(b_pq), b_qq]] under R^* B R.
RotationParams jacobi_rotation_2x2(double b_pp, cplx b_pq, double b_qq);

/// The 2x2 rotation matrix for `params`.
Matrix rotation_matrix(const RotationParams& params);

struct UnitaryStageResult {
    Matrix r_core;                       // unitary, r_core^* H r_core diagonal
    std::vector<double> diag;            // diagonal of r_core^* H r_core, in column order
    std::vector<std::size_t> permutation;  // column j of r_core is column permutation[j] of the Jacobi output
    int sweeps_used = 0;
};

/// Cyclic Jacobi failed to reach its tolerance; carries the best iterate.
class JacobiConvergenceFailure : public ConvergenceFailure {
public:
    JacobiConvergenceFailure(const std::string& what, UnitaryStageResult best)
        : ConvergenceFailure(what), best_(std::move(best)) {}
    const UnitaryStageResult& best() const noexcept { return best_; }

private:
    UnitaryStageResult best_;
};

inline constexpr double kDefaultInnerJacobiTol = 1e-14;
inline constexpr int kDefaultInnerJacobiSweeps = 30;

/// Row-cyclic complex Jacobi on a Hermitian matrix. Sweeps until
/// off(r^* H r) <= tol * ||H||_F. The permutation is the identity; see ubc_permute.
UnitaryStageResult diagonalize_hermitian_core(const Matrix& h, double tol = kDefaultInnerJacobiTol,
                                              int max_sweeps = kDefaultInnerJacobiSweeps);

/// Smallest singular value of a square matrix (via Jacobi on M^* M).
double sigma_min(const Matrix& m);

/// Smallest singular value of the leading `rows` x `rows` block of u(:, cols).
double leading_block_sigma_min(const Matrix& u, std::size_t rows, const std::vector<std::size_t>& cols);

/// Column permutation P making the leading n_p x n_p block of u P well
/// conditioned: greedy volume-maximizing column selection, kept only if it
/// beats the identity on sigma_min of that block. Returns (u P, P) with
/// P given as the list of source columns.
std::pair<Matrix, std::vector<std::size_t>> ubc_permute(const Matrix& u, std::size_t n_p, std::size_t n_q);

}  // namespace eberlein
