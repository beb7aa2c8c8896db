#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "eberlein/matrix.hpp"
#include "eberlein/partition.hpp"

namespace eberlein {

/// Unimodular hyperbolic shear on the plane (r, s):
///
///     S = [  cosh(psi)                  -i exp(i beta) sinh(psi) ]
///         [  i exp(-i beta) sinh(psi)    cosh(psi)               ]
///
/// det S = 1, and S^{-1} flips the sign of both off-diagonal entries.
struct ShearParams {
    double beta = 0.0;
    double psi = 0.0;
    double tanh_psi = 0.0;
};

/// Quantities entering the shear angle formulas for the pair (r, s).
struct ShearAuxiliaries {
    cplx d;       // a_rr - a_ss
    cplx t;       // (a_rs + a_sr) cos(beta) - i (a_rs - a_sr) sin(beta)
    double v = 0; // squared norm of rows/columns r, s outside the 2x2 pivot
    double w = 0; // -Re(xi) sin(beta) + Im(xi) cos(beta)
    cplx xi;      // 2 sum_{i != r,s} (a_ri conj(a_si) - conj(a_ir) a_is)
    cplx c;       // C(A)_rs
};

struct ShearStageResult {
    Matrix s_core;      // product of the inner shears, dimension n_p + n_q
    Matrix s_core_inv;  // product of the closed-form inverses, in reverse order
    Matrix a_next;      // S^{-1} A S; left empty by the in-place variant
    double norm_reduction = 0.0;
    std::size_t inner_steps = 0;
    double sum_c_squared = 0.0;      // sum over inner steps of |c_rs|^2 before each shear
    double sum_c_abs = 0.0;          // sum over inner steps of |c_rs|
    std::vector<double> step_deltas; // per inner step ||A_l||^2 - ||A_{l+1}||^2
};

/// Global index pairs (r, s), r < s, of the strict upper triangle of the
/// pivot submatrix for blocks (p, q), in lexicographic order. There are
/// L = (n_p + n_q)(n_p + n_q - 1)/2 of them.
std::vector<std::pair<std::size_t, std::size_t>> enumerate_inner_pairs(const BlockPartition& partition, std::size_t p,
                                                                        std::size_t q);

ShearAuxiliaries shear_auxiliaries(const Matrix& a, std::size_t r, std::size_t s, double beta);

/// tanh(psi) from the auxiliaries; 0 when the denominator vanishes.
double tanh_psi_from(const ShearAuxiliaries& aux);

/// Angles of the norm-reducing shear for (r, s). `a_norm_sq` is an upper bound
/// for ||A||_F^2 used only by the skip threshold; pass a negative value to
/// have it computed.
ShearParams shear_angles(const Matrix& a, std::size_t r, std::size_t s, double a_norm_sq = -1.0);

Matrix shear_matrix(const ShearParams& params);
Matrix shear_matrix_inverse(const ShearParams& params);

/// ||A||_F^2 - ||S^{-1} A S||_F^2 without modifying A. O(n).
double shear_delta(const Matrix& a, std::size_t r, std::size_t s, const ShearParams& params);

/// In-place A <- S^{-1} A S on rows/columns r, s. Returns the norm reduction.
double apply_shear_inplace(Matrix& a, std::size_t r, std::size_t s, const ShearParams& params);

/// Value-returning form of apply_shear_inplace.
std::pair<Matrix, double> apply_shear(const Matrix& a, std::size_t r, std::size_t s, const ShearParams& params);

/// Runs `sweeps` passes over the inner pairs of the pivot strip `idx` (global
/// indices of blocks p then q), updating A in place. norm_reduction is the sum
/// of the step deltas; a_next is left empty.
ShearStageResult shear_stage_inplace(Matrix& a, std::span<const std::size_t> idx, double a_norm_sq, int sweeps = 1);

/// One pass (or `sweeps` passes) of inner shears on the pivot strip of (p, q).
/// norm_reduction is ||A||_F^2 - ||a_next||_F^2 from full norms.
ShearStageResult compute_shear_block(const Matrix& a, const BlockPartition& partition, std::size_t p, std::size_t q,
                                     int sweeps = 1);

}  // namespace eberlein
