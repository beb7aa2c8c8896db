#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "eberlein/matrix.hpp"
#include "eberlein/partition.hpp"

namespace eberlein {

/// Block-index pair (p, q), 0-based, p < q.
struct PivotPair {
    std::size_t p = 0;
    std::size_t q = 0;

    friend bool operator==(const PivotPair&, const PivotPair&) = default;
    friend auto operator<=>(const PivotPair&, const PivotPair&) = default;
};

/// Elementary block matrix: identity except on the four blocks at the
/// intersection of block rows/columns p and q, which hold `core`.
struct ElementaryBlockTransform {
    BlockPartition partition;
    PivotPair pivot;
    Matrix core;  // dimension n_p + n_q, block p first
};

/// Global row indices of blocks p and q, block p first. This is the index
/// map from core coordinates to full-matrix coordinates.
std::vector<std::size_t> pivot_indices(const BlockPartition& partition, PivotPair pivot);

Matrix embed(const ElementaryBlockTransform& t);

/// Returns T^{-1} A T with T = embed(t), touching only the pivot rows and columns.
/// Throws InvalidArgument if the dimensions disagree or inverse_core * core is
/// not the identity to 1e-12.
Matrix apply_elementary_similarity(const Matrix& a, const ElementaryBlockTransform& t,
                                   const Matrix& inverse_core);

/// In-place A <- T^{-1} A T on the rows/columns `idx`; no precondition checks.
/// Columns are updated first, then rows.
void apply_similarity_inplace(Matrix& a, std::span<const std::size_t> idx, const Matrix& core,
                              const Matrix& inverse_core);

/// A <- A T restricted to the columns `idx`.
void right_multiply_inplace(Matrix& a, std::span<const std::size_t> idx, const Matrix& core);
/// A <- T^{-1} A restricted to the rows `idx`.
void left_multiply_inplace(Matrix& a, std::span<const std::size_t> idx, const Matrix& inverse_core);

/// Frobenius norm of the off-diagonal part.
double off_norm(const Matrix& a);

/// (A + A^*)/2, Hermitian by construction (h_ji is the conjugate of h_ij bit for bit).
Matrix hermitian_part(const Matrix& a);
/// (A - A^*)/2
Matrix skew_part(const Matrix& a);

/// Departure from normality: C(A) = A A^* - A^* A.
Matrix c_operator(const Matrix& a);

/// Entry (r, s) of C(A) from two row and two column inner products, O(n).
cplx commutator_entry(const Matrix& a, std::size_t r, std::size_t s);

}  // namespace eberlein
