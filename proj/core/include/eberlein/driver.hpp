#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eberlein/blockmat.hpp"
#include "eberlein/error.hpp"
#include "eberlein/matrix.hpp"
#include "eberlein/partition.hpp"
#include "eberlein/pivot.hpp"
#include "eberlein/unitary_stage.hpp"

namespace eberlein {

/// Metrics recorded after every full cycle over the pivot ordering.
struct CycleRecord {
    int cycle = 0;            // 1-based
    double off_a = 0.0;       // off(A)
    double off_b = 0.0;       // off of the Hermitian part
    double norm_c = 0.0;      // ||A A^* - A^* A||_F
    double frob_a = 0.0;      // ||A||_F
    double cum_delta = 0.0;   // ||A_0||_F^2 - ||A||_F^2, summed from the shear stages
};

/// Per outer step, recorded only with SolveOptions::record_trace.
struct StepRecord {
    int cycle = 0;
    std::size_t step = 0;            // global step counter k
    PivotPair pivot;
    double delta = 0.0;              // shear stage norm reduction
    double sum_c_squared = 0.0;      // sum over inner steps of |c_rs|^2
    double sum_c_abs = 0.0;
    double shear_deviation = 0.0;    // ||S_core - I||_F
    double shear_condition = 1.0;    // ||S_core||_F ||S_core^{-1}||_F / dim
    int jacobi_sweeps = 0;
    bool ubc_permuted = false;
};

struct ConvergenceLog {
    std::vector<CycleRecord> cycles;
    std::vector<StepRecord> steps;
};

enum class SolveStatus { converged, max_cycles, stalled };

std::string to_string(SolveStatus s);

struct Eigenpair {
    cplx value;
    std::vector<cplx> vector;   // unit 2-norm
    double residual = 0.0;      // ||A t - lambda t||_2 against the caller's matrix
    std::size_t component_size = 1;
    bool ok = true;             // false if the block it came from could not be resolved
};

using ProgressCallback = std::function<void(const CycleRecord&)>;

struct SolveOptions {
    double tolerance = 1e-10;
    int max_cycles = 100;
    /// Row-cyclic when unset.
    std::optional<PivotOrdering> ordering;
    bool enforce_ubc = true;
    double inner_jacobi_tol = kDefaultInnerJacobiTol;
    int inner_jacobi_sweeps = kDefaultInnerJacobiSweeps;
    /// Passes over the inner pairs per shear stage.
    int shear_sweeps = 1;
    bool record_trace = false;
    /// Solve for d*A instead of A; eigenvalues are divided by d on return.
    bool precondition = false;
    std::optional<cplx> precondition_scalar;
    std::uint64_t seed = 0;
    /// Relative coupling threshold for the block structure of the limit.
    double block_threshold = 1e-8;
    /// Stop on |off(B_c) - off(B_{c-1})| < tolerance instead of tolerance * ||A||_F.
    bool absolute_tolerance = false;
    bool extract_eigenpairs = true;
    ProgressCallback progress;
};

struct EberleinResult {
    Matrix lambda;        // final iterate
    Matrix t_accum;       // accumulated T with T^{-1} A T = lambda
    Matrix t_inverse;     // accumulated in lockstep from closed-form factor inverses
    ConvergenceLog log;
    SolveStatus status = SolveStatus::max_cycles;
    int cycles = 0;
    cplx scale = 1.0;     // preconditioning scalar d, 1 if none
    std::vector<Eigenpair> eigenpairs;
    std::vector<double> real_parts;                       // diagonal of the final Hermitian part
    std::vector<std::vector<std::size_t>> block_structure;  // connected components of lambda
    std::vector<std::string> warnings;
};

/// Non-finite iterate; carries the last finite iterate and the log so far.
class SolveFailure : public NumericalFailure {
public:
    SolveFailure(const std::string& what, Matrix last_good, ConvergenceLog log)
        : NumericalFailure(what), last_good_(std::move(last_good)), log_(std::move(log)) {}
    const Matrix& last_good() const noexcept { return last_good_; }
    const ConvergenceLog& log() const noexcept { return log_; }

private:
    Matrix last_good_;
    ConvergenceLog log_;
};

/// Iterate, accumulated transformation and its inverse.
struct IterationState {
    Matrix a;
    Matrix t;
    Matrix t_inv;

    static IterationState start(Matrix a0);
};

/// One outer step on pivot (p, q): diagonalize the pivot block of the
/// Hermitian part, rotate, then run the shear stage. `norm0_sq` is
/// ||A_0||_F^2 for the shear skip threshold. Updates `state` in place.
StepRecord eberlein_step(IterationState& state, const BlockPartition& partition, PivotPair pivot,
                         const SolveOptions& opts, double norm0_sq);

/// Block Eberlein iteration until the change of off(B) between two
/// consecutive cycles drops below the tolerance.
EberleinResult eberlein_solve(const Matrix& a, const BlockPartition& partition, const SolveOptions& opts = {});

/// One cycle of the classical element-wise method over `ordering` (which must
/// have m = n): per pair a 2x2 rotation from jacobi_rotation_2x2 followed by
/// one shear. Kept as the reference for the unit-partition case.
Matrix elementwise_eberlein_cycle(const Matrix& a, const PivotOrdering& ordering, const SolveOptions& opts = {});

/// Returns (d * A, d). Draws d = randn + i randn from `seed` when not given,
/// redrawing while |Im d| < 0.1 |d|.
std::pair<Matrix, cplx> precondition(const Matrix& a, std::optional<cplx> d, std::uint64_t seed);

/// Connected components of the graph with an edge (i, j) whenever |l_ij| or
/// |l_ji| exceeds threshold * ||L||_F. Components sorted by first index.
std::vector<std::vector<std::size_t>> detect_block_structure(const Matrix& lambda, double threshold);

/// Eigenpairs from the limit: diagonal entries for singleton components,
/// the closed form for 2x2 blocks, a preconditioned unit-partition solve for
/// larger blocks. Eigenvalues are divided by `scale`; residuals are taken
/// against `a_original`.
std::vector<Eigenpair> extract_eigenpairs(const Matrix& lambda, const Matrix& t, const Matrix& a_original,
                                          cplx scale, const std::vector<std::vector<std::size_t>>& components,
                                          std::vector<std::string>* warnings = nullptr, int depth = 0);

/// ||T^{-1} A T - lambda||_F with the maintained inverse.
double similarity_residual(const Matrix& a, const EberleinResult& result);

/// ||T||_F ||T^{-1}||_F / n
double cond_estimate(const Matrix& t, const Matrix& t_inv);

}  // namespace eberlein
