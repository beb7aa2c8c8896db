#include "eberlein/driver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "eberlein/random.hpp"
#include "eberlein/shear_stage.hpp"

namespace eberlein {

namespace {

constexpr int kMaxBlockRecursion = 2;
constexpr double kShearConditionWarning = 1e8;

bool is_identity(const Matrix& m) { return m == Matrix::identity(m.dim()); }

double deviation_from_identity(const Matrix& m) {
    Matrix d = m;
    for (std::size_t i = 0; i < d.dim(); ++i) d(i, i) -= 1.0;
    return d.frobenius_norm();
}

}  // namespace

std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::converged: return "converged";
        case SolveStatus::max_cycles: return "max_cycles";
        case SolveStatus::stalled: return "stalled";
    }
    return "unknown";
}

IterationState IterationState::start(Matrix a0) {
    const std::size_t n = a0.dim();
    return {std::move(a0), Matrix::identity(n), Matrix::identity(n)};
}

StepRecord eberlein_step(IterationState& state, const BlockPartition& partition, PivotPair pivot,
                         const SolveOptions& opts, double norm0_sq) {
    const auto idx = pivot_indices(partition, pivot);
    StepRecord rec;
    rec.pivot = pivot;

    // Unitary stage: diagonalize the pivot block of the Hermitian part.
    const Matrix h = hermitian_part(state.a.submatrix(idx));
    UnitaryStageResult us = diagonalize_hermitian_core(h, opts.inner_jacobi_tol, opts.inner_jacobi_sweeps);
    rec.jacobi_sweeps = us.sweeps_used;
    Matrix r = std::move(us.r_core);
    if (opts.enforce_ubc) {
        auto [permuted, perm] = ubc_permute(r, partition.size(pivot.p), partition.size(pivot.q));
        rec.ubc_permuted = !std::is_sorted(perm.begin(), perm.end());
        r = std::move(permuted);
    }
    if (!is_identity(r)) {
        const Matrix r_adj = r.adjoint();
        apply_similarity_inplace(state.a, idx, r, r_adj);
        right_multiply_inplace(state.t, idx, r);
        left_multiply_inplace(state.t_inv, idx, r_adj);
    }

    // Norm-reducing stage.
    ShearStageResult ss = shear_stage_inplace(state.a, idx, norm0_sq, opts.shear_sweeps);
    if (!is_identity(ss.s_core)) {
        right_multiply_inplace(state.t, idx, ss.s_core);
        left_multiply_inplace(state.t_inv, idx, ss.s_core_inv);
    }
    rec.delta = ss.norm_reduction;
    rec.sum_c_squared = ss.sum_c_squared;
    rec.sum_c_abs = ss.sum_c_abs;
    rec.shear_deviation = deviation_from_identity(ss.s_core);
    rec.shear_condition =
        ss.s_core.frobenius_norm() * ss.s_core_inv.frobenius_norm() / static_cast<double>(ss.s_core.dim());
    return rec;
}

std::pair<Matrix, cplx> precondition(const Matrix& a, std::optional<cplx> d, std::uint64_t seed) {
    cplx scalar;
    if (d) {
        if (d->imag() == 0.0) throw InvalidArgument("precondition: scalar d must have a nonzero imaginary part");
        scalar = *d;
    } else {
        Rng rng(seed);
        do {
            scalar = rng.complex_normal();
        } while (std::abs(scalar.imag()) < 0.1 * std::abs(scalar));
    }
    return {scalar * a, scalar};
}

std::vector<std::vector<std::size_t>> detect_block_structure(const Matrix& lambda, double threshold) {
    const std::size_t n = lambda.dim();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    const double cut = threshold * lambda.frobenius_norm();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(lambda(i, j)) > cut || std::abs(lambda(j, i)) > cut) {
                const std::size_t ri = find(i), rj = find(j);
                if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
            }
        }
    }
    std::vector<std::vector<std::size_t>> comps;
    std::vector<std::size_t> slot(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t root = find(i);
        if (slot[root] == n) {
            slot[root] = comps.size();
            comps.emplace_back();
        }
        comps[slot[root]].push_back(i);
    }
    return comps;
}

namespace {

std::vector<cplx> combine_columns(const Matrix& t, const std::vector<std::size_t>& cols, std::span<const cplx> y) {
    std::vector<cplx> v(t.dim(), 0.0);
    for (std::size_t k = 0; k < cols.size(); ++k)
        for (std::size_t i = 0; i < t.dim(); ++i) v[i] += t(i, cols[k]) * y[k];
    const double nrm = norm2(v);
    if (nrm > 0.0)
        for (auto& z : v) z /= nrm;
    return v;
}

double residual_of(const Matrix& a, const cplx& lambda, const std::vector<cplx>& v) {
    auto av = multiply(a, v);
    for (std::size_t i = 0; i < av.size(); ++i) av[i] -= lambda * v[i];
    return norm2(av);
}

// Eigenpairs of [[a, b], [c, d]] in closed form.
std::array<std::pair<cplx, std::array<cplx, 2>>, 2> eig2x2(cplx a, cplx b, cplx c, cplx d) {
    const cplx mean = 0.5 * (a + d);
    const cplx root = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
    std::array<std::pair<cplx, std::array<cplx, 2>>, 2> out;
    const cplx values[2] = {mean + root, mean - root};
    for (int k = 0; k < 2; ++k) {
        const cplx l = values[k];
        const std::array<cplx, 2> v1{b, l - a};
        const std::array<cplx, 2> v2{l - d, c};
        const double n1 = std::hypot(std::abs(v1[0]), std::abs(v1[1]));
        const double n2 = std::hypot(std::abs(v2[0]), std::abs(v2[1]));
        std::array<cplx, 2> v = n1 >= n2 ? v1 : v2;
        // Scalar block: every vector is an eigenvector.
        if (std::max(n1, n2) <= 1e-14 * (std::abs(a) + std::abs(b) + std::abs(c) + std::abs(d))) {
            v = k == 0 ? std::array<cplx, 2>{1.0, 0.0} : std::array<cplx, 2>{0.0, 1.0};
        }
        out[k] = {l, v};
    }
    return out;
}

EberleinResult solve_impl(const Matrix& a, const BlockPartition& partition, const SolveOptions& opts, int depth);

}  // namespace

std::vector<Eigenpair> extract_eigenpairs(const Matrix& lambda, const Matrix& t, const Matrix& a_original,
                                          cplx scale, const std::vector<std::vector<std::size_t>>& components,
                                          std::vector<std::string>* warnings, int depth) {
    std::vector<Eigenpair> pairs;
    pairs.reserve(lambda.dim());
    auto push = [&](cplx value_scaled, std::vector<cplx> v, std::size_t comp_size, bool ok) {
        const cplx value = value_scaled / scale;
        const double res = residual_of(a_original, value, v);
        pairs.push_back({value, std::move(v), res, comp_size, ok});
    };
    for (std::size_t ci = 0; ci < components.size(); ++ci) {
        const auto& comp = components[ci];
        if (comp.size() == 1) {
            const std::size_t i = comp[0];
            const cplx one = 1.0;
            push(lambda(i, i), combine_columns(t, comp, std::span<const cplx>(&one, 1)), 1, true);
        } else if (comp.size() == 2) {
            const std::size_t i = comp[0], j = comp[1];
            for (const auto& [value, y] : eig2x2(lambda(i, i), lambda(i, j), lambda(j, i), lambda(j, j))) {
                push(value, combine_columns(t, comp, y), 2, true);
            }
        } else {
            bool resolved = false;
            if (depth < kMaxBlockRecursion) {
                try {
                    const Matrix g = lambda.submatrix(comp);
                    SolveOptions sub;
                    sub.precondition = true;
                    sub.seed = 0x9e3779b97f4a7c15ULL ^ (ci + 1) ^ (static_cast<std::uint64_t>(depth) << 32);
                    EberleinResult inner = solve_impl(g, BlockPartition::unit(g.dim()), sub, depth + 1);
                    for (auto& ep : inner.eigenpairs) {
                        // ep.value is an eigenvalue of g; ep.vector lives in g's coordinates.
                        push(ep.value, combine_columns(t, comp, ep.vector), comp.size(), ep.ok);
                    }
                    if (warnings)
                        for (auto& w : inner.warnings) warnings->push_back(std::move(w));
                    resolved = true;
                } catch (const std::exception& e) {
                    if (warnings) warnings->push_back(std::string("block extraction failed: ") + e.what());
                }
            } else if (warnings) {
                warnings->push_back("block of size " + std::to_string(comp.size()) +
                                    " left unresolved: recursion depth exhausted");
            }
            if (!resolved) {
                for (std::size_t i : comp) {
                    const cplx one = 1.0;
                    push(lambda(i, i), combine_columns(t, {i}, std::span<const cplx>(&one, 1)), comp.size(), false);
                }
            }
        }
    }
    return pairs;
}

namespace {

EberleinResult solve_impl(const Matrix& a_in, const BlockPartition& partition, const SolveOptions& opts, int depth) {
    if (a_in.dim() == 0) throw InvalidArgument("eberlein_solve: empty matrix");
    if (a_in.dim() != partition.n()) {
        throw InvalidArgument("eberlein_solve: matrix dimension " + std::to_string(a_in.dim()) +
                              " does not match partition total " + std::to_string(partition.n()));
    }
    if (!(opts.tolerance > 0.0)) throw InvalidArgument("eberlein_solve: tolerance must be positive");
    if (opts.max_cycles < 1) throw InvalidArgument("eberlein_solve: max_cycles must be positive");
    if (opts.shear_sweeps < 1) throw InvalidArgument("eberlein_solve: shear_sweeps must be positive");
    if (!a_in.all_finite()) throw InvalidArgument("eberlein_solve: input has NaN or Inf entries");

    EberleinResult res;
    Matrix a0;
    if (opts.precondition) {
        std::tie(a0, res.scale) = precondition(a_in, opts.precondition_scalar, opts.seed);
    } else {
        a0 = a_in;
    }

    const std::size_t n = a0.dim();
    if (partition.m() < 2) {
        // A single block has no pivot pairs; the iteration is the identity.
        res.lambda = a0;
        res.t_accum = Matrix::identity(n);
        res.t_inverse = Matrix::identity(n);
        res.status = off_norm(a0) == 0.0 ? SolveStatus::converged : SolveStatus::stalled;
    } else {
        const PivotOrdering ordering = opts.ordering ? *opts.ordering : row_cyclic(partition.m());
        if (ordering.m() != partition.m()) {
            throw InvalidArgument("eberlein_solve: ordering has m = " + std::to_string(ordering.m()) +
                                  " but the partition has " + std::to_string(partition.m()) + " blocks");
        }
        const double norm0_sq = a0.frobenius_norm_squared();
        const double norm0 = std::sqrt(norm0_sq);
        const double stop = opts.absolute_tolerance ? opts.tolerance : opts.tolerance * norm0;

        IterationState state = IterationState::start(a0);
        double prev_off_b = off_norm(hermitian_part(state.a));
        double cum_delta = 0.0;
        double worst_condition = 1.0;
        bool stopped = false;
        std::size_t step_counter = 0;

        for (int cycle = 1; cycle <= opts.max_cycles && !stopped; ++cycle) {
            Matrix last_good = state.a;
            for (const PivotPair& pivot : ordering.pairs()) {
                StepRecord rec = eberlein_step(state, partition, pivot, opts, norm0_sq);
                rec.cycle = cycle;
                rec.step = step_counter++;
                cum_delta += rec.delta;
                worst_condition = std::max(worst_condition, rec.shear_condition);
                if (opts.record_trace) res.log.steps.push_back(rec);
            }
            if (!state.a.all_finite() || !state.t.all_finite()) {
                throw SolveFailure("eberlein_solve: non-finite iterate in cycle " + std::to_string(cycle),
                                   std::move(last_good), std::move(res.log));
            }
            CycleRecord cr;
            cr.cycle = cycle;
            cr.off_a = off_norm(state.a);
            cr.off_b = off_norm(hermitian_part(state.a));
            cr.norm_c = c_operator(state.a).frobenius_norm();
            cr.frob_a = state.a.frobenius_norm();
            cr.cum_delta = cum_delta;
            res.log.cycles.push_back(cr);
            res.cycles = cycle;
            if (opts.progress) opts.progress(cr);
            stopped = std::abs(cr.off_b - prev_off_b) < stop;
            prev_off_b = cr.off_b;
        }
        if (worst_condition > kShearConditionWarning) {
            res.warnings.push_back("shear core condition estimate reached " + std::to_string(worst_condition));
        }
        res.lambda = std::move(state.a);
        res.t_accum = std::move(state.t);
        res.t_inverse = std::move(state.t_inv);
        res.status = stopped ? SolveStatus::converged : SolveStatus::max_cycles;
    }

    const Matrix b = hermitian_part(res.lambda);
    res.real_parts.resize(n);
    for (std::size_t i = 0; i < n; ++i) res.real_parts[i] = b(i, i).real();
    res.block_structure = detect_block_structure(res.lambda, opts.block_threshold);
    const bool has_blocks = res.block_structure.size() != n;
    if (res.status == SolveStatus::converged && has_blocks) res.status = SolveStatus::stalled;

    if (opts.extract_eigenpairs) {
        res.eigenpairs = extract_eigenpairs(res.lambda, res.t_accum, a_in, res.scale, res.block_structure,
                                            &res.warnings, depth);
    }
    return res;
}

}  // namespace

EberleinResult eberlein_solve(const Matrix& a, const BlockPartition& partition, const SolveOptions& opts) {
    return solve_impl(a, partition, opts, 0);
}

Matrix elementwise_eberlein_cycle(const Matrix& a_in, const PivotOrdering& ordering, const SolveOptions& opts) {
    if (ordering.m() != a_in.dim()) throw InvalidArgument("elementwise_eberlein_cycle: ordering must have m = n");
    Matrix a = a_in;
    const double norm0_sq = a.frobenius_norm_squared();
    for (const PivotPair& pr : ordering.pairs()) {
        const std::size_t idx[2] = {pr.p, pr.q};
        // Rotation annihilating the (p, q) entry of the Hermitian part.
        const Matrix h = hermitian_part(a.submatrix(idx));
        Matrix r = Matrix::identity(2);
        if (off_norm(h) > opts.inner_jacobi_tol * h.frobenius_norm()) {
            r = rotation_matrix(jacobi_rotation_2x2(h(0, 0).real(), h(0, 1), h(1, 1).real()));
        }
        if (opts.enforce_ubc) r = ubc_permute(r, 1, 1).first;
        if (!is_identity(r)) apply_similarity_inplace(a, idx, r, r.adjoint());
        // Norm-reducing shear on the same plane.
        for (int sweep = 0; sweep < opts.shear_sweeps; ++sweep) {
            apply_shear_inplace(a, pr.p, pr.q, shear_angles(a, pr.p, pr.q, norm0_sq));
        }
    }
    return a;
}

double similarity_residual(const Matrix& a, const EberleinResult& result) {
    const Matrix scaled = result.scale * a;
    Matrix d = result.t_inverse * (scaled * result.t_accum);
    d -= result.lambda;
    return d.frobenius_norm();
}

double cond_estimate(const Matrix& t, const Matrix& t_inv) {
    return t.frobenius_norm() * t_inv.frobenius_norm() / static_cast<double>(t.dim());
}

}  // namespace eberlein
