#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "eberlein/driver.hpp"
#include "eberlein/generators.hpp"
#include "eberlein/random.hpp"
#include "eberlein/shear_stage.hpp"
#include "test_support.hpp"

using namespace eberlein;
using eberlein::testing::matched_relative_error;
using eberlein::testing::random_hermitian;
using eberlein::testing::random_matrix;

namespace {

constexpr cplx I{0.0, 1.0};

std::vector<cplx> values_of(const EberleinResult& r) {
    std::vector<cplx> v;
    for (const auto& ep : r.eigenpairs) v.push_back(ep.value);
    return v;
}

Matrix normal_with_spectrum(const std::vector<cplx>& d, std::uint64_t seed) {
    const Matrix q = random_unitary(d.size(), seed);
    return q * Matrix::diagonal(d) * q.adjoint();
}

}  // namespace

TEST(Solve, DiagonalConvergesInOneCycle) {
    const std::vector<cplx> d{{1.0, 1.0}, {-2.0, 0.5}, {3.0, -1.0}, {0.5, 0.0}, {-1.0, -2.0}, {2.0, 2.0}};
    const Matrix a = Matrix::diagonal(d);
    SolveOptions opts;
    opts.record_trace = true;
    const auto res = eberlein_solve(a, BlockPartition::uniform(6, 2), opts);
    EXPECT_EQ(res.status, SolveStatus::converged);
    EXPECT_EQ(res.cycles, 1);
    EXPECT_EQ(res.lambda, a);
    for (const auto& s : res.log.steps) EXPECT_EQ(s.shear_deviation, 0.0);
    EXPECT_EQ(res.log.cycles.at(0).off_a, 0.0);
    EXPECT_LE(matched_relative_error(values_of(res), d), 1e-15);
}

TEST(Solve, HermitianNeedsNoShears) {
    const Matrix h = random_hermitian(12, 3);
    SolveOptions opts;
    opts.record_trace = true;
    const auto res = eberlein_solve(h, BlockPartition({4, 4, 4}), opts);
    for (const auto& s : res.log.steps) EXPECT_LE(s.shear_deviation, 1e-12);
    EXPECT_LE(off_norm(res.lambda), 1e-8 * h.frobenius_norm());
    auto want = diagonalize_hermitian_core(h).diag;
    std::vector<double> got;
    for (std::size_t i = 0; i < 12; ++i) {
        EXPECT_LE(std::abs(res.lambda(i, i).imag()), 1e-8 * h.frobenius_norm());
        got.push_back(res.lambda(i, i).real());
    }
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    for (std::size_t i = 0; i < 12; ++i) EXPECT_NEAR(got[i], want[i], 1e-8 * h.frobenius_norm());
}

TEST(Solve, NormalMatrixRecoversSpectrum) {
    Rng rng(8);
    std::vector<cplx> d(20);
    for (auto& x : d) x = rng.complex_normal();
    const Matrix a = normal_with_spectrum(d, 9);
    const auto res = eberlein_solve(a, BlockPartition::uniform(20, 5));
    EXPECT_EQ(res.status, SolveStatus::converged);
    EXPECT_LE(off_norm(res.lambda), 1e-8 * a.frobenius_norm());
    EXPECT_LE(matched_relative_error(res.lambda.diag(), d), 1e-7);
    EXPECT_LE(matched_relative_error(values_of(res), d), 1e-7);
    for (const auto& ep : res.eigenpairs) EXPECT_LE(ep.residual, 1e-10 * a.frobenius_norm());
}

TEST(Solve, GeneralMatrixInvariants) {
    const Matrix a = random_matrix(24, 10);
    SolveOptions opts;
    opts.record_trace = true;
    const auto res = eberlein_solve(a, BlockPartition::uniform(24, 4), opts);
    ASSERT_EQ(res.status, SolveStatus::converged);
    const double na = a.frobenius_norm();
    const std::size_t n = a.dim();

    // Frobenius norm non-increasing, cumulative delta consistent.
    double prev = na;
    for (const auto& c : res.log.cycles) {
        EXPECT_LE(c.frob_a, prev + 1e-12 * na);
        prev = c.frob_a;
        EXPECT_NEAR(c.cum_delta, na * na - c.frob_a * c.frob_a, 1e-9 * na * na);
    }
    for (const auto& s : res.log.steps) EXPECT_GE(s.delta, -1e-12 * na * na);

    cplx sum = 0.0, sum_sq = 0.0;
    for (const auto& ep : res.eigenpairs) {
        sum += ep.value;
        sum_sq += ep.value * ep.value;
        EXPECT_LE(ep.residual, 1e-6 * na);
        EXPECT_NEAR(norm2(ep.vector), 1.0, 1e-12);
    }
    EXPECT_LE(std::abs(sum - a.trace()), 1e-9 * n * na);
    EXPECT_LE(std::abs(sum_sq - (a * a).trace()), 1e-8 * n * na * na);
    EXPECT_LE(similarity_residual(a, res), 1e-8 * na * cond_estimate(res.t_accum, res.t_inverse));
    EXPECT_LE(max_abs_diff(res.t_accum * res.t_inverse, Matrix::identity(n)), 1e-8 * cond_estimate(res.t_accum, res.t_inverse));
    EXPECT_LE(c_operator(res.lambda).frobenius_norm(), 1e-7 * na * na);
}

TEST(Solve, OrderingsAllConverge) {
    const Matrix a = random_matrix(20, 12);
    for (const auto& o : {row_cyclic(5), col_cyclic(5), serial_with_permutations(5, 3, SerialDirection::row),
                          derive(col_cyclic(5), derivation::VertexPerm{{1, 4, 0, 2, 3}})}) {
        SolveOptions opts;
        opts.ordering = o;
        const auto res = eberlein_solve(a, BlockPartition::uniform(20, 4), opts);
        EXPECT_EQ(res.status, SolveStatus::converged);
        EXPECT_LE(off_norm(res.lambda), 1e-8 * a.frobenius_norm());
    }
}

TEST(Solve, WithoutUbcStillConverges) {
    const Matrix a = random_matrix(16, 13);
    SolveOptions opts;
    opts.enforce_ubc = false;
    const auto res = eberlein_solve(a, BlockPartition::uniform(16, 4), opts);
    EXPECT_EQ(res.status, SolveStatus::converged);
}

TEST(Solve, RejectsBadInput) {
    const Matrix a = random_matrix(6, 1);
    EXPECT_THROW(eberlein_solve(a, BlockPartition::uniform(5, 2)), InvalidArgument);
    SolveOptions opts;
    opts.ordering = row_cyclic(4);
    EXPECT_THROW(eberlein_solve(a, BlockPartition::uniform(6, 2), opts), InvalidArgument);
    opts = {};
    opts.tolerance = 0.0;
    EXPECT_THROW(eberlein_solve(a, BlockPartition::uniform(6, 2), opts), InvalidArgument);
    Matrix bad = a;
    bad(2, 3) = std::nan("");
    EXPECT_THROW(eberlein_solve(bad, BlockPartition::uniform(6, 2)), InvalidArgument);
}

TEST(Solve, OverflowIsNumericalFailure) {
    Matrix a = random_matrix(6, 2);
    a *= 1e300;
    EXPECT_THROW(eberlein_solve(a, BlockPartition::uniform(6, 2)), NumericalFailure);
}

TEST(Solve, ProgressCallbackOncePerCycle) {
    const Matrix a = random_matrix(10, 3);
    SolveOptions opts;
    int calls = 0;
    opts.progress = [&](const CycleRecord& c) { EXPECT_EQ(c.cycle, ++calls); };
    const auto res = eberlein_solve(a, BlockPartition::uniform(10, 2), opts);
    EXPECT_EQ(calls, res.cycles);
}

TEST(Solve, MaxCyclesStatus) {
    const Matrix a = random_matrix(12, 4);
    SolveOptions opts;
    opts.max_cycles = 2;
    const auto res = eberlein_solve(a, BlockPartition::uniform(12, 3), opts);
    EXPECT_EQ(res.status, SolveStatus::max_cycles);
    EXPECT_EQ(res.cycles, 2);
}

TEST(Solve, RepeatedRealPartsStallIntoBlocks) {
    TestMatrixSpec spec{MatrixKind::a2_repeated, 20, std::vector<std::size_t>{4, 2, 2, 2, 2}, 5, std::nullopt};
    const auto gen = gen_test_matrix(spec);
    const auto res = eberlein_solve(gen.a, BlockPartition::uniform(20, 4));
    EXPECT_EQ(res.status, SolveStatus::stalled);
    EXPECT_LT(res.block_structure.size(), 20u);
    // Blocks get resolved by the recursive extraction.
    EXPECT_LE(matched_relative_error(values_of(res), *gen.spectrum), 1e-6);
}

TEST(Precondition, ExplicitScalar) {
    const Matrix a = random_matrix(4, 6);
    const auto [da, d] = precondition(a, I, 0);
    EXPECT_EQ(d, I);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(da(i, j), I * a(i, j));
    EXPECT_THROW(precondition(a, cplx(2.0, 0.0), 0), InvalidArgument);
}

TEST(Precondition, SeededDrawIsReproducibleAndNotNearReal) {
    const Matrix a = Matrix::identity(2);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const cplx d1 = precondition(a, std::nullopt, seed).second;
        const cplx d2 = precondition(a, std::nullopt, seed).second;
        EXPECT_EQ(d1, d2);
        EXPECT_GE(std::abs(d1.imag()), 0.1 * std::abs(d1));
    }
}

TEST(Precondition, EigenvaluesRecovered) {
    const std::vector<cplx> d{{1.0, 0.5}, {1.0, -0.5}, {-2.0, 1.0}, {0.3, 0.0}, {2.5, -1.5}, {-0.7, 0.2}};
    const Matrix a = normal_with_spectrum(d, 21);
    SolveOptions opts;
    opts.precondition = true;
    opts.seed = 4;
    const auto res = eberlein_solve(a, BlockPartition::uniform(6, 2), opts);
    EXPECT_NE(res.scale, cplx(1.0));
    EXPECT_EQ(res.block_structure.size(), 6u);
    EXPECT_LE(matched_relative_error(values_of(res), d), 1e-12);
}

TEST(BlockStructure, Detection) {
    const std::vector<cplx> d{1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0};
    Matrix l = Matrix::diagonal(d);
    EXPECT_EQ(detect_block_structure(l, 1e-8).size(), 8u);
    l(2, 6) = 0.5;
    const auto comps = detect_block_structure(l, 1e-8);
    ASSERT_EQ(comps.size(), 7u);
    EXPECT_EQ(comps[2], (std::vector<std::size_t>{2, 6}));
    l(6, 7) = 1e-12;
    EXPECT_EQ(detect_block_structure(l, 1e-8).size(), 7u);
}

TEST(Eigenpairs, TwoByTwoClosedForm) {
    const cplx a{1.0, 2.0}, b = 4.0, c = 1.0;
    const Matrix l(2, {a, b, c, a});
    const auto pairs = extract_eigenpairs(l, Matrix::identity(2), l, 1.0, {{0, 1}});
    ASSERT_EQ(pairs.size(), 2u);
    EXPECT_LE(matched_relative_error({pairs[0].value, pairs[1].value}, {a + 2.0, a - 2.0}), 1e-15);
    for (const auto& ep : pairs) {
        EXPECT_LE(ep.residual, 1e-14);
        EXPECT_EQ(ep.component_size, 2u);
    }
}

TEST(Eigenpairs, ScalarTwoByTwoBlock) {
    const Matrix l = Matrix::diagonal(std::vector<cplx>{3.0, 3.0});
    Matrix coupled = l;
    coupled(0, 1) = 0.0;
    const auto pairs = extract_eigenpairs(coupled, Matrix::identity(2), coupled, 1.0, {{0, 1}});
    for (const auto& ep : pairs) {
        EXPECT_EQ(ep.value, cplx(3.0));
        EXPECT_NEAR(norm2(ep.vector), 1.0, 1e-15);
    }
}

TEST(Eigenpairs, LargerBlockByRecursion) {
    const std::vector<cplx> d{{1.0, 1.0}, {1.0, -1.0}, {1.0, 3.0}};
    const Matrix g = normal_with_spectrum(d, 3);
    std::vector<std::string> warnings;
    const auto pairs = extract_eigenpairs(g, Matrix::identity(3), g, 1.0, {{0, 1, 2}}, &warnings);
    ASSERT_EQ(pairs.size(), 3u);
    std::vector<cplx> got;
    for (const auto& ep : pairs) {
        EXPECT_TRUE(ep.ok);
        EXPECT_LE(ep.residual, 1e-10);
        got.push_back(ep.value);
    }
    EXPECT_LE(matched_relative_error(got, d), 1e-10);
}

TEST(UnitPartition, MatchesElementwiseReference) {
    const Matrix a = random_matrix(8, 99);
    SolveOptions opts;
    opts.max_cycles = 1;
    opts.extract_eigenpairs = false;
    const auto res = eberlein_solve(a, BlockPartition::unit(8), opts);
    EXPECT_EQ(res.lambda, elementwise_eberlein_cycle(a, row_cyclic(8), opts));
}

TEST(Step, MatchesDocumentedComposition) {
    // Rotation then shear stage, rebuilt from the stage functions. Also logs
    // the first-power Hari diagnostic without asserting it.
    const Matrix a0 = random_matrix(12, 55);
    const BlockPartition bp = BlockPartition::uniform(12, 3);
    const SolveOptions opts;
    const double norm0_sq = a0.frobenius_norm_squared();
    auto state = IterationState::start(a0);
    int diagnostic_violations = 0, steps = 0;
    const PivotOrdering ordering = row_cyclic(bp.m());
    for (int cycle = 0; cycle < 3; ++cycle) {
        for (const auto& pv : ordering.pairs()) {
            const auto idx = pivot_indices(bp, pv);
            Matrix manual = state.a;
            const auto us = diagonalize_hermitian_core(hermitian_part(manual.submatrix(idx)));
            const Matrix r = ubc_permute(us.r_core, bp.size(pv.p), bp.size(pv.q)).first;
            apply_similarity_inplace(manual, idx, r, r.adjoint());
            const Matrix rotated_b = hermitian_part(manual);
            const auto ss = shear_stage_inplace(manual, idx, norm0_sq);

            const auto rec = eberlein_step(state, bp, pv, opts, norm0_sq);
            ASSERT_EQ(state.a, manual);
            EXPECT_NEAR(rec.delta, ss.norm_reduction, 0.0);

            const double lhs = (hermitian_part(state.a) - rotated_b).frobenius_norm_squared();
            const double rhs = 1.5 * 144.0 * ss.sum_c_abs;
            if (lhs > 10.0 * rhs + 1e-12 * norm0_sq) ++diagnostic_violations;
            ++steps;
        }
    }
    RecordProperty("hari_first_power_violations", diagnostic_violations);
    RecordProperty("hari_steps", steps);
    EXPECT_LE(similarity_residual(a0, EberleinResult{state.a, state.t, state.t_inv}), 1e-10 * a0.frobenius_norm());
}

TEST(Solve, RealNonsymmetricWithPreconditioning) {
    // Real 104 x 104 matrix X D X^{-1}: 90 real eigenvalues and 7 complex
    // conjugate pairs. Same settings as the CK104 acceptance check.
    const std::size_t n = 104;
    Rng rng(31);
    Matrix x(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) x(i, j) = rng.normal();
    for (std::size_t i = 0; i < n; ++i) x(i, i) += 12.0;
    Matrix d(n);
    std::vector<cplx> spectrum;
    for (std::size_t i = 0; i < 90; ++i) {
        d(i, i) = rng.normal();
        spectrum.push_back(d(i, i));
    }
    for (std::size_t i = 90; i < n; i += 2) {
        const double re = rng.normal(), im = 0.5 + std::abs(rng.normal());
        d(i, i) = re;
        d(i + 1, i + 1) = re;
        d(i, i + 1) = im;
        d(i + 1, i) = -im;
        spectrum.push_back({re, im});
        spectrum.push_back({re, -im});
    }
    const Matrix a = x * d * inverse(x);
    SolveOptions opts;
    opts.precondition = true;
    opts.seed = 1;
    const auto res = eberlein_solve(a, BlockPartition::uniform(n, 4), opts);
    EXPECT_EQ(res.status, SolveStatus::converged);
    const double na = a.frobenius_norm();
    cplx sum = 0.0;
    std::size_t real_count = 0;
    for (const auto& ep : res.eigenpairs) {
        sum += ep.value;
        real_count += std::abs(ep.value.imag()) <= 1e-6 * na;
    }
    EXPECT_LE(std::abs(sum - a.trace()), 1e-8 * n * na);
    EXPECT_EQ(real_count, 90u);
    EXPECT_LE(matched_relative_error(values_of(res), spectrum), 1e-6);
}
