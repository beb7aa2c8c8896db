#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "eberlein/blockmat.hpp"
#include "eberlein/random.hpp"
#include "eberlein/unitary_stage.hpp"
#include "test_support.hpp"

using namespace eberlein;
using eberlein::testing::random_hermitian;

namespace {

double unitarity_error(const Matrix& u) { return (u.adjoint() * u - Matrix::identity(u.dim())).frobenius_norm(); }

Matrix rotate(const Matrix& h, const Matrix& r) { return r.adjoint() * h * r; }

}  // namespace

TEST(JacobiRotation, ZeroOffDiagonal) {
    const auto p = jacobi_rotation_2x2(1.0, 0.0, 3.0);
    EXPECT_EQ(p.phi, 0.0);
    EXPECT_EQ(p.alpha, 0.0);
    EXPECT_EQ(rotation_matrix(p), Matrix::identity(2));
}

TEST(JacobiRotation, EqualDiagonalTieBreak) {
    const auto p = jacobi_rotation_2x2(2.0, 1.0, 2.0);
    EXPECT_DOUBLE_EQ(p.phi, std::numbers::pi / 4);
    EXPECT_EQ(p.alpha, 0.0);
    const Matrix h(2, {2.0, 1.0, 1.0, 2.0});
    const Matrix d = rotate(h, rotation_matrix(p));
    std::vector<double> ev{d(0, 0).real(), d(1, 1).real()};
    std::sort(ev.begin(), ev.end());
    EXPECT_NEAR(ev[0], 1.0, 1e-15);
    EXPECT_NEAR(ev[1], 3.0, 1e-15);
}

TEST(JacobiRotation, AnnihilatesAndBoundsCosine) {
    Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const double a = rng.normal(), b = rng.normal();
        const cplx c = rng.complex_normal();
        const auto p = jacobi_rotation_2x2(a, c, b);
        EXPECT_GT(p.phi, -std::numbers::pi / 4);
        EXPECT_LE(p.phi, std::numbers::pi / 4);
        EXPECT_GE(std::cos(p.phi), 1.0 / std::sqrt(2.0) - 1e-15);
        const Matrix h(2, {a, c, std::conj(c), b});
        const Matrix d = rotate(h, rotation_matrix(p));
        EXPECT_LE(std::abs(d(0, 1)), 1e-14 * (std::abs(a) + std::abs(b) + 2 * std::abs(c)));
    }
}

TEST(Diagonalize, DiagonalInputNeedsNoSweeps) {
    const std::vector<cplx> d{1.0, -2.0, 3.5};
    const auto res = diagonalize_hermitian_core(Matrix::diagonal(d));
    EXPECT_EQ(res.sweeps_used, 0);
    EXPECT_EQ(res.r_core, Matrix::identity(3));
    EXPECT_EQ(res.diag, (std::vector<double>{1.0, -2.0, 3.5}));
}

TEST(Diagonalize, TwoByTwo) {
    const auto res = diagonalize_hermitian_core(Matrix(2, {2.0, 1.0, 1.0, 2.0}));
    std::vector<double> ev = res.diag;
    std::sort(ev.begin(), ev.end());
    EXPECT_NEAR(ev[0], 1.0, 1e-14);
    EXPECT_NEAR(ev[1], 3.0, 1e-14);
}

TEST(Diagonalize, ThreeByThreeClosedForm) {
    // Tridiagonal Toeplitz: eigenvalues 2 - 2 cos(k pi / 4), k = 1..3.
    const Matrix h(3, {2.0, -1.0, 0.0, -1.0, 2.0, -1.0, 0.0, -1.0, 2.0});
    auto ev = diagonalize_hermitian_core(h).diag;
    std::sort(ev.begin(), ev.end());
    for (int k = 1; k <= 3; ++k) {
        const double want = 2.0 - 2.0 * std::cos(k * std::numbers::pi / 4);
        EXPECT_NEAR(ev[k - 1], want, 1e-12 * std::abs(want));
    }
}

TEST(Diagonalize, ReconstructsRandomHermitian) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Matrix h = random_hermitian(10, seed);
        const auto res = diagonalize_hermitian_core(h);
        EXPECT_LE(unitarity_error(res.r_core), 1e-12 * 10);
        std::vector<cplx> d(res.diag.begin(), res.diag.end());
        const Matrix back = res.r_core * Matrix::diagonal(d) * res.r_core.adjoint();
        EXPECT_LE((back - h).frobenius_norm(), 1e-10 * h.frobenius_norm());
        EXPECT_LE(off_norm(rotate(h, res.r_core)), kDefaultInnerJacobiTol * h.frobenius_norm() * 10);
        const double tr = std::accumulate(res.diag.begin(), res.diag.end(), 0.0);
        EXPECT_NEAR(tr, h.trace().real(), 1e-12 * h.frobenius_norm());
    }
}

TEST(Diagonalize, ExhaustedSweepsThrowWithBestIterate) {
    const Matrix h = random_hermitian(8, 3);
    try {
        diagonalize_hermitian_core(h, 1e-300, 1);
        FAIL() << "expected JacobiConvergenceFailure";
    } catch (const JacobiConvergenceFailure& e) {
        EXPECT_EQ(e.best().r_core.dim(), 8u);
        EXPECT_LE(unitarity_error(e.best().r_core), 1e-12 * 8);
    }
}

TEST(Ubc, IdentityStays) {
    const auto [u, perm] = ubc_permute(Matrix::identity(4), 2, 2);
    EXPECT_EQ(u, Matrix::identity(4));
    EXPECT_EQ(perm, (std::vector<std::size_t>{0, 1, 2, 3}));
}

TEST(Ubc, SwapGetsUndone) {
    const Matrix swap(2, {0.0, 1.0, 1.0, 0.0});
    const auto [u, perm] = ubc_permute(swap, 1, 1);
    EXPECT_EQ(perm, (std::vector<std::size_t>{1, 0}));
    EXPECT_EQ(u, Matrix::identity(2));
    EXPECT_DOUBLE_EQ(sigma_min(u.submatrix(std::vector<std::size_t>{0})), 1.0);
}

TEST(Ubc, GreedyImprovesAndIsNearExhaustive) {
    // Exhaustive search over all C(6,3) leading column subsets.
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Matrix u = random_unitary(6, seed);
        double best = 0.0;
        for (unsigned mask = 0; mask < 64; ++mask) {
            if (__builtin_popcount(mask) != 3) continue;
            std::vector<std::size_t> cols;
            for (std::size_t j = 0; j < 6; ++j)
                if (mask & (1u << j)) cols.push_back(j);
            best = std::max(best, leading_block_sigma_min(u, 3, cols));
        }
        const auto [up, perm] = ubc_permute(u, 3, 3);
        const double base = leading_block_sigma_min(u, 3, {0, 1, 2});
        const double got = leading_block_sigma_min(up, 3, {0, 1, 2});
        EXPECT_GE(got, base);
        EXPECT_LE(got, best + 1e-14);
        EXPECT_LE(unitarity_error(up), 1e-12 * 6);
        RecordProperty("ratio_to_exhaustive_seed" + std::to_string(seed), std::to_string(got / best));
    }
}
