#include "eberlein/unitary_stage.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "eberlein/blockmat.hpp"

namespace eberlein {

RotationParams jacobi_rotation_2x2(double b_pp, cplx b_pq, double b_qq) {
    const double mag = std::abs(b_pq);
    if (mag == 0.0) return {};
    double alpha = std::arg(b_pq);
    if (alpha <= -std::numbers::pi) alpha += 2.0 * std::numbers::pi;
    // atan2 with a nonnegative first argument lands in [0, pi]; fold the
    // half-angle into (-pi/4, pi/4]. Equal diagonals give exactly pi/4.
    double phi = 0.5 * std::atan2(2.0 * mag, b_pp - b_qq);
    if (phi > 0.25 * std::numbers::pi) phi -= 0.5 * std::numbers::pi;
    return {phi, alpha};
}

Matrix rotation_matrix(const RotationParams& params) {
    const double c = std::cos(params.phi);
    const double s = std::sin(params.phi);
    const cplx e = std::polar(1.0, params.alpha);
    Matrix r(2);
    r(0, 0) = c;
    r(0, 1) = -e * s;
    r(1, 0) = std::conj(e) * s;
    r(1, 1) = c;
    return r;
}

namespace {

// H <- R^* H R and U <- U R for the plane (i, j).
void rotate(Matrix& h, Matrix& u, std::size_t i, std::size_t j, const Matrix& r) {
    const std::size_t k = h.dim();
    for (std::size_t row = 0; row < k; ++row) {
        const cplx hi = h(row, i);
        const cplx hj = h(row, j);
        h(row, i) = hi * r(0, 0) + hj * r(1, 0);
        h(row, j) = hi * r(0, 1) + hj * r(1, 1);
        const cplx ui = u(row, i);
        const cplx uj = u(row, j);
        u(row, i) = ui * r(0, 0) + uj * r(1, 0);
        u(row, j) = ui * r(0, 1) + uj * r(1, 1);
    }
    const cplx a00 = std::conj(r(0, 0)), a01 = std::conj(r(1, 0));
    const cplx a10 = std::conj(r(0, 1)), a11 = std::conj(r(1, 1));
    for (std::size_t col = 0; col < k; ++col) {
        const cplx hi = h(i, col);
        const cplx hj = h(j, col);
        h(i, col) = a00 * hi + a01 * hj;
        h(j, col) = a10 * hi + a11 * hj;
    }
    h(i, j) = 0.0;
    h(j, i) = 0.0;
    h(i, i) = h(i, i).real();
    h(j, j) = h(j, j).real();
}

std::vector<double> real_diagonal(const Matrix& h) {
    std::vector<double> d(h.dim());
    for (std::size_t i = 0; i < h.dim(); ++i) d[i] = h(i, i).real();
    return d;
}

}  // namespace

UnitaryStageResult diagonalize_hermitian_core(const Matrix& h_in, double tol, int max_sweeps) {
    const std::size_t k = h_in.dim();
    Matrix h = h_in;
    Matrix u = Matrix::identity(k);
    const double scale = h_in.frobenius_norm();
    int sweeps = 0;
    while (off_norm(h) > tol * scale) {
        if (sweeps == max_sweeps) {
            UnitaryStageResult best{u, real_diagonal(h), {}, sweeps};
            best.permutation.resize(k);
            std::iota(best.permutation.begin(), best.permutation.end(), std::size_t{0});
            throw JacobiConvergenceFailure("complex Jacobi: no convergence after " + std::to_string(max_sweeps) +
                                               " sweeps (off = " + std::to_string(off_norm(h)) + ")",
                                           std::move(best));
        }
        for (std::size_t i = 0; i + 1 < k; ++i) {
            for (std::size_t j = i + 1; j < k; ++j) {
                if (h(i, j) == cplx{}) continue;
                rotate(h, u, i, j, rotation_matrix(jacobi_rotation_2x2(h(i, i).real(), h(i, j), h(j, j).real())));
            }
        }
        ++sweeps;
    }
    UnitaryStageResult res{std::move(u), real_diagonal(h), std::vector<std::size_t>(k), sweeps};
    std::iota(res.permutation.begin(), res.permutation.end(), std::size_t{0});
    return res;
}

double sigma_min(const Matrix& m) {
    if (m.empty()) return 0.0;
    const Matrix gram = m.adjoint() * m;
    const auto eig = diagonalize_hermitian_core(hermitian_part(gram), 1e-15, 60).diag;
    return std::sqrt(std::max(0.0, *std::min_element(eig.begin(), eig.end())));
}

double leading_block_sigma_min(const Matrix& u, std::size_t rows, const std::vector<std::size_t>& cols) {
    Matrix lead(rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < rows; ++j) lead(i, j) = u(i, cols[j]);
    return sigma_min(lead);
}

std::pair<Matrix, std::vector<std::size_t>> ubc_permute(const Matrix& u, std::size_t n_p, std::size_t n_q) {
    const std::size_t k = u.dim();
    if (n_p + n_q != k || n_p == 0 || n_q == 0) throw InvalidArgument("ubc_permute: split does not match dimension");

    std::vector<std::size_t> identity(k);
    std::iota(identity.begin(), identity.end(), std::size_t{0});

    // Greedy volume maximization: repeatedly take the column whose projection
    // of its leading n_p entries onto the complement of the chosen span is largest.
    std::vector<std::vector<cplx>> residual(k, std::vector<cplx>(n_p));
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t i = 0; i < n_p; ++i) residual[c][i] = u(i, c);
    std::vector<bool> chosen(k, false);
    for (std::size_t step = 0; step < n_p; ++step) {
        std::size_t best = k;
        double best_norm = -1.0;
        for (std::size_t c = 0; c < k; ++c) {
            if (chosen[c]) continue;
            const double nv = norm2(residual[c]);
            if (nv > best_norm) {
                best_norm = nv;
                best = c;
            }
        }
        chosen[best] = true;
        if (best_norm == 0.0) continue;
        std::vector<cplx> qv = residual[best];
        for (auto& z : qv) z /= best_norm;
        for (std::size_t c = 0; c < k; ++c) {
            if (chosen[c]) continue;
            cplx proj = 0.0;
            for (std::size_t i = 0; i < n_p; ++i) proj += std::conj(qv[i]) * residual[c][i];
            for (std::size_t i = 0; i < n_p; ++i) residual[c][i] -= proj * qv[i];
        }
    }
    std::vector<std::size_t> perm;
    perm.reserve(k);
    for (std::size_t c = 0; c < k; ++c)
        if (chosen[c]) perm.push_back(c);
    for (std::size_t c = 0; c < k; ++c)
        if (!chosen[c]) perm.push_back(c);

    // Keep the identity unless the greedy choice is materially better; ties
    // would otherwise flip columns on rounding noise alone.
    if (perm == identity ||
        !(leading_block_sigma_min(u, n_p, perm) > leading_block_sigma_min(u, n_p, identity) * (1.0 + 1e-12) + 1e-300)) {
        return {u, identity};
    }
    Matrix up(k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) up(i, j) = u(i, perm[j]);
    return {std::move(up), std::move(perm)};
}

}  // namespace eberlein
