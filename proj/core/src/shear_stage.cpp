#include "eberlein/shear_stage.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "eberlein/blockmat.hpp"
#include "eberlein/error.hpp"

namespace eberlein {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kSkipThreshold = 1e-15;
constexpr double kTanhCeiling = 1.0 - 1e-15;

struct ShearEntries {
    cplx ch, s01, s10;  // S; S^{-1} has the off-diagonal signs flipped
};

ShearEntries entries_of(const ShearParams& params) {
    const double ch = std::cosh(params.psi);
    const double sh = std::sinh(params.psi);
    const cplx e = std::polar(1.0, params.beta);
    return {ch, -kI * e * sh, kI * std::conj(e) * sh};
}

ShearAuxiliaries auxiliaries_with_c(const Matrix& a, std::size_t r, std::size_t s, double beta, cplx c) {
    const std::size_t n = a.dim();
    ShearAuxiliaries aux;
    aux.c = c;
    aux.d = a(r, r) - a(s, s);
    const double cb = std::cos(beta);
    const double sb = std::sin(beta);
    aux.t = (a(r, s) + a(s, r)) * cb - kI * (a(r, s) - a(s, r)) * sb;
    double v = 0.0;
    cplx xi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == r || i == s) continue;
        const cplx air = a(i, r), ari = a(r, i), ais = a(i, s), asi = a(s, i);
        v += std::norm(air) + std::norm(ari) + std::norm(ais) + std::norm(asi);
        xi += ari * std::conj(asi) - std::conj(air) * ais;
    }
    aux.v = v;
    aux.xi = 2.0 * xi;
    aux.w = -aux.xi.real() * sb + aux.xi.imag() * cb;
    return aux;
}

ShearParams params_for(const ShearAuxiliaries& aux, double beta) {
    const double th = tanh_psi_from(aux);
    if (!(std::abs(th) <= kTanhCeiling)) {
        throw NumericalFailure("shear: |tanh(psi)| = " + std::to_string(std::abs(th)) + " is not below 1");
    }
    return {beta, std::atanh(th), th};
}

double normalize_angle(double x) {
    if (x <= -std::numbers::pi) return x + 2.0 * std::numbers::pi;
    if (x > std::numbers::pi) return x - 2.0 * std::numbers::pi;
    return x;
}

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> enumerate_inner_pairs(const BlockPartition& partition, std::size_t p,
                                                                        std::size_t q) {
    const auto idx = pivot_indices(partition, {p, q});
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(idx.size() * (idx.size() - 1) / 2);
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b) pairs.emplace_back(idx[a], idx[b]);
    return pairs;
}

ShearAuxiliaries shear_auxiliaries(const Matrix& a, std::size_t r, std::size_t s, double beta) {
    if (!(r < s && s < a.dim())) throw InvalidArgument("shear_auxiliaries: need r < s < n");
    return auxiliaries_with_c(a, r, s, beta, commutator_entry(a, r, s));
}

double tanh_psi_from(const ShearAuxiliaries& aux) {
    const double den = aux.v + 2.0 * (std::norm(aux.t) + std::norm(aux.d));
    if (den == 0.0) return 0.0;
    return ((aux.t * std::conj(aux.d)).imag() - 0.5 * aux.w) / den;
}

ShearParams shear_angles(const Matrix& a, std::size_t r, std::size_t s, double a_norm_sq) {
    if (!(r < s && s < a.dim())) throw InvalidArgument("shear_angles: need r < s < n");
    if (a_norm_sq < 0.0) a_norm_sq = a.frobenius_norm_squared();

    const cplx c = commutator_entry(a, r, s);
    double beta0 = 0.0;
    if (c != cplx{}) beta0 = normalize_angle(std::atan2(-c.real(), c.imag()));
    const ShearParams p0 = params_for(auxiliaries_with_c(a, r, s, beta0, c), beta0);
    if (std::abs(c) <= kSkipThreshold * a_norm_sq && std::abs(p0.tanh_psi) <= kSkipThreshold) {
        return {beta0, 0.0, 0.0};
    }
    // The tan(beta) relation has two roots in (-pi, pi]; keep the one with
    // the larger reduction, preferring beta0 on ties.
    const double beta1 = normalize_angle(beta0 + std::numbers::pi);
    const ShearParams p1 = params_for(auxiliaries_with_c(a, r, s, beta1, c), beta1);
    const double d0 = shear_delta(a, r, s, p0);
    const double d1 = shear_delta(a, r, s, p1);
    return d1 > d0 + 1e-14 * a_norm_sq ? p1 : p0;
}

Matrix shear_matrix(const ShearParams& params) {
    const auto e = entries_of(params);
    Matrix m(2);
    m(0, 0) = e.ch;
    m(0, 1) = e.s01;
    m(1, 0) = e.s10;
    m(1, 1) = e.ch;
    return m;
}

Matrix shear_matrix_inverse(const ShearParams& params) {
    const auto e = entries_of(params);
    Matrix m(2);
    m(0, 0) = e.ch;
    m(0, 1) = -e.s01;
    m(1, 0) = -e.s10;
    m(1, 1) = e.ch;
    return m;
}

double shear_delta(const Matrix& a, std::size_t r, std::size_t s, const ShearParams& params) {
    const auto e = entries_of(params);
    const cplx i01 = -e.s01, i10 = -e.s10;
    double before = 0.0, after = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        if (i == r || i == s) continue;
        const cplx air = a(i, r), ais = a(i, s), ari = a(r, i), asi = a(s, i);
        before += std::norm(air) + std::norm(ais) + std::norm(ari) + std::norm(asi);
        after += std::norm(air * e.ch + ais * e.s10) + std::norm(air * e.s01 + ais * e.ch);
        after += std::norm(e.ch * ari + i01 * asi) + std::norm(i10 * ari + e.ch * asi);
    }
    const cplx rr = a(r, r), rs = a(r, s), sr = a(s, r), ss = a(s, s);
    before += std::norm(rr) + std::norm(rs) + std::norm(sr) + std::norm(ss);
    const cplx crr = rr * e.ch + rs * e.s10, crs = rr * e.s01 + rs * e.ch;
    const cplx csr = sr * e.ch + ss * e.s10, css = sr * e.s01 + ss * e.ch;
    after += std::norm(e.ch * crr + i01 * csr) + std::norm(e.ch * crs + i01 * css);
    after += std::norm(i10 * crr + e.ch * csr) + std::norm(i10 * crs + e.ch * css);
    return before - after;
}

double apply_shear_inplace(Matrix& a, std::size_t r, std::size_t s, const ShearParams& params) {
    if (params.psi == 0.0) return 0.0;
    const auto e = entries_of(params);
    const cplx i01 = -e.s01, i10 = -e.s10;
    const std::size_t n = a.dim();
    double before = std::norm(a(r, r)) + std::norm(a(r, s)) + std::norm(a(s, r)) + std::norm(a(s, s));
    double after = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const cplx air = a(i, r), ais = a(i, s);
        a(i, r) = air * e.ch + ais * e.s10;
        a(i, s) = air * e.s01 + ais * e.ch;
        if (i != r && i != s) {
            before += std::norm(air) + std::norm(ais);
            after += std::norm(a(i, r)) + std::norm(a(i, s));
        }
    }
    auto row_r = a.row(r);
    auto row_s = a.row(s);
    for (std::size_t j = 0; j < n; ++j) {
        const cplx arj = row_r[j], asj = row_s[j];
        if (j != r && j != s) before += std::norm(arj) + std::norm(asj);
        row_r[j] = e.ch * arj + i01 * asj;
        row_s[j] = i10 * arj + e.ch * asj;
        after += std::norm(row_r[j]) + std::norm(row_s[j]);
    }
    return before - after;
}

std::pair<Matrix, double> apply_shear(const Matrix& a, std::size_t r, std::size_t s, const ShearParams& params) {
    if (!(r < s && s < a.dim())) throw InvalidArgument("apply_shear: need r < s < n");
    Matrix out = a;
    const double delta = apply_shear_inplace(out, r, s, params);
    return {std::move(out), delta};
}

namespace {

// s_core <- s_core * S_l on local columns (x, y); s_core_inv <- S_l^{-1} * s_core_inv on local rows.
void accumulate(Matrix& s_core, Matrix& s_inv, std::size_t x, std::size_t y, const ShearParams& params) {
    const auto e = entries_of(params);
    const cplx i01 = -e.s01, i10 = -e.s10;
    const std::size_t k = s_core.dim();
    for (std::size_t i = 0; i < k; ++i) {
        const cplx ux = s_core(i, x), uy = s_core(i, y);
        s_core(i, x) = ux * e.ch + uy * e.s10;
        s_core(i, y) = ux * e.s01 + uy * e.ch;
    }
    for (std::size_t j = 0; j < k; ++j) {
        const cplx vx = s_inv(x, j), vy = s_inv(y, j);
        s_inv(x, j) = e.ch * vx + i01 * vy;
        s_inv(y, j) = i10 * vx + e.ch * vy;
    }
}

}  // namespace

ShearStageResult shear_stage_inplace(Matrix& a, std::span<const std::size_t> idx, double a_norm_sq, int sweeps) {
    const std::size_t k = idx.size();
    ShearStageResult res;
    res.s_core = Matrix::identity(k);
    res.s_core_inv = Matrix::identity(k);
    res.step_deltas.reserve(static_cast<std::size_t>(sweeps) * k * (k - 1) / 2);
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        for (std::size_t x = 0; x < k; ++x) {
            for (std::size_t y = x + 1; y < k; ++y) {
                const std::size_t r = idx[x], s = idx[y];
                const double c_abs = std::abs(commutator_entry(a, r, s));
                res.sum_c_squared += c_abs * c_abs;
                res.sum_c_abs += c_abs;
                const ShearParams params = shear_angles(a, r, s, a_norm_sq);
                const double delta = apply_shear_inplace(a, r, s, params);
                if (params.psi != 0.0) accumulate(res.s_core, res.s_core_inv, x, y, params);
                res.step_deltas.push_back(delta);
                res.norm_reduction += delta;
                ++res.inner_steps;
            }
        }
    }
    return res;
}

ShearStageResult compute_shear_block(const Matrix& a, const BlockPartition& partition, std::size_t p, std::size_t q,
                                     int sweeps) {
    if (a.dim() != partition.n()) throw InvalidArgument("compute_shear_block: A does not match partition");
    if (sweeps < 1) throw InvalidArgument("compute_shear_block: sweeps must be positive");
    const auto idx = pivot_indices(partition, {p, q});
    Matrix work = a;
    const double norm_sq = a.frobenius_norm_squared();
    ShearStageResult res = shear_stage_inplace(work, idx, norm_sq, sweeps);
    res.norm_reduction = norm_sq - work.frobenius_norm_squared();
    res.a_next = std::move(work);
    return res;
}

}  // namespace eberlein
