#include "eberlein/blockmat.hpp"

#include <cmath>
#include <string>

#include "eberlein/error.hpp"

namespace eberlein {

std::vector<std::size_t> pivot_indices(const BlockPartition& partition, PivotPair pivot) {
    if (!(pivot.p < pivot.q && pivot.q < partition.m())) {
        throw InvalidArgument("pivot pair (" + std::to_string(pivot.p) + ", " + std::to_string(pivot.q) +
                              ") invalid for " + std::to_string(partition.m()) + " blocks");
    }
    std::vector<std::size_t> idx;
    idx.reserve(partition.size(pivot.p) + partition.size(pivot.q));
    for (std::size_t b : {pivot.p, pivot.q}) {
        for (std::size_t k = 0; k < partition.size(b); ++k) idx.push_back(partition.offset(b) + k);
    }
    return idx;
}

namespace {

void check_core(const ElementaryBlockTransform& t) {
    const auto idx_size = t.partition.size(t.pivot.p) + t.partition.size(t.pivot.q);
    if (t.core.dim() != idx_size) {
        throw InvalidArgument("elementary transform core has dimension " + std::to_string(t.core.dim()) +
                              ", expected n_p + n_q = " + std::to_string(idx_size));
    }
}

}  // namespace

Matrix embed(const ElementaryBlockTransform& t) {
    check_core(t);
    const auto idx = pivot_indices(t.partition, t.pivot);
    Matrix e = Matrix::identity(t.partition.n());
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = 0; b < idx.size(); ++b) e(idx[a], idx[b]) = t.core(a, b);
    return e;
}

void right_multiply_inplace(Matrix& a, std::span<const std::size_t> idx, const Matrix& core) {
    const std::size_t n = a.dim();
    const std::size_t k = idx.size();
    std::vector<cplx> in(k);
    for (std::size_t i = 0; i < n; ++i) {
        auto row = a.row(i);
        for (std::size_t c = 0; c < k; ++c) in[c] = row[idx[c]];
        for (std::size_t c = 0; c < k; ++c) {
            cplx s = 0.0;
            for (std::size_t l = 0; l < k; ++l) s += in[l] * core(l, c);
            row[idx[c]] = s;
        }
    }
}

void left_multiply_inplace(Matrix& a, std::span<const std::size_t> idx, const Matrix& inverse_core) {
    const std::size_t n = a.dim();
    const std::size_t k = idx.size();
    std::vector<cplx> in(k);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t r = 0; r < k; ++r) in[r] = a(idx[r], j);
        for (std::size_t r = 0; r < k; ++r) {
            cplx s = 0.0;
            for (std::size_t l = 0; l < k; ++l) s += inverse_core(r, l) * in[l];
            a(idx[r], j) = s;
        }
    }
}

void apply_similarity_inplace(Matrix& a, std::span<const std::size_t> idx, const Matrix& core,
                              const Matrix& inverse_core) {
    right_multiply_inplace(a, idx, core);
    left_multiply_inplace(a, idx, inverse_core);
}

Matrix apply_elementary_similarity(const Matrix& a, const ElementaryBlockTransform& t,
                                   const Matrix& inverse_core) {
    check_core(t);
    if (a.dim() != t.partition.n()) throw InvalidArgument("apply_elementary_similarity: A does not match partition");
    if (inverse_core.dim() != t.core.dim()) throw InvalidArgument("apply_elementary_similarity: inverse core size");
    const double err = max_abs_diff(inverse_core * t.core, Matrix::identity(t.core.dim()));
    if (!(err <= 1e-12)) {
        throw InvalidArgument("apply_elementary_similarity: inverse_core * core deviates from I by " +
                              std::to_string(err));
    }
    Matrix out = a;
    apply_similarity_inplace(out, pivot_indices(t.partition, t.pivot), t.core, inverse_core);
    return out;
}

double off_norm(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        auto row = a.row(i);
        for (std::size_t j = 0; j < a.dim(); ++j)
            if (i != j) s += std::norm(row[j]);
    }
    return std::sqrt(s);
}

Matrix hermitian_part(const Matrix& a) {
    const std::size_t n = a.dim();
    Matrix h(n);
    for (std::size_t i = 0; i < n; ++i) {
        h(i, i) = a(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const cplx v = 0.5 * (a(i, j) + std::conj(a(j, i)));
            h(i, j) = v;
            h(j, i) = std::conj(v);
        }
    }
    return h;
}

Matrix skew_part(const Matrix& a) {
    const std::size_t n = a.dim();
    Matrix z(n);
    for (std::size_t i = 0; i < n; ++i) {
        z(i, i) = cplx(0.0, a(i, i).imag());
        for (std::size_t j = i + 1; j < n; ++j) {
            const cplx v = 0.5 * (a(i, j) - std::conj(a(j, i)));
            z(i, j) = v;
            z(j, i) = -std::conj(v);
        }
    }
    return z;
}

Matrix c_operator(const Matrix& a) {
    const Matrix ah = a.adjoint();
    return a * ah - ah * a;
}

cplx commutator_entry(const Matrix& a, std::size_t r, std::size_t s) {
    const std::size_t n = a.dim();
    cplx rows = 0.0;
    cplx cols = 0.0;
    auto ar = a.row(r);
    auto as = a.row(s);
    for (std::size_t i = 0; i < n; ++i) {
        rows += ar[i] * std::conj(as[i]);
        cols += std::conj(a(i, r)) * a(i, s);
    }
    return rows - cols;
}

}  // namespace eberlein
