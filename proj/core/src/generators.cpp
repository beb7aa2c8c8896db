#include "eberlein/generators.hpp"

#include <numeric>

#include "eberlein/error.hpp"
#include "eberlein/matrix_market.hpp"
#include "eberlein/random.hpp"

namespace eberlein {

std::string to_string(MatrixKind k) {
    switch (k) {
        case MatrixKind::a0_normal: return "a0_normal";
        case MatrixKind::a1_random: return "a1_random";
        case MatrixKind::a2_repeated: return "a2_repeated";
        case MatrixKind::from_file: return "from_file";
    }
    return "unknown";
}

MatrixKind parse_matrix_kind(const std::string& s) {
    if (s == "a0" || s == "a0_normal") return MatrixKind::a0_normal;
    if (s == "a1" || s == "a1_random") return MatrixKind::a1_random;
    if (s == "a2" || s == "a2_repeated") return MatrixKind::a2_repeated;
    if (s == "file" || s == "from_file") return MatrixKind::from_file;
    throw InvalidArgument("unknown matrix kind '" + s + "' (expected a0, a1 or a2)");
}

std::vector<std::size_t> default_multiplicities(std::size_t n) {
    const std::size_t m = n / 10;
    return {n - 8 * m, m, m, m, m};
}

namespace {

Matrix unitary_embed(const std::vector<cplx>& spectrum, Rng& rng) {
    const std::size_t n = spectrum.size();
    const Matrix q = random_unitary(n, rng);
    Matrix qd = q;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) qd(i, j) *= spectrum[j];
    return qd * q.adjoint();
}

}  // namespace

GeneratedMatrix gen_test_matrix(const TestMatrixSpec& spec) {
    if (spec.kind == MatrixKind::from_file) {
        if (!spec.file) throw InvalidArgument("gen_test_matrix: from_file needs a path");
        return {read_matrix_market(*spec.file), std::nullopt};
    }
    if (spec.n == 0) throw InvalidArgument("gen_test_matrix: n must be positive");
    Rng rng(spec.seed);
    switch (spec.kind) {
        case MatrixKind::a0_normal: {
            std::vector<cplx> d(spec.n);
            for (auto& x : d) x = rng.complex_normal();
            Matrix a = unitary_embed(d, rng);
            return {std::move(a), std::move(d)};
        }
        case MatrixKind::a1_random: return {random_complex_gaussian(spec.n, rng), std::nullopt};
        case MatrixKind::a2_repeated: {
            const auto mult = spec.multiplicities.value_or(default_multiplicities(spec.n));
            if (mult.size() != 5) throw InvalidArgument("a2: expected five multiplicities m1..m5");
            const std::size_t total = mult[0] + 2 * (mult[1] + mult[2] + mult[3] + mult[4]);
            if (total != spec.n) {
                throw InvalidArgument("a2: m1 + 2(m2 + m3 + m4 + m5) = " + std::to_string(total) +
                                      " does not equal n = " + std::to_string(spec.n));
            }
            std::vector<cplx> values(5);
            for (auto& x : values) x = rng.complex_normal();
            std::vector<cplx> spectrum;
            spectrum.reserve(spec.n);
            spectrum.insert(spectrum.end(), mult[0], values[0]);
            for (std::size_t i = 1; i < 5; ++i) spectrum.insert(spectrum.end(), mult[i], values[i]);
            for (std::size_t i = 1; i < 5; ++i) spectrum.insert(spectrum.end(), mult[i], std::conj(values[i]));
            Matrix a = unitary_embed(spectrum, rng);
            return {std::move(a), std::move(spectrum)};
        }
        case MatrixKind::from_file: break;
    }
    throw InvalidArgument("gen_test_matrix: unsupported kind");
}

}  // namespace eberlein
