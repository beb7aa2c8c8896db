#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eberlein/matrix.hpp"

namespace eberlein {

enum class MatrixKind { a0_normal, a1_random, a2_repeated, from_file };

std::string to_string(MatrixKind k);
/// Accepts "a0", "a1", "a2" and the long names.
MatrixKind parse_matrix_kind(const std::string& s);

struct TestMatrixSpec {
    MatrixKind kind = MatrixKind::a1_random;
    std::size_t n = 0;
    /// a2 only: (m1, m2, m3, m4, m5) with m1 + 2 (m2 + m3 + m4 + m5) = n.
    std::optional<std::vector<std::size_t>> multiplicities;
    std::uint64_t seed = 0;
    std::optional<std::filesystem::path> file;
};

struct GeneratedMatrix {
    Matrix a;
    /// Eigenvalues by construction (a0, a2), in construction order.
    std::optional<std::vector<cplx>> spectrum;
};

/// m2 = m3 = m4 = m5 = n / 10 and m1 = n - 8 m2, e.g. (40, 20, 20, 20, 20) for n = 200.
std::vector<std::size_t> default_multiplicities(std::size_t n);

/// a0: Q diag(d) Q^* with d_i = randn + i randn.
/// a1: randn(n) + i randn(n).
/// a2: Q diag(a) Q^* where a holds a_1 m_1 times and each of a_2..a_5 and its
///     conjugate m_i times.
/// from_file: Matrix Market.
GeneratedMatrix gen_test_matrix(const TestMatrixSpec& spec);

}  // namespace eberlein
