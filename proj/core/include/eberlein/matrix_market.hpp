#pragma once

#include <filesystem>
#include <iosfwd>

#include "eberlein/matrix.hpp"

namespace eberlein {

/// Reads square `matrix {coordinate|array} {real|complex} general` files.
/// Pattern, integer and symmetric variants are rejected. Throws ParseError
/// with the offending line number.
Matrix read_matrix_market(std::istream& in);
Matrix read_matrix_market(const std::filesystem::path& path);

/// Writes `matrix array complex general`, column-major, 17 significant digits.
void write_matrix_market(std::ostream& out, const Matrix& a);
void write_matrix_market(const std::filesystem::path& path, const Matrix& a);

}  // namespace eberlein
