#include "eberlein/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "atomic_write.hpp"
#include "eberlein/error.hpp"

namespace eberlein {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

bool blank(const std::string& s) { return s.find_first_not_of(" \t\r") == std::string::npos; }

}  // namespace

Matrix read_matrix_market(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) throw ParseError("empty file", 1);
    ++lineno;
    std::istringstream hs(line);
    std::string banner, object, format, field, symmetry;
    hs >> banner >> object >> format >> field >> symmetry;
    if (lower(banner) != "%%matrixmarket") throw ParseError("missing %%MatrixMarket banner", lineno);
    object = lower(object);
    format = lower(format);
    field = lower(field);
    symmetry = lower(symmetry);
    if (object != "matrix") throw ParseError("unsupported object '" + object + "'", lineno);
    if (format != "coordinate" && format != "array") throw ParseError("unsupported format '" + format + "'", lineno);
    if (field != "real" && field != "complex") {
        throw ParseError("unsupported field '" + field + "' (only real and complex are read)", lineno);
    }
    if (symmetry != "general") {
        throw ParseError("unsupported symmetry '" + symmetry + "' (only general is read)", lineno);
    }
    const bool coordinate = format == "coordinate";
    const bool complex = field == "complex";

    // Skip comments to the size line.
    while (std::getline(in, line)) {
        ++lineno;
        if (!blank(line) && line[0] != '%') break;
    }
    if (!in && line.empty()) throw ParseError("missing size line", lineno + 1);
    std::istringstream ss(line);
    long long rows = 0, cols = 0, nnz = 0;
    if (!(ss >> rows >> cols) || (coordinate && !(ss >> nnz))) throw ParseError("malformed size line", lineno);
    if (rows <= 0 || cols <= 0 || nnz < 0) throw ParseError("invalid dimensions", lineno);
    if (rows != cols) {
        throw ParseError("matrix is " + std::to_string(rows) + "x" + std::to_string(cols) + ", not square", lineno);
    }
    const auto n = static_cast<std::size_t>(rows);
    Matrix a(n);
    const long long expected = coordinate ? nnz : rows * cols;
    long long read = 0;
    while (read < expected && std::getline(in, line)) {
        ++lineno;
        if (blank(line) || line[0] == '%') continue;
        std::istringstream es(line);
        long long i = 0, j = 0;
        if (coordinate) {
            if (!(es >> i >> j)) throw ParseError("expected row and column index", lineno);
            if (i < 1 || i > rows || j < 1 || j > cols) throw ParseError("index out of range", lineno);
        } else {
            i = read % rows + 1;
            j = read / rows + 1;
        }
        double re = 0.0, im = 0.0;
        if (!(es >> re) || (complex && !(es >> im))) throw ParseError("malformed value", lineno);
        a(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)) = {re, im};
        ++read;
    }
    if (read < expected) {
        throw ParseError("expected " + std::to_string(expected) + " entries, found " + std::to_string(read), lineno);
    }
    return a;
}

Matrix read_matrix_market(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    return read_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const Matrix& a) {
    const std::size_t n = a.dim();
    out << "%%MatrixMarket matrix array complex general\n" << n << ' ' << n << '\n';
    out << std::setprecision(17);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) out << a(i, j).real() << ' ' << a(i, j).imag() << '\n';
}

void write_matrix_market(const std::filesystem::path& path, const Matrix& a) {
    detail::atomic_write(path, [&](std::ostream& out) { write_matrix_market(out, a); });
}

}  // namespace eberlein
