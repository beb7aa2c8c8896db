#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "eberlein/blockmat.hpp"

namespace eberlein {

enum class Provenance {
    row,
    col,
    serial_perm_col,
    serial_perm_row,
    derived_shift,
    derived_reverse,
    derived_transposition,
    derived_vertex_perm,
    custom,
};

std::string to_string(Provenance p);

/// A cyclic block pivot ordering: each of the M = m(m-1)/2 pairs (p, q),
/// p < q, exactly once per cycle. Block indices are 0-based.
class PivotOrdering {
public:
    /// Validates that `pairs` enumerates every pair exactly once.
    PivotOrdering(std::size_t m, std::vector<PivotPair> pairs, Provenance provenance = Provenance::custom);
    PivotOrdering(std::size_t m, std::vector<PivotPair> pairs, std::vector<Provenance> history);

    std::size_t m() const noexcept { return m_; }
    std::size_t size() const noexcept { return pairs_.size(); }
    const std::vector<PivotPair>& pairs() const noexcept { return pairs_; }
    const PivotPair& operator[](std::size_t k) const { return pairs_.at(k); }

    Provenance provenance() const noexcept { return history_.back(); }
    /// Base construction first, then every derivation applied to it.
    const std::vector<Provenance>& history() const noexcept { return history_; }

    /// Position k of each pair as an m x m strictly upper triangular table;
    /// entry (i, j) for i < j, -1 elsewhere.
    std::vector<std::vector<long>> position_table() const;

    friend bool operator==(const PivotOrdering& a, const PivotOrdering& b) {
        return a.m_ == b.m_ && a.pairs_ == b.pairs_;
    }

private:
    std::size_t m_;
    std::vector<PivotPair> pairs_;
    std::vector<Provenance> history_;
};

PivotOrdering row_cyclic(std::size_t m);
PivotOrdering col_cyclic(std::size_t m);

enum class SerialDirection { col, row };

/// Member of B_c (col) or B_r (row) built from explicit inner permutations.
/// For col: taus[j-2] permutes {0..j-1} and orders column j, j = 2..m-1
/// (column 1 holds only (0, 1)). For row: taus[k] permutes {i+1..m-1} for
/// row i = m-3-k, rows taken bottom to top (row m-2 holds only (m-2, m-1)).
PivotOrdering serial_from_permutations(std::size_t m, const std::vector<std::vector<std::size_t>>& taus,
                                       SerialDirection direction);

/// Uniformly random member of B_c or B_r, deterministic in `seed`.
PivotOrdering serial_with_permutations(std::size_t m, std::uint64_t seed, SerialDirection direction);

bool is_admissible_transposition(const PivotPair& a, const PivotPair& b);

namespace derivation {
struct Shift {
    std::size_t t;
};
struct Reverse {};
struct TransposeAt {
    std::size_t k;  // swaps positions k and k+1
};
struct VertexPerm {
    std::vector<std::size_t> q;  // permutation of {0..m-1}
};
}  // namespace derivation

using Derivation = std::variant<derivation::Shift, derivation::Reverse, derivation::TransposeAt, derivation::VertexPerm>;

/// Shift-, reverse-, transposition- or permutation-equivalent ordering.
/// Chains that start in B_sp stay in B_sg.
PivotOrdering derive(const PivotOrdering& o, const Derivation& op);

enum class SerialClass { b_c, b_c_reversed, b_r, b_r_reversed, none };

std::string to_string(SerialClass c);

/// Structural check against the four classes making up B_sp, in the order
/// B_c, reversed B_c, B_r, reversed B_r; the first match is returned.
SerialClass is_serial_member(const PivotOrdering& o);

/// The table rendering used by the CLI: '*' on and below the diagonal,
/// positions right-aligned to a common width, one row per line.
std::string format_ordering_table(const PivotOrdering& o);

/// Text format: one pair "p q" per line, 1-based; '#' starts a comment.
/// The block count is the largest index seen.
PivotOrdering read_ordering(std::istream& in);
PivotOrdering read_ordering_file(const std::filesystem::path& path);
void write_ordering(std::ostream& out, const PivotOrdering& o);

/// "row", "col", "serial-perm:SEED" (column-serial) or "file:PATH".
PivotOrdering ordering_from_spec(const std::string& spec, std::size_t m);

}  // namespace eberlein
