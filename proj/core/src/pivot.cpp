#include "eberlein/pivot.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

#include "eberlein/error.hpp"
#include "eberlein/random.hpp"

namespace eberlein {

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::row: return "row";
        case Provenance::col: return "col";
        case Provenance::serial_perm_col: return "serial_perm_col";
        case Provenance::serial_perm_row: return "serial_perm_row";
        case Provenance::derived_shift: return "derived_shift";
        case Provenance::derived_reverse: return "derived_reverse";
        case Provenance::derived_transposition: return "derived_transposition";
        case Provenance::derived_vertex_perm: return "derived_vertex_perm";
        case Provenance::custom: return "custom";
    }
    return "unknown";
}

std::string to_string(SerialClass c) {
    switch (c) {
        case SerialClass::b_c: return "B_c";
        case SerialClass::b_c_reversed: return "B_c_reversed";
        case SerialClass::b_r: return "B_r";
        case SerialClass::b_r_reversed: return "B_r_reversed";
        case SerialClass::none: return "none";
    }
    return "unknown";
}

PivotOrdering::PivotOrdering(std::size_t m, std::vector<PivotPair> pairs, Provenance provenance)
    : PivotOrdering(m, std::move(pairs), std::vector<Provenance>{provenance}) {}

PivotOrdering::PivotOrdering(std::size_t m, std::vector<PivotPair> pairs, std::vector<Provenance> history)
    : m_(m), pairs_(std::move(pairs)), history_(std::move(history)) {
    if (m_ < 2) throw InvalidArgument("pivot ordering needs at least 2 blocks");
    if (history_.empty()) history_.push_back(Provenance::custom);
    const std::size_t total = m_ * (m_ - 1) / 2;
    if (pairs_.size() != total) {
        throw InvalidArgument("pivot ordering for m = " + std::to_string(m_) + " needs " + std::to_string(total) +
                              " pairs, got " + std::to_string(pairs_.size()));
    }
    std::vector<bool> seen(m_ * m_, false);
    for (const auto& pr : pairs_) {
        if (!(pr.p < pr.q && pr.q < m_)) {
            throw InvalidArgument("pivot pair (" + std::to_string(pr.p + 1) + ", " + std::to_string(pr.q + 1) +
                                  ") out of range");
        }
        if (seen[pr.p * m_ + pr.q]) {
            throw InvalidArgument("pivot pair (" + std::to_string(pr.p + 1) + ", " + std::to_string(pr.q + 1) +
                                  ") repeated");
        }
        seen[pr.p * m_ + pr.q] = true;
    }
}

std::vector<std::vector<long>> PivotOrdering::position_table() const {
    std::vector<std::vector<long>> table(m_, std::vector<long>(m_, -1));
    for (std::size_t k = 0; k < pairs_.size(); ++k) table[pairs_[k].p][pairs_[k].q] = static_cast<long>(k);
    return table;
}

PivotOrdering row_cyclic(std::size_t m) {
    if (m < 2) throw InvalidArgument("row_cyclic: m must be at least 2");
    std::vector<PivotPair> pairs;
    for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = p + 1; q < m; ++q) pairs.push_back({p, q});
    return {m, std::move(pairs), Provenance::row};
}

PivotOrdering col_cyclic(std::size_t m) {
    if (m < 2) throw InvalidArgument("col_cyclic: m must be at least 2");
    std::vector<PivotPair> pairs;
    for (std::size_t q = 1; q < m; ++q)
        for (std::size_t p = 0; p < q; ++p) pairs.push_back({p, q});
    return {m, std::move(pairs), Provenance::col};
}

namespace {

void check_permutation_of_range(const std::vector<std::size_t>& tau, std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> sorted = tau;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::size_t> expect(hi - lo);
    std::iota(expect.begin(), expect.end(), lo);
    if (sorted != expect) {
        throw InvalidArgument("serial ordering: inner permutation must permute {" + std::to_string(lo + 1) + ".." +
                              std::to_string(hi) + "}");
    }
}

void shuffle(std::vector<std::size_t>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

}  // namespace

PivotOrdering serial_from_permutations(std::size_t m, const std::vector<std::vector<std::size_t>>& taus,
                                       SerialDirection direction) {
    if (m < 2) throw InvalidArgument("serial ordering: m must be at least 2");
    if (taus.size() != m - 2) throw InvalidArgument("serial ordering: expected m - 2 inner permutations");
    std::vector<PivotPair> pairs;
    if (direction == SerialDirection::col) {
        pairs.push_back({0, 1});
        for (std::size_t j = 2; j < m; ++j) {
            const auto& tau = taus[j - 2];
            check_permutation_of_range(tau, 0, j);
            for (std::size_t i : tau) pairs.push_back({i, j});
        }
        return {m, std::move(pairs), Provenance::serial_perm_col};
    }
    pairs.push_back({m - 2, m - 1});
    for (std::size_t k = 0; k + 2 < m; ++k) {
        const std::size_t i = m - 3 - k;
        const auto& tau = taus[k];
        check_permutation_of_range(tau, i + 1, m);
        for (std::size_t j : tau) pairs.push_back({i, j});
    }
    return {m, std::move(pairs), Provenance::serial_perm_row};
}

PivotOrdering serial_with_permutations(std::size_t m, std::uint64_t seed, SerialDirection direction) {
    if (m < 2) throw InvalidArgument("serial_with_permutations: m must be at least 2");
    Rng rng(seed);
    std::vector<std::vector<std::size_t>> taus;
    for (std::size_t k = 0; k + 2 < m; ++k) {
        std::vector<std::size_t> tau;
        if (direction == SerialDirection::col) {
            tau.resize(k + 2);
            std::iota(tau.begin(), tau.end(), std::size_t{0});
        } else {
            const std::size_t i = m - 3 - k;
            tau.resize(m - i - 1);
            std::iota(tau.begin(), tau.end(), i + 1);
        }
        shuffle(tau, rng);
        taus.push_back(std::move(tau));
    }
    return serial_from_permutations(m, taus, direction);
}

bool is_admissible_transposition(const PivotPair& a, const PivotPair& b) {
    return a.p != b.p && a.p != b.q && a.q != b.p && a.q != b.q && a.p != a.q && b.p != b.q;
}

PivotOrdering derive(const PivotOrdering& o, const Derivation& op) {
    std::vector<PivotPair> pairs = o.pairs();
    std::vector<Provenance> history = o.history();
    const std::size_t total = pairs.size();
    if (const auto* sh = std::get_if<derivation::Shift>(&op)) {
        std::rotate(pairs.begin(), pairs.begin() + static_cast<std::ptrdiff_t>(sh->t % total), pairs.end());
        history.push_back(Provenance::derived_shift);
    } else if (std::holds_alternative<derivation::Reverse>(op)) {
        std::reverse(pairs.begin(), pairs.end());
        history.push_back(Provenance::derived_reverse);
    } else if (const auto* tr = std::get_if<derivation::TransposeAt>(&op)) {
        if (tr->k + 1 >= total) throw InvalidArgument("transpose_at: position out of range");
        if (!is_admissible_transposition(pairs[tr->k], pairs[tr->k + 1])) {
            throw InvalidArgument("transpose_at(" + std::to_string(tr->k) +
                                  "): adjacent pairs share an index, transposition not admissible");
        }
        std::swap(pairs[tr->k], pairs[tr->k + 1]);
        history.push_back(Provenance::derived_transposition);
    } else {
        const auto& q = std::get<derivation::VertexPerm>(op).q;
        std::vector<std::size_t> sorted = q;
        std::sort(sorted.begin(), sorted.end());
        std::vector<std::size_t> expect(o.m());
        std::iota(expect.begin(), expect.end(), std::size_t{0});
        if (sorted != expect) throw InvalidArgument("vertex_perm: q must be a permutation of the block indices");
        for (auto& pr : pairs) {
            const std::size_t a = q[pr.p], b = q[pr.q];
            pr = {std::min(a, b), std::max(a, b)};
        }
        history.push_back(Provenance::derived_vertex_perm);
    }
    return {o.m(), std::move(pairs), std::move(history)};
}

namespace {

bool matches_col(const std::vector<PivotPair>& pairs, std::size_t m) {
    std::size_t k = 0;
    for (std::size_t j = 1; j < m; ++j) {
        std::vector<bool> hit(j, false);
        for (std::size_t c = 0; c < j; ++c, ++k) {
            if (pairs[k].q != j || hit[pairs[k].p]) return false;
            hit[pairs[k].p] = true;
        }
    }
    return true;
}

bool matches_row(const std::vector<PivotPair>& pairs, std::size_t m) {
    std::size_t k = 0;
    for (std::size_t i = m - 1; i-- > 0;) {
        std::vector<bool> hit(m, false);
        for (std::size_t c = i + 1; c < m; ++c, ++k) {
            if (pairs[k].p != i || hit[pairs[k].q]) return false;
            hit[pairs[k].q] = true;
        }
    }
    return true;
}

}  // namespace

SerialClass is_serial_member(const PivotOrdering& o) {
    const auto& fwd = o.pairs();
    const std::vector<PivotPair> bwd(fwd.rbegin(), fwd.rend());
    if (matches_col(fwd, o.m())) return SerialClass::b_c;
    if (matches_col(bwd, o.m())) return SerialClass::b_c_reversed;
    if (matches_row(fwd, o.m())) return SerialClass::b_r;
    if (matches_row(bwd, o.m())) return SerialClass::b_r_reversed;
    return SerialClass::none;
}

std::string format_ordering_table(const PivotOrdering& o) {
    const auto table = o.position_table();
    const std::size_t width = std::to_string(o.size() - 1).size();
    std::string out;
    for (std::size_t i = 0; i < o.m(); ++i) {
        for (std::size_t j = 0; j < o.m(); ++j) {
            std::string tok = j <= i ? "*" : std::to_string(table[i][j]);
            if (j) out += ' ';
            out += std::string(width - tok.size(), ' ') + tok;
        }
        out += '\n';
    }
    return out;
}

PivotOrdering read_ordering(std::istream& in) {
    std::vector<PivotPair> pairs;
    std::size_t m = 0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        long long p = 0, q = 0;
        if (!(ls >> p)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            throw ParseError("expected \"p q\"", lineno);
        }
        std::string rest;
        if (!(ls >> q) || (ls >> rest)) throw ParseError("expected exactly two indices \"p q\"", lineno);
        if (p < 1 || q < 1) throw ParseError("block indices are 1-based", lineno);
        if (p >= q) throw ParseError("pair must satisfy p < q", lineno);
        pairs.push_back({static_cast<std::size_t>(p - 1), static_cast<std::size_t>(q - 1)});
        m = std::max(m, static_cast<std::size_t>(q));
    }
    try {
        return {m, std::move(pairs), Provenance::custom};
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what(), 0);
    }
}

PivotOrdering read_ordering_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open ordering file " + path.string());
    return read_ordering(in);
}

void write_ordering(std::ostream& out, const PivotOrdering& o) {
    for (const auto& pr : o.pairs()) out << pr.p + 1 << ' ' << pr.q + 1 << '\n';
}

PivotOrdering ordering_from_spec(const std::string& spec, std::size_t m) {
    if (spec == "row") return row_cyclic(m);
    if (spec == "col") return col_cyclic(m);
    if (spec.starts_with("serial-perm:")) {
        const std::string arg = spec.substr(12);
        std::uint64_t seed = 0;
        const auto r = std::from_chars(arg.data(), arg.data() + arg.size(), seed);
        if (arg.empty() || r.ec != std::errc{} || r.ptr != arg.data() + arg.size()) {
            throw InvalidArgument("ordering: bad seed in '" + spec + "'");
        }
        return serial_with_permutations(m, seed, SerialDirection::col);
    }
    if (spec.starts_with("file:")) {
        PivotOrdering o = read_ordering_file(spec.substr(5));
        if (o.m() != m) {
            throw InvalidArgument("ordering file covers " + std::to_string(o.m()) + " blocks, partition has " +
                                  std::to_string(m));
        }
        return o;
    }
    throw InvalidArgument("unknown ordering '" + spec + "' (expected row, col, serial-perm:SEED or file:PATH)");
}

}  // namespace eberlein
