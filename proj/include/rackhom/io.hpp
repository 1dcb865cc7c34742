#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rackhom/action_module.hpp"
#include "rackhom/chain_complex.hpp"
#include "rackhom/multishelf.hpp"
#include "rackhom/ring.hpp"
#include "rackhom/sequences.hpp"

namespace rackhom {

// ---------------------------------------------------------------------------
// Text formats. Both files are line oriented; blank lines and lines starting
// with '#' are ignored; all numbers are exact decimals (integers, or p/q
// rationals in module files over Q).
//
// Structure file:
//   name <string>                (optional)
//   size <n>
//   levels <level> ... <level>   (one of shelf|spindle|rack|quandle per op)
//   op                           (repeated, one block per level entry)
//   <n rows of n integers>       (table[x][y] = x |> y, row = x)
//
// Module file:
//   structure <path>|builtin:<fixture>
//   ring Z|Q|Fp:<p>
//   rank <m>
//   action <k> <y>               (repeated r*n times, any order, no repeats)
//   <m rows of m entries>

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline std::vector<std::string> read_logical_lines(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;
        lines.push_back(line);
    }
    return lines;
}

inline std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream iss(s);
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

inline int parse_int(const std::string& tok, const std::string& ctx) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(ctx + ": expected an integer, got '" + tok + "'");
    }
}

}  // namespace detail

inline Multishelf parse_structure(std::istream& in) {
    auto lines = detail::read_logical_lines(in);
    std::string name;
    int size = -1;
    std::vector<Level> levels;
    std::vector<OperationTable> ops;
    std::size_t i = 0;
    while (i < lines.size()) {
        auto toks = detail::split_ws(lines[i]);
        const std::string& key = toks[0];
        if (key == "name") {
            std::size_t pos = lines[i].find("name");
            name = lines[i].substr(pos + 4);
            name.erase(0, name.find_first_not_of(" \t"));
            ++i;
        } else if (key == "size") {
            if (toks.size() != 2) throw ParseError("size: expected one integer");
            size = detail::parse_int(toks[1], "size");
            if (size <= 0) throw ParseError("size: must be positive");
            ++i;
        } else if (key == "levels") {
            for (std::size_t t = 1; t < toks.size(); ++t) {
                auto l = level_from_name(toks[t]);
                if (!l) throw ParseError("levels: unknown level '" + toks[t] + "'");
                levels.push_back(*l);
            }
            ++i;
        } else if (key == "op") {
            if (size <= 0) throw ParseError("op: size must come first");
            OperationTable T;
            T.size = size;
            ++i;
            for (int r = 0; r < size; ++r, ++i) {
                if (i >= lines.size()) throw ParseError("op: truncated table");
                auto row = detail::split_ws(lines[i]);
                if (static_cast<int>(row.size()) != size)
                    throw ParseError("op: row has " + std::to_string(row.size()) +
                                     " entries, expected " + std::to_string(size));
                std::vector<int> vals;
                for (const auto& tok : row) {
                    int v = detail::parse_int(tok, "op");
                    if (v < 0 || v >= size)
                        throw ParseError("op: entry " + tok + " out of range 0.." +
                                         std::to_string(size - 1));
                    vals.push_back(v);
                }
                T.table.push_back(std::move(vals));
            }
            ops.push_back(std::move(T));
        } else {
            throw ParseError("unknown keyword '" + key + "'");
        }
    }
    if (size <= 0) throw ParseError("missing size");
    if (ops.empty()) throw ParseError("missing op tables");
    if (levels.empty()) levels.assign(ops.size(), Level::Shelf);
    if (levels.size() != ops.size())
        throw ParseError("levels count (" + std::to_string(levels.size()) +
                         ") does not match op count (" + std::to_string(ops.size()) + ")");
    return make_multishelf(size, std::move(ops), std::move(levels), std::move(name));
}

// Ring-agnostic module file contents; entries stay as exact decimal strings
// until a concrete ring is chosen.
struct ModuleFileData {
    std::string structure_ref;  // path, or "builtin:<fixture>"
    RingSpec ring;
    int rank = 0;
    // entries[k][y] is an m x m row-major matrix of entry strings
    std::vector<std::vector<std::vector<std::string>>> entries;
    int num_ops = 0;
};

inline RingSpec parse_ring_spec(const std::string& s) {
    if (s == "Z") return RingSpec::integers();
    if (s == "Q") return RingSpec::rationals();
    if (s.rfind("Fp:", 0) == 0) {
        long long p = 0;
        try {
            p = std::stoll(s.substr(3));
        } catch (const std::exception&) {
            throw ParseError("ring: bad prime in '" + s + "'");
        }
        if (!is_prime(p)) throw ParseError("ring: " + std::to_string(p) + " is not prime");
        return RingSpec::prime_field(p);
    }
    throw ParseError("ring: expected Z, Q, or Fp:<p>, got '" + s + "'");
}

// num_ops and carrier size come from the referenced structure, so the parser
// takes them as arguments after the caller resolves the reference; use
// peek_module_structure_ref to read the reference first.
inline std::string peek_module_structure_ref(std::istream& in) {
    auto lines = detail::read_logical_lines(in);
    for (const auto& l : lines) {
        auto toks = detail::split_ws(l);
        if (toks[0] == "structure") {
            if (toks.size() != 2) throw ParseError("structure: expected one reference");
            return toks[1];
        }
    }
    throw ParseError("missing structure reference");
}

inline ModuleFileData parse_module(std::istream& in, const Multishelf& X) {
    auto lines = detail::read_logical_lines(in);
    ModuleFileData M;
    M.num_ops = X.num_ops();
    bool have_ring = false, have_rank = false;
    std::vector<std::vector<bool>> seen;
    std::size_t i = 0;
    while (i < lines.size()) {
        auto toks = detail::split_ws(lines[i]);
        const std::string& key = toks[0];
        if (key == "structure") {
            if (toks.size() != 2) throw ParseError("structure: expected one reference");
            M.structure_ref = toks[1];
            ++i;
        } else if (key == "ring") {
            if (toks.size() != 2) throw ParseError("ring: expected one token");
            M.ring = parse_ring_spec(toks[1]);
            have_ring = true;
            ++i;
        } else if (key == "rank") {
            if (toks.size() != 2) throw ParseError("rank: expected one integer");
            M.rank = detail::parse_int(toks[1], "rank");
            if (M.rank < 0) throw ParseError("rank: must be nonnegative");
            have_rank = true;
            M.entries.assign(static_cast<std::size_t>(X.num_ops()),
                             std::vector<std::vector<std::string>>(
                                 static_cast<std::size_t>(X.size)));
            seen.assign(static_cast<std::size_t>(X.num_ops()),
                        std::vector<bool>(static_cast<std::size_t>(X.size), false));
            ++i;
        } else if (key == "action") {
            if (!have_rank) throw ParseError("action: rank must come first");
            if (toks.size() != 3) throw ParseError("action: expected 'action <op> <element>'");
            int k = detail::parse_int(toks[1], "action op");
            int y = detail::parse_int(toks[2], "action element");
            if (k < 0 || k >= X.num_ops()) throw ParseError("action: op index out of range");
            if (y < 0 || y >= X.size) throw ParseError("action: element out of range");
            if (seen[static_cast<std::size_t>(k)][static_cast<std::size_t>(y)])
                throw ParseError("action: duplicate block for op " + std::to_string(k) +
                                 ", element " + std::to_string(y));
            seen[static_cast<std::size_t>(k)][static_cast<std::size_t>(y)] = true;
            ++i;
            std::vector<std::string> flat;
            for (int r = 0; r < M.rank; ++r, ++i) {
                if (i >= lines.size()) throw ParseError("action: truncated matrix");
                auto row = detail::split_ws(lines[i]);
                if (static_cast<int>(row.size()) != M.rank)
                    throw ParseError("action: matrix row has " + std::to_string(row.size()) +
                                     " entries, expected " + std::to_string(M.rank));
                for (auto& tok : row) flat.push_back(tok);
            }
            M.entries[static_cast<std::size_t>(k)][static_cast<std::size_t>(y)] = std::move(flat);
        } else {
            throw ParseError("unknown keyword '" + key + "'");
        }
    }
    if (M.structure_ref.empty()) throw ParseError("missing structure reference");
    if (!have_ring) throw ParseError("missing ring");
    if (!have_rank) throw ParseError("missing rank");
    for (int k = 0; k < X.num_ops(); ++k)
        for (int y = 0; y < X.size; ++y)
            if (!seen[static_cast<std::size_t>(k)][static_cast<std::size_t>(y)])
                throw ParseError("missing action block for op " + std::to_string(k) +
                                 ", element " + std::to_string(y));
    return M;
}

namespace detail {

template <class R>
typename R::Elem parse_ring_elem(const R& rg, const std::string& tok) {
    auto parse_big = [&](const std::string& s) -> Int {
        try {
            return Int(s);
        } catch (const std::exception&) {
            throw ParseError("bad number '" + tok + "'");
        }
    };
    if constexpr (std::is_same_v<R, QRing>) {
        auto slash = tok.find('/');
        if (slash == std::string::npos) return Rat(parse_big(tok));
        Int num = parse_big(tok.substr(0, slash));
        Int den = parse_big(tok.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in '" + tok + "'");
        return Rat(num, den);
    } else if constexpr (std::is_same_v<R, ZRing>) {
        return parse_big(tok);
    } else {
        Int v = parse_big(tok);
        Int p(rg.p);
        Int r = v % p;
        if (r < 0) r += p;
        return static_cast<typename R::Elem>(r.convert_to<long long>());
    }
}

}  // namespace detail

// Builds the typed module over the ring the caller selected (which must
// match the file's ring spec) and validates the action axioms.
template <class R>
ActionModule<R> instantiate_module(const ModuleFileData& data, const Multishelf& X, R rg) {
    ActionModule<R> M = trivial_module(X, data.rank, rg);
    for (int k = 0; k < X.num_ops(); ++k)
        for (int y = 0; y < X.size; ++y) {
            const auto& flat = data.entries[static_cast<std::size_t>(k)][static_cast<std::size_t>(y)];
            Mat<R> A(rg, data.rank, data.rank);
            for (int r = 0; r < data.rank; ++r)
                for (int c = 0; c < data.rank; ++c)
                    A.at(r, c) = detail::parse_ring_elem(
                        rg, flat[static_cast<std::size_t>(r * data.rank + c)]);
            M.action[static_cast<std::size_t>(k)][static_cast<std::size_t>(y)] = std::move(A);
        }
    if (auto wit = validate_action(M)) {
        std::string what = wit->invertibility
                               ? "op " + std::to_string(wit->i) + " not invertible at element " +
                                     std::to_string(wit->y)
                               : "action compatibility fails at (i,j,x,y) = (" + std::to_string(wit->i) + "," +
                                     std::to_string(wit->j) + "," + std::to_string(wit->x) + "," +
                                     std::to_string(wit->y) + ")";
        throw ParseError("module action invalid: " + what);
    }
    return M;
}

// ---------------------------------------------------------------------------
// Report emission: newline-delimited records with a stable field order, no
// floating point anywhere.

inline void emit_structure(std::ostream& os, const Multishelf& X) {
    os << "structure name=" << (X.name.empty() ? "(anonymous)" : X.name) << " size=" << X.size
       << " ops=" << X.num_ops() << " levels=";
    for (int k = 0; k < X.num_ops(); ++k) os << (k ? "," : "") << level_name(X.levels[k]);
    os << "\n";
}

template <class R>
void emit_matrix_triples(std::ostream& os, const Mat<R>& A) {
    const R& rg = A.ring;
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j)
            if (!rg.is_zero(A.at(i, j))) os << " (" << i << "," << j << "," << rg.str(A.at(i, j)) << ")";
}

// Per degree: basis listing (sequences as comma-separated integers, leftmost
// = highest index) and the differential in sorted coordinate triples.
template <class R>
void emit_complex(std::ostream& os, const ChainComplex<R>& C) {
    os << "complex part=" << C.part.str() << " ring=" << C.ring.name() << " rank=" << C.M.rank
       << " augmented=" << (C.augmented ? 1 : 0) << " max_degree=" << C.hi << "\n";
    for (int d = 0; d <= C.hi; ++d) {
        os << "degree " << d << " dim=" << C.dim(d) << "\n";
        for (SeqCode c : C.bases[static_cast<std::size_t>(d)]) {
            auto xs = decode_seq(c, C.X->size, d);
            os << "  basis";
            for (int i = d; i >= 0; --i) os << " " << xs[static_cast<std::size_t>(i)];
            os << "\n";
        }
        if (C.has_diff(d)) {
            os << "  diff " << d << ":";
            emit_matrix_triples(os, C.diff(d));
            os << "\n";
        }
    }
}

}  // namespace rackhom
