#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rackhom {

// Sequences (x_d, ..., x_0) over {0..n-1} are encoded as
// code = sum_i x_i * n^i, so lexicographic order with x_d most significant
// coincides with numeric order of the codes.
using SeqCode = std::int64_t;

inline std::vector<int> decode_seq(SeqCode code, int n, int degree) {
    std::vector<int> x(degree + 1);  // x[i] = x_i
    for (int i = 0; i <= degree; ++i) {
        x[i] = static_cast<int>(code % n);
        code /= n;
    }
    return x;
}

inline SeqCode encode_seq(const std::vector<int>& x, int n) {
    SeqCode code = 0;
    for (int i = static_cast<int>(x.size()) - 1; i >= 0; --i) code = code * n + x[i];
    return code;
}

// Least i with x_i = x_{i+1}, or nullopt for a repetition-free sequence.
inline std::optional<int> filtration_level(const std::vector<int>& x) {
    for (int i = 0; i + 1 < static_cast<int>(x.size()); ++i)
        if (x[i] == x[i + 1]) return i;
    return std::nullopt;
}

enum class PartKind { Full, Degenerate, Normalized, Late, Filtration };

struct PartSelector {
    PartKind kind = PartKind::Full;
    int level = -1;  // used by Filtration

    static PartSelector full() { return {PartKind::Full, -1}; }
    static PartSelector degenerate() { return {PartKind::Degenerate, -1}; }
    static PartSelector normalized() { return {PartKind::Normalized, -1}; }
    static PartSelector late() { return {PartKind::Late, -1}; }
    static PartSelector filtration(int p) { return {PartKind::Filtration, p}; }

    // Does a sequence of the given degree belong to the part's spanning
    // basis? (For Normalized this is the repetition-free sub-basis of the
    // quotient.)
    bool contains(const std::vector<int>& x) const {
        auto lvl = filtration_level(x);
        int degree = static_cast<int>(x.size()) - 1;
        switch (kind) {
            case PartKind::Full: return true;
            case PartKind::Degenerate: return lvl.has_value();
            case PartKind::Normalized: return !lvl.has_value();
            case PartKind::Late:
                // repetition strictly right of the leftmost adjacent pair
                return lvl.has_value() && *lvl <= degree - 2;
            case PartKind::Filtration: return lvl.has_value() && *lvl <= level;
        }
        return false;
    }

    std::string str() const {
        switch (kind) {
            case PartKind::Full: return "full";
            case PartKind::Degenerate: return "degenerate";
            case PartKind::Normalized: return "normalized";
            case PartKind::Late: return "late";
            case PartKind::Filtration: return "filtration:" + std::to_string(level);
        }
        return "?";
    }
    bool operator==(const PartSelector& o) const = default;
};

inline std::string seq_to_string(const std::vector<int>& x) {
    std::string s;
    for (int i = static_cast<int>(x.size()) - 1; i >= 0; --i) {
        s += std::to_string(x[i]);
        if (i > 0) s += ",";
    }
    return s;
}

// Ascending list of codes of degree-d sequences in the part.
inline std::vector<SeqCode> part_basis(int n, int degree, const PartSelector& part) {
    std::vector<SeqCode> out;
    SeqCode total = 1;
    for (int i = 0; i <= degree; ++i) total *= n;
    for (SeqCode c = 0; c < total; ++c)
        if (part.contains(decode_seq(c, n, degree))) out.push_back(c);
    return out;
}

}  // namespace rackhom
