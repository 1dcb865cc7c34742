#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rackhom/ring.hpp"

namespace rackhom {

// Finitely generated abelian group in canonical form: free rank plus
// invariant factors d_1 | d_2 | ... with every d_i > 1.
struct AbelianGroup {
    int free_rank = 0;
    std::vector<Int> invariants;

    static AbelianGroup trivial() { return {}; }
    static AbelianGroup free(int r) { return {r, {}}; }
    static AbelianGroup cyclic(const Int& n);

    bool is_trivial() const { return free_rank == 0 && invariants.empty(); }
    bool operator==(const AbelianGroup& o) const = default;
    std::string str() const;
};

namespace detail {

inline std::map<Int, int> factorize(Int n) {
    std::map<Int, int> f;
    for (Int d = 2; d * d <= n; ++d)
        while (n % d == 0) {
            ++f[d];
            n /= d;
        }
    if (n > 1) ++f[n];
    return f;
}

}  // namespace detail

// Canonical form of Z^free (+) sum of Z/f for the given cyclic orders
// (any order, any values; 0 counts as a free summand, 1 is dropped).
inline AbelianGroup canonical_group(int free_rank, const std::vector<Int>& factors) {
    AbelianGroup g;
    g.free_rank = free_rank;
    std::map<Int, std::vector<int>> prime_exps;  // prime -> exponents, desc
    for (const auto& f : factors) {
        if (f < 0) throw std::invalid_argument("canonical_group: negative factor");
        if (f == 0) {
            ++g.free_rank;
            continue;
        }
        if (f == 1) continue;
        for (const auto& [p, e] : detail::factorize(f)) prime_exps[p].push_back(e);
    }
    std::size_t depth = 0;
    for (auto& [p, es] : prime_exps) {
        std::sort(es.begin(), es.end(), std::greater<int>());
        depth = std::max(depth, es.size());
    }
    // invariant factor #t (from the largest) multiplies the t-th largest
    // exponent of every prime
    std::vector<Int> inv(depth, Int(1));
    for (const auto& [p, es] : prime_exps)
        for (std::size_t t = 0; t < es.size(); ++t) {
            Int pk = 1;
            for (int i = 0; i < es[t]; ++i) pk *= p;
            inv[t] *= pk;
        }
    std::reverse(inv.begin(), inv.end());  // ascending divisibility chain
    g.invariants = std::move(inv);
    return g;
}

inline AbelianGroup AbelianGroup::cyclic(const Int& n) { return canonical_group(0, {n}); }

inline std::string AbelianGroup::str() const {
    if (is_trivial()) return "0";
    std::string s;
    auto append = [&s](const std::string& part) {
        if (!s.empty()) s += " + ";
        s += part;
    };
    if (free_rank == 1) append("Z");
    else if (free_rank > 1) append("Z^" + std::to_string(free_rank));
    for (const auto& d : invariants) append("Z/" + d.str());
    return s;
}

inline AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b) {
    std::vector<Int> f = a.invariants;
    f.insert(f.end(), b.invariants.begin(), b.invariants.end());
    return canonical_group(a.free_rank + b.free_rank, f);
}

inline AbelianGroup tensor(const AbelianGroup& a, const AbelianGroup& b) {
    std::vector<Int> f;
    for (const auto& d : a.invariants)
        for (int i = 0; i < b.free_rank; ++i) f.push_back(d);
    for (const auto& e : b.invariants)
        for (int i = 0; i < a.free_rank; ++i) f.push_back(e);
    for (const auto& d : a.invariants)
        for (const auto& e : b.invariants) f.push_back(boost::multiprecision::gcd(d, e));
    return canonical_group(a.free_rank * b.free_rank, f);
}

inline AbelianGroup tor(const AbelianGroup& a, const AbelianGroup& b) {
    std::vector<Int> f;
    for (const auto& d : a.invariants)
        for (const auto& e : b.invariants) f.push_back(boost::multiprecision::gcd(d, e));
    return canonical_group(0, f);
}

}  // namespace rackhom
