#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rackhom {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Exact coefficient rings. Every ring object is a cheap value that travels
// with the matrices built over it; FpRing carries its modulus.

struct ZRing {
    using Elem = Int;
    static constexpr bool is_field = false;

    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }
    Elem from_int(long long v) const { return Elem(v); }
    bool is_zero(const Elem& x) const { return x == 0; }
    bool eq(const Elem& x, const Elem& y) const { return x == y; }
    Elem add(const Elem& x, const Elem& y) const { return x + y; }
    Elem sub(const Elem& x, const Elem& y) const { return x - y; }
    Elem mul(const Elem& x, const Elem& y) const { return x * y; }
    Elem neg(const Elem& x) const { return -x; }
    std::string str(const Elem& x) const { return x.str(); }
    std::string name() const { return "Z"; }
    bool same(const ZRing&) const { return true; }
};

struct QRing {
    using Elem = Rat;
    static constexpr bool is_field = true;

    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }
    Elem from_int(long long v) const { return Elem(v); }
    bool is_zero(const Elem& x) const { return x == 0; }
    bool eq(const Elem& x, const Elem& y) const { return x == y; }
    Elem add(const Elem& x, const Elem& y) const { return x + y; }
    Elem sub(const Elem& x, const Elem& y) const { return x - y; }
    Elem mul(const Elem& x, const Elem& y) const { return x * y; }
    Elem neg(const Elem& x) const { return -x; }
    Elem inv(const Elem& x) const {
        if (x == 0) throw std::domain_error("QRing: division by zero");
        return Elem(1) / x;
    }
    std::string str(const Elem& x) const { return x.str(); }
    std::string name() const { return "Q"; }
    bool same(const QRing&) const { return true; }
};

// Prime field F_p with p an odd or even prime below 2^31; elements are kept
// reduced into [0, p).
struct FpRing {
    using Elem = std::int64_t;
    static constexpr bool is_field = true;

    std::int64_t p = 2;

    FpRing() = default;
    explicit FpRing(std::int64_t prime) : p(prime) {
        if (p < 2) throw std::invalid_argument("FpRing: modulus must be >= 2");
    }

    Elem zero() const { return 0; }
    Elem one() const { return 1 % p; }
    Elem from_int(long long v) const {
        Elem r = static_cast<Elem>(v % p);
        return r < 0 ? r + p : r;
    }
    bool is_zero(const Elem& x) const { return x == 0; }
    bool eq(const Elem& x, const Elem& y) const { return x == y; }
    Elem add(const Elem& x, const Elem& y) const {
        Elem r = x + y;
        return r >= p ? r - p : r;
    }
    Elem sub(const Elem& x, const Elem& y) const {
        Elem r = x - y;
        return r < 0 ? r + p : r;
    }
    Elem mul(const Elem& x, const Elem& y) const { return (x * y) % p; }
    Elem neg(const Elem& x) const { return x == 0 ? 0 : p - x; }
    Elem inv(const Elem& x) const {
        // extended Euclid
        if (x == 0) throw std::domain_error("FpRing: division by zero");
        std::int64_t a = x, b = p, u = 1, v = 0;
        while (b != 0) {
            std::int64_t q = a / b;
            a -= q * b;
            std::swap(a, b);
            u -= q * v;
            std::swap(u, v);
        }
        if (a != 1) throw std::domain_error("FpRing: modulus not prime");
        u %= p;
        return u < 0 ? u + p : u;
    }
    std::string str(const Elem& x) const { return std::to_string(x); }
    std::string name() const { return "F" + std::to_string(p); }
    bool same(const FpRing& o) const { return p == o.p; }
};

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Runtime ring selector used by file formats and the CLI.
struct RingSpec {
    enum class Kind { Z, Q, Fp };
    Kind kind = Kind::Z;
    std::int64_t p = 0;

    static RingSpec integers() { return {Kind::Z, 0}; }
    static RingSpec rationals() { return {Kind::Q, 0}; }
    static RingSpec prime_field(std::int64_t p) {
        if (!is_prime(p)) throw std::invalid_argument("prime_field: p is not prime");
        return {Kind::Fp, p};
    }
    std::string name() const {
        switch (kind) {
            case Kind::Z: return "Z";
            case Kind::Q: return "Q";
            default: return "F" + std::to_string(p);
        }
    }
    bool operator==(const RingSpec& o) const = default;
};

}  // namespace rackhom
