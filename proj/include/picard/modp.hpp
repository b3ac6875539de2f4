#pragma once

// Word-size arithmetic modulo a prime and small polynomials over F_p.

#include <cstdint>
#include <vector>

namespace picard::modp {

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}
inline std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    std::uint64_t s = a + b;
    return s >= p ? s - p : s;
}
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return a >= b ? a - b : a + p - b;
}

std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t inverse(std::uint64_t a, std::uint64_t p);

/// Deterministic for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Smallest generator of F_p^*.
std::uint64_t primitive_root(std::uint64_t p);

/// Polynomials over F_p, lowest degree first, no trailing zeros.
using Poly = std::vector<std::uint64_t>;

Poly poly_mul(const Poly& a, const Poly& b, std::uint64_t p);
Poly poly_mod(Poly a, const Poly& m, std::uint64_t p);
Poly poly_gcd(Poly a, Poly b, std::uint64_t p);
Poly poly_powmod(const Poly& base, std::uint64_t e, const Poly& m, std::uint64_t p);
std::uint64_t poly_eval(const Poly& f, std::uint64_t x, std::uint64_t p);

/// Distinct roots of f in F_p, ascending.
std::vector<std::uint64_t> roots(const Poly& f, std::uint64_t p);

}  // namespace picard::modp
