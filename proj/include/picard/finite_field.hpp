#pragma once

#include <array>
#include <cstdint>

#include "picard/modp.hpp"

namespace picard {

/// F_{p^k} for k <= 3 and p < 2^32, as F_p[x]/(m) with m the first monic
/// irreducible polynomial of degree k when candidates are ordered by
/// c0 + c1 p + ... + c_{k-1} p^{k-1}.
class FiniteFieldExt {
public:
    using Element = std::array<std::uint64_t, 3>;

    FiniteFieldExt(std::uint64_t p, unsigned k);

    std::uint64_t characteristic() const noexcept { return p_; }
    unsigned degree() const noexcept { return k_; }
    std::uint64_t order() const noexcept { return q_; }
    /// Monic, lowest degree first, size k + 1.
    const modp::Poly& modulus() const noexcept { return modulus_; }

    Element add(const Element& a, const Element& b) const;
    Element sub(const Element& a, const Element& b) const;
    Element mul(const Element& a, const Element& b) const;
    Element pow(Element a, std::uint64_t e) const;
    Element from_int(std::uint64_t c) const { return {c % p_, 0, 0}; }

    /// Bijection with [0, q): c0 + c1 p + c2 p^2.
    std::uint64_t encode(const Element& a) const { return a[0] + p_ * (a[1] + p_ * a[2]); }
    Element decode(std::uint64_t idx) const;

private:
    std::uint64_t p_;
    unsigned k_;
    std::uint64_t q_;
    modp::Poly modulus_;
};

bool is_irreducible_small(const modp::Poly& f, std::uint64_t p);

}  // namespace picard
