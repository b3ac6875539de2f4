#include "picard/finite_field.hpp"

#include <stdexcept>

namespace picard {

// Degree <= 3: irreducible iff no root in F_p.
bool is_irreducible_small(const modp::Poly& f, std::uint64_t p) {
    const int deg = static_cast<int>(f.size()) - 1;
    if (deg < 1 || deg > 3) throw std::invalid_argument("is_irreducible_small: degree must be 1..3");
    if (deg == 1) return true;
    return modp::roots(f, p).empty();
}

FiniteFieldExt::FiniteFieldExt(std::uint64_t p, unsigned k) : p_(p), k_(k) {
    if (k < 1 || k > 3) throw std::invalid_argument("FiniteFieldExt: degree must be 1..3");
    if (p >= (1ULL << 32) || !modp::is_prime(p)) throw std::invalid_argument("FiniteFieldExt: bad characteristic");
    q_ = 1;
    for (unsigned i = 0; i < k; ++i) q_ *= p;
    for (std::uint64_t n = 0; n < q_; ++n) {
        modp::Poly cand(k + 1, 0);
        std::uint64_t rest = n;
        for (unsigned i = 0; i < k; ++i) {
            cand[i] = rest % p;
            rest /= p;
        }
        cand[k] = 1;
        if (is_irreducible_small(cand, p)) {
            modulus_ = std::move(cand);
            return;
        }
    }
    throw std::logic_error("FiniteFieldExt: no irreducible polynomial found");
}

FiniteFieldExt::Element FiniteFieldExt::add(const Element& a, const Element& b) const {
    Element r{};
    for (unsigned i = 0; i < k_; ++i) r[i] = modp::add(a[i], b[i], p_);
    return r;
}

FiniteFieldExt::Element FiniteFieldExt::sub(const Element& a, const Element& b) const {
    Element r{};
    for (unsigned i = 0; i < k_; ++i) r[i] = modp::sub(a[i], b[i], p_);
    return r;
}

FiniteFieldExt::Element FiniteFieldExt::mul(const Element& a, const Element& b) const {
    // p < 2^32, so products of reduced residues fit in 64 bits.
    std::array<std::uint64_t, 5> t{};
    for (unsigned i = 0; i < k_; ++i) {
        if (a[i] == 0) continue;
        for (unsigned j = 0; j < k_; ++j) t[i + j] = (t[i + j] + a[i] * b[j]) % p_;
    }
    for (int d = 2 * static_cast<int>(k_) - 2; d >= static_cast<int>(k_); --d) {
        const std::uint64_t c = t[d];
        if (c == 0) continue;
        t[d] = 0;
        for (unsigned j = 0; j < k_; ++j) {
            // x^k = -(m_0 + ... + m_{k-1} x^{k-1})
            t[d - k_ + j] = (t[d - k_ + j] + (p_ - modulus_[j]) % p_ * c) % p_;
        }
    }
    return {t[0], k_ > 1 ? t[1] : 0, k_ > 2 ? t[2] : 0};
}

FiniteFieldExt::Element FiniteFieldExt::pow(Element a, std::uint64_t e) const {
    Element r = from_int(1);
    while (e != 0) {
        if (e & 1u) r = mul(r, a);
        e >>= 1;
        if (e != 0) a = mul(a, a);
    }
    return r;
}

FiniteFieldExt::Element FiniteFieldExt::decode(std::uint64_t idx) const {
    Element r{};
    for (unsigned i = 0; i < k_; ++i) {
        r[i] = idx % p_;
        idx /= p_;
    }
    return r;
}

}  // namespace picard
