#include "picard/modp.hpp"

#include <algorithm>
#include <stdexcept>

namespace picard::modp {

std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e != 0) {
        if (e & 1u) r = mul(r, a, p);
        a = mul(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t inverse(std::uint64_t a, std::uint64_t p) {
    if (a % p == 0) throw std::domain_error("modp::inverse of zero");
    return pow(a, p - 2, p);
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1u) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = pow(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::uint64_t primitive_root(std::uint64_t p) {
    if (p == 2) return 1;
    std::vector<std::uint64_t> factors;
    std::uint64_t m = p - 1;
    for (std::uint64_t q = 2; q * q <= m; ++q) {
        if (m % q == 0) {
            factors.push_back(q);
            while (m % q == 0) m /= q;
        }
    }
    if (m > 1) factors.push_back(m);
    for (std::uint64_t g = 2; g < p; ++g) {
        bool ok = std::all_of(factors.begin(), factors.end(),
                              [&](std::uint64_t q) { return pow(g, (p - 1) / q, p) != 1; });
        if (ok) return g;
    }
    throw std::logic_error("primitive_root: none found");
}

namespace {

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly make_monic(Poly a, std::uint64_t p) {
    trim(a);
    if (a.empty()) return a;
    std::uint64_t inv = inverse(a.back(), p);
    for (auto& c : a) c = mul(c, inv, p);
    return a;
}

Poly poly_sub(Poly a, const Poly& b, std::uint64_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) a[i] = sub(a[i], b[i], p);
    trim(a);
    return a;
}

// Splits a monic squarefree product of distinct linear factors.
void split_linear(const Poly& g, std::uint64_t p, std::uint64_t shift, std::vector<std::uint64_t>& out) {
    const int deg = static_cast<int>(g.size()) - 1;
    if (deg <= 0) return;
    if (deg == 1) {
        out.push_back(sub(0, g[0], p));
        return;
    }
    // gcd((x + a)^((p-1)/2) - 1, g) for a = shift, shift+1, ...
    for (std::uint64_t a = shift;; ++a) {
        Poly h = poly_powmod(Poly{a % p, 1}, (p - 1) / 2, g, p);
        h = poly_sub(std::move(h), Poly{1}, p);
        Poly d = poly_gcd(h, g, p);
        const int dd = static_cast<int>(d.size()) - 1;
        if (dd > 0 && dd < deg) {
            Poly rest = g;
            // exact division g / d
            Poly q(deg - dd + 1, 0);
            for (int i = deg - dd; i >= 0; --i) {
                q[i] = rest[i + dd];
                for (int j = 0; j <= dd; ++j) rest[i + j] = sub(rest[i + j], mul(q[i], d[j], p), p);
            }
            split_linear(d, p, a + 1, out);
            split_linear(q, p, a + 1, out);
            return;
        }
    }
}

}  // namespace

Poly poly_mul(const Poly& a, const Poly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = add(r[i + j], mul(a[i], b[j], p), p);
    }
    trim(r);
    return r;
}

Poly poly_mod(Poly a, const Poly& m, std::uint64_t p) {
    trim(a);
    const int dm = static_cast<int>(m.size()) - 1;
    if (dm < 0) throw std::domain_error("poly_mod by zero");
    const std::uint64_t inv = inverse(m.back(), p);
    for (int i = static_cast<int>(a.size()) - 1; i >= dm; --i) {
        const std::uint64_t q = mul(a[i], inv, p);
        if (q == 0) continue;
        for (int j = 0; j <= dm; ++j) a[i - dm + j] = sub(a[i - dm + j], mul(q, m[j], p), p);
    }
    if (static_cast<int>(a.size()) > dm) a.resize(dm);
    trim(a);
    return a;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(std::move(a), p);
}

Poly poly_powmod(const Poly& base, std::uint64_t e, const Poly& m, std::uint64_t p) {
    Poly result = poly_mod(Poly{1}, m, p);
    Poly b = poly_mod(base, m, p);
    while (e != 0) {
        if (e & 1u) result = poly_mod(poly_mul(result, b, p), m, p);
        e >>= 1;
        if (e != 0) b = poly_mod(poly_mul(b, b, p), m, p);
    }
    return result;
}

std::uint64_t poly_eval(const Poly& f, std::uint64_t x, std::uint64_t p) {
    std::uint64_t acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = add(mul(acc, x, p), *it, p);
    return acc;
}

std::vector<std::uint64_t> roots(const Poly& f_in, std::uint64_t p) {
    Poly f = f_in;
    for (auto& c : f) c %= p;
    f = make_monic(std::move(f), p);
    std::vector<std::uint64_t> out;
    if (f.size() <= 1) return out;
    if (p < 64) {
        for (std::uint64_t x = 0; x < p; ++x) {
            if (poly_eval(f, x, p) == 0) out.push_back(x);
        }
        return out;
    }
    // g = gcd(x^p - x, f) collects the distinct linear factors.
    Poly xp = poly_powmod(Poly{0, 1}, p, f, p);
    Poly g = poly_gcd(poly_sub(std::move(xp), Poly{0, 1}, p), f, p);
    if (g.empty()) g = f;  // f divides x^p - x
    split_linear(g, p, 0, out);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace picard::modp
