#include "picard/hecke.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "picard/modp.hpp"

namespace picard {

namespace {

using Coords = std::array<std::int64_t, 6>;
using Wide = __int128;

// Trace form Tr(u * conj(v)) on power-basis coordinates: 6 on the diagonal,
// -3 between coordinates i and i+3, zero elsewhere.
Wide trace_form(const Coords& u, const Coords& v) {
    Wide diag = 0;
    Wide off = 0;
    for (int i = 0; i < 6; ++i) diag += static_cast<Wide>(u[i]) * v[i];
    for (int i = 0; i < 3; ++i) off += static_cast<Wide>(u[i]) * v[i + 3] + static_cast<Wide>(u[i + 3]) * v[i];
    return 6 * diag - 3 * off;
}

struct GramSchmidt {
    std::array<std::array<long double, 6>, 6> mu{};
    std::array<long double, 6> sq{};  // squared lengths of the orthogonalized vectors
};

GramSchmidt gram_schmidt(const std::array<Coords, 6>& b) {
    GramSchmidt gs;
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < i; ++j) {
            long double s = static_cast<long double>(trace_form(b[i], b[j]));
            for (int l = 0; l < j; ++l) s -= gs.mu[j][l] * gs.mu[i][l] * gs.sq[l];
            gs.mu[i][j] = s / gs.sq[j];
        }
        long double s = static_cast<long double>(trace_form(b[i], b[i]));
        for (int l = 0; l < i; ++l) s -= gs.mu[i][l] * gs.mu[i][l] * gs.sq[l];
        gs.sq[i] = s;
    }
    return gs;
}

void lll_reduce(std::array<Coords, 6>& b, long double delta) {
    GramSchmidt gs = gram_schmidt(b);
    int k = 1;
    int guard = 0;
    while (k < 6) {
        if (++guard > 100000) throw std::logic_error("lll_reduce: no convergence");
        for (int j = k - 1; j >= 0; --j) {
            const long double q = std::nearbyint(gs.mu[k][j]);
            if (q == 0) continue;
            const auto qi = static_cast<std::int64_t>(q);
            for (int c = 0; c < 6; ++c) b[k][c] -= qi * b[j][c];
            for (int l = 0; l < j; ++l) gs.mu[k][l] -= q * gs.mu[j][l];
            gs.mu[k][j] -= q;
        }
        if (gs.sq[k] >= (delta - gs.mu[k][k - 1] * gs.mu[k][k - 1]) * gs.sq[k - 1]) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            gs = gram_schmidt(b);
            k = std::max(k - 1, 1);
        }
    }
}

struct Candidate {
    Wide form;
    Coords v;
};

// All nonzero lattice vectors (up to sign) with trace form <= radius.
void enumerate_short(const std::array<Coords, 6>& b, const GramSchmidt& gs, long double radius,
                     std::vector<Candidate>& out) {
    std::array<std::int64_t, 6> x{};
    const long double slack = radius * 1e-9L + 1e-6L;
    auto recurse = [&](auto&& self, int i, long double partial) -> void {
        long double center = 0;
        for (int j = i + 1; j < 6; ++j) center -= gs.mu[j][i] * static_cast<long double>(x[j]);
        const long double rem = radius + slack - partial;
        if (rem < 0) return;
        const long double width = std::sqrt(rem / gs.sq[i]);
        const auto lo = static_cast<std::int64_t>(std::ceil(center - width));
        const auto hi = static_cast<std::int64_t>(std::floor(center + width));
        for (std::int64_t xi = lo; xi <= hi; ++xi) {
            x[i] = xi;
            const long double d = static_cast<long double>(xi) - center;
            const long double val = partial + gs.sq[i] * d * d;
            if (val > radius + slack) continue;
            if (i > 0) {
                self(self, i - 1, val);
                continue;
            }
            // keep one of +-v: highest nonzero coefficient positive
            int top = 5;
            while (top >= 0 && x[top] == 0) --top;
            if (top < 0 || x[top] < 0) continue;
            Coords v{};
            for (int r = 0; r < 6; ++r) {
                if (x[r] == 0) continue;
                for (int c = 0; c < 6; ++c) v[c] += x[r] * b[r][c];
            }
            out.push_back({trace_form(v, v), v});
            if (out.size() > 2'000'000) throw std::runtime_error("enumerate_short: too many vectors");
        }
        x[i] = 0;
    };
    recurse(recurse, 5, 0.0L);
}

CycInt to_cycint(const Coords& v) {
    IntVector6 c;
    for (int i = 0; i < 6; ++i) c[i] = static_cast<long>(v[i]);
    return CycInt(std::move(c));
}

double log_abs_norm(const Coords& v) {
    double s = 0;
    for (int k : {1, 2, 4, 5, 7, 8}) {
        std::complex<double> z = 0;
        for (int j = 5; j >= 0; --j) {
            z += static_cast<double>(v[j]) * std::polar(1.0, 2.0 * M_PI * ((j * k) % 9) / 9.0);
        }
        s += std::log(std::abs(z));
    }
    return s;
}

PrimeFactorPoly to_poly(std::initializer_list<std::uint64_t> c) { return PrimeFactorPoly(c); }

}  // namespace

CycInt unit_product(const UnitTriple& t) {
    const auto& rc = ring_constants();
    return pow(rc.eps0, t.a) * pow(rc.eps1, t.b) * pow(rc.eps2, t.c);
}

unsigned residue_degree(std::uint64_t p) {
    if (p == 3) throw std::invalid_argument("residue_degree: p = 3 is ramified");
    if (!modp::is_prime(p)) throw std::invalid_argument("residue_degree: " + std::to_string(p) + " is not prime");
    unsigned f = 1;
    std::uint64_t x = p % 9;
    while (x != 1) {
        x = x * (p % 9) % 9;
        ++f;
    }
    return f;
}

std::vector<PrimeFactorPoly> phi9_factors_mod(std::uint64_t p) {
    const unsigned f = residue_degree(p);
    std::vector<PrimeFactorPoly> out;
    switch (f) {
        case 6:
            out.push_back(to_poly({1, 0, 0, 1, 0, 0, 1}));
            break;
        case 1:  // x - r, r a primitive 9th root of unity
            for (auto r : modp::roots({1, 0, 0, 1, 0, 0, 1}, p)) out.push_back(to_poly({p - r, 1}));
            break;
        case 2:  // x^2 - t x + 1, t = r + 1/r a root of x^3 - 3x + 1
            for (auto t : modp::roots({1, p - 3, 0, 1}, p)) out.push_back(to_poly({1, (p - t) % p, 1}));
            break;
        case 3:  // x^3 - w, w a primitive cube root of unity
            for (auto w : modp::roots({1, 1, 1}, p)) out.push_back(to_poly({(p - w) % p, 0, 0, 1}));
            break;
        default:
            throw std::logic_error("phi9_factors_mod: impossible residue degree");
    }
    if (out.size() != 6 / f) throw std::logic_error("phi9_factors_mod: wrong number of factors");
    std::sort(out.begin(), out.end());
    return out;
}

IdealLattice ideal_above(std::uint64_t p, const PrimeFactorPoly& h) {
    std::vector<Integer> hz;
    for (auto c : h) hz.emplace_back(static_cast<unsigned long>(c));
    return ideal_from_prime_factor(Integer(static_cast<unsigned long>(p)), hz, residue_degree(p));
}

IdealLattice split_prime(std::uint64_t p) { return ideal_above(p, phi9_factors_mod(p).front()); }

CycInt find_generator(const IdealLattice& ideal, std::uint64_t p) {
    const unsigned f = residue_degree(p);
    Integer target;
    mpz_ui_pow_ui(target.get_mpz_t(), p, f);
    if (ideal.det != target) throw GeneratorSearchError(p, "lattice index is not p^f");

    std::array<Coords, 6> b;
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) {
            if (!ideal.basis[i][j].fits_slong_p()) throw GeneratorSearchError(p, "basis entries exceed 64 bits");
            b[i][j] = ideal.basis[i][j].get_si();
        }
    }
    lll_reduce(b, 0.99L);
    const GramSchmidt gs = gram_schmidt(b);

    long double radius = 0;
    for (const auto& v : b) radius = std::max(radius, static_cast<long double>(trace_form(v, v)));
    // Hermite bound on the first minimum: gamma_6 * det(Gram)^(1/6), det(Gram) = 3^9 * N^2.
    const long double log_n = static_cast<long double>(f) * std::log(static_cast<long double>(p));
    const long double minkowski =
        std::pow(64.0L / 3.0L, 1.0L / 6.0L) * std::exp((9.0L * std::log(3.0L) + 2.0L * log_n) / 6.0L);
    const long double cap = 1024.0L * minkowski;
    const double target_log = static_cast<double>(log_n);

    std::vector<Candidate> cands;
    for (;;) {
        cands.clear();
        enumerate_short(b, gs, radius, cands);
        std::sort(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) {
            return x.form != y.form ? x.form < y.form : x.v < y.v;
        });
        for (const auto& c : cands) {
            if (std::abs(log_abs_norm(c.v) - target_log) > 0.1) continue;
            CycInt alpha = to_cycint(c.v);
            if (abs(norm(alpha)) == target) return alpha;
        }
        if (radius > cap) throw GeneratorSearchError(p, "radius cap exceeded");
        radius *= 2;
    }
}

// ---------------------------------------------------------------------------

const ResidueRingM& ResidueRingM::instance() {
    static const ResidueRingM ring;
    return ring;
}

ResidueRingM::ResidueRingM() {
    const auto& rc = ring_constants();
    modulus_ = principal_ideal(pow(rc.lambda, 4));
    int total = 1;
    for (int i = 0; i < 6; ++i) {
        radix_[i] = static_cast<int>(modulus_.basis[i][i].get_si());
        total *= radix_[i];
    }
    residues_.resize(total);
    for (int idx = 0; idx < total; ++idx) {
        int rest = idx;
        for (int i = 0; i < 6; ++i) {
            residues_[idx][i] = rest % radix_[i];
            rest /= radix_[i];
        }
    }
    const int one = index_of(CycInt(1L));
    std::vector<int> inverse(total, -1);
    for (int r = 0; r < total; ++r) {
        for (int s = 0; s < total && inverse[r] < 0; ++s) {
            if (index_of(CycInt(residues_[r]) * CycInt(residues_[s])) == one) inverse[r] = s;
        }
    }
    invertible_.resize(total);
    for (int r = 0; r < total; ++r) invertible_[r] = inverse[r] >= 0;

    std::array<CycInt, 18> p0;
    std::array<CycInt, 9> p1;
    std::array<CycInt, 3> p2;
    p0[0] = p1[0] = p2[0] = CycInt(1L);
    for (int i = 1; i < 18; ++i) p0[i] = p0[i - 1] * rc.eps0;
    for (int i = 1; i < 9; ++i) p1[i] = p1[i - 1] * rc.eps1;
    for (int i = 1; i < 3; ++i) p2[i] = p2[i - 1] * rc.eps2;
    for (int a = 0; a < 18; ++a) {
        for (int b = 0; b < 9; ++b) {
            for (int c = 0; c < 3; ++c) {
                units_.push_back(p0[a] * p1[b] * p2[c]);
                unit_residues_.push_back(index_of(units_.back()));
            }
        }
    }
    adjust_.resize(total);
    for (int r = 0; r < total; ++r) {
        if (!invertible_[r]) continue;
        auto it = std::find(unit_residues_.begin(), unit_residues_.end(), inverse[r]);
        if (it == unit_residues_.end()) throw std::logic_error("ResidueRingM: unit products miss a residue");
        const int t = static_cast<int>(it - unit_residues_.begin());
        adjust_[r] = UnitTriple{t / 27, (t / 3) % 9, t % 3};
    }
}

int ResidueRingM::index_of(const CycInt& x) const {
    const IntVector6 v = modulus_.reduce(x.coeffs());
    int idx = 0;
    for (int i = 5; i >= 0; --i) idx = idx * radix_[i] + static_cast<int>(v[i].get_si());
    return idx;
}

std::vector<UnitTriple> kernel_triples() {
    const auto& ring = ResidueRingM::instance();
    const int one = ring.index_of(CycInt(1L));
    std::vector<UnitTriple> out;
    const auto& res = ring.unit_residues();
    for (int t = 0; t < static_cast<int>(res.size()); ++t) {
        if (res[t] == one) out.push_back(UnitTriple{t / 27, (t / 3) % 9, t % 3});
    }
    return out;
}

UnitAdjustment unit_adjust(const CycInt& alpha) {
    const auto& ring = ResidueRingM::instance();
    const int idx = ring.index_of(alpha);
    if (!ring.is_invertible(idx)) throw std::invalid_argument("unit_adjust: element is not coprime to m");
    const UnitTriple t = ring.adjusting_triple(idx);
    return UnitAdjustment{t, ring.unit(t) * alpha};
}

CycInt psi_from_generator(const CycInt& alpha) { return phi_star_product(unit_adjust(alpha).adjusted); }

PrimeSplit analyze_prime_ideal(std::uint64_t p, const PrimeFactorPoly& h) {
    PrimeSplit s;
    s.p = p;
    s.f = residue_degree(p);
    s.g = 6 / s.f;
    s.h = h;
    s.ideal = ideal_above(p, h);
    s.alpha = find_generator(s.ideal, p);
    UnitAdjustment adj = unit_adjust(s.alpha);
    s.triple = adj.triple;
    s.adjusted = std::move(adj.adjusted);
    s.psi = phi_star_product(s.adjusted);
    return s;
}

PrimeSplit analyze_prime(std::uint64_t p) { return analyze_prime_ideal(p, phi9_factors_mod(p).front()); }

CycInt psi(std::uint64_t p) { return analyze_prime(p).psi; }

PsiReport verify_psi_properties(std::uint64_t p) {
    const PrimeSplit s = analyze_prime(p);
    PsiReport r;
    r.p = p;
    r.psi = s.psi;
    Integer nf;
    mpz_ui_pow_ui(nf.get_mpz_t(), p, s.f);
    r.norm_ok = (s.psi * conj(s.psi)) == CycInt(nf);
    const auto& ring = ResidueRingM::instance();
    r.congruence_ok = ring.index_of(s.psi) == ring.index_of(CycInt(1L));
    const IdealLattice rhs =
        ideal_product(ideal_product(s.ideal, galois(s.ideal, GaloisIndex(7))), galois(s.ideal, GaloisIndex(5)));
    r.ideal_ok = principal_ideal(s.psi) == rhs;
    return r;
}

std::string to_string(const PrimeFactorPoly& h) {
    std::vector<Integer> c;
    for (auto x : h) c.emplace_back(static_cast<unsigned long>(x));
    return IntPoly(std::move(c)).to_string('x');
}

std::string format_prime_split(const PrimeSplit& s) {
    std::ostringstream os;
    os << "p         " << s.p << "\n"
       << "f         " << s.f << "\n"
       << "g         " << s.g << "\n"
       << "h(x)      " << to_string(s.h) << "\n"
       << "alpha     " << s.alpha << "\n"
       << "(a,b,c)   (" << s.triple.a << "," << s.triple.b << "," << s.triple.c << ")\n"
       << "alpha'    " << s.adjusted << "\n"
       << "psi       " << s.psi << "\n"
       << "min_poly  " << min_poly(s.psi).to_string('X') << "\n";
    return os.str();
}

}  // namespace picard
