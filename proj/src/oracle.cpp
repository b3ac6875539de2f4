#include "picard/oracle.hpp"

#include <stdexcept>

#include "picard/finite_field.hpp"
#include "picard/ideal.hpp"
#include "picard/modp.hpp"

namespace picard {

namespace {

constexpr std::uint64_t kMaxEnumeratedField = 1ULL << 33;

void check_good_prime(std::uint64_t p) {
    if (p == 3 || !modp::is_prime(p)) throw std::invalid_argument("expected a prime p != 3, got " + std::to_string(p));
}

}  // namespace

std::uint64_t count_points(std::uint64_t p, unsigned k) {
    check_good_prime(p);
    if (k < 1 || k > 3) throw std::invalid_argument("count_points: extension degree must be 1..3");
    unsigned __int128 q_wide = 1;
    for (unsigned i = 0; i < k; ++i) q_wide *= p;
    if (q_wide > kMaxEnumeratedField) throw std::out_of_range("count_points: field too large to enumerate");
    const auto q = static_cast<std::uint64_t>(q_wide);
    // Cubing is a bijection unless 3 | q - 1.
    if (q % 3 != 1) return q + 1;
    const FiniteFieldExt field(p, k);

    // cube_roots[t] = #{y : y^3 = t}
    std::vector<std::uint8_t> cube_roots(q, 0);
    for (std::uint64_t idx = 0; idx < q; ++idx) {
        const auto y = field.decode(idx);
        ++cube_roots[field.encode(field.mul(field.mul(y, y), y))];
    }
    std::uint64_t total = 1;  // [0:1:0]
    for (std::uint64_t idx = 0; idx < q; ++idx) {
        const auto x = field.decode(idx);
        const auto x2 = field.mul(x, x);
        total += cube_roots[field.encode(field.sub(field.mul(x2, x2), x))];
    }
    return total;
}

std::uint64_t count_points_by_character(std::uint64_t p, unsigned k) {
    check_good_prime(p);
    const FiniteFieldExt field(p, k);
    const std::uint64_t q = field.order();
    const auto one = field.from_int(1);
    std::uint64_t total = 1;
    for (std::uint64_t idx = 0; idx < q; ++idx) {
        const auto x = field.decode(idx);
        const auto x2 = field.mul(x, x);
        const auto t = field.sub(field.mul(x2, x2), x);
        if (field.encode(t) == 0) {
            total += 1;
        } else if (q % 3 != 1) {
            total += 1;
        } else if (field.pow(t, (q - 1) / 3) == one) {
            total += 3;
        }
    }
    return total;
}

LocalFactor local_factor_naive(std::uint64_t p) {
    check_good_prime(p);
    const Integer pp(static_cast<unsigned long>(p));
    std::array<Integer, 4> n;
    for (unsigned k = 1; k <= 3; ++k) n[k] = Integer(static_cast<unsigned long>(count_points(p, k)));
    LocalFactor L;
    L.p = p;
    L.b[0] = 1;
    L.b[1] = n[1] - (pp + 1);
    const Integer twice_b2 = n[2] - (pp * pp + 1) + L.b[1] * L.b[1];
    const Integer thrice_b3_partial = n[3] - (pp * pp * pp + 1) - L.b[1] * L.b[1] * L.b[1];
    if (!mpz_divisible_ui_p(twice_b2.get_mpz_t(), 2)) throw std::logic_error("local_factor_naive: b2 not integral");
    L.b[2] = twice_b2 / 2;
    const Integer thrice_b3 = thrice_b3_partial + 3 * L.b[2] * L.b[1];
    if (!mpz_divisible_ui_p(thrice_b3.get_mpz_t(), 3)) throw std::logic_error("local_factor_naive: b3 not integral");
    L.b[3] = thrice_b3 / 3;
    L.b[4] = pp * L.b[2];
    L.b[5] = pp * pp * L.b[1];
    L.b[6] = pp * pp * pp;
    return L;
}

JacobiContext make_jacobi_context(std::uint64_t p) {
    check_good_prime(p);
    if (p % 9 != 1) throw std::invalid_argument("Jacobi sums need p = 1 mod 9");
    JacobiContext ctx;
    ctx.p = p;
    const auto h = phi9_factors_mod(p).front();  // x - r
    ctx.r = (p - h[0]) % p;
    const std::uint64_t g = modp::primitive_root(p);
    const std::uint64_t c = modp::pow(g, (p - 1) / 9, p);
    int j0 = -1;
    std::uint64_t rj = 1;
    for (int j = 0; j < 9; ++j, rj = modp::mul(rj, ctx.r, p)) {
        if (rj == c) {
            j0 = j;
            break;
        }
    }
    if (j0 < 0) throw std::logic_error("make_jacobi_context: r does not generate the 9th roots of unity");
    ctx.index.assign(p, 0);
    std::uint64_t x = 1;
    for (std::uint64_t e = 0; e + 1 < p; ++e) {
        ctx.index[x] = static_cast<std::uint8_t>((e % 9) * j0 % 9);
        x = modp::mul(x, g, p);
    }
    return ctx;
}

CycInt jacobi_sum(const JacobiContext& ctx, int a, int b) {
    const auto p = ctx.p;
    const int am = ((a % 9) + 9) % 9;
    const int bm = ((b % 9) + 9) % 9;
    std::array<long, 9> counts{};
    for (std::uint64_t x = 2; x < p; ++x) {
        ++counts[(am * ctx.index[x] + bm * ctx.index[p + 1 - x]) % 9];
    }
    CycInt sum;
    for (int e = 0; e < 9; ++e) {
        if (counts[e] != 0) sum += CycInt(counts[e]) * CycInt::zeta_power(e);
    }
    return sum;
}

CycInt jacobi_sum(std::uint64_t p, int a, int b) { return jacobi_sum(make_jacobi_context(p), a, b); }

CycInt jacobi_J(std::uint64_t p) { return -jacobi_sum(p, 3, 1); }

bool on_curve(const AffinePoint& pt, std::uint64_t p) {
    const std::uint64_t lhs = modp::pow(pt.y, 3, p);
    const std::uint64_t rhs = modp::sub(modp::pow(pt.x, 4, p), pt.x % p, p);
    return lhs == rhs;
}

bool on_curve_prime(const AffinePoint& pt, std::uint64_t p) {
    const std::uint64_t lhs = modp::pow(pt.y, 9, p);
    const std::uint64_t rhs = modp::mul(pt.x % p, modp::pow(modp::add(pt.x % p, 1, p), 6, p), p);
    return lhs == rhs;
}

std::optional<AffinePoint> to_curve_prime(const AffinePoint& pt, std::uint64_t p) {
    if (pt.x % p == 0) return std::nullopt;
    const std::uint64_t inv_x3 = modp::inverse(modp::pow(pt.x, 3, p), p);
    return AffinePoint{modp::sub(0, inv_x3, p), modp::sub(0, modp::mul(modp::mul(pt.y, pt.y, p), inv_x3, p), p)};
}

std::optional<AffinePoint> from_curve_prime(const AffinePoint& pt, std::uint64_t p) {
    if (pt.y % p == 0) return std::nullopt;
    const std::uint64_t u1 = modp::add(pt.x % p, 1, p);
    const std::uint64_t inv_v = modp::inverse(pt.y, p);
    const std::uint64_t inv_v3 = modp::pow(inv_v, 3, p);
    const std::uint64_t inv_v4 = modp::mul(inv_v3, inv_v, p);
    return AffinePoint{modp::sub(0, modp::mul(modp::mul(u1, u1, p), inv_v3, p), p),
                       modp::mul(modp::pow(u1, 3, p), inv_v4, p)};
}

bool ConductorReport::ok() const {
    if (!unit_orders_ok || !eps0_order_exact || !kernel_phi_star_trivial || kernel.size() != 9) return false;
    for (const auto& w : lower_witness) {
        if (!w) return false;
    }
    return true;
}

ConductorReport verify_conductor() {
    const auto& rc = ring_constants();
    const auto& ring = ResidueRingM::instance();
    const CycInt one(1L);
    const int one_idx = ring.index_of(one);

    ConductorReport rep;
    rep.eps0_order_exact = pow(rc.eps0, 18) == one;
    rep.unit_orders_ok = ring.index_of(pow(rc.eps0, 18)) == one_idx && ring.index_of(pow(rc.eps1, 9)) == one_idx &&
                         ring.index_of(pow(rc.eps2, 3)) == one_idx;
    rep.kernel = kernel_triples();
    rep.kernel_phi_star_trivial = true;
    for (const auto& t : rep.kernel) {
        if (phi_star_product(unit_product(t)) != one) rep.kernel_phi_star_trivial = false;
    }
    for (int i = 0; i < 4; ++i) {
        const IdealLattice modulus = principal_ideal(pow(rc.lambda, static_cast<unsigned>(i)));
        for (int a = 0; a < 18 && !rep.lower_witness[i]; ++a) {
            for (int b = 0; b < 9 && !rep.lower_witness[i]; ++b) {
                for (int c = 0; c < 3 && !rep.lower_witness[i]; ++c) {
                    const UnitTriple t{a, b, c};
                    const CycInt u = ring.unit(t);
                    if (modulus.contains(u - one) && phi_star_product(u) != one) rep.lower_witness[i] = t;
                }
            }
        }
    }
    return rep;
}

}  // namespace picard
