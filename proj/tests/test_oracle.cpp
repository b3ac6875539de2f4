#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <random>

#include <Eigen/Dense>

#include "picard/finite_field.hpp"
#include "picard/hecke.hpp"
#include "picard/modp.hpp"
#include "picard/oracle.hpp"
#include "picard/primes.hpp"

using namespace picard;

namespace {

std::uint64_t ipow(std::uint64_t p, unsigned k) {
    std::uint64_t q = 1;
    for (unsigned i = 0; i < k; ++i) q *= p;
    return q;
}

}  // namespace

TEST_CASE("point counts for small primes") {
    const std::uint64_t table[7][4] = {{2, 3, 5, 9},       {5, 6, 26, 126},     {7, 8, 50, 365},
                                       {11, 12, 122, 1332}, {13, 14, 170, 2003}, {17, 18, 392, 4914},
                                       {19, 14, 302, 6935}};
    for (const auto& row : table) {
        for (unsigned k = 1; k <= 3; ++k) {
            CAPTURE(row[0]);
            CAPTURE(k);
            CHECK(count_points(row[0], k) == row[k]);
        }
    }
    CHECK(count_points(5, 1) == 6);
    CHECK_THROWS_AS(count_points(3, 1), std::invalid_argument);
    CHECK_THROWS_AS(count_points(15, 1), std::invalid_argument);
    CHECK_THROWS_AS(count_points(7, 4), std::invalid_argument);
    CHECK_THROWS_AS(count_points(1000003, 3), std::out_of_range);
}

TEST_CASE("cube-root counting agrees with the character test") {
    for (std::uint64_t p : primes_up_to(60)) {
        for (unsigned k = 1; k <= 2; ++k) CHECK(count_points(p, k) == count_points_by_character(p, k));
    }
    for (std::uint64_t p : {2, 5, 7, 13}) CHECK(count_points(p, 3) == count_points_by_character(p, 3));
}

TEST_CASE("q + 1 points unless q = 1 mod 9") {
    for (std::uint64_t p : primes_up_to(200)) {
        for (unsigned k = 1; k <= 3; ++k) {
            const std::uint64_t q = ipow(p, k);
            if (q % 9 == 1) continue;
            CAPTURE(q);
            CHECK(count_points(p, k) == q + 1);
            if (q % 3 == 1 && q < 50000) CHECK(count_points_by_character(p, k) == q + 1);
        }
    }
}

TEST_CASE("finite field extensions") {
    for (std::uint64_t p : {2, 5, 7, 19}) {
        for (unsigned k = 1; k <= 3; ++k) {
            const FiniteFieldExt F(p, k);
            CHECK(F.order() == ipow(p, k));
            CHECK(F.modulus().size() == k + 1);
            CHECK(F.modulus().back() == 1);
            if (k > 1) CHECK(modp::roots(F.modulus(), p).empty());
            for (std::uint64_t i = 1; i < F.order(); i += 1 + F.order() / 50) {
                const auto x = F.decode(i);
                CHECK(F.encode(x) == i);
                CHECK(F.pow(x, F.order() - 1) == F.from_int(1));
                const auto y = F.decode((i * 7 + 3) % F.order());
                CHECK(F.mul(x, y) == F.mul(y, x));
                CHECK(F.sub(F.add(x, y), y) == x);
            }
        }
    }
    // The first monic irreducible quadratic over F_2 in the c0 + 2 c1 order is x^2 + x + 1.
    CHECK(FiniteFieldExt(2, 2).modulus() == modp::Poly{1, 1, 1});
    CHECK(FiniteFieldExt(2, 3).modulus() == modp::Poly{1, 1, 0, 1});
}

TEST_CASE("local factors from point counts") {
    const LocalFactor L19 = local_factor_naive(19);
    CHECK(L19.b[1] == -6);
    CHECK(L19.b[2] == -12);
    CHECK(L19.b[3] == 169);
    const LocalFactor L5 = local_factor_naive(5);
    CHECK(L5.b[1] == 0);
    CHECK(L5.b[2] == 0);
    CHECK(L5.b[3] == 0);
    CHECK(L5.b[6] == 125);
    CHECK(local_factor_naive(13).b[3] == -65);
    for (std::uint64_t p : primes_up_to(100)) {
        CAPTURE(p);
        CHECK(local_factor(p) == local_factor_naive(p));
        CHECK(local_factor(p).points_over_fp() == Integer(static_cast<unsigned long>(count_points(p, 1))));
    }
}

TEST_CASE("point counts from the inverse roots") {
    for (std::uint64_t p : {5, 7, 19, 37, 43, 61}) {
        const LocalFactor L = local_factor(p);
        // Inverse roots of L are the roots of T^6 + b1 T^5 + ... + b6.
        Eigen::Matrix<double, 6, 6> companion = Eigen::Matrix<double, 6, 6>::Zero();
        for (int i = 1; i < 6; ++i) companion(i, i - 1) = 1.0;
        for (int i = 0; i < 6; ++i) companion(i, 5) = -L.b[6 - i].get_d();
        const Eigen::EigenSolver<Eigen::Matrix<double, 6, 6>> solver(companion, false);
        for (unsigned m = 1; m <= 3; ++m) {
            std::complex<double> sum = 0;
            for (int i = 0; i < 6; ++i) sum += std::pow(solver.eigenvalues()[i], static_cast<int>(m));
            const double predicted = 1 + static_cast<double>(ipow(p, m)) - sum.real();
            const double counted = static_cast<double>(count_points(p, m));
            CHECK(predicted == doctest::Approx(counted).epsilon(1e-4));
        }
    }
}

TEST_CASE("Jacobi sums") {
    for (std::uint64_t p : {19, 37, 73}) {
        CAPTURE(p);
        const JacobiContext ctx = make_jacobi_context(p);
        const CycInt j61 = jacobi_sum(ctx, 6, 1);
        const CycInt j31 = jacobi_sum(ctx, 3, 1);
        CHECK(j61 == jacobi_sum(ctx, 2, 1));
        CHECK(j31 == jacobi_sum(ctx, 5, 1));
        CHECK(trace(j61) == trace(j31));
        const Integer pp(static_cast<unsigned long>(p));
        const Integer n1(static_cast<unsigned long>(count_points(p, 1)));
        CHECK(n1 == pp + 1 + trace(j61));
        CHECK(n1 == pp + 1 - trace(jacobi_J(p)));
        CHECK(jacobi_J(p) == psi(p));
        for (const auto e : embeddings(j31)) CHECK(std::norm(e) == doctest::Approx(static_cast<double>(p)).epsilon(1e-6));
    }
    CHECK(trace(jacobi_J(19)) == 6);
    CHECK_THROWS_AS(make_jacobi_context(17), std::invalid_argument);
    // chi(r) = zeta: r^((p-1)/9) = r^index[r] in F_p.
    const JacobiContext ctx = make_jacobi_context(37);
    for (std::uint64_t x = 1; x < 37; ++x) CHECK(modp::pow(x, 4, 37) == modp::pow(ctx.r, ctx.index[x], 37));
}

TEST_CASE("psi equals J for split primes up to 3000") {
    for (std::uint64_t p : primes_up_to(3000)) {
        if (p % 9 != 1) continue;
        CAPTURE(p);
        CHECK(jacobi_J(p) == psi(p));
    }
}

TEST_CASE("conductor") {
    const ConductorReport rep = verify_conductor();
    CHECK(rep.unit_orders_ok);
    CHECK(rep.eps0_order_exact);
    CHECK(rep.kernel.size() == 9);
    CHECK(rep.kernel_phi_star_trivial);
    for (const auto& w : rep.lower_witness) {
        REQUIRE(w.has_value());
        CHECK(phi_star_product(unit_product(*w)) != CycInt(1L));
    }
    // (lambda)^3 witness really is 1 mod (lambda)^3.
    const IdealLattice m3 = principal_ideal(pow(ring_constants().lambda, 3));
    CHECK(m3.contains(unit_product(*rep.lower_witness[3]) - CycInt(1L)));
    CHECK(rep.ok());
}

TEST_CASE("isomorphism to v^9 = u (u + 1)^6") {
    std::mt19937_64 rng(3);
    for (std::uint64_t p : {19, 37}) {
        std::vector<AffinePoint> points;
        for (std::uint64_t x = 0; x < p; ++x) {
            for (std::uint64_t y = 0; y < p; ++y) {
                if (on_curve({x, y}, p)) points.push_back({x, y});
            }
        }
        REQUIRE(points.size() + 1 == count_points(p, 1));
        std::uniform_int_distribution<std::size_t> pick(0, points.size() - 1);
        for (int t = 0; t < 50; ++t) {
            const AffinePoint pt = points[pick(rng)];
            const auto image = to_curve_prime(pt, p);
            if (pt.x == 0) {
                CHECK(!image);
                continue;
            }
            REQUIRE(image);
            CHECK(on_curve_prime(*image, p));
            const auto back = from_curve_prime(*image, p);
            if (pt.y == 0) {
                CHECK(!back);
                continue;
            }
            REQUIRE(back);
            CHECK(*back == pt);
        }
    }
}
