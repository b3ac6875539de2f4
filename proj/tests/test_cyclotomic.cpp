#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <sstream>

#include "picard/cyclotomic.hpp"
#include "picard/ideal.hpp"
#include "test_support.hpp"

using namespace picard;
using picard::testing::random_cycint;
using picard::testing::z;

namespace {

CycInt vec(long c0, long c1, long c2, long c3, long c4, long c5) {
    return CycInt(IntVector6{c0, c1, c2, c3, c4, c5});
}

Integer det6(const IntMatrix6& m) { return char_poly(m)[0]; }

}  // namespace

TEST_CASE("addition is componentwise") {
    CHECK(vec(1, 0, 0, 0, 0, 0) + vec(0, 1, 0, 0, 0, 0) == vec(1, 1, 0, 0, 0, 0));
    const CycInt x = vec(3, -1, 4, 1, -5, 9);
    CHECK(x + CycInt() == x);
    CHECK(z(4) + ring_constants().eps2 - z(5) + z(1) == z(4) + z(2));
}

TEST_CASE("multiplication reduces modulo Phi_9") {
    CHECK(z(3) * z(3) == vec(-1, 0, 0, -1, 0, 0));
    const CycInt x = vec(3, -1, 4, 1, -5, 9);
    CHECK(x * CycInt(1L) == x);
    CHECK(pow(ring_constants().eps0, 18) == CycInt(1L));
    CHECK(pow(ring_constants().eps0, 9) == CycInt(-1L));
    CHECK(z(9) == CycInt(1L));
    CHECK(z(-1) == z(8));
}

TEST_CASE("galois action") {
    CHECK(galois(z(1), GaloisIndex(8)) == vec(0, 0, -1, 0, 0, -1));
    const CycInt x = vec(2, 7, -1, 8, 2, -8);
    CHECK(galois(x, GaloisIndex(1)) == x);
    for (const auto i : GaloisIndex::all()) CHECK(galois(CycInt(-12L), i) == CycInt(-12L));
    CHECK_THROWS_AS(GaloisIndex(3), std::invalid_argument);
    CHECK_THROWS_AS(GaloisIndex(0), std::invalid_argument);
}

TEST_CASE("multiplication matrix") {
    IntMatrix6 id{};
    for (int i = 0; i < 6; ++i) id[i][i] = 1;
    CHECK(mult_matrix(CycInt(1L)) == id);
    CHECK(mult_matrix(CycInt()) == IntMatrix6{});
    CHECK(det6(mult_matrix(ring_constants().lambda)) == 3);
    const CycInt x = vec(1, 2, 0, -3, 0, 1);
    const auto m = mult_matrix(x);
    for (int j = 0; j < 6; ++j) {
        IntVector6 col;
        for (int i = 0; i < 6; ++i) col[i] = m[i][j];
        CHECK(CycInt(col) == x * z(j));
    }
}

TEST_CASE("characteristic and minimal polynomials") {
    CHECK(char_poly(CycInt()) == IntPoly{0, 0, 0, 0, 0, 0, 1});
    CHECK(char_poly(z(1)) == IntPoly{1, 0, 0, 1, 0, 0, 1});
    CHECK(char_poly(z(3)) == pow(IntPoly{1, 1, 1}, 3));
    CHECK(min_poly(CycInt(5L)) == IntPoly{-5, 1});
    CHECK(min_poly(z(3)) == IntPoly{1, 1, 1});
    CHECK(min_poly(-21 * z(3) - CycInt(14L)) == IntPoly{343, 7, 1});
    CHECK(min_poly(z(1)) == IntPoly{1, 0, 0, 1, 0, 0, 1});
    CHECK(min_poly(z(3) - z(6)).degree() == 2);
}

TEST_CASE("norm and trace") {
    CHECK(norm(CycInt(1L)) == 1);
    CHECK(trace(CycInt(1L)) == 6);
    CHECK(norm(ring_constants().lambda) == 3);
    CHECK(trace(z(3)) == -3);
    CHECK(norm(CycInt(2L)) == 64);
    const CycInt x = vec(4, -2, 0, 3, 1, 1);
    CHECK(trace(x) == -char_poly(x)[5]);
    CHECK(norm(x) == char_poly(x)[0]);
}

TEST_CASE("embeddings") {
    for (const auto i : GaloisIndex::all()) CHECK(std::abs(embed(CycInt(1L), i.value()) - 1.0) < 1e-15);
    double prod = 1;
    for (const auto e : embeddings(ring_constants().eps1)) prod *= std::abs(e);
    CHECK(prod == doctest::Approx(1.0).epsilon(1e-9));
    const CycInt x = vec(3, 0, -2, 1, 5, 1);
    std::complex<double> sum = 0;
    for (const auto e : embeddings(x)) sum += e;
    CHECK(sum.real() == doctest::Approx(trace(x).get_d()).epsilon(1e-12));
}

TEST_CASE("ring constants") {
    const auto& rc = ring_constants();
    CHECK(abs(norm(rc.eps0)) == 1);
    CHECK(abs(norm(rc.eps1)) == 1);
    CHECK(abs(norm(rc.eps2)) == 1);
    CHECK(rc.eps0 == -z(2));
    CHECK(rc.eps1 == z(4) - z(3) + z(1));
    CHECK(rc.eps2 == z(5) + z(2) - z(1));
    CHECK(rc.lambda == CycInt(1L) + z(1) + z(4));
    CHECK(principal_ideal(pow(rc.lambda, 6)) == principal_ideal(CycInt(3L)));
    // phi_star = {sigma_2^0, sigma_2^4, sigma_2^5}
    const GaloisIndex s2(2);
    const GaloisIndex s2_4 = s2 * s2 * s2 * s2;
    const std::array<GaloisIndex, 3> expected{GaloisIndex(1), s2_4 * s2, s2_4};  // sigma_1, sigma_5, sigma_7
    CHECK(rc.phi_star == expected);
    CHECK(rc.phi[0] == s2);
    CHECK(rc.phi[1] == s2 * s2);
    CHECK(rc.phi[2] == s2 * s2 * s2);
}

TEST_CASE("text round trip") {
    CHECK(to_string(CycInt()) == "0");
    CHECK(to_string(-21 * z(3) - CycInt(14L)) == "-14 - 21*z^3");
    CHECK(parse_cycint("-14 - 21*z^3") == -21 * z(3) - CycInt(14L));
    CHECK(parse_cycint("z^6") == -z(3) - CycInt(1L));
    CHECK(parse_cycint("-z^4 - 2*z^3 - 2*z") == -z(4) - 2 * z(3) - 2 * z(1));
    CHECK_THROWS(parse_cycint("1 + y"));
    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; ++t) {
        const CycInt x = random_cycint(rng, 50);
        CHECK(parse_cycint(to_string(x)) == x);
    }
    std::ostringstream os;
    os << z(1);
    CHECK(os.str() == "z");
}

TEST_CASE("random algebraic properties") {
    std::mt19937_64 rng(20240601);
    for (int t = 0; t < 1000; ++t) {
        const CycInt x = random_cycint(rng, 1000);
        const CycInt y = random_cycint(rng, 1000);
        for (const auto i : GaloisIndex::all()) {
            REQUIRE(galois(x * y, i) == galois(x, i) * galois(y, i));
            REQUIRE(galois(x + y, i) == galois(x, i) + galois(y, i));
            for (const auto j : GaloisIndex::all()) REQUIRE(galois(galois(x, i), j) == galois(x, i * j));
        }
        REQUIRE(norm(x * y) == norm(x) * norm(y));
        REQUIRE(trace(x + y) == trace(x) + trace(y));
    }
}

TEST_CASE("char_poly is a power of min_poly and matches the conjugates") {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 100; ++t) {
        CycInt x = random_cycint(rng, 20);
        // Also exercise elements of the subfields Q(zeta^3) and Q(zeta + zeta^8).
        if (t % 3 == 1) x = CycInt(long(t)) + 5 * z(3);
        if (t % 3 == 2) x = CycInt(long(t % 7)) * (z(1) + z(8)) + CycInt(2L);
        const IntPoly m = min_poly(x);
        REQUIRE(m.degree() >= 1);
        REQUIRE(6 % m.degree() == 0);
        REQUIRE(pow(m, 6 / m.degree()) == char_poly(x));
        for (const auto e : embeddings(x)) {
            // m vanishes at every conjugate.
            std::complex<double> v = 0, power = 1;
            for (int i = 0; i <= m.degree(); ++i, power *= e) v += m[i].get_d() * power;
            REQUIRE(std::abs(v) < 1e-6 * (1 + std::abs(m[0].get_d())));
        }
    }
}

TEST_CASE("complex conjugation is sigma_8") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 100; ++t) {
        const CycInt x = random_cycint(rng, 100);
        for (const auto i : GaloisIndex::all()) {
            const auto a = embed(conj(x), i.value());
            const auto b = std::conj(embed(x, i.value()));
            REQUIRE(std::abs(a - b) < 1e-9 * (1 + std::abs(b)));
        }
    }
}
