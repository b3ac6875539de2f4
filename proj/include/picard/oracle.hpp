#pragma once

// Ground truth independent of psi: naive point counts, the zeta-function
// route to L_p, and Jacobi sums.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "picard/cyclotomic.hpp"
#include "picard/hecke.hpp"
#include "picard/lfactor.hpp"

namespace picard {

/// |C(F_{p^k})| including the point at infinity, k in 1..3, p != 3.
std::uint64_t count_points(std::uint64_t p, unsigned k);

/// Same count straight from the definition: each t = x^4 - x contributes the
/// number of cube roots, decided by t^((q-1)/3). O(q log q); meant for small q.
std::uint64_t count_points_by_character(std::uint64_t p, unsigned k);

/// L_p from |C(F_p)|, |C(F_{p^2})|, |C(F_{p^3})|.
LocalFactor local_factor_naive(std::uint64_t p);

/// chi(x) = zeta^index[x] where x^((p-1)/9) = r^index[x] in F_p, r the root of
/// the canonical factor x - r of Phi_9 mod p.
struct JacobiContext {
    std::uint64_t p = 0;
    std::uint64_t r = 0;
    std::vector<std::uint8_t> index;  // index[0] unused
};

/// p must be 1 mod 9.
JacobiContext make_jacobi_context(std::uint64_t p);

/// sum over x in F_p of chi^a(x) chi^b(1 - x), with chi^a(0) = 0 for every a.
CycInt jacobi_sum(const JacobiContext& ctx, int a, int b);
CycInt jacobi_sum(std::uint64_t p, int a, int b);
/// -J_(3,1)(p).
CycInt jacobi_J(std::uint64_t p);

struct AffinePoint {
    std::uint64_t x = 0, y = 0;
    bool operator==(const AffinePoint&) const = default;
};

bool on_curve(const AffinePoint& pt, std::uint64_t p);         // y^3 = x^4 - x
bool on_curve_prime(const AffinePoint& pt, std::uint64_t p);   // v^9 = u (u+1)^6
/// (x, y) -> (-1/x^3, -y^2/x^3); undefined at x = 0.
std::optional<AffinePoint> to_curve_prime(const AffinePoint& pt, std::uint64_t p);
/// (u, v) -> (-(u+1)^2/v^3, (u+1)^3/v^4); undefined at v = 0.
std::optional<AffinePoint> from_curve_prime(const AffinePoint& pt, std::uint64_t p);

struct ConductorReport {
    bool unit_orders_ok = false;  // eps0^18, eps1^9, eps2^3 are 1 mod m
    bool eps0_order_exact = false;  // eps0^18 == 1 in O
    std::vector<UnitTriple> kernel;
    bool kernel_phi_star_trivial = false;
    /// For i = 0..3, a triple whose unit is 1 mod (lambda)^i with phi-star product != 1.
    std::array<std::optional<UnitTriple>, 4> lower_witness;
    bool ok() const;
};

ConductorReport verify_conductor();

}  // namespace picard
