#pragma once

// Local factors L_p(C, T) of y^3 = x^4 - x obtained from psi, their
// normalized traces, and the Sato-Tate component of each prime.

#include <array>
#include <cstdint>
#include <string>

#include "picard/cyclotomic.hpp"

namespace picard {

struct LocalFactor {
    std::uint64_t p = 0;
    std::array<Integer, 7> b{};  // b[0] + b[1] T + ... + b[6] T^6

    bool operator==(const LocalFactor&) const = default;

    /// b0 = 1, b4 = p b2, b5 = p^2 b1, b6 = p^3.
    bool satisfies_functional_equation() const;
    /// All inverse roots have absolute value sqrt(p); decided exactly.
    bool satisfies_weil_bound() const;
    /// max over complex roots of | |root| sqrt(p) - 1 |, in floating point.
    double weil_deviation() const;
    /// |C(F_p)| = p + 1 + b1.
    Integer points_over_fp() const;
};

struct TraceRecord {
    std::uint64_t p = 0;
    unsigned f = 0;
    unsigned k = 0;
    double a1 = 0, a2 = 0, a3 = 0;
};

/// L_p(T) = (T^{fd} m(1/T^f))^{6/(fd)}, m the minimal polynomial of psi(p).
LocalFactor local_factor(std::uint64_t p);
/// Same, from an already computed psi value.
LocalFactor local_factor_from_psi(std::uint64_t p, const CycInt& psi_value);

/// The k in {0..5} with 2^k == p (mod 9).
unsigned component_index(std::uint64_t p);

/// a_i = b_i / p^{i/2}.
TraceRecord normalized_traces(const LocalFactor& L);

bool shape_check(const LocalFactor& L);

/// "1 -6 -12 169 -228 -2166 6859"
std::string coefficient_line(const LocalFactor& L);
/// "[1,-6,-12,...]"
std::string coefficient_list(const LocalFactor& L);
/// Factored form for the special shapes, e.g. "(1+17T^2)^3"; otherwise the expanded polynomial.
std::string factored_string(const LocalFactor& L);

}  // namespace picard
