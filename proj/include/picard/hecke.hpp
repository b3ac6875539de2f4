#pragma once

// Splitting of rational primes in Z[zeta_9], ideal generators, and the
// Hecke character psi of conductor (1 + zeta + zeta^4)^4 with infinity type
// {sigma_1, sigma_5, sigma_7}.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "picard/cyclotomic.hpp"
#include "picard/ideal.hpp"

namespace picard {

class GeneratorSearchError : public std::runtime_error {
public:
    GeneratorSearchError(std::uint64_t p, const std::string& what)
        : std::runtime_error("generator search failed for p = " + std::to_string(p) + ": " + what), prime(p) {}
    std::uint64_t prime;
};

/// Exponents of eps0^a eps1^b eps2^c with 0 <= a < 18, 0 <= b < 9, 0 <= c < 3.
struct UnitTriple {
    int a = 0, b = 0, c = 0;
    bool operator==(const UnitTriple&) const = default;
};

CycInt unit_product(const UnitTriple& t);

/// Multiplicative order of p mod 9. Throws for p = 3 and for non-primes.
unsigned residue_degree(std::uint64_t p);

/// Monic irreducible factor of Phi_9 mod p with coefficients in [0, p), lowest degree first.
using PrimeFactorPoly = std::vector<std::uint64_t>;

/// All irreducible factors of Phi_9 mod p, sorted lexicographically (constant term first).
std::vector<PrimeFactorPoly> phi9_factors_mod(std::uint64_t p);

IdealLattice ideal_above(std::uint64_t p, const PrimeFactorPoly& h);

/// The canonical prime above p: built from the lexicographically smallest factor.
IdealLattice split_prime(std::uint64_t p);

/// A generator of a prime ideal of norm p^f, found by LLL reduction under the
/// trace form sum_k |embed(x,k)|^2 followed by short-vector enumeration.
CycInt find_generator(const IdealLattice& ideal, std::uint64_t p);

/// The residue ring O/m, m = (lambda)^4, with its unit-product lookup.
class ResidueRingM {
public:
    static const ResidueRingM& instance();

    const IdealLattice& modulus() const { return modulus_; }
    int size() const { return static_cast<int>(residues_.size()); }
    const std::vector<IntVector6>& residues() const { return residues_; }
    int index_of(const CycInt& x) const;
    bool is_invertible(int index) const { return invertible_[index]; }
    /// The (lexicographically first) triple t with unit_product(t) * residue == 1.
    const UnitTriple& adjusting_triple(int index) const { return adjust_[index]; }
    /// Residue index of unit_product(t) for each of the 486 triples, ordered (a, b, c).
    const std::vector<int>& unit_residues() const { return unit_residues_; }
    const CycInt& unit(const UnitTriple& t) const { return units_[(t.a * 9 + t.b) * 3 + t.c]; }

private:
    ResidueRingM();
    IdealLattice modulus_;
    std::array<int, 6> radix_{};
    std::vector<IntVector6> residues_;
    std::vector<bool> invertible_;
    std::vector<UnitTriple> adjust_;
    std::vector<CycInt> units_;
    std::vector<int> unit_residues_;
};

/// The unit products eps0^a eps1^b eps2^c that are 1 mod m (the kernel of the
/// adjustment): (0,0,0), (2,1,2), (4,2,1), ... (16,8,1).
std::vector<UnitTriple> kernel_triples();

struct UnitAdjustment {
    UnitTriple triple;
    CycInt adjusted;
};

/// Finds (a,b,c) with eps0^a eps1^b eps2^c alpha == 1 mod m.
UnitAdjustment unit_adjust(const CycInt& alpha);

CycInt psi_from_generator(const CycInt& alpha);

struct PrimeSplit {
    std::uint64_t p = 0;
    unsigned f = 0;
    unsigned g = 0;
    PrimeFactorPoly h;
    IdealLattice ideal;
    CycInt alpha;
    UnitTriple triple;
    CycInt adjusted;
    CycInt psi;
};

PrimeSplit analyze_prime(std::uint64_t p);
PrimeSplit analyze_prime_ideal(std::uint64_t p, const PrimeFactorPoly& h);

/// psi at the canonical prime above p.
CycInt psi(std::uint64_t p);

struct PsiReport {
    std::uint64_t p = 0;
    CycInt psi;
    bool norm_ok = false;        // psi * conj(psi) == p^f
    bool congruence_ok = false;  // psi == 1 mod m
    bool ideal_ok = false;       // (psi) == P * sigma_7(P) * sigma_5(P)
    bool ok() const { return norm_ok && congruence_ok && ideal_ok; }
};

PsiReport verify_psi_properties(std::uint64_t p);

std::string format_prime_split(const PrimeSplit& s);
std::string to_string(const PrimeFactorPoly& h);

}  // namespace picard
