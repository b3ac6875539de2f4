#pragma once

// Ideals of Z[zeta] as full-rank sublattices of Z^6 in Hermite normal form.

#include <span>
#include <vector>

#include "picard/cyclotomic.hpp"

namespace picard {

/// Rows are coordinate vectors of lattice generators. Upper triangular, positive
/// diagonal, entries above each pivot reduced into [0, pivot).
struct IdealLattice {
    IntMatrix6 basis{};
    Integer det = 0;

    /// Canonical representative of v modulo the lattice.
    IntVector6 reduce(IntVector6 v) const;
    bool contains(const CycInt& x) const;
    /// zeta * row lies in the lattice for every row.
    bool closed_under_zeta() const;
    CycInt row(int i) const { return CycInt(basis[i]); }

    friend bool operator==(const IdealLattice& a, const IdealLattice& b) { return a.basis == b.basis; }
};

/// HNF of the lattice spanned by `rows`. `multiple` must be a positive integer
/// with multiple * Z^6 contained in that lattice; entries are reduced modulo it.
IdealLattice hnf(std::span<const IntVector6> rows, const Integer& multiple);

IdealLattice principal_ideal(const CycInt& x);
IdealLattice ideal_product(const IdealLattice& a, const IdealLattice& b);
IdealLattice galois(const IdealLattice& a, GaloisIndex i);

/// The ideal (p, h(zeta)) for an integer polynomial h (lowest degree first).
IdealLattice ideal_from_prime_factor(const Integer& p, std::span<const Integer> h, unsigned residue_degree);

}  // namespace picard
