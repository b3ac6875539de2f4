#include "picard/ideal.hpp"

#include <algorithm>
#include <stdexcept>

namespace picard {

namespace {

void reduce_mod(IntVector6& v, const Integer& m) {
    for (auto& c : v) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
}

bool is_zero(const IntVector6& v) {
    return std::all_of(v.begin(), v.end(), [](const Integer& c) { return c == 0; });
}

// v -= q * w
void submul(IntVector6& v, const Integer& q, const IntVector6& w) {
    for (int i = 0; i < 6; ++i) mpz_submul(v[i].get_mpz_t(), q.get_mpz_t(), w[i].get_mpz_t());
}

}  // namespace

IdealLattice hnf(std::span<const IntVector6> rows, const Integer& multiple) {
    if (multiple <= 0) throw std::invalid_argument("hnf: multiple must be positive");
    std::vector<IntVector6> work;
    work.reserve(rows.size() + 6);
    for (const auto& r : rows) {
        IntVector6 v = r;
        reduce_mod(v, multiple);
        if (!is_zero(v)) work.push_back(std::move(v));
    }
    for (int i = 0; i < 6; ++i) {
        IntVector6 v{};
        v[i] = multiple;
        work.push_back(std::move(v));
    }

    IdealLattice out;
    for (int col = 0; col < 6; ++col) {
        // Euclid on column `col` until a single row is nonzero there.
        for (;;) {
            int best = -1;
            int nonzero = 0;
            for (int r = 0; r < static_cast<int>(work.size()); ++r) {
                if (work[r][col] == 0) continue;
                ++nonzero;
                if (best < 0 || mpz_cmpabs(work[r][col].get_mpz_t(), work[best][col].get_mpz_t()) < 0) best = r;
            }
            if (best < 0) throw std::logic_error("hnf: lattice is not full rank");
            if (nonzero == 1) break;
            for (int r = 0; r < static_cast<int>(work.size()); ++r) {
                if (r == best || work[r][col] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), work[r][col].get_mpz_t(), work[best][col].get_mpz_t());
                submul(work[r], q, work[best]);
                reduce_mod(work[r], multiple);
            }
        }
        auto it = std::find_if(work.begin(), work.end(), [&](const IntVector6& v) { return v[col] != 0; });
        IntVector6 pivot = std::move(*it);
        work.erase(it);
        if (pivot[col] < 0) {
            for (auto& c : pivot) c = -c;
        }
        out.basis[col] = std::move(pivot);
        std::erase_if(work, [](const IntVector6& v) { return is_zero(v); });
    }
    // Reduce entries above the diagonal; later columns are handled afterwards.
    for (int col = 1; col < 6; ++col) {
        for (int r = 0; r < col; ++r) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), out.basis[r][col].get_mpz_t(), out.basis[col][col].get_mpz_t());
            if (q != 0) submul(out.basis[r], q, out.basis[col]);
        }
    }
    out.det = 1;
    for (int i = 0; i < 6; ++i) out.det *= out.basis[i][i];
    return out;
}

IntVector6 IdealLattice::reduce(IntVector6 v) const {
    for (int i = 0; i < 6; ++i) {
        if (v[i] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), v[i].get_mpz_t(), basis[i][i].get_mpz_t());
        if (q != 0) submul(v, q, basis[i]);
    }
    return v;
}

bool IdealLattice::contains(const CycInt& x) const { return is_zero(reduce(x.coeffs())); }

bool IdealLattice::closed_under_zeta() const {
    const CycInt zeta = CycInt::zeta_power(1);
    for (int i = 0; i < 6; ++i) {
        if (!contains(zeta * row(i))) return false;
    }
    return true;
}

IdealLattice principal_ideal(const CycInt& x) {
    std::array<IntVector6, 6> rows;
    for (int j = 0; j < 6; ++j) rows[j] = (x * CycInt::zeta_power(j)).coeffs();
    return hnf(rows, abs(norm(x)));
}

IdealLattice ideal_product(const IdealLattice& a, const IdealLattice& b) {
    std::vector<IntVector6> rows;
    rows.reserve(36);
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) rows.push_back((a.row(i) * b.row(j)).coeffs());
    }
    return hnf(rows, a.det * b.det);
}

IdealLattice galois(const IdealLattice& a, GaloisIndex i) {
    std::array<IntVector6, 6> rows;
    for (int r = 0; r < 6; ++r) rows[r] = galois(a.row(r), i).coeffs();
    return hnf(rows, a.det);
}

IdealLattice ideal_from_prime_factor(const Integer& p, std::span<const Integer> h, unsigned residue_degree) {
    IntVector6 hv{};
    for (size_t i = 0; i < h.size(); ++i) {
        CycInt term = CycInt::zeta_power(static_cast<long>(i));
        for (int j = 0; j < 6; ++j) hv[j] += h[i] * term[j];
    }
    const CycInt hz(hv);
    std::vector<IntVector6> rows;
    for (int j = 0; j < 6; ++j) {
        IntVector6 v{};
        v[j] = p;
        rows.push_back(v);
        rows.push_back((hz * CycInt::zeta_power(j)).coeffs());
    }
    Integer norm_p;
    mpz_pow_ui(norm_p.get_mpz_t(), p.get_mpz_t(), residue_degree);
    IdealLattice out = hnf(rows, norm_p);
    if (out.det != norm_p) throw std::logic_error("ideal_from_prime_factor: unexpected index");
    return out;
}

}  // namespace picard
