#pragma once

// The Sato-Tate group U(1)^3 x| <gamma> of y^3 = x^4 - x: exact moment
// sequences of the three traces, the explicit 6x6 matrices, and Haar sampling.
//
// Traces follow the L-normalization: for a matrix M, det(T I - M) reversed is
// 1 + a1 T + a2 T^2 + a3 T^3 + a2 T^4 + a1 T^5 + T^6.

#include <array>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "picard/cyclotomic.hpp"

namespace picard {

/// E[(u + 1/u)^n] for Haar u on the circle: 0 for odd n, C(n, n/2) otherwise.
Integer moment_alpha(unsigned n);

/// M_n of trace i (1..3) restricted to the component ST^0 gamma^k (k in 0..5).
Integer component_moment(unsigned trace, unsigned k, unsigned n);

/// (1/6) sum_k component_moment; throws std::logic_error if not integral.
Integer total_moment(unsigned trace, unsigned n);

/// Moments of ST^0 x| <gamma^j> for j | 6: the average over components k = 0 mod j.
mpq_class subgroup_moment(unsigned trace, unsigned j, unsigned n);

struct MomentTable {
    std::array<std::vector<Integer>, 3> total;  // total[i-1][n]
    std::array<std::array<std::vector<Integer>, 6>, 3> component;  // component[i-1][k][n]
};

/// Orders 0..max_order[i-1] for trace i.
MomentTable exact_moment_table(const std::array<unsigned, 3>& max_order);

/// {"mu1":[...],"mu2":[...],"mu3":[...],"components":{"k0":{"mu1":...},...}}
/// with integers written exactly.
std::string to_json(const MomentTable& table);

using ComplexMatrix6 = Eigen::Matrix<std::complex<double>, 6, 6>;

struct GroupMatrices {
    ComplexMatrix6 gamma;
    ComplexMatrix6 alpha;  // diag(z^2, conj z^2, z^4, conj z^4, z^8, conj z^8), z = exp(2 pi i / 9)
    ComplexMatrix6 J;      // three blocks [[0, 1], [-1, 0]]
};

const GroupMatrices& group_matrices();

/// alpha with zeta replaced by zeta^2.
ComplexMatrix6 sigma2_alpha();

/// max |entry| of M* M - I and of M^t J M - J.
double usp6_residual(const ComplexMatrix6& M);

struct GroupIdentityReport {
    double gamma6_plus_identity = 0;  // |gamma^6 + I|
    double gamma12_minus_identity = 0;
    double unitary = 0;  // |gamma* gamma - I|
    double symplectic = 0;  // |gamma^t J gamma - J|
    double conjugation = 0;  // |gamma alpha gamma^-1 - sigma2(alpha)|
    bool gamma_powers_off_identity_component = false;  // gamma^k not diagonal for k = 1..5
    double worst() const;
};

GroupIdentityReport verify_group_identities();

struct STElement {
    std::array<std::complex<double>, 3> u{1.0, 1.0, 1.0};
    unsigned k = 0;
};

/// diag(u1, conj u1, u2, conj u2, u3, conj u3) gamma^k.
ComplexMatrix6 embed_element(const STElement& e);

/// Coefficients c5, c4, c3 of det(T I - M) by Faddeev-LeVerrier.
std::array<double, 3> determinant_traces(const ComplexMatrix6& M);

/// (a1, a2, a3) from the closed forms per component.
std::array<double, 3> closed_form_traces(const STElement& e);

/// Closed forms checked against the determinant; throws std::logic_error
/// if they differ by more than 1e-10.
std::array<double, 3> char_poly_traces(const STElement& e);

/// Angles uniform in [0, 2 pi), k uniform in 0..5.
STElement haar_sample(std::mt19937_64& rng);

struct MonteCarloMoments {
    std::uint64_t samples = 0;
    unsigned max_order = 0;
    std::array<std::uint64_t, 6> component_count{};
    /// power_sum[i-1][k][n] = sum over samples in component k of a_i^n, n = 0..2 max_order.
    std::array<std::array<std::vector<double>, 6>, 3> power_sum;

    double mean(unsigned trace, unsigned n) const;
    /// Mean over samples with k = 0 mod j.
    double subgroup_mean(unsigned trace, unsigned j, unsigned n) const;
    double component_mean(unsigned trace, unsigned k, unsigned n) const;
    /// sqrt((mean(2n) - mean(n)^2) / samples).
    double standard_error(unsigned trace, unsigned n) const;
};

/// Samples are drawn in fixed chunks, each with its own seed derived from
/// `seed`, so the result does not depend on `workers`.
MonteCarloMoments mc_moments(std::uint64_t samples, std::uint64_t seed, unsigned max_order, unsigned workers);

std::string to_json(const MonteCarloMoments& mc);

}  // namespace picard
