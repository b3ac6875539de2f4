#pragma once

// Exact arithmetic in Z[zeta], zeta a primitive 9th root of unity.
//
// Elements are stored on the power basis 1, zeta, ..., zeta^5 and kept reduced
// modulo Phi_9(x) = x^6 + x^3 + 1, so equality is coefficient equality.

#include <array>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace picard {

using Integer = mpz_class;
using IntVector6 = std::array<Integer, 6>;
using IntMatrix6 = std::array<std::array<Integer, 6>, 6>;

/// An element i of (Z/9Z)*, naming the automorphism sigma_i : zeta -> zeta^i.
class GaloisIndex {
public:
    explicit GaloisIndex(int i);

    int value() const noexcept { return value_; }
    GaloisIndex operator*(GaloisIndex other) const noexcept;
    GaloisIndex inverse() const noexcept;
    bool operator==(const GaloisIndex&) const = default;

    /// 1, 2, 4, 5, 7, 8 in that order.
    static const std::array<GaloisIndex, 6>& all();

private:
    struct Unchecked {};
    GaloisIndex(int i, Unchecked) noexcept : value_(i) {}
    int value_;
};

class CycInt {
public:
    static constexpr int kDegree = 6;

    CycInt() = default;
    CycInt(long c);  // NOLINT: rational integers embed implicitly
    explicit CycInt(const Integer& c);
    explicit CycInt(IntVector6 coeffs) : c_(std::move(coeffs)) {}

    /// zeta^e for any integer e, reduced.
    static CycInt zeta_power(long e);

    const Integer& operator[](int i) const { return c_[i]; }
    const IntVector6& coeffs() const noexcept { return c_; }
    bool is_zero() const;
    bool is_rational() const;

    CycInt& operator+=(const CycInt& o);
    CycInt& operator-=(const CycInt& o);
    CycInt& operator*=(const CycInt& o);
    CycInt operator-() const;

    friend CycInt operator+(CycInt a, const CycInt& b) { return a += b; }
    friend CycInt operator-(CycInt a, const CycInt& b) { return a -= b; }
    friend CycInt operator*(const CycInt& a, const CycInt& b);
    friend bool operator==(const CycInt& a, const CycInt& b) { return a.c_ == b.c_; }

private:
    IntVector6 c_{};
};

CycInt pow(const CycInt& x, unsigned e);

CycInt galois(const CycInt& x, GaloisIndex i);
inline CycInt conj(const CycInt& x) { return galois(x, GaloisIndex(8)); }

/// Column j holds the coefficients of x * zeta^j.
IntMatrix6 mult_matrix(const CycInt& x);

/// Dense integer polynomial, lowest degree first, no trailing zeros.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Integer> coeffs);
    IntPoly(std::initializer_list<long> coeffs);

    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    const std::vector<Integer>& coeffs() const noexcept { return c_; }
    const Integer& operator[](int i) const { return c_[i]; }
    Integer coeff(int i) const;
    bool is_zero() const noexcept { return c_.empty(); }

    Integer operator()(const Integer& x) const;

    friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

    /// e.g. "X^2 + 7*X + 343".
    std::string to_string(char var = 'X') const;

private:
    void trim();
    std::vector<Integer> c_;
};

IntPoly pow(const IntPoly& p, unsigned e);

/// Characteristic polynomial of an integer matrix (monic, exact).
IntPoly char_poly(const IntMatrix6& m);
/// det(X I - mult_matrix(x)); equals prod_i (X - sigma_i(x)).
IntPoly char_poly(const CycInt& x);
/// Minimal polynomial over Q. Its 6/d-th power is char_poly(x).
IntPoly min_poly(const CycInt& x);

Integer norm(const CycInt& x);
/// 6 c0 - 3 c3.
Integer trace(const CycInt& x);

/// x evaluated at exp(2 pi i k / 9).
std::complex<double> embed(const CycInt& x, int k);
/// The six embeddings in GaloisIndex::all() order.
std::array<std::complex<double>, 6> embeddings(const CycInt& x);

/// "c0 + c1*z + ... + c5*z^5", zero terms omitted.
std::string to_string(const CycInt& x);
std::ostream& operator<<(std::ostream& os, const CycInt& x);
/// Inverse of to_string; also accepts any exponent of z and repeated terms.
CycInt parse_cycint(std::string_view text);

struct RingConstants {
    CycInt eps0;    // -zeta^2, order 18
    CycInt eps1;    // zeta^4 - zeta^3 + zeta
    CycInt eps2;    // zeta^5 + zeta^2 - zeta
    CycInt lambda;  // 1 + zeta + zeta^4, (lambda)^6 = (3)
    std::array<GaloisIndex, 3> phi_star;  // sigma_1, sigma_5, sigma_7
    std::array<GaloisIndex, 3> phi;       // sigma_2, sigma_4, sigma_8
};

const RingConstants& ring_constants();

/// prod over sigma in phi_star of sigma(x).
CycInt phi_star_product(const CycInt& x);

}  // namespace picard
