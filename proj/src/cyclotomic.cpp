#include "picard/cyclotomic.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace picard {

namespace {

bool is_unit_mod9(int i) { return i % 3 != 0; }

int mod9(long e) {
    long r = e % 9;
    return static_cast<int>(r < 0 ? r + 9 : r);
}

// Adds c * zeta^e (0 <= e < 9) into a reduced coefficient vector.
void add_zeta_power(IntVector6& v, int e, const Integer& c) {
    if (e < 6) {
        v[e] += c;
    } else {
        // zeta^6 = -zeta^3 - 1, zeta^7 = -zeta^4 - zeta, zeta^8 = -zeta^5 - zeta^2
        v[e - 3] -= c;
        v[e - 6] -= c;
    }
}

}  // namespace

GaloisIndex::GaloisIndex(int i) : value_(mod9(i)) {
    if (!is_unit_mod9(value_)) {
        throw std::invalid_argument("GaloisIndex: " + std::to_string(i) + " is not a unit mod 9");
    }
}

GaloisIndex GaloisIndex::operator*(GaloisIndex other) const noexcept {
    return GaloisIndex((value_ * other.value_) % 9, Unchecked{});
}

GaloisIndex GaloisIndex::inverse() const noexcept {
    for (int j : {1, 2, 4, 5, 7, 8}) {
        if ((value_ * j) % 9 == 1) return GaloisIndex(j, Unchecked{});
    }
    return *this;  // unreachable
}

const std::array<GaloisIndex, 6>& GaloisIndex::all() {
    static const std::array<GaloisIndex, 6> kAll{GaloisIndex(1), GaloisIndex(2), GaloisIndex(4),
                                                 GaloisIndex(5), GaloisIndex(7), GaloisIndex(8)};
    return kAll;
}

// ---------------------------------------------------------------------------
// CycInt

CycInt::CycInt(long c) { c_[0] = c; }

CycInt::CycInt(const Integer& c) { c_[0] = c; }

CycInt CycInt::zeta_power(long e) {
    CycInt r;
    add_zeta_power(r.c_, mod9(e), Integer(1));
    return r;
}

bool CycInt::is_zero() const {
    for (const auto& c : c_) {
        if (c != 0) return false;
    }
    return true;
}

bool CycInt::is_rational() const {
    for (int i = 1; i < kDegree; ++i) {
        if (c_[i] != 0) return false;
    }
    return true;
}

CycInt& CycInt::operator+=(const CycInt& o) {
    for (int i = 0; i < kDegree; ++i) c_[i] += o.c_[i];
    return *this;
}

CycInt& CycInt::operator-=(const CycInt& o) {
    for (int i = 0; i < kDegree; ++i) c_[i] -= o.c_[i];
    return *this;
}

CycInt& CycInt::operator*=(const CycInt& o) { return *this = *this * o; }

CycInt CycInt::operator-() const {
    CycInt r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

CycInt operator*(const CycInt& a, const CycInt& b) {
    std::array<Integer, 11> prod{};
    for (int i = 0; i < CycInt::kDegree; ++i) {
        if (a.c_[i] == 0) continue;
        for (int j = 0; j < CycInt::kDegree; ++j) {
            mpz_addmul(prod[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
        }
    }
    for (int d = 10; d >= 6; --d) {
        prod[d - 3] -= prod[d];
        prod[d - 6] -= prod[d];
    }
    CycInt r;
    for (int i = 0; i < CycInt::kDegree; ++i) r.c_[i].swap(prod[i]);
    return r;
}

CycInt pow(const CycInt& x, unsigned e) {
    CycInt result(1L);
    CycInt base = x;
    while (e != 0) {
        if (e & 1u) result *= base;
        e >>= 1;
        if (e != 0) base *= base;
    }
    return result;
}

CycInt galois(const CycInt& x, GaloisIndex i) {
    IntVector6 v{};
    for (int j = 0; j < CycInt::kDegree; ++j) {
        if (x[j] != 0) add_zeta_power(v, (i.value() * j) % 9, x[j]);
    }
    return CycInt(std::move(v));
}

IntMatrix6 mult_matrix(const CycInt& x) {
    IntMatrix6 m{};
    for (int j = 0; j < CycInt::kDegree; ++j) {
        const CycInt col = x * CycInt::zeta_power(j);
        for (int i = 0; i < CycInt::kDegree; ++i) m[i][j] = col[i];
    }
    return m;
}

// ---------------------------------------------------------------------------
// IntPoly

IntPoly::IntPoly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
    for (long c : coeffs) c_.emplace_back(c);
    trim();
}

void IntPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Integer IntPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
    return c_[i];
}

Integer IntPoly::operator()(const Integer& x) const {
    Integer acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return IntPoly{};
    std::vector<Integer> r(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        for (size_t j = 0; j < b.c_.size(); ++j) {
            mpz_addmul(r[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
        }
    }
    return IntPoly(std::move(r));
}

IntPoly pow(const IntPoly& p, unsigned e) {
    IntPoly r{1};
    for (unsigned i = 0; i < e; ++i) r = r * p;
    return r;
}

std::string IntPoly::to_string(char var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Integer& c = c_[i];
        if (c == 0) continue;
        Integer mag = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0) {
            os << mag;
            continue;
        }
        if (mag != 1) os << mag << "*";
        os << var;
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

// Faddeev-LeVerrier; every division by k is exact over Z.
IntPoly char_poly(const IntMatrix6& a) {
    constexpr int n = 6;
    std::vector<Integer> c(n + 1);
    c[n] = 1;
    IntMatrix6 m{};  // M_0 = 0
    for (int k = 1; k <= n; ++k) {
        IntMatrix6 next{};
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                Integer s = 0;
                for (int l = 0; l < n; ++l) mpz_addmul(s.get_mpz_t(), a[i][l].get_mpz_t(), m[l][j].get_mpz_t());
                next[i][j] = s;
            }
            next[i][i] += c[n - k + 1];
        }
        m = std::move(next);
        Integer tr = 0;
        for (int i = 0; i < n; ++i) {
            for (int l = 0; l < n; ++l) mpz_addmul(tr.get_mpz_t(), a[i][l].get_mpz_t(), m[l][i].get_mpz_t());
        }
        Integer q;
        mpz_divexact_ui(q.get_mpz_t(), tr.get_mpz_t(), static_cast<unsigned long>(k));
        c[n - k] = -q;
    }
    return IntPoly(std::move(c));
}

IntPoly char_poly(const CycInt& x) { return char_poly(mult_matrix(x)); }

// Smallest d with x^d in the Q-span of 1, x, ..., x^(d-1).
IntPoly min_poly(const CycInt& x) {
    std::vector<CycInt> powers{CycInt(1L)};
    for (int d = 1; d <= CycInt::kDegree; ++d) {
        powers.push_back(powers.back() * x);
        // Augmented system: columns x^0..x^(d-1) | x^d, rows are coordinates.
        std::vector<std::vector<mpq_class>> a(CycInt::kDegree, std::vector<mpq_class>(d + 1));
        for (int r = 0; r < CycInt::kDegree; ++r) {
            for (int col = 0; col <= d; ++col) a[r][col] = powers[col][r];
        }
        std::vector<int> pivot_row(d, -1);
        int row = 0;
        bool independent = true;
        for (int col = 0; col < d && independent; ++col) {
            int sel = -1;
            for (int r = row; r < CycInt::kDegree; ++r) {
                if (a[r][col] != 0) {
                    sel = r;
                    break;
                }
            }
            if (sel < 0) {
                independent = false;  // cannot happen: lower powers were independent
                break;
            }
            std::swap(a[sel], a[row]);
            for (int r = 0; r < CycInt::kDegree; ++r) {
                if (r == row || a[r][col] == 0) continue;
                mpq_class f = a[r][col] / a[row][col];
                for (int c2 = col; c2 <= d; ++c2) a[r][c2] -= f * a[row][c2];
            }
            pivot_row[col] = row++;
        }
        if (!independent) throw std::logic_error("min_poly: dependent lower powers");
        bool consistent = true;
        for (int r = row; r < CycInt::kDegree; ++r) {
            if (a[r][d] != 0) {
                consistent = false;
                break;
            }
        }
        if (!consistent) continue;
        // x^d = sum_j s_j x^j, so m(X) = X^d - sum_j s_j X^j.
        std::vector<Integer> coeffs(d + 1);
        coeffs[d] = 1;
        for (int j = 0; j < d; ++j) {
            mpq_class s = a[pivot_row[j]][d] / a[pivot_row[j]][j];
            s.canonicalize();
            if (s.get_den() != 1) throw std::logic_error("min_poly: non-integral coefficient");
            coeffs[j] = -s.get_num();
        }
        return IntPoly(std::move(coeffs));
    }
    throw std::logic_error("min_poly: degree exceeds 6");
}

Integer norm(const CycInt& x) {
    const CycInt real_part = x * conj(x);
    const CycInt n = real_part * galois(real_part, GaloisIndex(2)) * galois(real_part, GaloisIndex(4));
    if (!n.is_rational()) throw std::logic_error("norm: product of conjugates is not rational");
    return n[0];
}

Integer trace(const CycInt& x) { return 6 * x[0] - 3 * x[3]; }

std::complex<double> embed(const CycInt& x, int k) {
    std::complex<double> acc = 0.0;
    for (int j = CycInt::kDegree - 1; j >= 0; --j) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * k) % 9) / 9.0;
        acc += x[j].get_d() * std::polar(1.0, angle);
    }
    return acc;
}

std::array<std::complex<double>, 6> embeddings(const CycInt& x) {
    std::array<std::complex<double>, 6> out;
    const auto& all = GaloisIndex::all();
    for (int i = 0; i < 6; ++i) out[i] = embed(x, all[i].value());
    return out;
}

// ---------------------------------------------------------------------------
// Text form

std::string to_string(const CycInt& x) {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < CycInt::kDegree; ++i) {
        const Integer& c = x[i];
        if (c == 0) continue;
        Integer mag = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0) {
            os << mag;
            continue;
        }
        if (mag != 1) os << mag << "*";
        os << "z";
        if (i > 1) os << "^" << i;
    }
    return first ? std::string("0") : os.str();
}

std::ostream& operator<<(std::ostream& os, const CycInt& x) { return os << to_string(x); }

namespace {

class CycParser {
public:
    explicit CycParser(std::string_view s) : s_(s) {}

    CycInt parse() {
        IntVector6 acc{};
        skip_ws();
        if (at_end()) fail("empty input");
        bool first = true;
        while (!at_end()) {
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = (get() == '-') ? -1 : 1;
                skip_ws();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            first = false;
            parse_term(acc, sign);
            skip_ws();
        }
        return CycInt(std::move(acc));
    }

private:
    void parse_term(IntVector6& acc, int sign) {
        Integer coeff = 1;
        bool have_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            coeff = Integer(digits());
            have_coeff = true;
            skip_ws();
        }
        long exponent = 0;
        if (!at_end() && (peek() == '*' || peek() == 'z')) {
            if (peek() == '*') {
                if (!have_coeff) fail("'*' without coefficient");
                get();
                skip_ws();
            }
            if (at_end() || get() != 'z') fail("expected 'z'");
            exponent = 1;
            skip_ws();
            if (!at_end() && peek() == '^') {
                get();
                skip_ws();
                if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent");
                exponent = std::stol(digits());
            }
        } else if (!have_coeff) {
            fail("expected a term");
        }
        add_zeta_power(acc, mod9(exponent), sign * coeff);
    }

    std::string digits() {
        size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        return std::string(s_.substr(start, pos_ - start));
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("parse_cycint: " + what + " at offset " + std::to_string(pos_) + " in '" +
                                    std::string(s_) + "'");
    }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return s_[pos_]; }
    char get() { return s_[pos_++]; }

    std::string_view s_;
    size_t pos_ = 0;
};

}  // namespace

CycInt parse_cycint(std::string_view text) { return CycParser(text).parse(); }

// ---------------------------------------------------------------------------

const RingConstants& ring_constants() {
    static const RingConstants kConstants{
        parse_cycint("-z^2"),
        parse_cycint("z - z^3 + z^4"),
        parse_cycint("-z + z^2 + z^5"),
        parse_cycint("1 + z + z^4"),
        {GaloisIndex(1), GaloisIndex(5), GaloisIndex(7)},
        {GaloisIndex(2), GaloisIndex(4), GaloisIndex(8)},
    };
    return kConstants;
}

CycInt phi_star_product(const CycInt& x) {
    return x * galois(x, GaloisIndex(5)) * galois(x, GaloisIndex(7));
}

}  // namespace picard
