#include "picard/lfactor.hpp"

#include <cmath>
#include <sstream>
#include <utility>
#include <vector>
#include <stdexcept>

#include <Eigen/Dense>

#include "picard/hecke.hpp"

namespace picard {

namespace {

Integer ui(std::uint64_t x) { return Integer(static_cast<unsigned long>(x)); }

// Sign of u + v sqrt(p).
int sign_with_root(const Integer& u, const Integer& v, std::uint64_t p) {
    const int su = sgn(u);
    const int sv = sgn(v);
    if (su >= 0 && sv >= 0) return (su == 0 && sv == 0) ? 0 : 1;
    if (su <= 0 && sv <= 0) return -1;
    const Integer lhs = u * u;
    const Integer rhs = v * v * ui(p);
    const int c = cmp(lhs, rhs);
    return su > 0 ? c : -c;
}

using QPoly = std::vector<mpq_class>;  // lowest degree first

void trim(QPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder and quotient of f / g over Q.
std::pair<QPoly, QPoly> divide(QPoly f, const QPoly& g) {
    trim(f);
    QPoly q(f.size() >= g.size() ? f.size() - g.size() + 1 : 0);
    while (f.size() >= g.size() && !f.empty()) {
        const std::size_t shift = f.size() - g.size();
        const mpq_class c = f.back() / g.back();
        q[shift] = c;
        for (std::size_t i = 0; i < g.size(); ++i) f[shift + i] -= c * g[i];
        f.pop_back();
        trim(f);
    }
    return {f, q};
}

QPoly squarefree_part(QPoly f) {
    trim(f);
    if (f.size() <= 2) return f;
    QPoly df(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i) df[i - 1] = f[i] * static_cast<long>(i);
    QPoly a = f, g = df;
    while (!g.empty()) {
        auto r = divide(a, g).first;
        a = std::move(g);
        g = std::move(r);
    }
    return divide(f, a).second;
}

}  // namespace

bool LocalFactor::satisfies_functional_equation() const {
    const Integer pp = ui(p);
    return b[0] == 1 && b[4] == pp * b[2] && b[5] == pp * pp * b[1] && b[6] == pp * pp * pp;
}

// With x = T + 1/T the normalized factor is T^3 Q(x); scaling x = y / sqrt(p)
// turns Q into R(y) = y^3 + b1 y^2 + (b2 - 3p) y + (b3 - 2p b1). Unit-circle
// roots correspond to R being real-rooted with all roots in [-2 sqrt(p), 2 sqrt(p)],
// which is decided by the discriminant and the signs of R, R', R'' at the endpoints.
bool LocalFactor::satisfies_weil_bound() const {
    if (!satisfies_functional_equation()) return false;
    const Integer pp = ui(p);
    const Integer& B = b[1];
    const Integer C = b[2] - 3 * pp;
    const Integer D = b[3] - 2 * pp * b[1];
    const Integer disc = 18 * B * C * D - 4 * B * B * B * D + B * B * C * C - 4 * C * C * C - 27 * D * D;
    if (disc < 0) return false;
    const Integer r0 = 4 * pp * B + D;
    const Integer r1 = 8 * pp + 2 * C;
    const Integer d0 = 12 * pp + C;
    const Integer d1 = 4 * B;
    const Integer e0 = 2 * B;
    const Integer e1 = 12;
    return sign_with_root(r0, r1, p) >= 0 && sign_with_root(d0, d1, p) >= 0 && sign_with_root(e0, e1, p) >= 0 &&
           sign_with_root(r0, -r1, p) <= 0 && sign_with_root(d0, -d1, p) >= 0 && sign_with_root(e0, -e1, p) <= 0;
}

double LocalFactor::weil_deviation() const {
    // Repeated roots (e.g. (1 + p T^2)^3) would cost most of the precision, so
    // the roots are taken from the exact square-free part.
    std::vector<mpq_class> f(b.begin(), b.end());
    const auto sf = squarefree_part(f);
    const int n = static_cast<int>(sf.size()) - 1;
    if (n < 1) return 0;
    // Substituting T = S / sqrt(p) puts the expected roots on the unit circle.
    const double s = std::sqrt(static_cast<double>(p));
    std::vector<double> a(n + 1);
    for (int i = 0; i <= n; ++i) a[i] = sf[i].get_d() / std::pow(s, i);
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -a[i] / a[n];
    const Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    double worst = 0;
    for (int i = 0; i < n; ++i) worst = std::max(worst, std::abs(std::abs(solver.eigenvalues()[i]) - 1.0));
    return worst;
}

Integer LocalFactor::points_over_fp() const { return ui(p) + 1 + b[1]; }

LocalFactor local_factor_from_psi(std::uint64_t p, const CycInt& psi_value) {
    const unsigned f = residue_degree(p);
    const IntPoly m = min_poly(psi_value);
    const int d = m.degree();
    const int fd = static_cast<int>(f) * d;
    if (fd <= 0 || 6 % fd != 0) {
        throw std::logic_error("local_factor: 6/(f d) is not an integer for p = " + std::to_string(p));
    }
    // T^{fd} m(1/T^f) = sum_j m_j T^{f (d - j)}
    std::vector<Integer> base(fd + 1);
    for (int j = 0; j <= d; ++j) base[f * (d - j)] = m[j];
    const IntPoly expanded = pow(IntPoly(std::move(base)), static_cast<unsigned>(6 / fd));
    if (expanded.degree() != 6) throw std::logic_error("local_factor: degree is not 6");
    LocalFactor L;
    L.p = p;
    for (int i = 0; i <= 6; ++i) L.b[i] = expanded[i];
    if (!L.satisfies_functional_equation()) {
        throw std::logic_error("local_factor: coefficient relations fail for p = " + std::to_string(p));
    }
    return L;
}

LocalFactor local_factor(std::uint64_t p) { return local_factor_from_psi(p, psi(p)); }

unsigned component_index(std::uint64_t p) {
    switch (p % 9) {
        case 1: return 0;
        case 2: return 1;
        case 4: return 2;
        case 8: return 3;
        case 7: return 4;
        case 5: return 5;
        default: throw std::invalid_argument("component_index: p must be coprime to 3");
    }
}

TraceRecord normalized_traces(const LocalFactor& L) {
    TraceRecord r;
    r.p = L.p;
    r.f = residue_degree(L.p);
    r.k = component_index(L.p);
    const double p = static_cast<double>(L.p);
    const double s = std::sqrt(p);
    r.a1 = L.b[1].get_d() / s;
    r.a2 = L.b[2].get_d() / p;
    r.a3 = L.b[3].get_d() / (p * s);
    constexpr double slack = 1e-9;
    if (std::abs(r.a1) > 6 + slack || std::abs(r.a2) > 15 + slack || std::abs(r.a3) > 20 + slack) {
        throw std::logic_error("normalized_traces: trace outside its Weil interval for p = " + std::to_string(L.p));
    }
    return r;
}

bool shape_check(const LocalFactor& L) {
    const auto& b = L.b;
    switch (component_index(L.p)) {
        case 1:
        case 5: return b[1] == 0 && b[2] == 0 && b[3] == 0;
        case 2:
        case 4: return b[1] == 0 && b[2] == 0;
        case 3: return b[1] == 0 && b[3] == 0 && b[2] == 3 * ui(L.p);
        default: return true;
    }
}

std::string coefficient_line(const LocalFactor& L) {
    std::ostringstream os;
    for (int i = 0; i <= 6; ++i) os << (i ? " " : "") << L.b[i];
    return os.str();
}

std::string coefficient_list(const LocalFactor& L) {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i <= 6; ++i) os << (i ? "," : "") << L.b[i];
    os << "]";
    return os.str();
}

std::string factored_string(const LocalFactor& L) {
    const Integer p = ui(L.p);
    const auto& b = L.b;
    std::ostringstream os;
    if (b[1] == 0 && b[3] == 0 && b[2] == 3 * p) {
        os << "(1+" << p << "T^2)^3";
        return os.str();
    }
    if (b[1] == 0 && b[2] == 0 && b[3] == 0 && b[6] == p * p * p) {
        os << "(1+" << p << "T^2)(1-" << p << "T^2+" << p * p << "T^4)";
        return os.str();
    }
    bool first = true;
    for (int i = 0; i <= 6; ++i) {
        if (b[i] == 0) continue;
        const Integer mag = abs(b[i]);
        if (first) {
            if (b[i] < 0) os << "-";
        } else {
            os << (b[i] < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0 || mag != 1) os << mag;
        if (i >= 1) os << "T";
        if (i >= 2) os << "^" << i;
    }
    return os.str();
}

}  // namespace picard
