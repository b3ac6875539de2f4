#include "picard/moments.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "picard/parallel.hpp"
#include "picard/summation.hpp"

namespace picard {

namespace {

using cd = std::complex<double>;

Integer factorial(unsigned n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Integer power(unsigned base, unsigned e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}

void check_trace(unsigned trace) {
    if (trace < 1 || trace > 3) throw std::invalid_argument("trace index must be 1, 2 or 3");
}

// The identity component: a1 = s1, a2 = 3 + s2, a3 = 2 s1 + s3 in terms of the
// elementary symmetric functions of alpha_i = u_i + 1/u_i, expanded with the
// multinomial theorem over independent alpha_i.
Integer identity_component_moment(unsigned trace, unsigned n) {
    const Integer nf = factorial(n);
    Integer sum = 0;
    if (trace == 1) {
        for (unsigned a = 0; a <= n; ++a) {
            for (unsigned b = 0; a + b <= n; ++b) {
                const unsigned c = n - a - b;
                sum += nf / (factorial(a) * factorial(b) * factorial(c)) * moment_alpha(a) * moment_alpha(b) *
                       moment_alpha(c);
            }
        }
        return sum;
    }
    for (unsigned a = 0; a <= n; ++a) {
        for (unsigned b = 0; a + b <= n; ++b) {
            for (unsigned c = 0; a + b + c <= n; ++c) {
                const unsigned d = n - a - b - c;
                const Integer multinomial = nf / (factorial(a) * factorial(b) * factorial(c) * factorial(d));
                if (trace == 2) {
                    sum += multinomial * power(3, a) * moment_alpha(b + d) * moment_alpha(b + c) * moment_alpha(c + d);
                } else {
                    sum += multinomial * power(2, a + b + c) * moment_alpha(a + d) * moment_alpha(b + d) *
                           moment_alpha(c + d);
                }
            }
        }
    }
    return sum;
}

void append_array(std::ostringstream& os, const std::vector<Integer>& v) {
    os << "[";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << "]";
}

double max_abs(const ComplexMatrix6& M) { return M.cwiseAbs().maxCoeff(); }

ComplexMatrix6 diag6(const std::array<cd, 6>& d) {
    ComplexMatrix6 M = ComplexMatrix6::Zero();
    for (int i = 0; i < 6; ++i) M(i, i) = d[i];
    return M;
}

cd zeta_pow(int e) { return std::polar(1.0, 2 * std::numbers::pi * e / 9.0); }

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t kChunkSamples = 1 << 16;

}  // namespace

Integer moment_alpha(unsigned n) {
    if (n % 2 != 0) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, n / 2);
    return r;
}

Integer component_moment(unsigned trace, unsigned k, unsigned n) {
    check_trace(trace);
    if (k > 5) throw std::invalid_argument("component index must be in 0..5");
    if (n == 0) return 1;
    switch (k) {
        case 0: return identity_component_moment(trace, n);
        case 1:
        case 5: return 0;
        case 2:
        case 4: return trace == 3 ? moment_alpha(n) : Integer(0);
        default: return trace == 2 ? power(3, n) : Integer(0);
    }
}

Integer total_moment(unsigned trace, unsigned n) {
    mpq_class sum = 0;
    for (unsigned k = 0; k < 6; ++k) sum += mpq_class(component_moment(trace, k, n));
    sum /= 6;
    sum.canonicalize();
    if (sum.get_den() != 1) {
        throw std::logic_error("total moment M_" + std::to_string(n) + " of trace " + std::to_string(trace) +
                               " is not an integer");
    }
    return sum.get_num();
}

mpq_class subgroup_moment(unsigned trace, unsigned j, unsigned n) {
    if (j == 0 || 6 % j != 0) throw std::invalid_argument("subgroup_moment: j must divide 6");
    mpq_class sum = 0;
    for (unsigned k = 0; k < 6; k += j) sum += mpq_class(component_moment(trace, k, n));
    sum /= 6 / j;
    sum.canonicalize();
    return sum;
}

MomentTable exact_moment_table(const std::array<unsigned, 3>& max_order) {
    MomentTable t;
    for (unsigned i = 1; i <= 3; ++i) {
        for (unsigned n = 0; n <= max_order[i - 1]; ++n) {
            t.total[i - 1].push_back(total_moment(i, n));
            for (unsigned k = 0; k < 6; ++k) t.component[i - 1][k].push_back(component_moment(i, k, n));
        }
    }
    return t;
}

std::string to_json(const MomentTable& table) {
    std::ostringstream os;
    os << "{";
    for (int i = 0; i < 3; ++i) {
        os << "\"mu" << i + 1 << "\":";
        append_array(os, table.total[i]);
        os << ",";
    }
    os << "\"components\":{";
    for (int k = 0; k < 6; ++k) {
        os << (k ? "," : "") << "\"k" << k << "\":{";
        for (int i = 0; i < 3; ++i) {
            os << (i ? "," : "") << "\"mu" << i + 1 << "\":";
            append_array(os, table.component[i][k]);
        }
        os << "}";
    }
    os << "}}";
    return os.str();
}

const GroupMatrices& group_matrices() {
    static const GroupMatrices g = [] {
        GroupMatrices m;
        m.gamma = ComplexMatrix6::Zero();
        m.gamma(0, 2) = 1;
        m.gamma(1, 3) = 1;
        m.gamma(2, 4) = 1;
        m.gamma(3, 5) = 1;
        m.gamma(4, 1) = -1;
        m.gamma(5, 0) = 1;
        m.alpha = diag6({zeta_pow(2), zeta_pow(-2), zeta_pow(4), zeta_pow(-4), zeta_pow(8), zeta_pow(-8)});
        m.J = ComplexMatrix6::Zero();
        for (int b = 0; b < 3; ++b) {
            m.J(2 * b, 2 * b + 1) = 1;
            m.J(2 * b + 1, 2 * b) = -1;
        }
        return m;
    }();
    return g;
}

ComplexMatrix6 sigma2_alpha() {
    return diag6({zeta_pow(4), zeta_pow(-4), zeta_pow(8), zeta_pow(-8), zeta_pow(16), zeta_pow(-16)});
}

double usp6_residual(const ComplexMatrix6& M) {
    const auto& J = group_matrices().J;
    return std::max(max_abs(M.adjoint() * M - ComplexMatrix6::Identity()), max_abs(M.transpose() * J * M - J));
}

double GroupIdentityReport::worst() const {
    return std::max({gamma6_plus_identity, gamma12_minus_identity, unitary, symplectic, conjugation});
}

GroupIdentityReport verify_group_identities() {
    const auto& g = group_matrices();
    const ComplexMatrix6 I = ComplexMatrix6::Identity();
    GroupIdentityReport r;
    ComplexMatrix6 power = I;
    r.gamma_powers_off_identity_component = true;
    for (int k = 1; k <= 12; ++k) {
        power = power * g.gamma;
        if (k < 6) {
            const ComplexMatrix6 off = power - ComplexMatrix6(power.diagonal().asDiagonal());
            if (max_abs(off) < 0.5) r.gamma_powers_off_identity_component = false;
        }
        if (k == 6) r.gamma6_plus_identity = max_abs(power + I);
        if (k == 12) r.gamma12_minus_identity = max_abs(power - I);
    }
    r.unitary = max_abs(g.gamma.adjoint() * g.gamma - I);
    r.symplectic = max_abs(g.gamma.transpose() * g.J * g.gamma - g.J);
    r.conjugation = max_abs(g.gamma * g.alpha * g.gamma.inverse() - sigma2_alpha());
    return r;
}

ComplexMatrix6 embed_element(const STElement& e) {
    ComplexMatrix6 M = diag6({e.u[0], std::conj(e.u[0]), e.u[1], std::conj(e.u[1]), e.u[2], std::conj(e.u[2])});
    for (unsigned i = 0; i < e.k % 6; ++i) M = M * group_matrices().gamma;
    return M;
}

std::array<double, 3> determinant_traces(const ComplexMatrix6& M) {
    // det(T I - M) = T^6 + c5 T^5 + ... + c0 with c_{6-j} = -tr(M A_j) / j.
    std::array<cd, 7> c{};
    c[6] = 1;
    ComplexMatrix6 A = ComplexMatrix6::Identity();
    for (int j = 1; j <= 3; ++j) {
        const ComplexMatrix6 MA = M * A;
        c[6 - j] = -MA.trace() / static_cast<double>(j);
        A = MA + c[6 - j] * ComplexMatrix6::Identity();
    }
    return {c[5].real(), c[4].real(), c[3].real()};
}

std::array<double, 3> closed_form_traces(const STElement& e) {
    const auto& u = e.u;
    switch (e.k % 6) {
        case 0: {
            const double x1 = 2 * u[0].real(), x2 = 2 * u[1].real(), x3 = 2 * u[2].real();
            const double s1 = x1 + x2 + x3;
            return {-s1, 3 + x1 * x2 + x1 * x3 + x2 * x3, -(2 * s1 + x1 * x2 * x3)};
        }
        case 2: return {0, 0, 2 * (u[0] * std::conj(u[1]) * u[2]).real()};
        case 4: return {0, 0, -2 * (u[0] * std::conj(u[1]) * u[2]).real()};
        case 3: return {0, 3, 0};
        default: return {0, 0, 0};
    }
}

std::array<double, 3> char_poly_traces(const STElement& e) {
    const auto closed = closed_form_traces(e);
    const auto det = determinant_traces(embed_element(e));
    for (int i = 0; i < 3; ++i) {
        if (std::abs(closed[i] - det[i]) > 1e-10) {
            throw std::logic_error("char_poly_traces: closed form disagrees with the determinant for k = " +
                                   std::to_string(e.k));
        }
    }
    return closed;
}

STElement haar_sample(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
    std::uniform_int_distribution<unsigned> component(0, 5);
    STElement e;
    for (auto& u : e.u) u = std::polar(1.0, angle(rng));
    e.k = component(rng);
    return e;
}

double MonteCarloMoments::component_mean(unsigned trace, unsigned k, unsigned n) const {
    if (component_count[k] == 0) return 0;
    return power_sum[trace - 1][k][n] / static_cast<double>(component_count[k]);
}

double MonteCarloMoments::subgroup_mean(unsigned trace, unsigned j, unsigned n) const {
    double sum = 0;
    std::uint64_t count = 0;
    for (unsigned k = 0; k < 6; k += j) {
        sum += power_sum[trace - 1][k][n];
        count += component_count[k];
    }
    return count == 0 ? 0 : sum / static_cast<double>(count);
}

double MonteCarloMoments::mean(unsigned trace, unsigned n) const { return subgroup_mean(trace, 1, n); }

double MonteCarloMoments::standard_error(unsigned trace, unsigned n) const {
    const double m = mean(trace, n);
    return std::sqrt(std::max(0.0, mean(trace, 2 * n) - m * m) / static_cast<double>(samples));
}

MonteCarloMoments mc_moments(std::uint64_t samples, std::uint64_t seed, unsigned max_order, unsigned workers) {
    if (samples == 0) throw std::invalid_argument("mc_moments: need at least one sample");
    const unsigned top = 2 * max_order;
    struct Chunk {
        std::array<std::uint64_t, 6> count{};
        std::array<std::array<std::vector<double>, 6>, 3> sums;
    };
    const std::uint64_t chunks = (samples + kChunkSamples - 1) / kChunkSamples;
    std::vector<Chunk> parts(chunks);
    parallel_for(chunks, workers, [&](std::size_t c) {
        Chunk& part = parts[c];
        for (auto& per_trace : part.sums) {
            for (auto& v : per_trace) v.assign(top + 1, 0.0);
        }
        std::mt19937_64 rng(splitmix64(seed ^ splitmix64(c)));
        const std::uint64_t begin = c * kChunkSamples;
        const std::uint64_t end = std::min(samples, begin + kChunkSamples);
        for (std::uint64_t s = begin; s < end; ++s) {
            const STElement e = haar_sample(rng);
            const auto a = closed_form_traces(e);
            ++part.count[e.k];
            for (int i = 0; i < 3; ++i) {
                auto& v = part.sums[i][e.k];
                double x = 1;
                for (unsigned n = 0; n <= top; ++n, x *= a[i]) v[n] += x;
            }
        }
    });

    MonteCarloMoments mc;
    mc.samples = samples;
    mc.max_order = max_order;
    std::array<std::array<std::vector<CompensatedSum>, 6>, 3> acc;
    for (auto& per_trace : acc) {
        for (auto& v : per_trace) v.resize(top + 1);
    }
    for (const auto& part : parts) {
        for (int k = 0; k < 6; ++k) mc.component_count[k] += part.count[k];
        for (int i = 0; i < 3; ++i) {
            for (int k = 0; k < 6; ++k) {
                for (unsigned n = 0; n <= top; ++n) acc[i][k][n].add(part.sums[i][k][n]);
            }
        }
    }
    for (int i = 0; i < 3; ++i) {
        for (int k = 0; k < 6; ++k) {
            mc.power_sum[i][k].resize(top + 1);
            for (unsigned n = 0; n <= top; ++n) mc.power_sum[i][k][n] = acc[i][k][n].value();
        }
    }
    return mc;
}

std::string to_json(const MonteCarloMoments& mc) {
    nlohmann::ordered_json j;
    j["samples"] = mc.samples;
    j["max_order"] = mc.max_order;
    for (unsigned i = 1; i <= 3; ++i) {
        const std::string key = "mu" + std::to_string(i);
        auto& entry = j["moments"][key];
        for (unsigned n = 0; n <= mc.max_order; ++n) {
            entry["mean"].push_back(mc.mean(i, n));
            entry["stderr"].push_back(mc.standard_error(i, n));
            entry["exact"].push_back(total_moment(i, n).get_d());
        }
    }
    for (unsigned k = 0; k < 6; ++k) {
        auto& comp = j["components"]["k" + std::to_string(k)];
        comp["count"] = mc.component_count[k];
        for (unsigned i = 1; i <= 3; ++i) {
            for (unsigned n = 0; n <= mc.max_order; ++n) comp["mu" + std::to_string(i)].push_back(mc.component_mean(i, k, n));
        }
    }
    return j.dump(2);
}

}  // namespace picard
