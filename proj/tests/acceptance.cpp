// Runs every acceptance check and prints one PASS/FAIL line each.
// Exits with 1 if any check fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "picard/cli.hpp"
#include "picard/hecke.hpp"
#include "picard/ideal.hpp"
#include "picard/lfactor.hpp"
#include "picard/moments.hpp"
#include "picard/oracle.hpp"
#include "picard/primes.hpp"
#include "picard/scan.hpp"

using namespace picard;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) detail = what;
        ok = ok && cond;
    }
};

int failures = 0;

void report(const std::string& name, double limit_seconds, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.ok = false;
        o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_seconds > 0 && secs >= limit_seconds) {
        if (o.ok) o.detail = "too slow";
        o.ok = false;
    }
    if (!o.ok) ++failures;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2f s", secs);
    std::cout << (o.ok ? "PASS " : "FAIL ") << name << " (" << timing;
    if (limit_seconds > 0) std::cout << ", limit " << limit_seconds << " s";
    std::cout << ")";
    if (!o.detail.empty()) std::cout << ": " << o.detail;
    std::cout << std::endl;
}

std::string run_cli(std::vector<std::string> args, int& code) {
    args.insert(args.begin(), "picard");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return out.str();
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string strip_spaces(std::string s) {
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    return s;
}

Outcome small_counts() {
    const std::uint64_t table[7][4] = {{2, 3, 5, 9},       {5, 6, 26, 126},     {7, 8, 50, 365},
                                       {11, 12, 122, 1332}, {13, 14, 170, 2003}, {17, 18, 392, 4914},
                                       {19, 14, 302, 6935}};
    Outcome o;
    int matched = 0;
    for (const auto& row : table) {
        for (unsigned k = 1; k <= 3; ++k) {
            const auto n = count_points(row[0], k);
            o.require(n == row[k], "p = " + std::to_string(row[0]) + ", k = " + std::to_string(k) + " gave " +
                                       std::to_string(n));
            matched += n == row[k];
        }
    }
    if (o.ok) o.detail = std::to_string(matched) + "/21 counts";
    return o;
}

Outcome small_factors() {
    struct Row {
        std::uint64_t p;
        std::array<long, 7> b;
        const char* shown;
    };
    const Row rows[] = {
        {2, {1, 0, 0, 0, 0, 0, 8}, "(1+2T^2)(1-2T^2+4T^4)"},
        {5, {1, 0, 0, 0, 0, 0, 125}, "(1+5T^2)(1-5T^2+25T^4)"},
        {7, {1, 0, 0, 7, 0, 0, 343}, "1+7T^3+343T^6"},
        {11, {1, 0, 0, 0, 0, 0, 1331}, "(1+11T^2)(1-11T^2+121T^4)"},
        {13, {1, 0, 0, -65, 0, 0, 2197}, "1-65T^3+2197T^6"},
        {17, {1, 0, 51, 0, 867, 0, 4913}, "(1+17T^2)^3"},
        {19, {1, -6, -12, 169, -228, -2166, 6859}, "1-6T-12T^2+169T^3-228T^4-2166T^5+6859T^6"},
        {23, {1, 0, 0, 0, 0, 0, 12167}, "(1+23T^2)(1-23T^2+529T^4)"},
        {29, {1, 0, 0, 0, 0, 0, 24389}, "(1+29T^2)(1-29T^2+841T^4)"},
        {31, {1, 0, 0, 124, 0, 0, 29791}, "1+124T^3+29791T^6"},
        {37, {1, -6, 42, -47, 1554, -8214, 50653}, "1-6T+42T^2-47T^3+1554T^4-8214T^5+50653T^6"},
    };
    Outcome o;
    for (const auto& row : rows) {
        const std::string at = "p = " + std::to_string(row.p);
        const LocalFactor L = local_factor(row.p);
        for (int i = 0; i < 7; ++i) o.require(L.b[i] == row.b[i], at + ": coefficient " + std::to_string(i));
        o.require(strip_spaces(factored_string(L)) == row.shown, at + ": rendered " + factored_string(L));
        o.require(L == local_factor_naive(row.p), at + ": differs from point counting");
    }
    if (o.ok) o.detail = "11 primes, all equal to point counting";
    return o;
}

Outcome oracle_equivalence() {
    Outcome o;
    unsigned lf = 0, pj = 0;
    for (const auto p : primes_up_to(300)) {
        o.require(local_factor(p) == local_factor_naive(p), "local factor differs at p = " + std::to_string(p));
        ++lf;
    }
    for (const auto p : primes_up_to(10000)) {
        if (p % 9 != 1) continue;
        o.require(psi(p) == jacobi_J(p), "psi != J at p = " + std::to_string(p));
        ++pj;
    }
    if (o.ok) o.detail = std::to_string(lf) + " local factors, " + std::to_string(pj) + " Jacobi sums";
    return o;
}

Outcome unit_kernel_algebra() {
    Outcome o;
    const std::vector<UnitTriple> listed{{0, 0, 0}, {2, 1, 2}, {4, 2, 1},  {6, 3, 0},  {8, 4, 2},
                                         {10, 5, 1}, {12, 6, 0}, {14, 7, 2}, {16, 8, 1}};
    o.require(kernel_triples() == listed, "kernel triples differ from the listed ones");
    for (const auto& t : listed) o.require(phi_star_product(unit_product(t)) == CycInt(1L), "kernel product is not 1");

    const auto& ring = ResidueRingM::instance();
    std::vector<int> hits(ring.size(), 0);
    for (const int idx : ring.unit_residues()) ++hits[idx];
    int units = 0;
    for (int i = 0; i < ring.size(); ++i) {
        if (ring.is_invertible(i)) {
            ++units;
            o.require(hits[i] == 9, "a unit residue is not hit 9 times");
        } else {
            o.require(hits[i] == 0, "a non-unit residue is hit");
        }
    }
    o.require(ring.unit_residues().size() == 486 && units == 54, "expected 486 products over 54 units");

    // Weaker moduli (lambda)^i, i < 4, admit units = 1 mod (lambda)^i whose product is not 1.
    const CycInt& lambda = ring_constants().lambda;
    std::string witnesses;
    for (unsigned i = 0; i < 4; ++i) {
        const IdealLattice modulus = principal_ideal(pow(lambda, i));
        bool found = false;
        for (int a = 0; a < 18 && !found; ++a) {
            for (int b = 0; b < 9 && !found; ++b) {
                for (int c = 0; c < 3 && !found; ++c) {
                    const CycInt u = unit_product({a, b, c});
                    if (modulus.contains(u - CycInt(1L)) && phi_star_product(u) != CycInt(1L)) {
                        found = true;
                        witnesses += " i=" + std::to_string(i) + ":(" + std::to_string(a) + "," + std::to_string(b) +
                                     "," + std::to_string(c) + ")";
                    }
                }
            }
        }
        o.require(found, "no witness for i = " + std::to_string(i));
    }
    if (o.ok) o.detail = "9 kernel triples, 486 -> 54 x 9, witnesses" + witnesses;
    return o;
}

Outcome exact_moments() {
    Outcome o;
    int code = 0;
    const std::string out = run_cli({"moments", "--exact"}, code);
    o.require(code == 0, "exit status " + std::to_string(code));
    const std::string expected =
        "{\"mu1\":[1,0,1,0,15,0,310],\"mu2\":[1,1,5,35,321],\"mu3\":[1,0,6,0,822,0,184860],"
        "\"components\":{\"k0\":{\"mu1\":[1,0,6,0,90,0,1860],\"mu2\":[1,3,21,183,1845],"
        "\"mu3\":[1,0,32,0,4920,0,1109120]}";
    o.require(out.rfind(expected, 0) == 0, "output starts " + out.substr(0, 160));
    if (o.ok) o.detail = "total and k0 sequences exact";
    return o;
}

struct ScanResult {
    Aggregate agg;
    std::vector<RecordRow> rows;
};

const ScanResult& big_scan() {
    static const ScanResult result = [] {
        ScanConfig cfg;
        cfg.bound = 1 << 20;
        cfg.workers = 4;
        std::stringstream records;
        ScanResult r{run_scan(cfg, &records), {}};
        r.rows = read_records(records);
        return r;
    }();
    return result;
}

Outcome equidistribution() {
    Outcome o;
    const Aggregate& agg = big_scan().agg;
    const auto near = [&](const char* label, double value, double target, double tol) {
        char buf[96];
        std::snprintf(buf, sizeof buf, " %s=%.4f", label, value);
        o.detail += buf;
        o.require(std::abs(value - target) < tol, std::string(label) + " out of tolerance");
    };
    near("M2[mu1]", agg.moment(1, 2, TraceClass::all), 1, 0.05);
    near("M1[mu2]", agg.moment(2, 1, TraceClass::all), 1, 0.05);
    near("M2[mu2]", agg.moment(2, 2, TraceClass::all), 5, 0.2);
    near("M2[mu3]", agg.moment(3, 2, TraceClass::all), 6, 0.3);
    near("M4[mu1]", agg.moment(1, 4, TraceClass::all), 15, 1.0);
    near("M4[mu3]", agg.moment(3, 4, TraceClass::all), 822, 0.05 * 822);
    const double expected = 82025.0 / 6;  // pi(2^20) / 6
    for (unsigned k = 0; k < 6; ++k) {
        o.require(std::abs(static_cast<double>(agg.counts[k]) - expected) < 0.05 * expected,
                  "component k" + std::to_string(k) + " has " + std::to_string(agg.counts[k]) + " primes");
    }
    if (o.ok) o.detail = std::to_string(agg.primes()) + " primes;" + o.detail;
    return o;
}

Outcome shape_law() {
    Outcome o;
    const ScanResult& s = big_scan();
    o.require(s.agg.shape_failures == 0, std::to_string(s.agg.shape_failures) + " shape failures");
    o.require(s.rows.size() == 82024 && s.agg.primes() == 82024, "expected 82024 good primes");
    std::uint64_t k3 = 0, k15 = 0;
    for (const auto& r : s.rows) {
        if (r.k == 3) {
            ++k3;
            o.require(r.a[1] == 3.0, "a2 != 3 at p = " + std::to_string(r.p));
        }
        if (r.k == 1 || r.k == 5) {
            ++k15;
            o.require(r.a[0] == 0.0 && r.a[1] == 0.0 && r.a[2] == 0.0, "nonzero trace at p = " + std::to_string(r.p));
        }
    }
    if (o.ok) o.detail = "all shapes ok; " + std::to_string(k3) + " primes in k3, " + std::to_string(k15) + " in k1/k5";
    return o;
}

Outcome group_identities() {
    Outcome o;
    const GroupIdentityReport g = verify_group_identities();
    o.require(g.worst() < 1e-10, "group residual " + std::to_string(g.worst()));
    o.require(g.gamma_powers_off_identity_component, "a power of gamma lies in the identity component");

    constexpr std::uint64_t N = 1000000;
    const MonteCarloMoments mc = mc_moments(N, 20241015, 4, 4);
    double worst = 0;
    for (unsigned i = 1; i <= 3; ++i) {
        for (unsigned n = 0; n <= 4; ++n) {
            const double exact = total_moment(i, n).get_d();
            const double var = total_moment(i, 2 * n).get_d() - exact * exact;
            const double se = std::sqrt(std::max(var, 0.0) / static_cast<double>(N));
            const double dev = std::abs(mc.mean(i, n) - exact);
            if (se > 0) worst = std::max(worst, dev / se);
            o.require(dev <= 3 * se + 1e-12, "mu" + std::to_string(i) + " moment " + std::to_string(n) +
                                                  " off by " + std::to_string(dev / se) + " SE");
        }
    }
    if (o.ok) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "max residual %.2e; Monte Carlo N = 1e6 worst deviation %.2f SE", g.worst(),
                      worst);
        o.detail = buf;
    }
    return o;
}

Outcome determinism() {
    Outcome o;
    const fs::path dir = fs::temp_directory_path() / ("picard_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    int code = 0;
    std::string files[3];
    const char* workers[3] = {"4", "4", "1"};
    for (int run = 0; run < 3; ++run) {
        const fs::path out = dir / ("run" + std::to_string(run) + ".csv");
        run_cli({"scan", "--bound", "2^16", "--workers", workers[run], "--out", out.string()}, code);
        o.require(code == 0, "scan exit status " + std::to_string(code));
        files[run] = slurp(out);
    }
    fs::remove_all(dir);
    o.require(!files[0].empty(), "empty records");
    o.require(files[0] == files[1], "repeated runs differ");
    o.require(files[0] == files[2], "1 and 4 workers differ");
    if (o.ok) o.detail = "3 runs, " + std::to_string(files[0].size()) + " identical bytes each";
    return o;
}

}  // namespace

int main() {
    report("point counts for p <= 19, k <= 3", 10, small_counts);
    report("local factors for p <= 37", 60, small_factors);
    report("oracle equivalence (p <= 300, psi = J for p <= 1e4)", 600, oracle_equivalence);
    report("unit kernel algebra", 0, unit_kernel_algebra);
    report("exact moments", 0, exact_moments);
    report("empirical equidistribution at 2^20, 4 workers", 900, equidistribution);
    report("shape law at 2^20", 0, shape_law);
    report("group identities and Monte Carlo moments", 0, group_identities);
    report("scan determinism at 2^16", 0, determinism);
    std::cout << (failures == 0 ? "all acceptance checks passed" : std::to_string(failures) + " checks failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
