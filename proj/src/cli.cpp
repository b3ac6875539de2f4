#include "picard/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "picard/hecke.hpp"
#include "picard/lfactor.hpp"
#include "picard/modp.hpp"
#include "picard/moments.hpp"
#include "picard/oracle.hpp"
#include "picard/parallel.hpp"
#include "picard/primes.hpp"
#include "picard/scan.hpp"

namespace picard::cli {

namespace {

class UsageError : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

std::string integer_array(const std::array<Integer, 7>& b) {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < 7; ++i) os << (i ? "," : "") << b[i];
    os << "]";
    return os.str();
}

void check_good_prime(std::uint64_t p) {
    if (p == 3 || !modp::is_prime(p)) throw UsageError("--prime must be a prime other than 3, got " + std::to_string(p));
}

// Writes through `out` unless a path is given.
class OutputTarget {
public:
    OutputTarget(const std::string& path, std::ostream& fallback) {
        if (path.empty() || path == "-") {
            stream_ = &fallback;
        } else {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) throw std::runtime_error("cannot open " + path + " for writing");
            stream_ = file_.get();
        }
    }
    std::ostream& stream() { return *stream_; }
    void finish() {
        stream_->flush();
        if (!*stream_) throw std::runtime_error("write failed");
    }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_ = nullptr;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int cmd_lfactor(std::uint64_t p, bool json, std::ostream& out) {
    check_good_prime(p);
    const LocalFactor L = local_factor(p);
    if (json) {
        out << "{\"p\":" << p << ",\"f\":" << residue_degree(p) << ",\"k\":" << component_index(p)
            << ",\"coefficients\":" << integer_array(L.b) << ",\"factored\":" << json_string(factored_string(L))
            << "}\n";
    } else {
        out << coefficient_line(L) << '\n';
    }
    return kOk;
}

int cmd_count(std::uint64_t p, unsigned k, bool json, std::ostream& out) {
    check_good_prime(p);
    if (k < 1 || k > 3) throw UsageError("--ext must be 1, 2 or 3");
    const std::uint64_t n = count_points(p, k);
    if (json) {
        out << "{\"p\":" << p << ",\"ext\":" << k << ",\"count\":" << n << "}\n";
    } else {
        out << n << '\n';
    }
    return kOk;
}

int cmd_psi(std::uint64_t p, bool json, std::ostream& out) {
    check_good_prime(p);
    const PrimeSplit s = analyze_prime(p);
    if (json) {
        nlohmann::ordered_json j;
        j["p"] = s.p;
        j["f"] = s.f;
        j["g"] = s.g;
        j["h"] = to_string(s.h);
        j["alpha"] = to_string(s.alpha);
        j["triple"] = {s.triple.a, s.triple.b, s.triple.c};
        j["adjusted"] = to_string(s.adjusted);
        j["psi"] = to_string(s.psi);
        j["min_poly"] = min_poly(s.psi).to_string('X');
        out << j.dump() << '\n';
    } else {
        out << format_prime_split(s);
    }
    return kOk;
}

struct VerifyTable {
    std::ostream& out;
    std::uint64_t checks = 0;
    std::uint64_t failures = 0;

    void row(const std::string& check, const std::string& p, bool ok) {
        ++checks;
        if (!ok) ++failures;
        out << check << ',' << p << ',' << (ok ? "PASS" : "FAIL") << '\n';
    }
};

int cmd_verify(std::uint64_t bound, std::optional<std::uint64_t> jacobi_bound, std::ostream& out) {
    if (bound < 2) throw UsageError("--bound must be at least 2");
    const std::uint64_t bj = jacobi_bound.value_or(std::min<std::uint64_t>(bound, 100000));
    VerifyTable t{out};
    out << "check,p,result\n";
    t.row("conductor", "-", verify_conductor().ok());
    for (const std::uint64_t p : primes_up_to(bound)) {
        const std::string ps = std::to_string(p);
        const LocalFactor L = local_factor(p);
        t.row("lfactor=naive", ps, L == local_factor_naive(p));
        t.row("points", ps, L.points_over_fp() == Integer(static_cast<unsigned long>(count_points(p, 1))));
        t.row("weil", ps, L.satisfies_weil_bound());
        t.row("shape", ps, shape_check(L));
        t.row("psi-properties", ps, verify_psi_properties(p).ok());
    }
    for (const std::uint64_t p : primes_up_to(bj)) {
        if (p % 9 != 1) continue;
        const std::string ps = std::to_string(p);
        const JacobiContext ctx = make_jacobi_context(p);
        const CycInt J = -jacobi_sum(ctx, 3, 1);
        const CycInt J61 = jacobi_sum(ctx, 6, 1);
        const Integer n1(static_cast<unsigned long>(count_points(p, 1)));
        const Integer pp(static_cast<unsigned long>(p));
        t.row("psi=J", ps, J == psi(p));
        t.row("count=p+1-Tr(J)", ps, n1 == pp + 1 - trace(J));
        t.row("count=p+1+Tr(J61)", ps, n1 == pp + 1 + trace(J61));
        t.row("J61=J21", ps, J61 == jacobi_sum(ctx, 2, 1));
    }
    out << "# " << t.checks << " checks, " << t.failures << " failures\n";
    return t.failures == 0 ? kOk : kVerificationFailed;
}

int cmd_scan(const ScanConfig& cfg, const std::string& aggregate_path, std::ostream& out) {
    validate(cfg);
    OutputTarget target(cfg.out, out);
    Aggregate agg = cfg.format == ScanFormat::csv ? run_scan(cfg, &target.stream()) : run_scan(cfg, nullptr);
    if (cfg.format == ScanFormat::json) target.stream() << aggregate_json(agg) << '\n';
    target.finish();
    if (!aggregate_path.empty()) {
        OutputTarget agg_target(aggregate_path, out);
        agg_target.stream() << aggregate_json(agg) << '\n';
        agg_target.finish();
    }
    return agg.shape_failures == 0 ? kOk : kVerificationFailed;
}

int cmd_moments(bool exact, std::optional<unsigned> max_order, const std::string& from, std::ostream& out) {
    if (exact == !from.empty()) throw UsageError("moments needs exactly one of --exact or --from");
    if (exact) {
        // Without --max-order: the orders for which closed values are tabulated.
        std::array<unsigned, 3> orders{6, 4, 6};
        if (max_order) orders = {*max_order, *max_order, *max_order};
        out << to_json(exact_moment_table(orders)) << '\n';
        return kOk;
    }
    if (max_order) throw UsageError("--max-order applies to --exact only");
    out << format_comparison(empirical_moments_from_json(read_file(from)));
    return kOk;
}

int cmd_hist(const std::string& from, unsigned trace, const std::string& cls, unsigned bins, const std::string& path,
             std::ostream& out) {
    std::ifstream in(from, std::ios::binary);
    if (!in) throw UsageError("cannot open " + from);
    const auto rows = read_records(in);
    const Histogram h = histogram_from_records(rows, trace, parse_trace_class(cls), bins);
    OutputTarget target(path, out);
    target.stream() << h.to_csv();
    target.finish();
    return kOk;
}

int cmd_mc(std::uint64_t samples, std::uint64_t seed, unsigned max_order, unsigned workers, std::ostream& out) {
    if (samples == 0) throw UsageError("--samples must be positive");
    out << to_json(mc_moments(samples, seed, max_order, workers)) << '\n';
    return kOk;
}

}  // namespace

std::uint64_t parse_bound(const std::string& text) {
    auto parse_u64 = [&](const std::string& s) {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
            throw std::invalid_argument("not a bound: '" + text + "'");
        }
        return std::stoull(s);
    };
    const auto caret = text.find('^');
    if (caret != std::string::npos) {
        const std::uint64_t base = parse_u64(text.substr(0, caret));
        const std::uint64_t e = parse_u64(text.substr(caret + 1));
        unsigned __int128 r = 1;
        for (std::uint64_t i = 0; i < e; ++i) {
            r *= base;
            if (r > UINT64_MAX) throw std::invalid_argument("bound too large: '" + text + "'");
        }
        return static_cast<std::uint64_t>(r);
    }
    const auto exp_pos = text.find_first_of("eE");
    if (exp_pos != std::string::npos) {
        const std::uint64_t mant = parse_u64(text.substr(0, exp_pos));
        const std::uint64_t e = parse_u64(text.substr(exp_pos + 1));
        unsigned __int128 r = mant;
        for (std::uint64_t i = 0; i < e; ++i) {
            r *= 10;
            if (r > UINT64_MAX) throw std::invalid_argument("bound too large: '" + text + "'");
        }
        return static_cast<std::uint64_t>(r);
    }
    return parse_u64(text);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Local factors and Sato-Tate statistics of the Picard curve y^3 = x^4 - x", "picard"};
    app.require_subcommand(1);

    std::uint64_t prime = 0;
    bool json = false;
    auto* lfactor = app.add_subcommand("lfactor", "L_p(C,T) coefficients b0..b6 via the Hecke character");
    lfactor->add_option("--prime", prime, "good prime p")->required();
    lfactor->add_flag("--json", json, "JSON output");

    unsigned ext = 1;
    auto* count = app.add_subcommand("count", "|C(F_{p^k})| by direct enumeration");
    count->add_option("--prime", prime, "good prime p")->required();
    count->add_option("--ext", ext, "extension degree k in 1..3")->required();
    count->add_flag("--json", json, "JSON output");

    auto* psi_cmd = app.add_subcommand("psi", "prime splitting, generator, unit adjustment and psi(p)");
    psi_cmd->add_option("--prime", prime, "good prime p")->required();
    psi_cmd->add_flag("--json", json, "JSON output");

    std::string bound_text;
    std::string jacobi_text;
    auto* verify = app.add_subcommand("verify", "cross-check psi against point counts and Jacobi sums");
    verify->add_option("--bound", bound_text, "check every good prime up to this bound")->required();
    verify->add_option("--jacobi-bound", jacobi_text, "compare psi with J for p = 1 mod 9 up to this bound");

    ScanConfig cfg;
    cfg.workers = default_workers();
    std::string format = "csv";
    std::string scan_classes = "all";
    std::string aggregate_path;
    auto* scan = app.add_subcommand("scan", "normalized traces of every good prime up to a bound");
    scan->add_option("--bound", bound_text, "largest prime considered, e.g. 2^20")->required();
    scan->add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);
    scan->add_option("--out", cfg.out, "output path (default: standard output)");
    scan->add_option("--format", format, "csv (records) or json (aggregate)")
        ->check(CLI::IsMember({"csv", "json"}));
    scan->add_option("--bins", cfg.bins, "histogram bins in the aggregate")->check(CLI::Range(2u, 1u << 20));
    scan->add_option("--classes", scan_classes, "records written: all, k0, k24, k3 or k15")
        ->check(CLI::IsMember({"all", "k0", "k24", "k3", "k15"}));
    scan->add_option("--aggregate", aggregate_path, "also write the aggregate JSON here");

    bool exact = false;
    unsigned max_order_value = 6;
    std::string from;
    auto* moments = app.add_subcommand("moments", "exact or empirical moment sequences");
    moments->add_flag("--exact", exact, "moments of the Sato-Tate group");
    auto* max_order_opt = moments->add_option("--max-order", max_order_value, "largest order n");
    moments->add_option("--from", from, "aggregate JSON written by scan");

    unsigned trace = 1;
    std::string hist_classes = "all";
    unsigned bins = 101;
    std::string hist_out;
    auto* hist = app.add_subcommand("hist", "histogram of one trace from a records CSV");
    hist->add_option("--from", from, "records CSV written by scan")->required();
    hist->add_option("--trace", trace, "1, 2 or 3")->required()->check(CLI::Range(1u, 3u));
    hist->add_option("--classes", hist_classes, "all, k0, k24, k3 or k15")
        ->check(CLI::IsMember({"all", "k0", "k24", "k3", "k15"}));
    hist->add_option("--bins", bins, "number of bins")->check(CLI::Range(2u, 1u << 20));
    hist->add_option("--out", hist_out, "output path, - for standard output")->required();

    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    unsigned mc_order = 6;
    unsigned mc_workers = default_workers();
    auto* mc = app.add_subcommand("mc", "Monte Carlo moments under the Haar measure");
    mc->add_option("--samples", samples, "number of samples")->required();
    mc->add_option("--seed", seed, "64-bit seed")->required();
    mc->add_option("--max-order", mc_order, "largest order n")->check(CLI::Range(0u, 32u));
    mc->add_option("--workers", mc_workers, "worker threads")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << "run with --help for usage\n";
        return kUsage;
    }

    try {
        if (lfactor->parsed()) return cmd_lfactor(prime, json, out);
        if (count->parsed()) return cmd_count(prime, ext, json, out);
        if (psi_cmd->parsed()) return cmd_psi(prime, json, out);
        if (verify->parsed()) {
            std::optional<std::uint64_t> bj;
            if (!jacobi_text.empty()) bj = parse_bound(jacobi_text);
            return cmd_verify(parse_bound(bound_text), bj, out);
        }
        if (scan->parsed()) {
            cfg.bound = parse_bound(bound_text);
            cfg.format = format == "json" ? ScanFormat::json : ScanFormat::csv;
            cfg.classes = parse_trace_class(scan_classes);
            return cmd_scan(cfg, aggregate_path, out);
        }
        if (moments->parsed()) {
            std::optional<unsigned> max_order;
            if (max_order_opt->count() > 0) max_order = max_order_value;
            return cmd_moments(exact, max_order, from, out);
        }
        if (hist->parsed()) return cmd_hist(from, trace, hist_classes, bins, hist_out, out);
        if (mc->parsed()) return cmd_mc(samples, seed, mc_order, mc_workers, out);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kVerificationFailed;
    }
    return kUsage;
}

}  // namespace picard::cli
