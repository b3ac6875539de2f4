#include "picard/scan.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <istream>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "picard/moments.hpp"
#include "picard/parallel.hpp"
#include "picard/primes.hpp"

namespace picard {

namespace {

constexpr std::size_t kChunkPrimes = 2048;

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

nlohmann::ordered_json rational_to_json(const mpq_class& q) {
    if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
    return q.get_d();
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

TraceClass parse_trace_class(const std::string& name) {
    if (name == "all") return TraceClass::all;
    if (name == "k0") return TraceClass::k0;
    if (name == "k24") return TraceClass::k24;
    if (name == "k3") return TraceClass::k3;
    if (name == "k15") return TraceClass::k15;
    throw std::invalid_argument("unknown class '" + name + "' (expected all, k0, k24, k3 or k15)");
}

std::string to_string(TraceClass c) {
    switch (c) {
        case TraceClass::all: return "all";
        case TraceClass::k0: return "k0";
        case TraceClass::k24: return "k24";
        case TraceClass::k3: return "k3";
        case TraceClass::k15: return "k15";
    }
    return "?";
}

bool in_class(unsigned k, TraceClass c) {
    switch (c) {
        case TraceClass::all: return true;
        case TraceClass::k0: return k == 0;
        case TraceClass::k24: return k == 2 || k == 4;
        case TraceClass::k3: return k == 3;
        case TraceClass::k15: return k == 1 || k == 5;
    }
    return false;
}

const std::array<TraceClass, 5>& all_trace_classes() {
    static const std::array<TraceClass, 5> v{TraceClass::all, TraceClass::k0, TraceClass::k24, TraceClass::k3,
                                             TraceClass::k15};
    return v;
}

void validate(const ScanConfig& cfg) {
    if (cfg.bound < 5) throw std::invalid_argument("scan bound must be at least 5");
    if (cfg.workers < 1) throw std::invalid_argument("need at least one worker");
    if (cfg.bins < 2) throw std::invalid_argument("need at least two bins");
}

double trace_range(unsigned trace) {
    switch (trace) {
        case 1: return 6;
        case 2: return 15;
        case 3: return 20;
        default: throw std::invalid_argument("trace index must be 1, 2 or 3");
    }
}

unsigned bin_index(double a, unsigned trace, unsigned bins) {
    const double R = trace_range(trace);
    const double pos = std::floor((a + R) * bins / (2 * R));
    if (pos < 0) return 0;
    if (pos >= bins) return bins - 1;
    return static_cast<unsigned>(pos);
}

Aggregate::Aggregate(unsigned bins_) : bins(bins_) {
    for (auto& per_trace : histograms) {
        for (auto& h : per_trace) h.assign(bins, 0);
    }
}

void Aggregate::add(const TraceRecord& r, bool shape_ok) {
    ++counts[r.k];
    if (!shape_ok) ++shape_failures;
    const std::array<double, 3> a{r.a1, r.a2, r.a3};
    for (unsigned i = 0; i < 3; ++i) {
        double x = 1;
        for (unsigned n = 0; n <= kMaxScanOrder; ++n, x *= a[i]) power_sums[i][r.k][n].add(x);
        ++histograms[i][r.k][bin_index(a[i], i + 1, bins)];
    }
}

void Aggregate::merge(const Aggregate& other) {
    if (other.bins != bins) throw std::invalid_argument("Aggregate::merge: bin counts differ");
    for (int k = 0; k < 6; ++k) counts[k] += other.counts[k];
    shape_failures += other.shape_failures;
    for (int i = 0; i < 3; ++i) {
        for (int k = 0; k < 6; ++k) {
            for (unsigned n = 0; n <= kMaxScanOrder; ++n) power_sums[i][k][n].add(other.power_sums[i][k][n]);
            for (unsigned b = 0; b < bins; ++b) histograms[i][k][b] += other.histograms[i][k][b];
        }
    }
}

std::uint64_t Aggregate::primes() const { return count(TraceClass::all); }

std::uint64_t Aggregate::count(TraceClass c) const {
    std::uint64_t total = 0;
    for (unsigned k = 0; k < 6; ++k) {
        if (in_class(k, c)) total += counts[k];
    }
    return total;
}

double Aggregate::moment(unsigned trace, unsigned n, TraceClass c) const {
    if (n > kMaxScanOrder) throw std::out_of_range("scan moments are kept up to order 6");
    CompensatedSum sum;
    for (unsigned k = 0; k < 6; ++k) {
        if (in_class(k, c)) sum.add(power_sums[trace - 1][k][n]);
    }
    const std::uint64_t m = count(c);
    return m == 0 ? 0.0 : sum.value() / static_cast<double>(m);
}

std::vector<std::uint64_t> Aggregate::histogram(unsigned trace, TraceClass c) const {
    std::vector<std::uint64_t> out(bins, 0);
    for (unsigned k = 0; k < 6; ++k) {
        if (!in_class(k, c)) continue;
        for (unsigned b = 0; b < bins; ++b) out[b] += histograms[trace - 1][k][b];
    }
    return out;
}

std::string records_header() { return "p,f,k,b1,b2,b3,a1,a2,a3"; }

std::string record_row(const LocalFactor& L, const TraceRecord& r) {
    std::ostringstream os;
    os << r.p << ',' << r.f << ',' << r.k << ',' << L.b[1] << ',' << L.b[2] << ',' << L.b[3] << ','
       << format_double(r.a1) << ',' << format_double(r.a2) << ',' << format_double(r.a3);
    return os.str();
}

Aggregate run_scan(const ScanConfig& cfg, std::ostream* records) {
    validate(cfg);
    const auto primes = primes_up_to(cfg.bound);
    const std::size_t chunks = (primes.size() + kChunkPrimes - 1) / kChunkPrimes;

    struct ChunkResult {
        Aggregate agg;
        std::string rows;
    };
    std::vector<std::optional<ChunkResult>> done(chunks);
    std::size_t next_to_emit = 0;
    std::mutex emit_mutex;
    Aggregate total(cfg.bins);
    if (records) *records << records_header() << '\n';

    parallel_for(chunks, cfg.workers, [&](std::size_t c) {
        ChunkResult res{Aggregate(cfg.bins), {}};
        const std::size_t begin = c * kChunkPrimes;
        const std::size_t end = std::min(primes.size(), begin + kChunkPrimes);
        for (std::size_t idx = begin; idx < end; ++idx) {
            const std::uint64_t p = primes[idx];
            try {
                const LocalFactor L = local_factor(p);
                const TraceRecord r = normalized_traces(L);
                res.agg.add(r, shape_check(L));
                if (records && in_class(r.k, cfg.classes)) {
                    res.rows += record_row(L, r);
                    res.rows += '\n';
                }
            } catch (const std::exception& e) {
                throw std::runtime_error("scan failed at p = " + std::to_string(p) + ": " + e.what());
            }
        }
        // Emit finished chunks strictly in chunk order.
        std::lock_guard lock(emit_mutex);
        done[c] = std::move(res);
        while (next_to_emit < chunks && done[next_to_emit]) {
            total.merge(done[next_to_emit]->agg);
            if (records) *records << done[next_to_emit]->rows;
            done[next_to_emit].reset();
            ++next_to_emit;
        }
    });
    if (records) records->flush();
    total.bound = cfg.bound;
    return total;
}

mpq_class exact_class_moment(unsigned trace, unsigned n, TraceClass c) {
    mpq_class sum = 0;
    unsigned members = 0;
    for (unsigned k = 0; k < 6; ++k) {
        if (!in_class(k, c)) continue;
        sum += mpq_class(component_moment(trace, k, n));
        ++members;
    }
    sum /= members;
    sum.canonicalize();
    return sum;
}

std::string aggregate_json(const Aggregate& agg) {
    nlohmann::ordered_json j;
    j["bound"] = agg.bound;
    j["primes"] = agg.primes();
    j["bins"] = agg.bins;
    j["shape_failures"] = agg.shape_failures;
    auto& counts = j["per_class_counts"];
    for (const TraceClass c : all_trace_classes()) counts[to_string(c)] = agg.count(c);
    for (unsigned k = 0; k < 6; ++k) counts["k" + std::to_string(k)] = agg.counts[k];
    for (const TraceClass c : all_trace_classes()) {
        const std::string cname = to_string(c);
        for (unsigned i = 1; i <= 3; ++i) {
            const std::string mu = "mu" + std::to_string(i);
            // Built separately: ordered_json references move when a sibling key is inserted.
            auto emp = nlohmann::ordered_json::array();
            auto exact = nlohmann::ordered_json::array();
            for (unsigned n = 0; n <= kMaxScanOrder; ++n) {
                emp.push_back(agg.moment(i, n, c));
                exact.push_back(rational_to_json(exact_class_moment(i, n, c)));
            }
            j["moments"]["empirical"][cname][mu] = std::move(emp);
            j["moments"]["exact"][cname][mu] = std::move(exact);
        }
    }
    return j.dump(2);
}

std::vector<MomentComparison> empirical_moments(const Aggregate& agg) {
    if (agg.primes() == 0) throw std::invalid_argument("empirical_moments: empty aggregate");
    std::vector<MomentComparison> rows;
    for (const TraceClass c : all_trace_classes()) {
        if (agg.count(c) == 0) continue;
        for (unsigned i = 1; i <= 3; ++i) {
            for (unsigned n = 0; n <= kMaxScanOrder; ++n) {
                rows.push_back({i, n, c, agg.moment(i, n, c), exact_class_moment(i, n, c).get_d()});
            }
        }
    }
    return rows;
}

std::vector<MomentComparison> empirical_moments_from_json(const std::string& json_text) {
    const auto j = nlohmann::json::parse(json_text);
    const auto& moments = j.at("moments");
    std::vector<MomentComparison> rows;
    for (const TraceClass c : all_trace_classes()) {
        const std::string cname = to_string(c);
        if (!moments.at("empirical").contains(cname)) continue;
        if (j.at("per_class_counts").value(cname, 0) == 0) continue;
        for (unsigned i = 1; i <= 3; ++i) {
            const std::string mu = "mu" + std::to_string(i);
            const auto& emp = moments.at("empirical").at(cname).at(mu);
            const auto& exact = moments.at("exact").at(cname).at(mu);
            for (unsigned n = 0; n < emp.size() && n < exact.size(); ++n) {
                rows.push_back({i, n, c, emp[n].get<double>(), exact[n].get<double>()});
            }
        }
    }
    return rows;
}

std::string format_comparison(const std::vector<MomentComparison>& rows) {
    std::ostringstream os;
    os << "class,trace,n,empirical,exact\n";
    for (const auto& r : rows) {
        os << to_string(r.cls) << ",a" << r.trace << ',' << r.n << ',' << std::fixed << std::setprecision(6)
           << r.empirical << ',' << r.exact << '\n';
    }
    return os.str();
}

std::uint64_t Histogram::total() const {
    std::uint64_t t = 0;
    for (auto c : counts) t += c;
    return t;
}

std::string Histogram::to_csv() const {
    const double R = trace_range(trace);
    const auto bins = static_cast<unsigned>(counts.size());
    const std::uint64_t mass = total();
    std::ostringstream os;
    os << "bin_lo,bin_hi,count,freq\n";
    for (unsigned b = 0; b < bins; ++b) {
        const double lo = -R + 2 * R * b / bins;
        const double hi = b + 1 == bins ? R : -R + 2 * R * (b + 1) / bins;
        const double freq = mass == 0 ? 0.0 : static_cast<double>(counts[b]) / static_cast<double>(mass);
        os << format_double(lo) << ',' << format_double(hi) << ',' << counts[b] << ',' << format_double(freq) << '\n';
    }
    return os.str();
}

std::vector<RecordRow> read_records(std::istream& in) {
    std::vector<RecordRow> rows;
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw std::runtime_error("records: empty input");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != records_header()) throw std::runtime_error("records: line 1: unexpected header '" + line + "'");
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_csv(line);
        if (fields.size() != 9) {
            throw std::runtime_error("records: line " + std::to_string(line_no) + ": expected 9 fields");
        }
        try {
            std::size_t used = 0;
            RecordRow r;
            r.p = std::stoull(fields[0], &used);
            if (used != fields[0].size()) throw std::invalid_argument("p");
            r.k = static_cast<unsigned>(std::stoul(fields[2], &used));
            if (used != fields[2].size() || r.k > 5) throw std::invalid_argument("k");
            for (int i = 0; i < 3; ++i) {
                r.a[i] = std::stod(fields[6 + i], &used);
                if (used != fields[6 + i].size()) throw std::invalid_argument("a");
            }
            rows.push_back(r);
        } catch (const std::exception&) {
            throw std::runtime_error("records: line " + std::to_string(line_no) + ": malformed row");
        }
    }
    return rows;
}

Histogram histogram_from_records(const std::vector<RecordRow>& rows, unsigned trace, TraceClass cls, unsigned bins) {
    if (bins < 2) throw std::invalid_argument("need at least two bins");
    trace_range(trace);
    Histogram h;
    h.trace = trace;
    h.cls = cls;
    h.counts.assign(bins, 0);
    for (const auto& r : rows) {
        if (in_class(r.k, cls)) ++h.counts[bin_index(r.a[trace - 1], trace, bins)];
    }
    return h;
}

}  // namespace picard
