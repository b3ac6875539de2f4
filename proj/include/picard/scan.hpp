#pragma once

// Sweep over all good primes up to a bound: psi, L_p, normalized traces,
// per-component power sums and histograms.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "picard/lfactor.hpp"
#include "picard/summation.hpp"

namespace picard {

/// Unions of Sato-Tate components used for reporting.
enum class TraceClass { all, k0, k24, k3, k15 };

TraceClass parse_trace_class(const std::string& name);
std::string to_string(TraceClass c);
bool in_class(unsigned k, TraceClass c);
const std::array<TraceClass, 5>& all_trace_classes();

enum class ScanFormat { csv, json };

struct ScanConfig {
    std::uint64_t bound = 1 << 20;
    unsigned workers = 1;
    unsigned bins = 101;
    TraceClass classes = TraceClass::all;  // records written; aggregates always see every prime
    std::string out;  // empty: standard output
    ScanFormat format = ScanFormat::csv;
};

/// Throws std::invalid_argument unless bound >= 5, workers >= 1, bins >= 2.
void validate(const ScanConfig& cfg);

/// Half-width of the range of trace i: 6, 15, 20.
double trace_range(unsigned trace);
/// floor((a + R) bins / 2R), clamped so that a = R lands in the last bin.
unsigned bin_index(double a, unsigned trace, unsigned bins);

constexpr unsigned kMaxScanOrder = 6;

struct Aggregate {
    std::uint64_t bound = 0;
    unsigned bins = 101;
    std::array<std::uint64_t, 6> counts{};
    std::uint64_t shape_failures = 0;
    /// power_sums[i-1][k][n] = sum of a_i^n over primes of component k, n = 0..6.
    std::array<std::array<std::array<CompensatedSum, kMaxScanOrder + 1>, 6>, 3> power_sums{};
    /// histograms[i-1][k][bin]
    std::array<std::array<std::vector<std::uint64_t>, 6>, 3> histograms;

    explicit Aggregate(unsigned bins_ = 101);
    void add(const TraceRecord& r, bool shape_ok);
    /// Adds counts and sums of `other`; callers merge in a fixed order.
    void merge(const Aggregate& other);

    std::uint64_t primes() const;
    std::uint64_t count(TraceClass c) const;
    double moment(unsigned trace, unsigned n, TraceClass c) const;
    std::vector<std::uint64_t> histogram(unsigned trace, TraceClass c) const;
};

/// p,f,k,b1,b2,b3,a1,a2,a3 with %.17g floats.
std::string records_header();
std::string record_row(const LocalFactor& L, const TraceRecord& r);

/// Computes every good prime <= cfg.bound. If `records` is non-null the CSV
/// rows of primes in cfg.classes are written to it in increasing p.
/// Output is independent of cfg.workers.
Aggregate run_scan(const ScanConfig& cfg, std::ostream* records);

/// Exact moment of the class: the average of the component moments it contains.
mpq_class exact_class_moment(unsigned trace, unsigned n, TraceClass c);

/// {"bound":B,"primes":n,"per_class_counts":{...},"moments":{"empirical":{...},"exact":{...}}}
std::string aggregate_json(const Aggregate& agg);

struct MomentComparison {
    unsigned trace = 0;
    unsigned n = 0;
    TraceClass cls = TraceClass::all;
    double empirical = 0;
    double exact = 0;
};

std::vector<MomentComparison> empirical_moments(const Aggregate& agg);
/// Same comparison read back from aggregate JSON.
std::vector<MomentComparison> empirical_moments_from_json(const std::string& json_text);
std::string format_comparison(const std::vector<MomentComparison>& rows);

struct Histogram {
    unsigned trace = 1;
    TraceClass cls = TraceClass::all;
    std::vector<std::uint64_t> counts;
    std::uint64_t total() const;
    /// bin_lo,bin_hi,count,freq
    std::string to_csv() const;
};

struct RecordRow {
    std::uint64_t p = 0;
    unsigned k = 0;
    std::array<double, 3> a{};
};

/// Parses records CSV; throws std::runtime_error naming the line on bad input.
std::vector<RecordRow> read_records(std::istream& in);

Histogram histogram_from_records(const std::vector<RecordRow>& rows, unsigned trace, TraceClass cls, unsigned bins);

}  // namespace picard
