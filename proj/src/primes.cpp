#include "picard/primes.hpp"

#include <algorithm>
#include <cmath>

namespace picard {

namespace {

std::vector<std::uint64_t> small_primes(std::uint64_t limit) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

constexpr std::uint64_t kSegment = 1 << 18;

}  // namespace

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    lo = std::max<std::uint64_t>(lo, 2);
    if (hi < lo) return out;
    auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi)));
    while (root * root > hi) --root;
    while ((root + 1) * (root + 1) <= hi) ++root;
    const auto base = small_primes(root);

    std::vector<bool> composite;
    for (std::uint64_t seg_lo = lo; seg_lo <= hi; seg_lo += kSegment) {
        const std::uint64_t seg_hi = std::min(hi, seg_lo + kSegment - 1);
        composite.assign(seg_hi - seg_lo + 1, false);
        for (const std::uint64_t q : base) {
            if (q * q > seg_hi) break;
            std::uint64_t start = std::max(q * q, (seg_lo + q - 1) / q * q);
            for (std::uint64_t j = start; j <= seg_hi; j += q) composite[j - seg_lo] = true;
        }
        for (std::uint64_t n = seg_lo; n <= seg_hi; ++n) {
            if (!composite[n - seg_lo] && n != 3) out.push_back(n);
        }
        if (seg_hi == hi) break;
    }
    return out;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) { return primes_in_range(2, bound); }

}  // namespace picard
