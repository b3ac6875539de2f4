#pragma once

#include <cstdint>
#include <vector>

namespace picard {

/// Primes in [lo, hi], ascending, 3 excluded. Segmented sieve.
std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi);

/// Primes <= bound except 3, ascending.
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

}  // namespace picard
