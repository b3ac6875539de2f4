#pragma once

#include <random>

#include "picard/cyclotomic.hpp"

namespace picard::testing {

inline CycInt random_cycint(std::mt19937_64& rng, long bound) {
    std::uniform_int_distribution<long> d(-bound, bound);
    IntVector6 v;
    for (auto& c : v) c = d(rng);
    return CycInt(v);
}

inline CycInt z(long e) { return CycInt::zeta_power(e); }

}  // namespace picard::testing
