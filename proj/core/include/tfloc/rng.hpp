// Copyright 2026 tfloc authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#ifndef TFLOC_RNG_HPP
#define TFLOC_RNG_HPP

#include <cstdint>
#include <random>

namespace tfloc::rng {

// Uniform double in [0, 1) from raw engine output. std::uniform_real_distribution
// is implementation-defined; this mapping is identical on every platform.
inline double uniform01(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1p-53;
}

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return lo + (hi - lo) * uniform01(g);
}

// Uniform integer in [lo, hi] inclusive. Modulo bias is irrelevant at the
// ranges used here and the result is portable.
inline int uniform_int(std::mt19937_64& g, int lo, int hi) {
  return lo + static_cast<int>(g() % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace tfloc::rng

#endif
