// Copyright 2026 tfloc authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#ifndef TFLOC_IO_HPP
#define TFLOC_IO_HPP

#include <string>

#include "tfloc/signal.hpp"

namespace tfloc {

// Binary container for sampled data, little-endian throughout:
//   magic "TFLOCB1\0" (8 bytes)
//   u32 kind: 1 = signal (one grid), 2 = phase-space (two grids)
//   per grid: i32 dim, i32 n, f64 spacing[2]
//   u64 count, then count * (f64 re, f64 im) in row-major order.
// All readers validate magic, kind and counts and throw tfloc::Error on
// malformed input.
void write_signal(const std::string& path, const SampledSignal& f);
SampledSignal read_signal(const std::string& path);
void write_phase_space(const std::string& path, const PhaseSpaceFunction& F);
PhaseSpaceFunction read_phase_space(const std::string& path);

}  // namespace tfloc

#endif
