// Copyright 2026 tfloc authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#ifndef TFLOC_SIGNAL_HPP
#define TFLOC_SIGNAL_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tfloc/grid.hpp"

namespace tfloc {

using cplx = std::complex<double>;

// Samples of a function on a Grid, row-major (axis 0 slowest).
struct SampledSignal {
  Grid grid;
  std::vector<cplx> values;

  SampledSignal(const Grid& g, std::vector<cplx> v);
  explicit SampledSignal(const Grid& g);  // zeros

  cplx& at(const std::array<int, 2>& idx) { return values[static_cast<std::size_t>(grid.flat(idx))]; }
  const cplx& at(const std::array<int, 2>& idx) const {
    return values[static_cast<std::size_t>(grid.flat(idx))];
  }
};

// Samples of a function of (x, xi); x varies over xgrid (slow index),
// xi over xigrid (fast index). Layout: values[xflat * xigrid.size() + xiflat].
struct PhaseSpaceFunction {
  Grid xgrid;
  Grid xigrid;
  std::vector<cplx> values;

  PhaseSpaceFunction(const Grid& xg, const Grid& xig, std::vector<cplx> v);
  PhaseSpaceFunction(const Grid& xg, const Grid& xig);  // zeros

  std::int64_t size() const { return xgrid.size() * xigrid.size(); }
  cplx& at(std::int64_t xflat, std::int64_t xiflat) {
    return values[static_cast<std::size_t>(xflat * xigrid.size() + xiflat)];
  }
  const cplx& at(std::int64_t xflat, std::int64_t xiflat) const {
    return values[static_cast<std::size_t>(xflat * xigrid.size() + xiflat)];
  }
};

// Quadrature inner product <f, g> = cell * sum f * conj(g); conjugate-linear
// in the second argument.
cplx inner_product(const SampledSignal& f, const SampledSignal& g);
double l2_norm(const SampledSignal& f);
double l2_norm(const PhaseSpaceFunction& F);
double sup_norm(const SampledSignal& f);

// max_k |f_k - g_k|; grids must match.
double max_abs_diff(const SampledSignal& f, const SampledSignal& g);

// exp(-pi |x|^2) sampled on the grid.
SampledSignal gaussian_window(const Grid& g);
// First Hermite-type window x * exp(-pi x^2), L2-normalized by quadrature (dim 1).
SampledSignal hermite1_window(const Grid& g);
// Named lookup used by harness configs: "g0" or "hermite1".
SampledSignal make_window(const Grid& g, const std::string& name);

// Sum of `atoms` Gaussian atoms with exact integer-node translations and
// on-grid modulations in the central half of the grid, with random complex
// amplitudes drawn from `gen`. Deterministic for a fixed engine state across
// platforms (only engine output words are consumed, no distribution objects).
SampledSignal random_coherent_mixture(const Grid& g, int atoms, std::mt19937_64& gen);

}  // namespace tfloc

#endif
