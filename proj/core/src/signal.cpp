// Copyright 2026 tfloc authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "tfloc/signal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tfloc/errors.hpp"
#include "tfloc/rng.hpp"

namespace tfloc {

SampledSignal::SampledSignal(const Grid& g, std::vector<cplx> v) : grid(g), values(std::move(v)) {
  if (static_cast<std::int64_t>(values.size()) != grid.size()) {
    throw std::invalid_argument("SampledSignal: value count does not match grid size");
  }
}

SampledSignal::SampledSignal(const Grid& g)
    : grid(g), values(static_cast<std::size_t>(g.size()), cplx(0.0, 0.0)) {}

PhaseSpaceFunction::PhaseSpaceFunction(const Grid& xg, const Grid& xig, std::vector<cplx> v)
    : xgrid(xg), xigrid(xig), values(std::move(v)) {
  if (xg.dim() != xig.dim()) {
    throw std::invalid_argument("PhaseSpaceFunction: x and xi grids must share dim");
  }
  if (static_cast<std::int64_t>(values.size()) != size()) {
    throw std::invalid_argument("PhaseSpaceFunction: value count does not match grids");
  }
}

PhaseSpaceFunction::PhaseSpaceFunction(const Grid& xg, const Grid& xig)
    : xgrid(xg), xigrid(xig) {
  if (xg.dim() != xig.dim()) {
    throw std::invalid_argument("PhaseSpaceFunction: x and xi grids must share dim");
  }
  values.assign(static_cast<std::size_t>(size()), cplx(0.0, 0.0));
}

cplx inner_product(const SampledSignal& f, const SampledSignal& g) {
  require_same_grid(f.grid, g.grid, "inner_product");
  cplx acc(0.0, 0.0);
  for (std::size_t i = 0; i < f.values.size(); ++i) acc += f.values[i] * std::conj(g.values[i]);
  return acc * f.grid.cell_measure();
}

double l2_norm(const SampledSignal& f) {
  double acc = 0.0;
  for (const cplx& v : f.values) acc += std::norm(v);
  return std::sqrt(acc * f.grid.cell_measure());
}

double l2_norm(const PhaseSpaceFunction& F) {
  double acc = 0.0;
  for (const cplx& v : F.values) acc += std::norm(v);
  return std::sqrt(acc * F.xgrid.cell_measure() * F.xigrid.cell_measure());
}

double sup_norm(const SampledSignal& f) {
  double m = 0.0;
  for (const cplx& v : f.values) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const SampledSignal& f, const SampledSignal& g) {
  require_same_grid(f.grid, g.grid, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    m = std::max(m, std::abs(f.values[i] - g.values[i]));
  }
  return m;
}

SampledSignal gaussian_window(const Grid& g) {
  SampledSignal s(g);
  const double pi = std::numbers::pi;
  if (g.dim() == 1) {
    for (int k = 0; k < g.n(); ++k) {
      double x = g.node(0, k);
      s.values[static_cast<std::size_t>(k)] = std::exp(-pi * x * x);
    }
  } else {
    for (int k0 = 0; k0 < g.n(); ++k0) {
      double x0 = g.node(0, k0);
      for (int k1 = 0; k1 < g.n(); ++k1) {
        double x1 = g.node(1, k1);
        s.values[static_cast<std::size_t>(k0) * g.n() + k1] = std::exp(-pi * (x0 * x0 + x1 * x1));
      }
    }
  }
  return s;
}

SampledSignal hermite1_window(const Grid& g) {
  if (g.dim() != 1) throw std::invalid_argument("hermite1_window: dim 1 only");
  SampledSignal s(g);
  const double pi = std::numbers::pi;
  for (int k = 0; k < g.n(); ++k) {
    double x = g.node(0, k);
    s.values[static_cast<std::size_t>(k)] = x * std::exp(-pi * x * x);
  }
  double nrm = l2_norm(s);
  if (nrm == 0.0) throw Error("hermite1_window: degenerate grid");
  for (cplx& v : s.values) v /= nrm;
  return s;
}

SampledSignal make_window(const Grid& g, const std::string& name) {
  if (name == "g0") return gaussian_window(g);
  if (name == "hermite1") return hermite1_window(g);
  throw ConfigError("unknown window name: " + name);
}

SampledSignal random_coherent_mixture(const Grid& g, int atoms, std::mt19937_64& gen) {
  if (atoms < 1) throw std::invalid_argument("random_coherent_mixture: atoms must be >= 1");
  const int n = g.n();
  const SampledSignal atom = gaussian_window(g);
  SampledSignal f(g);
  const double two_pi = 2.0 * std::numbers::pi;
  for (int t = 0; t < atoms; ++t) {
    std::array<int, 2> shift = {0, 0};
    std::array<int, 2> mod = {0, 0};
    for (int a = 0; a < g.dim(); ++a) {
      // Centers and modulations in the central half so atoms keep clear of
      // the grid edge; exact lattice nodes keep the construction portable.
      shift[a] = rng::uniform_int(gen, -n / 4, n / 4);
      mod[a] = rng::uniform_int(gen, -n / 4, n / 4);
    }
    const double amp = 0.5 + rng::uniform01(gen);
    const double phase = two_pi * rng::uniform01(gen);
    const cplx c = std::polar(amp, phase);
    if (g.dim() == 1) {
      for (int k = 0; k < n; ++k) {
        int src = k - shift[0];
        if (src < 0 || src >= n) continue;
        double arg = g.node(0, k) * (mod[0] * g.freq_spacing(0));
        f.values[static_cast<std::size_t>(k)] +=
            c * atom.values[static_cast<std::size_t>(src)] * std::polar(1.0, arg);
      }
    } else {
      for (int k0 = 0; k0 < n; ++k0) {
        int s0 = k0 - shift[0];
        if (s0 < 0 || s0 >= n) continue;
        double arg0 = g.node(0, k0) * (mod[0] * g.freq_spacing(0));
        for (int k1 = 0; k1 < n; ++k1) {
          int s1 = k1 - shift[1];
          if (s1 < 0 || s1 >= n) continue;
          double arg = arg0 + g.node(1, k1) * (mod[1] * g.freq_spacing(1));
          f.values[static_cast<std::size_t>(k0) * n + k1] +=
              c * atom.values[static_cast<std::size_t>(s0) * n + s1] * std::polar(1.0, arg);
        }
      }
    }
  }
  return f;
}

}  // namespace tfloc
