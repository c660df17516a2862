// Copyright 2026 tfloc authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "support/oracles.hpp"
#include "tfloc/errors.hpp"
#include "tfloc/transforms.hpp"

using tfloc::cplx;
using tfloc::Grid;
using tfloc::PhaseSpaceFunction;
using tfloc::SampledSignal;

namespace {
constexpr double kTwoPi = 6.28318530717958647692;

SampledSignal test_mixture(const Grid& g, unsigned seed) {
  std::mt19937_64 gen(seed);
  return tfloc::random_coherent_mixture(g, 4, gen);
}

double rel_err(const std::vector<cplx>& got, const std::vector<cplx>& want) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i) {
    num += std::norm(got[i] - want[i]);
    den += std::norm(want[i]);
  }
  return std::sqrt(num / (den > 0.0 ? den : 1.0));
}
}  // namespace

TEST_SUITE("transforms") {
  TEST_CASE("stft matches the direct sum") {
    const Grid g = Grid::from_extent(1, 24, 6.0);
    const SampledSignal f = test_mixture(g, 101);
    const SampledSignal w = tfloc::gaussian_window(g);
    const PhaseSpaceFunction got = tfloc::stft(f, w);
    const PhaseSpaceFunction want = oracle::stft(f, w);
    CHECK(rel_err(got.values, want.values) < 1e-13);
  }

  TEST_CASE("stft adjoint matches the direct sum") {
    const Grid g = Grid::from_extent(1, 20, 5.0);
    const SampledSignal f = test_mixture(g, 7);
    const SampledSignal w = tfloc::hermite1_window(g);
    const PhaseSpaceFunction F = tfloc::stft(f, w);
    const SampledSignal got = tfloc::stft_adjoint(F, w);
    const SampledSignal want = oracle::stft_adjoint(F, w);
    CHECK(rel_err(got.values, want.values) < 1e-13);
  }

  TEST_CASE("adjoint pairing holds to rounding") {
    const Grid g = Grid::from_extent(1, 32, 6.0);
    const SampledSignal f = test_mixture(g, 21);
    const SampledSignal w = tfloc::gaussian_window(g);
    const PhaseSpaceFunction Vf = tfloc::stft(f, w);
    const SampledSignal u = test_mixture(g, 22);
    const PhaseSpaceFunction F = tfloc::stft(u, w);  // any phase-space array
    // <V f, F> over the phase grid == <f, V* F> over the signal grid
    cplx lhs = 0.0;
    for (std::size_t i = 0; i < Vf.values.size(); ++i) lhs += Vf.values[i] * std::conj(F.values[i]);
    lhs *= g.spacing(0) * g.freq_spacing(0);
    const cplx rhs = tfloc::inner_product(f, tfloc::stft_adjoint(F, w));
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(rhs));
  }

  TEST_CASE("inversion rebuilds the signal") {
    const Grid g = Grid::from_extent(1, 64, 8.0);
    const SampledSignal f = test_mixture(g, 33);
    const SampledSignal psi = tfloc::gaussian_window(g);
    const SampledSignal gamma = tfloc::hermite1_window(g);
    SUBCASE("matched windows") {
      const SampledSignal back = tfloc::invert(f, psi, psi);
      CHECK(rel_err(back.values, f.values) < 1e-12);
    }
    SUBCASE("distinct analysis and synthesis windows fail the pairing test") {
      // <hermite1, g0> = 0 by parity: no reconstruction is possible
      CHECK_THROWS_AS(tfloc::invert(f, psi, gamma), tfloc::SingularConfiguration);
    }
  }

  TEST_CASE("cross ambiguity matches the direct sum and is real on the diagonal") {
    const Grid g = Grid::from_extent(1, 24, 6.0);
    const SampledSignal f = test_mixture(g, 51);
    const SampledSignal w = tfloc::gaussian_window(g);
    const PhaseSpaceFunction got = tfloc::cross_wigner(f, w);
    const PhaseSpaceFunction want = oracle::cross_wigner(f, w);
    CHECK(rel_err(got.values, want.values) < 1e-13);
    // pairing a signal with itself gives a real array
    const PhaseSpaceFunction self = tfloc::cross_wigner(f, f);
    double worst = 0.0, peak = 0.0;
    for (const cplx& v : self.values) {
      worst = std::max(worst, std::abs(v.imag()));
      peak = std::max(peak, std::abs(v));
    }
    CHECK(worst < 1e-12 * peak);
  }

  TEST_CASE("fourier matches the direct sum and inverts") {
    const Grid g = Grid::from_extent(1, 40, 5.0);
    const SampledSignal f = test_mixture(g, 61);
    const SampledSignal got = tfloc::fourier(f);
    const SampledSignal want = oracle::fourier(f);
    CHECK(rel_err(got.values, want.values) < 1e-13);
    const SampledSignal back = tfloc::fourier_inverse(got);
    CHECK(rel_err(back.values, f.values) < 1e-12);
  }

  TEST_CASE("spectrogram total mass carries the 2 pi times window energy factor") {
    const Grid g = Grid::from_extent(1, 64, 8.0);
    const SampledSignal f = test_mixture(g, 71);
    const SampledSignal w = tfloc::gaussian_window(g);
    const PhaseSpaceFunction V = tfloc::stft(f, w);
    double mass = 0.0;
    for (const cplx& v : V.values) mass += std::norm(v);
    mass *= g.spacing(0) * g.freq_spacing(0);
    const double nf = tfloc::l2_norm(f), nw = tfloc::l2_norm(w);
    const double want = kTwoPi * nf * nf * nw * nw;
    CHECK(mass == doctest::Approx(want).epsilon(1e-10));
  }
}
