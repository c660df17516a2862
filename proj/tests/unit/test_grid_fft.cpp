// Copyright 2026 tfloc authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "tfloc/fft.hpp"
#include "tfloc/grid.hpp"

using tfloc::Grid;
using tfloc::fft::cplx;

namespace {
constexpr double kPi = 3.14159265358979323846;

std::vector<cplx> random_vector(int n, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = cplx(u(gen), u(gen));
  return v;
}
}  // namespace

TEST_SUITE("grid_fft") {
  TEST_CASE("centered grid geometry") {
    const Grid g = Grid::from_extent(1, 64, 8.0);
    CHECK(g.n() == 64);
    CHECK(g.dim() == 1);
    CHECK(g.spacing(0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(g.node(0, 0) == doctest::Approx(-8.0));
    CHECK(g.node(0, 32) == doctest::Approx(0.0));
    CHECK(g.node(0, 63) == doctest::Approx(8.0 - 0.25));
    // dual lattice: spacing 2 pi / (n h), same node count
    const Grid d = g.dual();
    CHECK(d.spacing(0) == doctest::Approx(2.0 * kPi / (64 * 0.25)).epsilon(1e-15));
    CHECK(g.freq_spacing(0) == doctest::Approx(d.spacing(0)).epsilon(1e-15));
    CHECK(g.cell_measure() == doctest::Approx(0.25));
  }

  TEST_CASE("flat and unflat agree in two dimensions") {
    const Grid g(2, 8, {0.5, 0.25});
    CHECK(g.size() == 64);
    for (std::int64_t f = 0; f < g.size(); ++f) {
      const auto idx = g.unflat(f);
      CHECK(g.flat(idx) == f);
    }
    CHECK(g.cell_measure() == doctest::Approx(0.125));
    CHECK(g.spacing(1) == doctest::Approx(0.25));
  }

  TEST_CASE("centered transform matches the direct sum") {
    const int n = 16;
    std::vector<cplx> in = random_vector(n, 11);
    std::vector<cplx> out = in;
    tfloc::fft::centered_forward(out.data(), n);
    for (int m = 0; m < n; ++m) {
      cplx acc = 0.0;
      for (int k = 0; k < n; ++k) {
        acc += in[static_cast<std::size_t>(k)] *
               std::polar(1.0, -2.0 * kPi * (k - n / 2) * (m - n / 2) / n);
      }
      CHECK(std::abs(out[static_cast<std::size_t>(m)] - acc) < 1e-12);
    }
  }

  TEST_CASE("backward after forward scales by n") {
    const int n = 48;  // n = 2^4 * 3: exercises a non-power-of-two size
    std::vector<cplx> v = random_vector(n, 7);
    std::vector<cplx> w = v;
    tfloc::fft::centered_forward(w.data(), n);
    tfloc::fft::centered_backward(w.data(), n);
    for (int k = 0; k < n; ++k) {
      CHECK(std::abs(w[static_cast<std::size_t>(k)] - double(n) * v[static_cast<std::size_t>(k)]) <
            1e-12 * n);
    }
  }

  TEST_CASE("raw transform round trip") {
    const int n = 30;
    std::vector<cplx> v = random_vector(n, 3);
    std::vector<cplx> w = v;
    tfloc::fft::forward_raw(w.data(), n);
    tfloc::fft::backward_raw(w.data(), n);
    for (int k = 0; k < n; ++k) {
      CHECK(std::abs(w[static_cast<std::size_t>(k)] - double(n) * v[static_cast<std::size_t>(k)]) <
            1e-12 * n);
    }
  }

  TEST_CASE("axis transforms act on one axis only") {
    const int rows = 6, cols = 8;
    std::vector<cplx> m = random_vector(rows * cols, 5);
    std::vector<cplx> t = m;
    tfloc::fft::centered_forward_axis(t.data(), rows, cols, 1);
    // row r of t must equal the centered transform of row r of m
    for (int r = 0; r < rows; ++r) {
      std::vector<cplx> row(m.begin() + r * cols, m.begin() + (r + 1) * cols);
      tfloc::fft::centered_forward(row.data(), cols);
      for (int c = 0; c < cols; ++c) {
        CHECK(std::abs(t[static_cast<std::size_t>(r) * cols + c] -
                       row[static_cast<std::size_t>(c)]) < 1e-12);
      }
    }
  }

  TEST_CASE("next fast size never shrinks") {
    CHECK(tfloc::fft::next_fast_size(240) == 240);
    for (int n : {17, 97, 241, 509}) {
      const int m = tfloc::fft::next_fast_size(n);
      CHECK(m >= n);
      // result factors into the supported small primes
      int r = m;
      for (int p : {2, 3, 5, 7}) {
        while (r % p == 0) r /= p;
      }
      CHECK(r == 1);
    }
  }
}
