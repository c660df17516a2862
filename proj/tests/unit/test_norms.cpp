// Copyright 2026 tfloc authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "tfloc/norms.hpp"
#include "tfloc/transforms.hpp"

using tfloc::cplx;
using tfloc::Exponent;
using tfloc::Grid;
using tfloc::MixedNormParams;
using tfloc::PhaseSpaceFunction;
using tfloc::SampledSignal;
using tfloc::WeightBlock;
using tfloc::WeightFunction;
using tfloc::WeightSpec;

namespace {
MixedNormParams plain(const Exponent& p, const Exponent& q) { return {p, q, {}}; }
}  // namespace

TEST_SUITE("norms") {
  TEST_CASE("exponent parsing and ordering") {
    CHECK(Exponent::parse("2").value() == doctest::Approx(2.0));
    CHECK(Exponent::parse("inf").is_inf());
    CHECK(Exponent::parse("1") <= Exponent::parse("inf"));
    CHECK_FALSE(Exponent::parse("inf") <= Exponent::parse("3"));
    CHECK(Exponent::parse("2.5").str() == "2.5");
    CHECK(Exponent::inf().str() == "inf");
    CHECK_THROWS(Exponent::parse("0.5"));  // exponents start at 1
    CHECK_THROWS(Exponent::parse("nope"));
  }

  TEST_CASE("mixed norm of a single spike is the analytic cell value") {
    const Grid g = Grid::from_extent(1, 16, 4.0);
    PhaseSpaceFunction F(g, g.dual());
    const int jx = 11, jxi = 5;
    F.values[static_cast<std::size_t>(jx) * 16 + jxi] = cplx(3.0, 4.0);  // modulus 5
    const double h = g.spacing(0), dxi = g.freq_spacing(0);

    SUBCASE("finite exponents") {
      const double got = tfloc::mixed_norm(F, plain(Exponent::finite(1.0), Exponent::finite(2.0)));
      CHECK(got == doctest::Approx(5.0 * h * std::sqrt(dxi)).epsilon(1e-13));
    }
    SUBCASE("sup in both variables") {
      const double got = tfloc::mixed_norm(F, plain(Exponent::inf(), Exponent::inf()));
      CHECK(got == doctest::Approx(5.0).epsilon(1e-13));
    }
    SUBCASE("weight multiplies the spike") {
      const WeightFunction om = WeightFunction::parse("log1p");
      MixedNormParams prm = plain(Exponent::inf(), Exponent::inf());
      prm.weights.push_back({om, 1.0, WeightBlock::full, false});
      const double r = std::hypot(g.node(0, jx), g.dual().node(0, jxi));
      const double got = tfloc::mixed_norm(F, prm);
      CHECK(got == doctest::Approx(5.0 * std::exp(om(r))).epsilon(1e-13));
    }
  }

  TEST_CASE("inner and outer exponents act on their own variables") {
    // two spikes of modulus 1: same frequency row vs same position column
    const Grid g = Grid::from_extent(1, 8, 2.0);
    const double h = g.spacing(0), dxi = g.freq_spacing(0);
    PhaseSpaceFunction same_row(g, g.dual());   // two positions, one frequency
    same_row.values[1 * 8 + 3] = 1.0;
    same_row.values[6 * 8 + 3] = 1.0;
    PhaseSpaceFunction same_col(g, g.dual());   // one position, two frequencies
    same_col.values[1 * 8 + 3] = 1.0;
    same_col.values[1 * 8 + 6] = 1.0;
    const MixedNormParams p12 = plain(Exponent::finite(1.0), Exponent::finite(2.0));
    // p = 1 sums the two positions linearly; q = 2 adds the rows in quadrature
    CHECK(tfloc::mixed_norm(same_row, p12) ==
          doctest::Approx(2.0 * h * std::sqrt(dxi)).epsilon(1e-13));
    CHECK(tfloc::mixed_norm(same_col, p12) ==
          doctest::Approx(std::sqrt(2.0) * h * std::sqrt(dxi)).epsilon(1e-13));
  }

  TEST_CASE("modulation norm is the mixed norm of the windowed transform") {
    const Grid g = Grid::from_extent(1, 32, 6.0);
    std::mt19937_64 gen(5);
    const SampledSignal f = tfloc::random_coherent_mixture(g, 3, gen);
    const SampledSignal w = tfloc::gaussian_window(g);
    const MixedNormParams prm = plain(Exponent::finite(1.0), Exponent::finite(2.0));
    CHECK(tfloc::modulation_norm(f, w, prm) ==
          doctest::Approx(tfloc::mixed_norm(tfloc::stft(f, w), prm)).epsilon(1e-12));
  }

  TEST_CASE("larger weight exponent never shrinks a norm") {
    const Grid g = Grid::from_extent(1, 32, 6.0);
    std::mt19937_64 gen(9);
    const SampledSignal f = tfloc::random_coherent_mixture(g, 3, gen);
    const SampledSignal w = tfloc::gaussian_window(g);
    const WeightFunction om = WeightFunction::parse("log1p");
    double prev = 0.0;
    for (double lam : {0.0, 0.5, 1.0, 2.0}) {
      MixedNormParams prm = plain(Exponent::finite(2.0), Exponent::finite(2.0));
      if (lam > 0.0) prm.weights.push_back({om, lam, WeightBlock::full, false});
      const double cur = tfloc::modulation_norm(f, w, prm);
      CHECK(cur >= prev);
      prev = cur;
    }
  }

  TEST_CASE("profile of a materialized array equals the streamed profile") {
    const Grid g = Grid::from_extent(1, 32, 6.0);
    std::mt19937_64 gen(13);
    const SampledSignal f = tfloc::random_coherent_mixture(g, 3, gen);
    const SampledSignal w = tfloc::gaussian_window(g);
    const WeightFunction om = WeightFunction::parse("log1p");
    const PhaseSpaceFunction F = tfloc::stft(f, w);
    const auto direct = tfloc::m01_profile(F, om, 1.0);
    const auto streamed = tfloc::m01_profile_streamed(f, w, om, 1.0, 1);
    REQUIRE(direct.value.size() == streamed.value.size());
    for (std::size_t i = 0; i < direct.value.size(); ++i) {
      CHECK(direct.value[i] == doctest::Approx(streamed.value[i]).epsilon(1e-12));
      CHECK(direct.scaled_radius[i] == doctest::Approx(streamed.scaled_radius[i]).epsilon(1e-14));
    }
    CHECK(direct.edge_statistic == doctest::Approx(streamed.edge_statistic).epsilon(1e-12));
    CHECK(direct.peak == doctest::Approx(streamed.peak).epsilon(1e-12));
  }

  TEST_CASE("nested spaces give a bounded weak-to-strong ratio") {
    const Grid g = Grid::from_extent(1, 48, 8.0);
    std::mt19937_64 gen(17);
    const SampledSignal f = tfloc::random_coherent_mixture(g, 4, gen);
    const SampledSignal w = tfloc::gaussian_window(g);
    tfloc::InclusionParams prm{Exponent::finite(1.0), Exponent::finite(1.0),
                               Exponent::finite(2.0), Exponent::finite(2.0),
                               WeightFunction::parse("log1p"), 1.0, 0.0};
    const auto rep = tfloc::check_inclusion(f, w, prm);
    CHECK(rep.strong_norm > 0.0);
    CHECK(rep.weak_norm > 0.0);
    CHECK(rep.ratio == doctest::Approx(rep.weak_norm / rep.strong_norm));
    // the strong norm integrates more mass and carries a bigger weight; the
    // discretization constant stays well under 2 for coherent mixtures
    CHECK(rep.ratio <= 2.0);
  }

  TEST_CASE("inclusion parameters must nest") {
    tfloc::InclusionParams bad{Exponent::finite(2.0), Exponent::finite(2.0),
                               Exponent::finite(1.0), Exponent::finite(1.0),
                               WeightFunction::parse("log1p"), 0.0, 0.0};
    const Grid g = Grid::from_extent(1, 16, 4.0);
    const SampledSignal w = tfloc::gaussian_window(g);
    CHECK_THROWS_AS(tfloc::check_inclusion(w, w, bad), std::invalid_argument);
  }
}
