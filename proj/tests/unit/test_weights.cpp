// Copyright 2026 tfloc authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "tfloc/errors.hpp"
#include "tfloc/weights.hpp"

using tfloc::check_weight_conditions;
using tfloc::WeightBlock;
using tfloc::WeightFunction;
using tfloc::WeightSpec;

TEST_SUITE("weights") {
  TEST_CASE("built-in growth functions pass the standing conditions") {
    for (const char* name : {"log1p", "power:0.5", "power:0.25", "logpower:2", "logpower:1.5"}) {
      CAPTURE(name);
      const WeightFunction om = WeightFunction::parse(name);
      const auto rep = check_weight_conditions(om, 1e4, 4000);
      CHECK(rep.sample_count == 4000);
      CHECK(rep.all_hold());
      CHECK(rep.worst_subadditivity_gap <= 1e-9);
      CHECK(rep.tail_integral > 0.0);
      CHECK(om(0.0) == doctest::Approx(0.0));
    }
  }

  TEST_CASE("a quadratic exponent is rejected by the audit") {
    // omega(t) = t^2 grows too fast: not subadditive, tail not integrable.
    const auto rep = check_weight_conditions([](double t) { return t * t; }, {0.0, 1.0},
                                             /*tail_integrable_claim=*/true, 1e3, 2000);
    CHECK(rep.subadditivity_violations > 0);
    CHECK(rep.worst_subadditivity_gap > 1.0);
    CHECK(rep.tail_ratio_halving > 1.5);  // omega(t)/t keeps growing: tail diverges
  }

  TEST_CASE("audit catches a log bound the function does not dominate") {
    const auto rep = check_weight_conditions([](double t) { return std::log1p(t); }, {2.0, 1.0},
                                             true, 1e3, 2000);
    CHECK(rep.log_bound_violations > 0);  // log1p does not dominate 2 + log(1+t)
  }

  TEST_CASE("logpower with exponent one collapses to log1p") {
    const WeightFunction lp = WeightFunction::parse("logpower:1");
    const WeightFunction l = WeightFunction::parse("log1p");
    for (double t : {0.0, 0.3, 1.0, 7.0, 440.0}) {
      CHECK(lp(t) == doctest::Approx(l(t)).epsilon(1e-12));
    }
  }

  TEST_CASE("logpower majorant is concave through the origin") {
    const WeightFunction om = WeightFunction::parse("logpower:2");
    // below the tangency point the graph is linear, above it the raw power;
    // concavity means chords never exceed the function
    for (double a : {0.1, 0.5, 2.0, 9.0}) {
      const double mid = om(0.5 * (a + 2.0 * a));
      CHECK(mid >= 0.5 * (om(a) + om(2.0 * a)) - 1e-12);
      CHECK(om(a) >= std::pow(std::log1p(a), 2.0) - 1e-12);  // majorant property
    }
  }

  TEST_CASE("parse rejects malformed names") {
    CHECK_THROWS_AS(WeightFunction::parse("power:1.5"), tfloc::ConfigError);  // beta must be < 1
    CHECK_THROWS_AS(WeightFunction::parse("power:0"), tfloc::ConfigError);
    CHECK_THROWS_AS(WeightFunction::parse("logpower:0.5"), tfloc::ConfigError);  // s >= 1
    CHECK_THROWS_AS(WeightFunction::parse("gauss"), tfloc::ConfigError);
    CHECK_THROWS_AS(WeightFunction::parse(""), tfloc::ConfigError);
  }

  TEST_CASE("weight blocks pick their argument") {
    const WeightFunction om = WeightFunction::parse("log1p");
    const double x[1] = {3.0}, xi[1] = {4.0};
    WeightSpec full{om, 1.0, WeightBlock::full, false};
    WeightSpec first{om, 1.0, WeightBlock::first, false};
    WeightSpec second{om, 1.0, WeightBlock::second, false};
    CHECK(full.eval(x, xi) == doctest::Approx(std::exp(om(5.0))).epsilon(1e-14));
    CHECK(first.eval(x, xi) == doctest::Approx(std::exp(om(3.0))).epsilon(1e-14));
    CHECK(second.eval(x, xi) == doctest::Approx(std::exp(om(4.0))).epsilon(1e-14));
    CHECK(full.eval_radius(5.0) == doctest::Approx(full.eval(x, xi)).epsilon(1e-14));
  }

  TEST_CASE("negative lambda decays unless the absolute companion is used") {
    const WeightFunction om = WeightFunction::parse("log1p");
    WeightSpec dec{om, -1.0, WeightBlock::full, false};
    WeightSpec abs{om, -1.0, WeightBlock::full, true};
    CHECK(dec.eval_radius(10.0) < 1.0);
    CHECK(abs.eval_radius(10.0) > 1.0);
    CHECK(abs.eval_radius(10.0) == doctest::Approx(std::exp(om(10.0))).epsilon(1e-14));
  }
}
