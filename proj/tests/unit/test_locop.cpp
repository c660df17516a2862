// Copyright 2026 tfloc authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include <cmath>
#include <random>

#include "doctest.h"
#include "support/oracles.hpp"
#include "tfloc/errors.hpp"
#include "tfloc/locop.hpp"
#include "tfloc/transforms.hpp"

using tfloc::cplx;
using tfloc::Grid;
using tfloc::LocOpMatrix;
using tfloc::SampledSignal;
using tfloc::SymbolSpec;

namespace {
double rel_frob(const Eigen::MatrixXcd& got, const Eigen::MatrixXcd& want) {
  return (got - want).norm() / want.norm();
}
}  // namespace

TEST_SUITE("locop") {
  TEST_CASE("symbol parsing and pointwise values") {
    const SymbolSpec one = SymbolSpec::parse("one");
    const SymbolSpec gauss = SymbolSpec::parse("gauss:2,0.5");
    const SymbolSpec box = SymbolSpec::parse("box:1.5,2");
    const SymbolSpec xonly = SymbolSpec::parse("xonly:1");
    const double x[1] = {1.0}, xi[1] = {2.0};
    CHECK(one.value_at(x, xi) == cplx(1.0));
    CHECK(std::abs(gauss.value_at(x, xi) - std::exp(-2.0 - 0.5 * 4.0)) < 1e-15);
    const double in_xi[1] = {1.5};
    CHECK(box.value_at(x, in_xi) == cplx(1.0));  // inside 1.5 x 2 half widths
    const double far[1] = {2.5};
    CHECK(box.value_at(far, in_xi) == cplx(0.0));
    CHECK(std::abs(xonly.value_at(x, xi) - std::exp(-1.0)) < 1e-15);
    CHECK_FALSE(one.decays());
    CHECK_FALSE(xonly.decays());
    CHECK(gauss.decays());
    CHECK(box.decays());
    CHECK_THROWS_AS(SymbolSpec::parse("blob"), tfloc::ConfigError);
    CHECK_THROWS_AS(SymbolSpec::parse("gauss:1,2,3"), tfloc::ConfigError);
    CHECK_THROWS_AS(SymbolSpec::parse("box:abc"), tfloc::ConfigError);
  }

  TEST_CASE("localization matrix matches the direct quadrature") {
    const Grid g = Grid::from_extent(1, 16, 8.0);
    const SampledSignal psi = tfloc::gaussian_window(g);
    const SampledSignal gamma = tfloc::gaussian_window(g);
    for (const char* sym : {"one", "gauss", "box", "xonly"}) {
      CAPTURE(sym);
      const LocOpMatrix op = tfloc::localization_matrix(SymbolSpec::parse(sym), psi, gamma);
      const Eigen::MatrixXcd want = oracle::localization_matrix(SymbolSpec::parse(sym), psi, gamma);
      CHECK(rel_frob(op.mat, want) < 1e-12);
    }
  }

  TEST_CASE("localization matrix with distinct windows matches the direct quadrature") {
    const Grid g = Grid::from_extent(1, 16, 8.0);
    const SampledSignal psi = tfloc::gaussian_window(g);
    const SampledSignal gamma = tfloc::hermite1_window(g);
    const LocOpMatrix op = tfloc::localization_matrix(SymbolSpec::parse("gauss"), psi, gamma);
    const Eigen::MatrixXcd want = oracle::localization_matrix(SymbolSpec::parse("gauss"), psi, gamma);
    CHECK(rel_frob(op.mat, want) < 1e-12);
  }

  TEST_CASE("real symbols with matched windows give hermitian operators") {
    const Grid g = Grid::from_extent(1, 48, 8.0);
    const SampledSignal w = tfloc::gaussian_window(g);
    for (const char* sym : {"gauss", "box"}) {
      const LocOpMatrix op = tfloc::localization_matrix(SymbolSpec::parse(sym), w, w);
      CHECK((op.mat - op.mat.adjoint()).norm() < 1e-12 * op.mat.norm());
    }
  }

  TEST_CASE("kernel route reproduces the direct assembly") {
    const Grid g = Grid::from_extent(1, 32, 8.0);
    const SampledSignal w = tfloc::gaussian_window(g);
    for (const char* sym : {"one", "gauss", "box", "xonly"}) {
      CAPTURE(sym);
      const LocOpMatrix direct = tfloc::localization_matrix(SymbolSpec::parse(sym), w, w);
      const LocOpMatrix via = tfloc::kernel_route_matrix(SymbolSpec::parse(sym), w, w);
      CHECK(rel_frob(via.mat, direct.mat) < 1e-12);
    }
  }

  TEST_CASE("sampled twisted symbol route agrees for decaying symbols") {
    const Grid g = Grid::from_extent(1, 64, 8.0);
    const SampledSignal w = tfloc::gaussian_window(g);
    for (const char* sym : {"gauss", "box"}) {
      CAPTURE(sym);
      const LocOpMatrix direct = tfloc::localization_matrix(SymbolSpec::parse(sym), w, w);
      const tfloc::PhaseSpaceFunction aw = tfloc::weyl_symbol(SymbolSpec::parse(sym), w, w);
      const SampledSignal ker = tfloc::weyl_kernel(aw);
      Eigen::MatrixXcd m(64, 64);
      for (int i = 0; i < 64; ++i) {
        for (int j = 0; j < 64; ++j) {
          m(i, j) = g.spacing(0) * ker.values[static_cast<std::size_t>(i) * 64 + j];
        }
      }
      // limited by the ambiguity guard alias at this spacing, not by rounding
      CHECK(rel_frob(m, direct.mat) < 2e-2);
    }
  }

  TEST_CASE("apply equals the matrix action with the quadrature weight") {
    const Grid g = Grid::from_extent(1, 32, 6.0);
    const SampledSignal w = tfloc::gaussian_window(g);
    std::mt19937_64 gen(3);
    const SampledSignal f = tfloc::random_coherent_mixture(g, 3, gen);
    const LocOpMatrix op = tfloc::localization_matrix(SymbolSpec::parse("gauss"), w, w);
    const SampledSignal got = tfloc::apply(op, f);
    Eigen::VectorXcd fv(32);
    for (int k = 0; k < 32; ++k) fv(k) = f.values[static_cast<std::size_t>(k)];
    const Eigen::VectorXcd want = op.mat * fv;
    double worst = 0.0;
    for (int k = 0; k < 32; ++k) {
      worst = std::max(worst, std::abs(got.values[static_cast<std::size_t>(k)] - want(k)));
    }
    CHECK(worst < 1e-12 * want.norm());
  }

  TEST_CASE("singular values match a full decomposition") {
    const Grid g = Grid::from_extent(1, 24, 6.0);
    std::mt19937_64 gen(19);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXcd m(24, 24);
    for (int i = 0; i < 24; ++i) {
      for (int j = 0; j < 24; ++j) m(i, j) = cplx(u(gen), u(gen));
    }
    SUBCASE("general matrix") {
      const LocOpMatrix op{g, m, "test"};
      const std::vector<double> got = tfloc::singular_values(op);
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
      REQUIRE(static_cast<int>(got.size()) == 24);
      for (int k = 0; k < 24; ++k) {
        CHECK(got[static_cast<std::size_t>(k)] ==
              doctest::Approx(svd.singularValues()(k)).epsilon(1e-10));
      }
    }
    SUBCASE("hermitian matrix uses the symmetric path consistently") {
      const Eigen::MatrixXcd hm = 0.5 * (m + m.adjoint().eval());
      const LocOpMatrix op{g, hm, "test"};
      const std::vector<double> got = tfloc::singular_values(op);
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(hm);
      for (int k = 0; k < 24; ++k) {
        CHECK(got[static_cast<std::size_t>(k)] ==
              doctest::Approx(svd.singularValues()(k)).epsilon(1e-10));
      }
    }
  }

  TEST_CASE("operator norm for the plain case is the top singular value") {
    const Grid g = Grid::from_extent(1, 32, 6.0);
    const SampledSignal w = tfloc::gaussian_window(g);
    const LocOpMatrix op = tfloc::localization_matrix(SymbolSpec::parse("gauss"), w, w);
    tfloc::MixedNormParams prm{tfloc::Exponent::finite(2.0), tfloc::Exponent::finite(2.0), {}};
    const double nrm = tfloc::operator_norm(op, prm, w, 4, 77);
    CHECK(nrm == doctest::Approx(tfloc::singular_values(op)[0]).epsilon(1e-12));
  }

  TEST_CASE("flat symbol spectra stay flat while decaying symbols drop") {
    const Grid g = Grid::from_extent(1, 64, 8.0);
    const SampledSignal w = tfloc::gaussian_window(g);
    const auto s_one = tfloc::singular_values(tfloc::localization_matrix(SymbolSpec::parse("one"), w, w));
    CHECK(s_one[20] / s_one[0] > 0.999);  // identity-like top half
    const auto s_gauss =
        tfloc::singular_values(tfloc::localization_matrix(SymbolSpec::parse("gauss"), w, w));
    CHECK(s_gauss[20] / s_gauss[0] < 1e-6);  // fast spectral decay
  }
}
