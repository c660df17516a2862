// Copyright 2026 tfloc authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "tfloc/errors.hpp"
#include "tfloc/io.hpp"
#include "tfloc/signal.hpp"

namespace fs = std::filesystem;
using tfloc::cplx;
using tfloc::Grid;
using tfloc::PhaseSpaceFunction;
using tfloc::SampledSignal;

namespace {

std::string temp_path(const char* stem) {
  return (fs::temp_directory_path() / (std::string("tfloc_test_") + stem + ".tfb")).string();
}

struct FileGuard {
  std::string path;
  ~FileGuard() {
    std::error_code ec;
    fs::remove(path, ec);
  }
};

SampledSignal random_signal(const Grid& g, std::uint64_t seed) {
  SampledSignal f(g);
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (cplx& v : f.values) v = cplx(u(gen), u(gen));
  return f;
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("signal containers roundtrip exactly") {
    const std::string path = temp_path("sig1");
    FileGuard guard{path};
    SUBCASE("dim 1") {
      const SampledSignal f = random_signal(Grid::from_extent(1, 40, 5.0), 11);
      tfloc::write_signal(path, f);
      const SampledSignal back = tfloc::read_signal(path);
      REQUIRE(back.grid.dim() == 1);
      REQUIRE(back.grid.n() == 40);
      CHECK(back.grid.spacing(0) == f.grid.spacing(0));
      REQUIRE(back.values.size() == f.values.size());
      for (std::size_t i = 0; i < f.values.size(); ++i) CHECK(back.values[i] == f.values[i]);
    }
    SUBCASE("dim 2") {
      const SampledSignal f = random_signal(Grid(2, 12, {0.5, 0.25}), 12);
      tfloc::write_signal(path, f);
      const SampledSignal back = tfloc::read_signal(path);
      REQUIRE(back.grid.dim() == 2);
      CHECK(back.grid.spacing(0) == 0.5);
      CHECK(back.grid.spacing(1) == 0.25);
      REQUIRE(back.values.size() == f.values.size());
      for (std::size_t i = 0; i < f.values.size(); ++i) CHECK(back.values[i] == f.values[i]);
    }
  }

  TEST_CASE("phase-space containers roundtrip exactly") {
    const std::string path = temp_path("ps1");
    FileGuard guard{path};
    const Grid xg = Grid::from_extent(1, 16, 4.0);
    PhaseSpaceFunction F(xg, xg.dual());
    std::mt19937_64 gen(13);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (cplx& v : F.values) v = cplx(u(gen), u(gen));
    tfloc::write_phase_space(path, F);
    const PhaseSpaceFunction back = tfloc::read_phase_space(path);
    CHECK(back.xgrid.n() == 16);
    CHECK(back.xigrid.spacing(0) == xg.dual().spacing(0));
    REQUIRE(back.values.size() == F.values.size());
    for (std::size_t i = 0; i < F.values.size(); ++i) CHECK(back.values[i] == F.values[i]);
  }

  TEST_CASE("malformed containers are rejected") {
    const std::string path = temp_path("bad");
    FileGuard guard{path};
    const SampledSignal f = random_signal(Grid::from_extent(1, 8, 2.0), 14);

    SUBCASE("missing file") {
      CHECK_THROWS_AS(tfloc::read_signal(path + ".does_not_exist"), tfloc::Error);
    }
    SUBCASE("bad magic") {
      tfloc::write_signal(path, f);
      std::fstream s(path, std::ios::in | std::ios::out | std::ios::binary);
      s.seekp(0);
      s.write("NOTMAGIC", 8);
      s.close();
      CHECK_THROWS_AS(tfloc::read_signal(path), tfloc::Error);
    }
    SUBCASE("truncated payload") {
      tfloc::write_signal(path, f);
      const auto full = fs::file_size(path);
      fs::resize_file(path, full - 9);
      CHECK_THROWS_AS(tfloc::read_signal(path), tfloc::Error);
    }
    SUBCASE("wrong kind for the reader") {
      tfloc::write_signal(path, f);
      CHECK_THROWS_AS(tfloc::read_phase_space(path), tfloc::Error);
      const PhaseSpaceFunction F(f.grid, f.grid.dual());
      tfloc::write_phase_space(path, F);
      CHECK_THROWS_AS(tfloc::read_signal(path), tfloc::Error);
    }
  }
}
