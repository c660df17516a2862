// Copyright 2026 tfloc authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "tfloc/io.hpp"

#include <array>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "tfloc/errors.hpp"

namespace tfloc {

namespace {

constexpr char kMagic[8] = {'T', 'F', 'L', 'O', 'C', 'B', '1', '\0'};
constexpr std::uint32_t kKindSignal = 1;
constexpr std::uint32_t kKindPhase = 2;

void put(std::ofstream& out, const void* p, std::size_t len) {
  out.write(static_cast<const char*>(p), static_cast<std::streamsize>(len));
}

void get(std::ifstream& in, void* p, std::size_t len, const std::string& what) {
  in.read(static_cast<char*>(p), static_cast<std::streamsize>(len));
  if (in.gcount() != static_cast<std::streamsize>(len)) {
    throw Error("truncated container while reading " + what);
  }
}

void write_grid(std::ofstream& out, const Grid& g) {
  const std::int32_t dim = g.dim();
  const std::int32_t n = g.n();
  std::array<double, 2> sp = {g.spacing(0), dim > 1 ? g.spacing(1) : 0.0};
  put(out, &dim, 4);
  put(out, &n, 4);
  put(out, sp.data(), 16);
}

Grid read_grid(std::ifstream& in) {
  std::int32_t dim = 0, n = 0;
  std::array<double, 2> sp = {0.0, 0.0};
  get(in, &dim, 4, "grid dim");
  get(in, &n, 4, "grid size");
  get(in, sp.data(), 16, "grid spacing");
  try {
    return Grid(dim, n, sp);
  } catch (const std::invalid_argument& e) {
    throw Error(std::string("container holds an invalid grid: ") + e.what());
  }
}

void write_values(std::ofstream& out, const std::vector<cplx>& v) {
  const std::uint64_t count = v.size();
  put(out, &count, 8);
  for (const cplx& z : v) {
    const double re = z.real(), im = z.imag();
    put(out, &re, 8);
    put(out, &im, 8);
  }
}

std::vector<cplx> read_values(std::ifstream& in, std::uint64_t expected) {
  std::uint64_t count = 0;
  get(in, &count, 8, "value count");
  if (count != expected) throw Error("container value count does not match its grid");
  std::vector<cplx> v(static_cast<std::size_t>(count));
  for (std::uint64_t i = 0; i < count; ++i) {
    double re = 0.0, im = 0.0;
    get(in, &re, 8, "values");
    get(in, &im, 8, "values");
    v[static_cast<std::size_t>(i)] = cplx(re, im);
  }
  return v;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path + " for writing");
  return out;
}

std::ifstream open_in(const std::string& path, std::uint32_t want_kind) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  char magic[8];
  get(in, magic, 8, "magic");
  if (std::memcmp(magic, kMagic, 8) != 0) throw Error(path + " is not a tfloc container");
  std::uint32_t kind = 0;
  get(in, &kind, 4, "kind");
  if (kind != want_kind) throw Error(path + " holds a different payload kind");
  return in;
}

}  // namespace

void write_signal(const std::string& path, const SampledSignal& f) {
  std::ofstream out = open_out(path);
  put(out, kMagic, 8);
  put(out, &kKindSignal, 4);
  write_grid(out, f.grid);
  write_values(out, f.values);
  if (!out) throw Error("write to " + path + " failed");
}

SampledSignal read_signal(const std::string& path) {
  std::ifstream in = open_in(path, kKindSignal);
  Grid g = read_grid(in);
  return SampledSignal(g, read_values(in, static_cast<std::uint64_t>(g.size())));
}

void write_phase_space(const std::string& path, const PhaseSpaceFunction& F) {
  std::ofstream out = open_out(path);
  put(out, kMagic, 8);
  put(out, &kKindPhase, 4);
  write_grid(out, F.xgrid);
  write_grid(out, F.xigrid);
  write_values(out, F.values);
  if (!out) throw Error("write to " + path + " failed");
}

PhaseSpaceFunction read_phase_space(const std::string& path) {
  std::ifstream in = open_in(path, kKindPhase);
  Grid xg = read_grid(in);
  Grid xig = read_grid(in);
  return PhaseSpaceFunction(
      xg, xig, read_values(in, static_cast<std::uint64_t>(xg.size() * xig.size())));
}

}  // namespace tfloc
