// Copyright 2026 tfloc authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "tfloc/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "tfloc/errors.hpp"

namespace tfloc {

Grid::Grid(int dim, int n, const std::array<double, 2>& spacing)
    : dim_(dim), n_(n), spacing_(spacing) {
  if (dim != 1 && dim != 2) {
    throw std::invalid_argument("Grid: dim must be 1 or 2, got " + std::to_string(dim));
  }
  if (n < 8 || n % 2 != 0) {
    throw std::invalid_argument("Grid: n must be even and >= 8, got " + std::to_string(n));
  }
  for (int a = 0; a < dim; ++a) {
    if (!(spacing[a] > 0.0) || !std::isfinite(spacing[a])) {
      throw std::invalid_argument("Grid: spacing must be positive and finite");
    }
  }
  if (dim == 1) spacing_[1] = 0.0;
}

Grid Grid::uniform(int dim, int n, double spacing) {
  return Grid(dim, n, {spacing, spacing});
}

Grid Grid::from_extent(int dim, int n, double half_extent) {
  if (!(half_extent > 0.0)) {
    throw std::invalid_argument("Grid: half extent must be positive");
  }
  double h = 2.0 * half_extent / n;
  return Grid(dim, n, {h, h});
}

double Grid::spacing(int axis) const {
  if (axis < 0 || axis >= dim_) throw std::invalid_argument("Grid::spacing: bad axis");
  return spacing_[axis];
}

double Grid::freq_spacing(int axis) const {
  return 2.0 * std::numbers::pi / (n_ * spacing(axis));
}

double Grid::half_extent(int axis) const { return 0.5 * n_ * spacing(axis); }

double Grid::node(int axis, int index) const {
  return (index - n_ / 2) * spacing(axis);
}

std::int64_t Grid::size() const {
  std::int64_t s = 1;
  for (int a = 0; a < dim_; ++a) s *= n_;
  return s;
}

double Grid::cell_measure() const {
  double m = 1.0;
  for (int a = 0; a < dim_; ++a) m *= spacing_[a];
  return m;
}

Grid Grid::dual() const {
  std::array<double, 2> s = {0.0, 0.0};
  for (int a = 0; a < dim_; ++a) s[a] = freq_spacing(a);
  return Grid(dim_, n_, s);
}

bool Grid::operator==(const Grid& other) const {
  if (dim_ != other.dim_ || n_ != other.n_) return false;
  for (int a = 0; a < dim_; ++a) {
    if (spacing_[a] != other.spacing_[a]) return false;
  }
  return true;
}

std::int64_t Grid::flat(const std::array<int, 2>& idx) const {
  std::int64_t f = 0;
  for (int a = 0; a < dim_; ++a) f = f * n_ + idx[a];
  return f;
}

std::array<int, 2> Grid::unflat(std::int64_t flat_index) const {
  std::array<int, 2> idx = {0, 0};
  for (int a = dim_ - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(flat_index % n_);
    flat_index /= n_;
  }
  return idx;
}

void require_same_grid(const Grid& a, const Grid& b, const char* context) {
  if (a != b) {
    throw GridMismatch(std::string(context) + ": grids differ (dim " +
                       std::to_string(a.dim()) + "/" + std::to_string(b.dim()) +
                       ", n " + std::to_string(a.n()) + "/" + std::to_string(b.n()) + ")");
  }
}

}  // namespace tfloc
