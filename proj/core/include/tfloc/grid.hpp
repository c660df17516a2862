// Copyright 2026 tfloc authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#ifndef TFLOC_GRID_HPP
#define TFLOC_GRID_HPP

#include <array>
#include <cstdint>

namespace tfloc {

// Centered uniform lattice in dim (1 or 2) variables, n nodes per axis.
// Node k on axis a sits at (k - n/2) * spacing(a), k in [0, n). The matching
// frequency lattice has spacing 2*pi / (n * spacing(a)) per axis, so one
// full period of the discrete transform is covered exactly.
class Grid {
 public:
  Grid(int dim, int n, const std::array<double, 2>& spacing);

  static Grid uniform(int dim, int n, double spacing);
  // Half-extent T per axis: spacing = 2*T/n, nodes cover [-T, T).
  static Grid from_extent(int dim, int n, double half_extent);

  int dim() const { return dim_; }
  int n() const { return n_; }
  double spacing(int axis) const;
  double freq_spacing(int axis) const;
  double half_extent(int axis) const;  // n/2 * spacing
  double node(int axis, int index) const;
  std::int64_t size() const;       // n^dim
  double cell_measure() const;     // product of spacings

  // Grid of the matching frequency lattice. Involutive: dual(dual(g)) == g.
  Grid dual() const;

  bool operator==(const Grid& other) const;
  bool operator!=(const Grid& other) const { return !(*this == other); }

  // Flat row-major index of a multi-index; axis 0 is the slowest.
  std::int64_t flat(const std::array<int, 2>& idx) const;
  std::array<int, 2> unflat(std::int64_t flat_index) const;

 private:
  int dim_;
  int n_;
  std::array<double, 2> spacing_;
};

// Throws GridMismatch unless the two grids are identical.
void require_same_grid(const Grid& a, const Grid& b, const char* context);

}  // namespace tfloc

#endif
