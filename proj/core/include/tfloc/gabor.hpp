// Copyright 2026 tfloc authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#ifndef TFLOC_GABOR_HPP
#define TFLOC_GABOR_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "tfloc/locop.hpp"
#include "tfloc/signal.hpp"

namespace tfloc {

// Gabor system on a dim-1 grid: atoms phi_{j,l}(x_k) = w(x_k - alpha j)
// exp(i beta l x_k) with lattice steps alpha = p*h and beta = q*dxi, so both
// shifts land exactly on grid nodes / grid frequencies. Translations j cover
// every shift whose atom still has mass on the grid; modulations l run over
// [-n/(2q), n/(2q)), the distinct values mod the grid bandwidth.
struct GaborSystem {
  Grid grid;
  SampledSignal window;
  int p = 1, q = 1;
  int jmin = 0, jmax = -1;  // inclusive translation range
  int lcount = 0;           // modulations per translation, l in [-lcount/2, lcount/2)
  double alpha = 0.0, beta = 0.0;
};

// Requires grid dim 1, p,q >= 1 and n divisible by 2q.
GaborSystem make_gabor_system(const SampledSignal& window, int p, int q);

SampledSignal gabor_atom(const GaborSystem& gs, int j, int l);
int gabor_atom_count(const GaborSystem& gs);

// Frame operator audit. S = sum_atoms h * atom atom^H; the frame constant is
// the mean of Re S_kk over the central half of the diagonal and the defect is
// ||S - A I||_2 / A. Small defect means the system is close to a tight frame
// with bound A; redundancy is 2*pi / (alpha*beta) = n / (p*q).
struct TightnessReport {
  double frame_constant = 0.0;
  double defect = 0.0;
  double redundancy = 0.0;
  int atom_count = 0;
};
TightnessReport tightness_defect(const GaborSystem& gs);

// Expansion of an operator kernel over the tensor system
// Phi_{(j1,m),(j2,m')}(x,y) = phi_{j1,m}(x) conj(phi_{j2,m'}(y)): coefficients
//   c(m, m') = h^2 sum_{x,y} k(x,y) conj(phi_{j1,m}(x)) phi_{j2,m'}(y),
// stored per surviving translation pair. Pairs whose rigorous bound
// lcount^2 h^2 |w_{j1}|^T |K| |w_{j2}| falls below prune_rel times the largest
// such bound are dropped; their possible coefficient mass is accumulated in
// the slack fields (raw l1, and with atom-norm factors for the nuclear bound).
struct GaborCoeffBlock {
  int j1 = 0, j2 = 0;
  Eigen::MatrixXcd c;  // lcount x lcount, row = m index, col = m'
};

struct GaborPairCoefficients {
  int p = 1, q = 1, lcount = 0, jmin = 0;
  double alpha = 0.0, beta = 0.0;
  double frame_constant = 0.0;  // 1-d frame bound A; tensor system has A^2
  std::vector<GaborCoeffBlock> blocks;
  std::vector<double> atom_norm;  // quadrature L2 norm, indexed j - jmin
  double prune_slack_l1 = 0.0;
  double prune_slack_nuclear = 0.0;
  std::string provenance;  // copied from the expanded operator
};

GaborPairCoefficients kernel_gabor_coefficients(const LocOpMatrix& op, const GaborSystem& gs,
                                                double prune_rel);

// Sum of singular values of the matrix.
double trace_norm(const LocOpMatrix& op);

// Upper bound for trace_norm from the expansion: A^{-2} (sum |c| nu_{j1} nu_{j2}
// + nuclear slack). Throws std::invalid_argument when co was not built from op.
double nuclear_bound(const GaborPairCoefficients& co, const LocOpMatrix& op);

// l1 mass of coefficients whose lattice-index radius max(|j1|, |j2|, |m|,
// |m'|) reaches radius (in lattice steps), plus the raw prune slack.
double coefficient_l1_tail(const GaborPairCoefficients& co, double radius);

// Rebuilds the matrix from the coefficient expansion and returns the relative
// Frobenius error against op.mat.
double reconstruction_error(const GaborPairCoefficients& co, const GaborSystem& gs,
                            const LocOpMatrix& op);

}  // namespace tfloc

#endif
