// Copyright 2026 tfloc authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#ifndef TFLOC_NORMS_HPP
#define TFLOC_NORMS_HPP

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "tfloc/signal.hpp"
#include "tfloc/weights.hpp"

namespace tfloc {

// Lebesgue exponent: a real >= 1 or infinity.
class Exponent {
 public:
  static Exponent inf();
  static Exponent finite(double p);
  static Exponent parse(const std::string& text);  // "1", "2.5", "inf"

  bool is_inf() const { return inf_; }
  double value() const;  // throws if infinite
  std::string str() const;
  bool operator<=(const Exponent& o) const;

 private:
  Exponent(bool inf, double v) : inf_(inf), value_(v) {}
  bool inf_;
  double value_;
};

struct MixedNormParams {
  Exponent p;  // inner exponent, position variable
  Exponent q;  // outer exponent, frequency variable
  std::vector<WeightSpec> weights;  // pointwise product of factors; empty = 1
};

// Weighted mixed norm of a phase-space array:
//   ( sum_xi dxi^d ( sum_x h^d (|F(x,xi)| w(x,xi))^p )^{q/p} )^{1/q},
// with sup in place of a sum for infinite exponents.
double mixed_norm(const PhaseSpaceFunction& F, const MixedNormParams& prm);

// mixed_norm of stft(f, window).
double modulation_norm(const SampledSignal& f, const SampledSignal& window,
                       const MixedNormParams& prm);

// Streams STFT slices V(z, .) of f (any dim) against the window, visiting z
// nodes whose per-axis index is divisible by stride. The slice spans the dual
// grid in row-major order. Avoids materializing n^{2 dim} arrays.
void scan_stft_slices(const SampledSignal& f, const SampledSignal& window, int stride,
                      const std::function<void(std::int64_t zflat, std::span<const cplx> slice)>& fn);

// sup over visited z and all zeta of |V(z, zeta)| * prod(weights at (z, zeta)),
// computed streaming. A stride > 1 under-estimates the supremum.
double modulation_sup_norm(const SampledSignal& f, const SampledSignal& window,
                           const std::vector<WeightSpec>& weights, int stride);

// Weighted frequency-integrated profile of a phase-space array:
//   profile(x) = e^{lambda omega(|x|)} * dxi^d * sum_xi |F(x, xi)| e^{lambda omega(|xi|)}.
// Edge nodes are those with scaled sup radius max_a |x_a| / X_a >= edge_threshold,
// where X_a is the largest node coordinate on axis a.
struct M01Profile {
  std::vector<double> scaled_radius;  // per visited node
  std::vector<double> value;          // per visited node
  double peak = 0.0;                  // max over all visited nodes
  double edge_statistic = 0.0;        // max over edge nodes
  double edge_threshold = 0.9;
  int stride = 1;
};

M01Profile m01_profile(const PhaseSpaceFunction& F, const WeightFunction& omega, double lambda);
// Same profile for the STFT of f (window w), streamed with the given z stride.
M01Profile m01_profile_streamed(const SampledSignal& f, const SampledSignal& window,
                                const WeightFunction& omega, double lambda, int stride);

// Norm comparison for a nested pair of modulation spaces: the "strong" side
// must have smaller exponents and a larger weight exponent. Throws
// std::invalid_argument when the parameters do not nest.
struct InclusionParams {
  Exponent p_strong, q_strong;
  Exponent p_weak, q_weak;
  WeightFunction omega;
  double lambda_strong = 0.0;
  double lambda_weak = 0.0;
};

struct InclusionReport {
  double strong_norm = 0.0;
  double weak_norm = 0.0;
  double ratio = 0.0;  // weak / strong
};

InclusionReport check_inclusion(const SampledSignal& f, const SampledSignal& window,
                                const InclusionParams& prm);

}  // namespace tfloc

#endif
