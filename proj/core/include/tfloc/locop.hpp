// Copyright 2026 tfloc authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#ifndef TFLOC_LOCOP_HPP
#define TFLOC_LOCOP_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tfloc/norms.hpp"
#include "tfloc/signal.hpp"
#include "tfloc/weights.hpp"

namespace tfloc {

enum class SymbolKind { constant, gaussian, indicator_box, x_only, user_sampled };

// Phase-space symbol. Analytic kinds can be evaluated anywhere; a
// user-sampled symbol lives on its grid pair and is zero elsewhere.
class SymbolSpec {
 public:
  static SymbolSpec constant(double value);
  // exp(-ax |x|^2 - axi |xi|^2)
  static SymbolSpec gaussian(double ax, double axi);
  // indicator of the centered box with the given half widths per variable
  static SymbolSpec indicator_box(double half_x, double half_xi);
  // exp(-ax |x|^2), constant in frequency
  static SymbolSpec x_only(double ax);
  static SymbolSpec user_sampled(PhaseSpaceFunction samples);
  // "one", "gauss", "box", "xonly" with optional :params, e.g. "gauss:3,3"
  static SymbolSpec parse(const std::string& text);

  SymbolKind kind() const { return kind_; }
  bool analytic() const { return kind_ != SymbolKind::user_sampled; }
  // Whether the symbol decays in every phase-space direction, so its windowed
  // spectrogram is expected to pass the off-center decay checks.
  bool decays() const;
  std::string id() const;

  // Value at a point; coordinates may lie off any grid. User-sampled symbols
  // return the stored sample at (numerically) matching nodes and 0 elsewhere.
  cplx value_at(std::span<const double> x, std::span<const double> xi) const;
  // Samples on a phase grid pair (x centers given explicitly to allow
  // positions outside a signal grid).
  const std::optional<PhaseSpaceFunction>& samples() const { return samples_; }

 private:
  SymbolSpec(SymbolKind k, double p1, double p2);
  SymbolKind kind_;
  double par1_ = 0.0, par2_ = 0.0;
  std::optional<PhaseSpaceFunction> samples_;
};

// Dense matrix of a discretized operator on the signal grid, acting on sample
// vectors. provenance identifies symbol/windows/grid for cross-checking
// derived artifacts against the operator they came from.
struct LocOpMatrix {
  Grid grid;
  Eigen::MatrixXcd mat;
  std::string provenance;
};

// Time-frequency localization operator with symbol a, analysis window psi and
// synthesis window gamma:
//   L f = (h dxi)^d sum_{lambda} a(lambda) V_psi f(lambda) M_xi T_x gamma,
// the quadrature of  integral a(x,xi) <f, M_xi T_x psi> M_xi T_x gamma dx dxi.
// Translation centers x run over the signal grid extended beyond its edges by
// the sampled window mass radius; analytic symbols are evaluated there, while
// user-sampled symbols contribute zero off their grid.
LocOpMatrix localization_matrix(const SymbolSpec& a, const SampledSignal& psi,
                                const SampledSignal& gamma);

SampledSignal apply(const LocOpMatrix& op, const SampledSignal& f);
// Singular values in descending order. Uses a Hermitian eigensolve when the
// matrix is Hermitian to rounding (the |eigenvalues| are then the singular
// values), a full SVD otherwise.
std::vector<double> singular_values(const LocOpMatrix& op);
double spectral_norm(const LocOpMatrix& op);

// Spreading of the symbol against the cross ambiguity of the windows, on the
// standard phase grid with zero extension:
//   a^w(z) = (h dxi)^d sum_{nodes w} a(w) W(gamma, psi)(z - w).
// Wigner samples with |frequency| > pi/(2h) are zeroed first: the quadrature
// Wigner is periodic in frequency with period pi/h, and the guard removes the
// alias replica (the true window ambiguity is far below rounding at the cut).
PhaseSpaceFunction weyl_symbol(const SymbolSpec& a, const SampledSignal& psi,
                               const SampledSignal& gamma);

// Integral kernel from a sampled twisted symbol (dim 1 signals only):
//   k(x, y) = (2 pi)^{-1} int a^w((x+y)/2, eta) e^{+i eta (x-y)} d eta,
// so that (L f)(x) = int k(x, y) f(y) dy directly. Midpoint values come from
// trigonometric interpolation in the first variable; the eta integral is the
// quadrature on the sampled frequency grid, which makes k periodic in x - y
// with period 2T (entries use the principal offsets). Dim-2 signal on (x, y).
SampledSignal weyl_kernel(const PhaseSpaceFunction& aw);

// Kernel of the discrete localization operator evaluated through the
// spreading route on a half-step lattice (dim 1): symbol comb -> a^w on the
// (h/2, dxi/2) lattice over extended ranges -> midpoint kernel formula. This
// reproduces localization_matrix at rounding level for every symbol kind.
struct OperatorKernel {
  SampledSignal kernel;  // dim-2 grid, axes (x, y), spacing (h, h)
  std::string provenance;
};
OperatorKernel operator_kernel(const SymbolSpec& a, const SampledSignal& psi,
                               const SampledSignal& gamma);
// Matrix with entries h * k(x_row, y_col) built from operator_kernel.
LocOpMatrix kernel_route_matrix(const SymbolSpec& a, const SampledSignal& psi,
                                const SampledSignal& gamma);

// Estimate of the operator norm between weighted modulation-space norms:
// max over seeded coherent-mixture trials of |L f| / |f| in the given norm.
// For the plain (2, 2) unweighted case the exact spectral norm is returned.
double operator_norm(const LocOpMatrix& op, const MixedNormParams& prm,
                     const SampledSignal& window, int trials, std::uint64_t seed);

// Off-center decay of the windowed symbol spectrogram: for each radius R,
// the statistic  sup_{|zeta| <= R} |V_{G} a(z, zeta)| e^{lambda omega(|(z,zeta)|)}
// is scanned over phase-space points z (Gaussian window G, stride-decimated)
// and summarized by its value on the edge shell versus its peak.
struct Decay2m2Report {
  std::vector<double> radii;
  std::vector<double> edge;  // per radius: max statistic on the edge shell
  std::vector<double> peak;  // per radius: max statistic anywhere
  int stride = 1;
  double edge_threshold = 0.9;
};
Decay2m2Report check_2m2(const SymbolSpec& a, const Grid& signal_grid,
                         const WeightFunction& omega, double lambda,
                         std::span<const double> radii, int stride);

}  // namespace tfloc

#endif
