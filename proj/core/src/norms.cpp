// Copyright 2026 tfloc authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "tfloc/norms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "tfloc/errors.hpp"
#include "tfloc/fft.hpp"
#include "tfloc/transforms.hpp"

namespace tfloc {

Exponent Exponent::inf() { return Exponent(true, 0.0); }

Exponent Exponent::finite(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw std::invalid_argument("Exponent: need 1 <= p < inf");
  }
  return Exponent(false, p);
}

Exponent Exponent::parse(const std::string& text) {
  if (text == "inf" || text == "Inf" || text == "INF") return inf();
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return finite(v);
  } catch (const std::invalid_argument&) {
    throw ConfigError("bad exponent: '" + text + "'");
  } catch (const std::out_of_range&) {
    throw ConfigError("bad exponent: '" + text + "'");
  }
}

double Exponent::value() const {
  if (inf_) throw std::logic_error("Exponent::value on inf");
  return value_;
}

std::string Exponent::str() const {
  if (inf_) return "inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value_);
  return buf;
}

bool Exponent::operator<=(const Exponent& o) const {
  if (o.inf_) return true;
  if (inf_) return false;
  return value_ <= o.value_;
}

namespace {

// Per-node weight products, split into separable per-block factors plus any
// full-radius factors that need both coordinates.
class WeightEvaluator {
 public:
  WeightEvaluator(const std::vector<WeightSpec>& specs, const Grid& xg, const Grid& xig) {
    std::int64_t nx = xg.size(), nxi = xig.size();
    x_factor_.assign(static_cast<std::size_t>(nx), 1.0);
    xi_factor_.assign(static_cast<std::size_t>(nxi), 1.0);
    x_r2_.resize(static_cast<std::size_t>(nx));
    xi_r2_.resize(static_cast<std::size_t>(nxi));
    for (std::int64_t i = 0; i < nx; ++i) x_r2_[static_cast<std::size_t>(i)] = radius2(xg, i);
    for (std::int64_t i = 0; i < nxi; ++i) xi_r2_[static_cast<std::size_t>(i)] = radius2(xig, i);
    for (const WeightSpec& s : specs) {
      if (s.exponent_scale() == 0.0) continue;
      if (s.block == WeightBlock::first) {
        for (std::int64_t i = 0; i < nx; ++i) {
          x_factor_[static_cast<std::size_t>(i)] *=
              s.eval_radius(std::sqrt(x_r2_[static_cast<std::size_t>(i)]));
        }
      } else if (s.block == WeightBlock::second) {
        for (std::int64_t i = 0; i < nxi; ++i) {
          xi_factor_[static_cast<std::size_t>(i)] *=
              s.eval_radius(std::sqrt(xi_r2_[static_cast<std::size_t>(i)]));
        }
      } else {
        full_.push_back(s);
      }
    }
  }

  bool separable() const { return full_.empty(); }
  double x_part(std::int64_t xflat) const { return x_factor_[static_cast<std::size_t>(xflat)]; }
  double xi_part(std::int64_t xiflat) const { return xi_factor_[static_cast<std::size_t>(xiflat)]; }

  double operator()(std::int64_t xflat, std::int64_t xiflat) const {
    double w = x_factor_[static_cast<std::size_t>(xflat)] *
               xi_factor_[static_cast<std::size_t>(xiflat)];
    if (!full_.empty()) {
      double r = std::sqrt(x_r2_[static_cast<std::size_t>(xflat)] +
                           xi_r2_[static_cast<std::size_t>(xiflat)]);
      for (const WeightSpec& s : full_) w *= s.eval_radius(r);
    }
    return w;
  }

 private:
  static double radius2(const Grid& g, std::int64_t flat) {
    auto idx = g.unflat(flat);
    double r2 = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
      double c = g.node(a, idx[static_cast<std::size_t>(a)]);
      r2 += c * c;
    }
    return r2;
  }

  std::vector<double> x_factor_, xi_factor_, x_r2_, xi_r2_;
  std::vector<WeightSpec> full_;
};

}  // namespace

double mixed_norm(const PhaseSpaceFunction& F, const MixedNormParams& prm) {
  const std::int64_t nx = F.xgrid.size(), nxi = F.xigrid.size();
  const double cx = F.xgrid.cell_measure(), cxi = F.xigrid.cell_measure();
  WeightEvaluator w(prm.weights, F.xgrid, F.xigrid);

  // Inner integral runs over x for each fixed xi; x is the slow index.
  std::vector<double> inner(static_cast<std::size_t>(nxi), 0.0);
  if (prm.p.is_inf()) {
    for (std::int64_t x = 0; x < nx; ++x) {
      for (std::int64_t xi = 0; xi < nxi; ++xi) {
        double v = std::abs(F.at(x, xi)) * w(x, xi);
        double& m = inner[static_cast<std::size_t>(xi)];
        if (v > m) m = v;
      }
    }
  } else {
    double pv = prm.p.value();
    for (std::int64_t x = 0; x < nx; ++x) {
      for (std::int64_t xi = 0; xi < nxi; ++xi) {
        double v = std::abs(F.at(x, xi)) * w(x, xi);
        inner[static_cast<std::size_t>(xi)] += std::pow(v, pv);
      }
    }
    double inv = 1.0 / pv;
    for (double& v : inner) v = std::pow(cx * v, inv);
  }

  if (prm.q.is_inf()) {
    double m = 0.0;
    for (double v : inner) m = std::max(m, v);
    return m;
  }
  double qv = prm.q.value(), acc = 0.0;
  for (double v : inner) acc += std::pow(v, qv);
  return std::pow(cxi * acc, 1.0 / qv);
}

double modulation_norm(const SampledSignal& f, const SampledSignal& window,
                       const MixedNormParams& prm) {
  PhaseSpaceFunction F = stft(f, window);
  return mixed_norm(F, prm);
}

void scan_stft_slices(const SampledSignal& f, const SampledSignal& window, int stride,
                      const std::function<void(std::int64_t, std::span<const cplx>)>& fn) {
  require_same_grid(f.grid, window.grid, "scan_stft_slices");
  if (stride < 1) throw std::invalid_argument("scan_stft_slices: stride >= 1");
  const Grid& g = f.grid;
  const int n = g.n(), dim = g.dim();
  const std::int64_t N = g.size();
  const double cell = g.cell_measure();
  std::vector<cplx> buf(static_cast<std::size_t>(N));

  if (dim == 1) {
    for (int j = 0; j < n; j += stride) {
      for (int k = 0; k < n; ++k) {
        int wi = k - j + n / 2;
        buf[static_cast<std::size_t>(k)] =
            (wi >= 0 && wi < n) ? f.values[static_cast<std::size_t>(k)] *
                                      std::conj(window.values[static_cast<std::size_t>(wi)])
                                : cplx(0.0);
      }
      fft::centered_forward(buf.data(), n);
      for (cplx& v : buf) v *= cell;
      fn(j, std::span<const cplx>(buf));
    }
  } else {
    for (int j0 = 0; j0 < n; j0 += stride) {
      for (int j1 = 0; j1 < n; j1 += stride) {
        for (int k0 = 0; k0 < n; ++k0) {
          int w0 = k0 - j0 + n / 2;
          for (int k1 = 0; k1 < n; ++k1) {
            int w1 = k1 - j1 + n / 2;
            std::size_t ki = static_cast<std::size_t>(k0) * n + k1;
            bool in = w0 >= 0 && w0 < n && w1 >= 0 && w1 < n;
            buf[ki] = in ? f.values[ki] *
                               std::conj(window.values[static_cast<std::size_t>(w0) * n + w1])
                         : cplx(0.0);
          }
        }
        fft::centered_forward_nd(buf.data(), n, 2);
        for (cplx& v : buf) v *= cell;
        fn(static_cast<std::int64_t>(j0) * n + j1, std::span<const cplx>(buf));
      }
    }
  }
}

double modulation_sup_norm(const SampledSignal& f, const SampledSignal& window,
                           const std::vector<WeightSpec>& weights, int stride) {
  WeightEvaluator w(weights, f.grid, f.grid.dual());
  double sup = 0.0;
  scan_stft_slices(f, window, stride,
                   [&](std::int64_t zflat, std::span<const cplx> slice) {
                     for (std::int64_t i = 0; i < static_cast<std::int64_t>(slice.size()); ++i) {
                       double v = std::abs(slice[static_cast<std::size_t>(i)]) * w(zflat, i);
                       if (v > sup) sup = v;
                     }
                   });
  return sup;
}

namespace {

// Shared accumulation for the frequency-integrated profiles.
struct ProfileAccumulator {
  ProfileAccumulator(const Grid& xg, const Grid& xig, const WeightFunction& omega,
                     double lambda, int stride)
      : xgrid(xg), omega(omega), lambda(lambda) {
    result.stride = stride;
    xi_weight.resize(static_cast<std::size_t>(xig.size()));
    xi_cell = xig.cell_measure();
    for (std::int64_t i = 0; i < xig.size(); ++i) {
      auto idx = xig.unflat(i);
      double r2 = 0.0;
      for (int a = 0; a < xig.dim(); ++a) {
        double c = xig.node(a, idx[static_cast<std::size_t>(a)]);
        r2 += c * c;
      }
      xi_weight[static_cast<std::size_t>(i)] =
          lambda == 0.0 ? 1.0 : std::exp(lambda * omega(std::sqrt(r2)));
    }
    for (int a = 0; a < xg.dim(); ++a) {
      // Largest |coordinate| on the axis: the negative end of a centered grid.
      axis_max[a] = std::abs(xg.node(a, 0));
    }
  }

  void add_slice(std::int64_t zflat, std::span<const cplx> slice) {
    double acc = 0.0;
    for (std::size_t i = 0; i < slice.size(); ++i) acc += std::abs(slice[i]) * xi_weight[i];
    acc *= xi_cell;
    auto idx = xgrid.unflat(zflat);
    double r2 = 0.0, scaled = 0.0;
    for (int a = 0; a < xgrid.dim(); ++a) {
      double c = xgrid.node(a, idx[static_cast<std::size_t>(a)]);
      r2 += c * c;
      scaled = std::max(scaled, std::abs(c) / axis_max[a]);
    }
    double v = acc * (lambda == 0.0 ? 1.0 : std::exp(lambda * omega(std::sqrt(r2))));
    result.scaled_radius.push_back(scaled);
    result.value.push_back(v);
    if (v > result.peak) result.peak = v;
    if (scaled >= result.edge_threshold && v > result.edge_statistic) result.edge_statistic = v;
  }

  Grid xgrid;
  const WeightFunction& omega;
  double lambda;
  double xi_cell = 0.0;
  std::vector<double> xi_weight;
  double axis_max[2] = {1.0, 1.0};
  M01Profile result;
};

}  // namespace

M01Profile m01_profile(const PhaseSpaceFunction& F, const WeightFunction& omega, double lambda) {
  ProfileAccumulator acc(F.xgrid, F.xigrid, omega, lambda, 1);
  std::vector<cplx> row(static_cast<std::size_t>(F.xigrid.size()));
  for (std::int64_t x = 0; x < F.xgrid.size(); ++x) {
    for (std::int64_t xi = 0; xi < F.xigrid.size(); ++xi) row[static_cast<std::size_t>(xi)] = F.at(x, xi);
    acc.add_slice(x, std::span<const cplx>(row));
  }
  return acc.result;
}

M01Profile m01_profile_streamed(const SampledSignal& f, const SampledSignal& window,
                                const WeightFunction& omega, double lambda, int stride) {
  ProfileAccumulator acc(f.grid, f.grid.dual(), omega, lambda, stride);
  scan_stft_slices(f, window, stride,
                   [&acc](std::int64_t zflat, std::span<const cplx> slice) {
                     acc.add_slice(zflat, slice);
                   });
  return acc.result;
}

InclusionReport check_inclusion(const SampledSignal& f, const SampledSignal& window,
                                const InclusionParams& prm) {
  if (!(prm.p_strong <= prm.p_weak) || !(prm.q_strong <= prm.q_weak)) {
    throw std::invalid_argument("check_inclusion: strong side needs smaller exponents");
  }
  if (!(prm.lambda_weak <= prm.lambda_strong)) {
    throw std::invalid_argument("check_inclusion: strong side needs the larger weight exponent");
  }
  MixedNormParams strong{prm.p_strong, prm.q_strong,
                         {WeightSpec{prm.omega, prm.lambda_strong, WeightBlock::full, false}}};
  MixedNormParams weak{prm.p_weak, prm.q_weak,
                       {WeightSpec{prm.omega, prm.lambda_weak, WeightBlock::full, false}}};
  PhaseSpaceFunction F = stft(f, window);
  InclusionReport rep;
  rep.strong_norm = mixed_norm(F, strong);
  rep.weak_norm = mixed_norm(F, weak);
  rep.ratio = rep.strong_norm > 0.0 ? rep.weak_norm / rep.strong_norm
                                    : (rep.weak_norm > 0.0 ? HUGE_VAL : 0.0);
  return rep;
}

}  // namespace tfloc
