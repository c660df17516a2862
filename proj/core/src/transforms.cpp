// Copyright 2026 tfloc authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "tfloc/transforms.hpp"

#include <cmath>
#include <numbers>

#include "tfloc/errors.hpp"
#include "tfloc/fft.hpp"

namespace tfloc {

namespace {

double two_pi_pow(int d) { return std::pow(2.0 * std::numbers::pi, d); }

}  // namespace

PhaseSpaceFunction stft(const SampledSignal& f, const SampledSignal& window) {
  require_same_grid(f.grid, window.grid, "stft");
  const Grid& g = f.grid;
  const int n = g.n(), dim = g.dim();
  const std::int64_t N = g.size();
  const double cell = g.cell_measure();

  PhaseSpaceFunction out(g, g.dual());
  std::vector<cplx> buf(static_cast<std::size_t>(N));

  if (dim == 1) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        int w = k - j + n / 2;
        buf[k] = (w >= 0 && w < n) ? f.values[k] * std::conj(window.values[w]) : cplx(0.0);
      }
      fft::centered_forward(buf.data(), n);
      for (int m = 0; m < n; ++m) out.at(j, m) = cell * buf[m];
    }
  } else {
    for (int j0 = 0; j0 < n; ++j0) {
      for (int j1 = 0; j1 < n; ++j1) {
        for (int k0 = 0; k0 < n; ++k0) {
          int w0 = k0 - j0 + n / 2;
          for (int k1 = 0; k1 < n; ++k1) {
            int w1 = k1 - j1 + n / 2;
            std::size_t ki = static_cast<std::size_t>(k0) * n + k1;
            bool in = w0 >= 0 && w0 < n && w1 >= 0 && w1 < n;
            buf[ki] = in ? f.values[ki] * std::conj(window.values[static_cast<std::size_t>(w0) * n + w1])
                         : cplx(0.0);
          }
        }
        fft::centered_forward_nd(buf.data(), n, 2);
        std::int64_t jflat = static_cast<std::int64_t>(j0) * n + j1;
        for (std::int64_t m = 0; m < N; ++m) out.at(jflat, m) = cell * buf[static_cast<std::size_t>(m)];
      }
    }
  }
  return out;
}

SampledSignal stft_adjoint(const PhaseSpaceFunction& F, const SampledSignal& window) {
  require_same_grid(F.xgrid, window.grid, "stft_adjoint");
  require_same_grid(F.xigrid, F.xgrid.dual(), "stft_adjoint (frequency grid)");
  const Grid& g = F.xgrid;
  const int n = g.n(), dim = g.dim();
  const std::int64_t N = g.size();
  const double meas = g.cell_measure() * g.dual().cell_measure();

  SampledSignal out(g);
  std::vector<cplx> buf(static_cast<std::size_t>(N));

  if (dim == 1) {
    for (int j = 0; j < n; ++j) {
      for (int m = 0; m < n; ++m) buf[m] = F.at(j, m);
      fft::centered_backward(buf.data(), n);
      for (int k = 0; k < n; ++k) {
        int w = k - j + n / 2;
        if (w >= 0 && w < n) out.values[k] += meas * buf[k] * window.values[w];
      }
    }
  } else {
    for (int j0 = 0; j0 < n; ++j0) {
      for (int j1 = 0; j1 < n; ++j1) {
        std::int64_t jflat = static_cast<std::int64_t>(j0) * n + j1;
        for (std::int64_t m = 0; m < N; ++m) buf[static_cast<std::size_t>(m)] = F.at(jflat, m);
        fft::centered_backward_nd(buf.data(), n, 2);
        for (int k0 = 0; k0 < n; ++k0) {
          int w0 = k0 - j0 + n / 2;
          if (w0 < 0 || w0 >= n) continue;
          for (int k1 = 0; k1 < n; ++k1) {
            int w1 = k1 - j1 + n / 2;
            if (w1 < 0 || w1 >= n) continue;
            std::size_t ki = static_cast<std::size_t>(k0) * n + k1;
            out.values[ki] += meas * buf[ki] * window.values[static_cast<std::size_t>(w0) * n + w1];
          }
        }
      }
    }
  }
  return out;
}

SampledSignal invert(const SampledSignal& f, const SampledSignal& psi,
                     const SampledSignal& gamma) {
  cplx c = inner_product(gamma, psi);
  const double threshold = 1e-12;
  if (std::abs(c) <= threshold) {
    throw SingularConfiguration("invert: windows numerically orthogonal", std::abs(c), threshold);
  }
  PhaseSpaceFunction F = stft(f, psi);
  SampledSignal out = stft_adjoint(F, gamma);
  cplx scale = 1.0 / (two_pi_pow(f.grid.dim()) * c);
  for (cplx& v : out.values) v *= scale;
  return out;
}

PhaseSpaceFunction cross_wigner(const SampledSignal& f, const SampledSignal& g) {
  require_same_grid(f.grid, g.grid, "cross_wigner");
  const Grid& gr = f.grid;
  const int n = gr.n(), dim = gr.dim(), n2 = 2 * n;

  PhaseSpaceFunction out(gr, gr.dual());
  double scale = std::pow(2.0, dim) * gr.cell_measure();

  if (dim == 1) {
    std::vector<cplx> buf(static_cast<std::size_t>(n2));
    for (int j = 0; j < n; ++j) {
      std::fill(buf.begin(), buf.end(), cplx(0.0));
      int mu_max = std::min(j, n - 1 - j);
      for (int mu = -mu_max; mu <= mu_max; ++mu) {
        buf[static_cast<std::size_t>(2 * mu + n2 / 2)] =
            f.values[static_cast<std::size_t>(j + mu)] *
            std::conj(g.values[static_cast<std::size_t>(j - mu)]);
      }
      fft::centered_forward(buf.data(), n2);
      for (int m = 0; m < n; ++m) out.at(j, m) = scale * buf[static_cast<std::size_t>(2 * m)];
    }
  } else {
    std::vector<cplx> buf(static_cast<std::size_t>(n2) * n2);
    for (int j0 = 0; j0 < n; ++j0) {
      int mu0_max = std::min(j0, n - 1 - j0);
      for (int j1 = 0; j1 < n; ++j1) {
        int mu1_max = std::min(j1, n - 1 - j1);
        std::fill(buf.begin(), buf.end(), cplx(0.0));
        for (int mu0 = -mu0_max; mu0 <= mu0_max; ++mu0) {
          for (int mu1 = -mu1_max; mu1 <= mu1_max; ++mu1) {
            std::size_t fi = static_cast<std::size_t>(j0 + mu0) * n + (j1 + mu1);
            std::size_t gi = static_cast<std::size_t>(j0 - mu0) * n + (j1 - mu1);
            buf[static_cast<std::size_t>(2 * mu0 + n) * n2 + (2 * mu1 + n)] =
                f.values[fi] * std::conj(g.values[gi]);
          }
        }
        fft::centered_forward_nd(buf.data(), n2, 2);
        std::int64_t jflat = static_cast<std::int64_t>(j0) * n + j1;
        for (int m0 = 0; m0 < n; ++m0) {
          for (int m1 = 0; m1 < n; ++m1) {
            out.at(jflat, static_cast<std::int64_t>(m0) * n + m1) =
                scale * buf[static_cast<std::size_t>(2 * m0) * n2 + 2 * m1];
          }
        }
      }
    }
  }
  return out;
}

SampledSignal fourier(const SampledSignal& f) {
  const Grid& g = f.grid;
  SampledSignal out(g.dual(), f.values);
  fft::centered_forward_nd(out.values.data(), g.n(), g.dim());
  double cell = g.cell_measure();
  for (cplx& v : out.values) v *= cell;
  return out;
}

SampledSignal fourier_inverse(const SampledSignal& fhat) {
  const Grid& g = fhat.grid;
  SampledSignal out(g.dual(), fhat.values);
  fft::centered_backward_nd(out.values.data(), g.n(), g.dim());
  double scale = g.cell_measure() / two_pi_pow(g.dim());
  for (cplx& v : out.values) v *= scale;
  return out;
}

}  // namespace tfloc
