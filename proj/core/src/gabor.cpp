// Copyright 2026 tfloc authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "tfloc/gabor.hpp"

#include <cmath>
#include <stdexcept>

#include "tfloc/fft.hpp"

namespace tfloc {

namespace {

// Largest |k - n/2| where the window still has mass above 1e-14 * peak.
int mass_radius(const SampledSignal& w) {
  const int n = w.grid.n();
  double peak = 0.0;
  for (const cplx& v : w.values) peak = std::max(peak, std::abs(v));
  int r = 0;
  for (int k = 0; k < n; ++k) {
    if (std::abs(w.values[static_cast<std::size_t>(k)]) > 1e-14 * peak) {
      r = std::max(r, std::abs(k - n / 2));
    }
  }
  return r;
}

// Window sample shifted by `shift` grid steps, zero off the grid.
cplx shifted(const SampledSignal& w, int n, int shift, int k) {
  const int ks = k - shift;
  if (ks < 0 || ks >= n) return cplx(0.0, 0.0);
  return w.values[static_cast<std::size_t>(ks)];
}

}  // namespace

GaborSystem make_gabor_system(const SampledSignal& window, int p, int q) {
  if (window.grid.dim() != 1) throw std::invalid_argument("gabor system requires a dim-1 grid");
  if (p < 1 || q < 1) throw std::invalid_argument("gabor lattice steps must be >= 1");
  const int n = window.grid.n();
  if (n % (2 * q) != 0) throw std::invalid_argument("grid size must be divisible by 2q");

  GaborSystem gs{window.grid, window, p, q, 0, -1, 0, 0.0, 0.0};
  gs.alpha = p * window.grid.spacing(0);
  gs.beta = q * window.grid.freq_spacing(0);
  gs.lcount = n / q;
  const int r = mass_radius(window);
  gs.jmin = static_cast<int>(std::ceil(-static_cast<double>(n / 2 + r) / p));
  gs.jmax = static_cast<int>(std::floor(static_cast<double>(n / 2 - 1 + r) / p));
  return gs;
}

SampledSignal gabor_atom(const GaborSystem& gs, int j, int l) {
  const int n = gs.grid.n();
  SampledSignal out(gs.grid);
  const int shift = gs.p * j;
  for (int k = 0; k < n; ++k) {
    const cplx w = shifted(gs.window, n, shift, k);
    if (w == cplx(0.0, 0.0)) continue;
    out.values[static_cast<std::size_t>(k)] = w * std::polar(1.0, gs.beta * l * gs.grid.node(0, k));
  }
  return out;
}

int gabor_atom_count(const GaborSystem& gs) { return (gs.jmax - gs.jmin + 1) * gs.lcount; }

TightnessReport tightness_defect(const GaborSystem& gs) {
  const int n = gs.grid.n();
  const double h = gs.grid.spacing(0);
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(n, n);
  Eigen::VectorXcd v(n);
  for (int j = gs.jmin; j <= gs.jmax; ++j) {
    for (int l = -gs.lcount / 2; l < gs.lcount / 2; ++l) {
      SampledSignal atom = gabor_atom(gs, j, l);
      for (int k = 0; k < n; ++k) v(k) = atom.values[static_cast<std::size_t>(k)];
      s.selfadjointView<Eigen::Lower>().rankUpdate(v, h);
    }
  }
  TightnessReport rep;
  rep.atom_count = gabor_atom_count(gs);
  rep.redundancy = static_cast<double>(n) / (gs.p * gs.q);
  double diag = 0.0;
  for (int k = n / 4; k < 3 * n / 4; ++k) diag += s(k, k).real();
  rep.frame_constant = diag / (n / 2);

  Eigen::MatrixXcd full = s.selfadjointView<Eigen::Lower>();
  for (int k = 0; k < n; ++k) full(k, k) -= rep.frame_constant;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(full, Eigen::EigenvaluesOnly);
  rep.defect = eig.eigenvalues().cwiseAbs().maxCoeff() / rep.frame_constant;
  return rep;
}

GaborPairCoefficients kernel_gabor_coefficients(const LocOpMatrix& op, const GaborSystem& gs,
                                                double prune_rel) {
  require_same_grid(gs.grid, op.grid, "kernel_gabor_coefficients");
  const int n = gs.grid.n();
  const double h = gs.grid.spacing(0);
  const int jcount = gs.jmax - gs.jmin + 1;
  const int lc = gs.lcount;

  GaborPairCoefficients co;
  co.p = gs.p;
  co.q = gs.q;
  co.lcount = lc;
  co.jmin = gs.jmin;
  co.alpha = gs.alpha;
  co.beta = gs.beta;
  co.provenance = op.provenance;
  co.frame_constant = tightness_defect(gs).frame_constant;

  // |w_j| columns and atom norms.
  Eigen::MatrixXd wabs = Eigen::MatrixXd::Zero(n, jcount);
  co.atom_norm.resize(static_cast<std::size_t>(jcount));
  for (int jdx = 0; jdx < jcount; ++jdx) {
    const int shift = gs.p * (gs.jmin + jdx);
    double nrm2 = 0.0;
    for (int k = 0; k < n; ++k) {
      const double a = std::abs(shifted(gs.window, n, shift, k));
      wabs(k, jdx) = a;
      nrm2 += a * a;
    }
    co.atom_norm[static_cast<std::size_t>(jdx)] = std::sqrt(h * nrm2);
  }

  // Rigorous per-pair bound |c(m,m')| <= h^2 |w_{j1}|^T |K| |w_{j2}| = h * w^T |mat| w.
  Eigen::MatrixXd kabs = op.mat.cwiseAbs();
  Eigen::MatrixXd d = wabs.transpose() * kabs * wabs;  // divided by h vs |K|; fold below
  const double dmax = d.maxCoeff();

  std::vector<cplx> buf(static_cast<std::size_t>(n) * n);
  for (int j1 = 0; j1 < jcount; ++j1) {
    const int s1 = gs.p * (gs.jmin + j1);
    for (int j2 = 0; j2 < jcount; ++j2) {
      const double block_l1_bound = static_cast<double>(lc) * lc * h * d(j1, j2);
      const double nu = co.atom_norm[static_cast<std::size_t>(j1)] *
                        co.atom_norm[static_cast<std::size_t>(j2)];
      if (d(j1, j2) <= prune_rel * dmax) {
        co.prune_slack_l1 += block_l1_bound;
        co.prune_slack_nuclear += block_l1_bound * nu;
        continue;
      }
      const int s2 = gs.p * (gs.jmin + j2);
      for (int k = 0; k < n; ++k) {
        const cplx w1 = std::conj(shifted(gs.window, n, s1, k));
        for (int kk = 0; kk < n; ++kk) {
          buf[static_cast<std::size_t>(k) * n + kk] =
              (op.mat(k, kk) / h) * w1 * shifted(gs.window, n, s2, kk);
        }
      }
      fft::centered_forward_axis(buf.data(), n, n, 0);
      fft::centered_backward_axis(buf.data(), n, n, 1);
      GaborCoeffBlock blk;
      blk.j1 = gs.jmin + j1;
      blk.j2 = gs.jmin + j2;
      blk.c.resize(lc, lc);
      for (int m = 0; m < lc; ++m) {
        const int row = gs.q * (m - lc / 2) + n / 2;
        for (int mm = 0; mm < lc; ++mm) {
          const int col = gs.q * (mm - lc / 2) + n / 2;
          blk.c(m, mm) = h * h * buf[static_cast<std::size_t>(row) * n + col];
        }
      }
      co.blocks.push_back(std::move(blk));
    }
  }
  return co;
}

double trace_norm(const LocOpMatrix& op) {
  double sum = 0.0;
  for (double s : singular_values(op)) sum += s;
  return sum;
}

double nuclear_bound(const GaborPairCoefficients& co, const LocOpMatrix& op) {
  if (co.provenance != op.provenance) {
    throw std::invalid_argument("coefficients were built from a different operator");
  }
  double sum = co.prune_slack_nuclear;
  for (const GaborCoeffBlock& blk : co.blocks) {
    const double nu = co.atom_norm[static_cast<std::size_t>(blk.j1 - co.jmin)] *
                      co.atom_norm[static_cast<std::size_t>(blk.j2 - co.jmin)];
    sum += nu * blk.c.cwiseAbs().sum();
  }
  return sum / (co.frame_constant * co.frame_constant);
}

double coefficient_l1_tail(const GaborPairCoefficients& co, double radius) {
  // Radius counts lattice steps: a pair lies in the tail when the largest
  // index magnitude over both atoms reaches it.
  double tail = co.prune_slack_l1;
  const int lc = co.lcount;
  for (const GaborCoeffBlock& blk : co.blocks) {
    const int aj = std::max(std::abs(blk.j1), std::abs(blk.j2));
    for (int m = 0; m < lc; ++m) {
      const int bm = std::max(aj, std::abs(m - lc / 2));
      for (int mm = 0; mm < lc; ++mm) {
        const int rad = std::max(bm, std::abs(mm - lc / 2));
        if (static_cast<double>(rad) >= radius) tail += std::abs(blk.c(m, mm));
      }
    }
  }
  return tail;
}

double reconstruction_error(const GaborPairCoefficients& co, const GaborSystem& gs,
                            const LocOpMatrix& op) {
  require_same_grid(gs.grid, op.grid, "reconstruction_error");
  const int n = gs.grid.n();
  const double h = gs.grid.spacing(0);
  const int lc = co.lcount;
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
  std::vector<cplx> buf;
  for (const GaborCoeffBlock& blk : co.blocks) {
    buf.assign(static_cast<std::size_t>(n) * n, cplx(0.0, 0.0));
    for (int m = 0; m < lc; ++m) {
      const int row = co.q * (m - lc / 2) + n / 2;
      for (int mm = 0; mm < lc; ++mm) {
        const int col = co.q * (mm - lc / 2) + n / 2;
        buf[static_cast<std::size_t>(row) * n + col] = blk.c(m, mm);
      }
    }
    fft::centered_backward_axis(buf.data(), n, n, 0);
    fft::centered_forward_axis(buf.data(), n, n, 1);
    const int s1 = gs.p * blk.j1;
    const int s2 = gs.p * blk.j2;
    for (int k = 0; k < n; ++k) {
      const cplx w1 = shifted(gs.window, n, s1, k);
      if (w1 == cplx(0.0, 0.0)) continue;
      for (int kk = 0; kk < n; ++kk) {
        acc(k, kk) += w1 * std::conj(shifted(gs.window, n, s2, kk)) *
                      buf[static_cast<std::size_t>(k) * n + kk];
      }
    }
  }
  const double a2 = co.frame_constant * co.frame_constant;
  acc *= h / a2;
  return (acc - op.mat).norm() / op.mat.norm();
}

}  // namespace tfloc
