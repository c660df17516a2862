// Copyright 2026 tfloc authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "tfloc/locop.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "tfloc/errors.hpp"
#include "tfloc/fft.hpp"
#include "tfloc/rng.hpp"
#include "tfloc/transforms.hpp"

namespace tfloc {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t fnv1a(const void* bytes, std::size_t len,
                    std::uint64_t h = 1469598103934665603ULL) {
  const auto* p = static_cast<const unsigned char*>(bytes);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= static_cast<std::uint64_t>(p[i]);
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex16(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return std::string(buf);
}

std::string fmtg(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::string(buf);
}

std::string hash_signal(const SampledSignal& s) {
  std::uint64_t h = fnv1a(s.values.data(), s.values.size() * sizeof(cplx));
  return hex16(h).substr(0, 8);
}

std::string provenance_string(const SymbolSpec& a, const SampledSignal& psi,
                              const SampledSignal& gamma) {
  std::ostringstream os;
  os << "locop[" << a.id() << ";psi=" << hash_signal(psi) << ";gamma=" << hash_signal(gamma)
     << ";d=" << psi.grid.dim() << ";n=" << psi.grid.n() << ";h=" << fmtg(psi.grid.spacing(0))
     << "]";
  return os.str();
}

// Flat index of the grid node (numerically) matching pos, or -1.
std::int64_t match_node(const Grid& g, std::span<const double> pos) {
  if (static_cast<int>(pos.size()) != g.dim()) {
    throw GridMismatch("symbol evaluation: point dimension does not match sample grid");
  }
  std::array<int, 2> idx = {0, 0};
  for (int a = 0; a < g.dim(); ++a) {
    double t = pos[a] / g.spacing(a) + g.n() / 2.0;
    int k = static_cast<int>(std::lround(t));
    if (k < 0 || k >= g.n()) return -1;
    if (std::abs(pos[a] - g.node(a, k)) > 1e-9 * g.spacing(a)) return -1;
    idx[static_cast<std::size_t>(a)] = k;
  }
  return g.flat(idx);
}

// Largest per-axis index offset from the grid center where the window still
// carries mass above 1e-14 of its peak. Translation centers farther than this
// from the grid cannot contribute to the operator.
int window_mass_radius(const SampledSignal& w) {
  const double peak = sup_norm(w);
  if (peak == 0.0) return 0;
  const double thr = 1e-14 * peak;
  const int n = w.grid.n();
  int r = 0;
  if (w.grid.dim() == 1) {
    for (int k = 0; k < n; ++k) {
      if (std::abs(w.values[static_cast<std::size_t>(k)]) > thr) {
        r = std::max(r, std::abs(k - n / 2));
      }
    }
  } else {
    for (int k0 = 0; k0 < n; ++k0) {
      for (int k1 = 0; k1 < n; ++k1) {
        if (std::abs(w.values[static_cast<std::size_t>(k0) * n + k1]) > thr) {
          r = std::max({r, std::abs(k0 - n / 2), std::abs(k1 - n / 2)});
        }
      }
    }
  }
  return r;
}

// Symbol samples on the product of the extended x lattice (centers
// c in [-pad, n+pad) per axis, positions (c - n/2) h) and the standard
// frequency lattice. Layout: [extended-center flat * n^d + frequency flat].
std::vector<cplx> sample_symbol_extended(const SymbolSpec& a, const Grid& g, int pad) {
  const int d = g.dim(), n = g.n(), nc = n + 2 * pad;
  const Grid fq = g.dual();
  std::array<double, 2> xs = {0.0, 0.0}, qs = {0.0, 0.0};
  if (d == 1) {
    std::vector<cplx> out(static_cast<std::size_t>(nc) * n);
    for (int c = 0; c < nc; ++c) {
      xs[0] = (c - pad - n / 2) * g.spacing(0);
      for (int m = 0; m < n; ++m) {
        qs[0] = fq.node(0, m);
        out[static_cast<std::size_t>(c) * n + m] =
            a.value_at(std::span<const double>(xs.data(), 1), std::span<const double>(qs.data(), 1));
      }
    }
    return out;
  }
  const std::int64_t nm = fq.size();
  std::vector<cplx> out(static_cast<std::size_t>(nc) * nc * nm);
  for (int c0 = 0; c0 < nc; ++c0) {
    xs[0] = (c0 - pad - n / 2) * g.spacing(0);
    for (int c1 = 0; c1 < nc; ++c1) {
      xs[1] = (c1 - pad - n / 2) * g.spacing(1);
      cplx* row = &out[(static_cast<std::size_t>(c0) * nc + c1) * static_cast<std::size_t>(nm)];
      for (int m0 = 0; m0 < n; ++m0) {
        qs[0] = fq.node(0, m0);
        for (int m1 = 0; m1 < n; ++m1) {
          qs[1] = fq.node(1, m1);
          row[static_cast<std::size_t>(m0) * n + m1] =
              a.value_at(std::span<const double>(xs.data(), 2),
                         std::span<const double>(qs.data(), 2));
        }
      }
    }
  }
  return out;
}

// P[j*n + m] = exp(-i x_j xi_m) = exp(-i (j - n/2)(m - n/2) 2 pi / n).
std::vector<cplx> modulation_table(int n) {
  std::vector<cplx> tab(static_cast<std::size_t>(n) * n);
  const double w = 2.0 * kPi / n;
  for (int j = 0; j < n; ++j) {
    for (int m = 0; m < n; ++m) {
      tab[static_cast<std::size_t>(j) * n + m] = std::polar(1.0, -w * (j - n / 2.0) * (m - n / 2.0));
    }
  }
  return tab;
}

// Column-by-column assembly: for the basis vector e_j the analysis transform
// has the closed form V e_j(c, m) = h^d conj(psi(y_j - x_c)) e^{-i y_j xi_m},
// so each contributing center costs one inverse transform over m plus a
// synthesis-window-weighted accumulation over output nodes near the center.
void assemble_1d(const SymbolSpec& a, const SampledSignal& psi, const SampledSignal& gamma,
                 int pad, int rpsi, int rgam, Eigen::MatrixXcd& L) {
  const Grid& g = psi.grid;
  const int n = g.n();
  const Grid fq = g.dual();
  const std::vector<cplx> sym = sample_symbol_extended(a, g, pad);
  const std::vector<cplx> tab = modulation_table(n);
  const double meas = g.cell_measure() * fq.cell_measure();
  std::vector<cplx> row(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const cplx* pj = &tab[static_cast<std::size_t>(j) * n];
    const int clo = std::max(j - rpsi, -pad);
    const int chi = std::min(j + rpsi, n - 1 + pad);
    for (int c = clo; c <= chi; ++c) {
      const int wo = j - c + n / 2;
      if (wo < 0 || wo >= n) continue;
      const cplx wpsi = std::conj(psi.values[static_cast<std::size_t>(wo)]);
      if (wpsi == cplx(0.0, 0.0)) continue;
      const cplx* sy = &sym[static_cast<std::size_t>(c + pad) * n];
      bool any = false;
      for (int m = 0; m < n; ++m) {
        row[static_cast<std::size_t>(m)] = sy[m] * pj[m];
        any = any || (sy[m] != cplx(0.0, 0.0));
      }
      if (!any) continue;
      fft::centered_backward(row.data(), n);
      const cplx scale = meas * g.cell_measure() * wpsi;
      const int klo = std::max(c - rgam, 0);
      const int khi = std::min(c + rgam, n - 1);
      for (int k = klo; k <= khi; ++k) {
        const int go = k - c + n / 2;
        if (go < 0 || go >= n) continue;
        const cplx gv = gamma.values[static_cast<std::size_t>(go)];
        if (gv == cplx(0.0, 0.0)) continue;
        L(k, j) += scale * row[static_cast<std::size_t>(k)] * gv;
      }
    }
  }
}

void assemble_2d(const SymbolSpec& a, const SampledSignal& psi, const SampledSignal& gamma,
                 int pad, int rpsi, int rgam, Eigen::MatrixXcd& L) {
  const Grid& g = psi.grid;
  const int n = g.n(), nc = n + 2 * pad;
  const Grid fq = g.dual();
  const std::int64_t nm = fq.size();
  const std::vector<cplx> sym = sample_symbol_extended(a, g, pad);
  const std::vector<cplx> tab = modulation_table(n);
  const double meas = g.cell_measure() * fq.cell_measure();
  std::vector<cplx> blk(static_cast<std::size_t>(nm));
  for (int j0 = 0; j0 < n; ++j0) {
    for (int j1 = 0; j1 < n; ++j1) {
      const std::int64_t jf = static_cast<std::int64_t>(j0) * n + j1;
      const cplx* p0 = &tab[static_cast<std::size_t>(j0) * n];
      const cplx* p1 = &tab[static_cast<std::size_t>(j1) * n];
      for (int c0 = std::max(j0 - rpsi, -pad); c0 <= std::min(j0 + rpsi, n - 1 + pad); ++c0) {
        const int w0 = j0 - c0 + n / 2;
        if (w0 < 0 || w0 >= n) continue;
        for (int c1 = std::max(j1 - rpsi, -pad); c1 <= std::min(j1 + rpsi, n - 1 + pad); ++c1) {
          const int w1 = j1 - c1 + n / 2;
          if (w1 < 0 || w1 >= n) continue;
          const cplx wpsi = std::conj(psi.values[static_cast<std::size_t>(w0) * n + w1]);
          if (wpsi == cplx(0.0, 0.0)) continue;
          const cplx* sy =
              &sym[(static_cast<std::size_t>(c0 + pad) * nc + (c1 + pad)) * static_cast<std::size_t>(nm)];
          bool any = false;
          for (int m0 = 0; m0 < n; ++m0) {
            const cplx q0 = p0[m0];
            for (int m1 = 0; m1 < n; ++m1) {
              const cplx v = sy[static_cast<std::size_t>(m0) * n + m1];
              blk[static_cast<std::size_t>(m0) * n + m1] = v * (q0 * p1[m1]);
              any = any || (v != cplx(0.0, 0.0));
            }
          }
          if (!any) continue;
          fft::centered_backward_nd(blk.data(), n, 2);
          const cplx scale = meas * g.cell_measure() * wpsi;
          for (int k0 = std::max(c0 - rgam, 0); k0 <= std::min(c0 + rgam, n - 1); ++k0) {
            const int g0 = k0 - c0 + n / 2;
            if (g0 < 0 || g0 >= n) continue;
            for (int k1 = std::max(c1 - rgam, 0); k1 <= std::min(c1 + rgam, n - 1); ++k1) {
              const int g1 = k1 - c1 + n / 2;
              if (g1 < 0 || g1 >= n) continue;
              const cplx gv = gamma.values[static_cast<std::size_t>(g0) * n + g1];
              if (gv == cplx(0.0, 0.0)) continue;
              L(static_cast<std::int64_t>(k0) * n + k1, jf) +=
                  scale * blk[static_cast<std::size_t>(k0) * n + k1] * gv;
            }
          }
        }
      }
    }
  }
}

}  // namespace

SymbolSpec::SymbolSpec(SymbolKind k, double p1, double p2) : kind_(k), par1_(p1), par2_(p2) {}

SymbolSpec SymbolSpec::constant(double value) {
  return SymbolSpec(SymbolKind::constant, value, 0.0);
}

SymbolSpec SymbolSpec::gaussian(double ax, double axi) {
  if (!(ax > 0.0) || !(axi > 0.0)) {
    throw std::invalid_argument("SymbolSpec::gaussian: decay rates must be positive");
  }
  return SymbolSpec(SymbolKind::gaussian, ax, axi);
}

SymbolSpec SymbolSpec::indicator_box(double half_x, double half_xi) {
  if (!(half_x > 0.0) || !(half_xi > 0.0)) {
    throw std::invalid_argument("SymbolSpec::indicator_box: half widths must be positive");
  }
  return SymbolSpec(SymbolKind::indicator_box, half_x, half_xi);
}

SymbolSpec SymbolSpec::x_only(double ax) {
  if (!(ax > 0.0)) throw std::invalid_argument("SymbolSpec::x_only: decay rate must be positive");
  return SymbolSpec(SymbolKind::x_only, ax, 0.0);
}

SymbolSpec SymbolSpec::user_sampled(PhaseSpaceFunction samples) {
  SymbolSpec s(SymbolKind::user_sampled, 0.0, 0.0);
  s.samples_ = std::move(samples);
  return s;
}

SymbolSpec SymbolSpec::parse(const std::string& text) {
  std::string name = text;
  std::vector<double> par;
  if (auto pos = text.find(':'); pos != std::string::npos) {
    name = text.substr(0, pos);
    std::string rest = text.substr(pos + 1);
    std::size_t start = 0;
    while (start <= rest.size()) {
      // ':' works as a second separator so multi-parameter symbols can sit
      // inside comma-separated config lists ("box:1:2").
      std::size_t comma = rest.find_first_of(",:", start);
      std::string tok = rest.substr(start, comma == std::string::npos ? comma : comma - start);
      try {
        std::size_t used = 0;
        double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        par.push_back(v);
      } catch (const std::exception&) {
        throw ConfigError("symbol parameter is not a number: '" + tok + "' in '" + text + "'");
      }
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  auto want = [&](std::size_t lo, std::size_t hi) {
    if (par.size() < lo || par.size() > hi) {
      throw ConfigError("symbol '" + text + "': wrong parameter count");
    }
  };
  if (name == "one") {
    want(0, 1);
    return constant(par.empty() ? 1.0 : par[0]);
  }
  if (name == "gauss") {
    want(0, 2);
    if (par.empty()) return gaussian(kPi, kPi);
    if (par.size() == 1) return gaussian(par[0], par[0]);
    return gaussian(par[0], par[1]);
  }
  if (name == "box") {
    want(0, 2);
    if (par.empty()) return indicator_box(2.0, 2.0);
    if (par.size() == 1) return indicator_box(par[0], par[0]);
    return indicator_box(par[0], par[1]);
  }
  if (name == "xonly") {
    want(0, 1);
    return x_only(par.empty() ? kPi : par[0]);
  }
  throw ConfigError("unknown symbol name: '" + text + "'");
}

bool SymbolSpec::decays() const {
  return kind_ == SymbolKind::gaussian || kind_ == SymbolKind::indicator_box;
}

std::string SymbolSpec::id() const {
  switch (kind_) {
    case SymbolKind::constant:
      return "one:" + fmtg(par1_);
    case SymbolKind::gaussian:
      return "gauss:" + fmtg(par1_) + "," + fmtg(par2_);
    case SymbolKind::indicator_box:
      return "box:" + fmtg(par1_) + "," + fmtg(par2_);
    case SymbolKind::x_only:
      return "xonly:" + fmtg(par1_);
    case SymbolKind::user_sampled: {
      const auto& s = *samples_;
      std::uint64_t h = fnv1a(s.values.data(), s.values.size() * sizeof(cplx));
      return "user:" + hex16(h).substr(0, 8) + ":n=" + std::to_string(s.xgrid.n());
    }
  }
  return "invalid";
}

cplx SymbolSpec::value_at(std::span<const double> x, std::span<const double> xi) const {
  switch (kind_) {
    case SymbolKind::constant:
      return par1_;
    case SymbolKind::gaussian: {
      double sx = 0.0, sq = 0.0;
      for (double v : x) sx += v * v;
      for (double v : xi) sq += v * v;
      return std::exp(-par1_ * sx - par2_ * sq);
    }
    case SymbolKind::indicator_box: {
      for (double v : x) {
        if (std::abs(v) > par1_ + 1e-12) return cplx(0.0, 0.0);
      }
      for (double v : xi) {
        if (std::abs(v) > par2_ + 1e-12) return cplx(0.0, 0.0);
      }
      return cplx(1.0, 0.0);
    }
    case SymbolKind::x_only: {
      double sx = 0.0;
      for (double v : x) sx += v * v;
      return std::exp(-par1_ * sx);
    }
    case SymbolKind::user_sampled: {
      const auto& s = *samples_;
      std::int64_t xf = match_node(s.xgrid, x);
      if (xf < 0) return cplx(0.0, 0.0);
      std::int64_t qf = match_node(s.xigrid, xi);
      if (qf < 0) return cplx(0.0, 0.0);
      return s.at(xf, qf);
    }
  }
  return cplx(0.0, 0.0);
}

LocOpMatrix localization_matrix(const SymbolSpec& a, const SampledSignal& psi,
                                const SampledSignal& gamma) {
  require_same_grid(psi.grid, gamma.grid, "localization_matrix");
  const Grid& g = psi.grid;
  const int rpsi = window_mass_radius(psi);
  const int rgam = window_mass_radius(gamma);
  // A translation center contributes only where both windows still reach the
  // grid: the term carries psi(y_j - x_c) and gamma(y_k - x_c) factors.
  const int pad = std::min(rpsi, rgam);
  LocOpMatrix op{g, Eigen::MatrixXcd::Zero(g.size(), g.size()), provenance_string(a, psi, gamma)};
  if (g.dim() == 1) {
    assemble_1d(a, psi, gamma, pad, rpsi, rgam, op.mat);
  } else {
    assemble_2d(a, psi, gamma, pad, rpsi, rgam, op.mat);
  }
  return op;
}

SampledSignal apply(const LocOpMatrix& op, const SampledSignal& f) {
  require_same_grid(op.grid, f.grid, "apply");
  SampledSignal out(op.grid);
  Eigen::Map<const Eigen::VectorXcd> v(f.values.data(), static_cast<Eigen::Index>(f.values.size()));
  Eigen::Map<Eigen::VectorXcd> o(out.values.data(), static_cast<Eigen::Index>(out.values.size()));
  o = op.mat * v;
  return out;
}

std::vector<double> singular_values(const LocOpMatrix& op) {
  const Eigen::MatrixXcd& m = op.mat;
  const double scale = m.cwiseAbs().maxCoeff();
  bool hermitian = true;
  if (scale > 0.0) {
    const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
    hermitian = dev <= 1e-12 * scale;
  }
  std::vector<double> sv;
  if (hermitian) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (m + m.adjoint()));
    if (es.info() != Eigen::Success) throw Error("singular_values: eigensolver failed");
    const auto& ev = es.eigenvalues();
    sv.resize(static_cast<std::size_t>(ev.size()));
    for (Eigen::Index i = 0; i < ev.size(); ++i) sv[static_cast<std::size_t>(i)] = std::abs(ev[i]);
    std::sort(sv.begin(), sv.end(), std::greater<double>());
  } else {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
    const auto& s = svd.singularValues();
    sv.resize(static_cast<std::size_t>(s.size()));
    for (Eigen::Index i = 0; i < s.size(); ++i) sv[static_cast<std::size_t>(i)] = s[i];
  }
  return sv;
}

double spectral_norm(const LocOpMatrix& op) { return singular_values(op).front(); }

PhaseSpaceFunction weyl_symbol(const SymbolSpec& a, const SampledSignal& psi,
                               const SampledSignal& gamma) {
  require_same_grid(psi.grid, gamma.grid, "weyl_symbol");
  const Grid& g = psi.grid;
  const int d = g.dim(), n = g.n();
  const Grid fq = g.dual();

  PhaseSpaceFunction w = cross_wigner(gamma, psi);
  // The symmetric-offset quadrature above is periodic in frequency with
  // period pi/h per axis (half the sampled range), so the outer half of the
  // frequency grid holds the alias replica of the center. Zero it; the true
  // window ambiguity is below rounding there for admissible grids.
  for (std::int64_t xf = 0; xf < g.size(); ++xf) {
    for (std::int64_t qf = 0; qf < fq.size(); ++qf) {
      const std::array<int, 2> mi = fq.unflat(qf);
      bool outer = false;
      for (int ax = 0; ax < d; ++ax) {
        if (std::abs(mi[static_cast<std::size_t>(ax)] - n / 2) > n / 4) outer = true;
      }
      if (outer) w.at(xf, qf) = cplx(0.0, 0.0);
    }
  }

  // Symbol samples on the standard phase grid.
  PhaseSpaceFunction sy(g, fq);
  {
    std::array<double, 2> xs = {0.0, 0.0}, qs = {0.0, 0.0};
    for (std::int64_t xf = 0; xf < g.size(); ++xf) {
      const std::array<int, 2> xi = g.unflat(xf);
      for (int ax = 0; ax < d; ++ax) xs[static_cast<std::size_t>(ax)] = g.node(ax, xi[static_cast<std::size_t>(ax)]);
      for (std::int64_t qf = 0; qf < fq.size(); ++qf) {
        const std::array<int, 2> mi = fq.unflat(qf);
        for (int ax = 0; ax < d; ++ax) {
          qs[static_cast<std::size_t>(ax)] = fq.node(ax, mi[static_cast<std::size_t>(ax)]);
        }
        sy.at(xf, qf) = a.value_at(std::span<const double>(xs.data(), static_cast<std::size_t>(d)),
                                   std::span<const double>(qs.data(), static_cast<std::size_t>(d)));
      }
    }
  }

  // Linear convolution over the 2d phase axes by zero-padded transforms of
  // length 2n per axis; output node j reads padded index j + n/2 per axis.
  const int axes = 2 * d;
  const int len = 2 * n;
  std::size_t total = 1;
  for (int i = 0; i < axes; ++i) total *= static_cast<std::size_t>(len);
  std::vector<int> shape(static_cast<std::size_t>(axes), len);
  std::vector<cplx> sa(total, cplx(0.0, 0.0)), wa(total, cplx(0.0, 0.0));

  const std::int64_t nxi = fq.size();
  auto padded_index = [&](std::int64_t p, int offset) {
    const std::int64_t xf = p / nxi, qf = p % nxi;
    std::array<int, 4> dig = {0, 0, 0, 0};
    if (d == 1) {
      dig[0] = static_cast<int>(xf);
      dig[1] = static_cast<int>(qf);
    } else {
      dig[0] = static_cast<int>(xf / n);
      dig[1] = static_cast<int>(xf % n);
      dig[2] = static_cast<int>(qf / n);
      dig[3] = static_cast<int>(qf % n);
    }
    std::size_t flat = 0;
    for (int i = 0; i < axes; ++i) {
      flat = flat * static_cast<std::size_t>(len) + static_cast<std::size_t>(dig[static_cast<std::size_t>(i)] + offset);
    }
    return flat;
  };
  const std::int64_t np = g.size() * nxi;
  for (std::int64_t p = 0; p < np; ++p) {
    sa[padded_index(p, 0)] = sy.values[static_cast<std::size_t>(p)];
    wa[padded_index(p, 0)] = w.values[static_cast<std::size_t>(p)];
  }
  fft::raw_nd(sa.data(), shape, -1);
  fft::raw_nd(wa.data(), shape, -1);
  for (std::size_t i = 0; i < total; ++i) sa[i] *= wa[i];
  fft::raw_nd(sa.data(), shape, 1);
  const double scale = g.cell_measure() * fq.cell_measure() / static_cast<double>(total);

  PhaseSpaceFunction out(g, fq);
  for (std::int64_t p = 0; p < np; ++p) {
    out.values[static_cast<std::size_t>(p)] = sa[padded_index(p, n / 2)] * scale;
  }
  return out;
}

SampledSignal weyl_kernel(const PhaseSpaceFunction& aw) {
  if (aw.xgrid.dim() != 1) throw std::invalid_argument("weyl_kernel: dim 1 only");
  const Grid& g = aw.xgrid;
  if (aw.xigrid != g.dual()) {
    throw GridMismatch("weyl_kernel: frequency grid must be the dual of the x grid");
  }
  const int n = g.n();
  const double h = g.spacing(0);
  const double dxi = aw.xigrid.spacing(0);

  // Trigonometric interpolation of a^w(., xi_m) to the half-step x lattice:
  // length-n centered transform, symmetric embedding into 2n bins with the
  // edge bin split between +-(n/2) dxi, inverse length-2n transform. Fine
  // node l sits at (l - n) h/2 and reproduces the coarse nodes exactly.
  const int n2 = 2 * n;
  std::vector<cplx> fine(static_cast<std::size_t>(n2) * n);
  std::vector<cplx> col(static_cast<std::size_t>(n));
  std::vector<cplx> spec2(static_cast<std::size_t>(n2));
  for (int m = 0; m < n; ++m) {
    for (int j = 0; j < n; ++j) col[static_cast<std::size_t>(j)] = aw.at(j, m);
    fft::centered_forward(col.data(), n);
    std::fill(spec2.begin(), spec2.end(), cplx(0.0, 0.0));
    for (int t = 1; t < n; ++t) spec2[static_cast<std::size_t>(t + n / 2)] = col[static_cast<std::size_t>(t)];
    spec2[static_cast<std::size_t>(n / 2)] = 0.5 * col[0];
    spec2[static_cast<std::size_t>(3 * n / 2)] = 0.5 * col[0];
    fft::centered_backward(spec2.data(), n2);
    for (int l = 0; l < n2; ++l) {
      fine[static_cast<std::size_t>(l) * n + m] = spec2[static_cast<std::size_t>(l)] / static_cast<double>(n);
    }
  }

  // k(x_i, y_j) = (2 pi)^{-1} dxi sum_m a^w(mid, xi_m) e^{+i xi_m (x_i - y_j)}
  // with mid the fine node l = i + j. The offset dependence is n-periodic on
  // the sampled frequency grid, so one length-n transform per midpoint serves
  // every (i, j) pair on that anti-diagonal; offsets at or beyond half that
  // period only alias near-diagonal values, so they stay zero (the true
  // kernel is below rounding there for windows contained in the grid).
  Grid kg(2, n, {h, h});
  SampledSignal ker(kg);
  std::vector<cplx> row(static_cast<std::size_t>(n));
  const double scale = dxi / (2.0 * kPi);
  for (int s = 0; s <= 2 * n - 2; ++s) {
    for (int m = 0; m < n; ++m) row[static_cast<std::size_t>(m)] = fine[static_cast<std::size_t>(s) * n + m];
    fft::centered_backward(row.data(), n);
    for (int i = std::max(0, s - (n - 1)); i <= std::min(n - 1, s); ++i) {
      const int j = s - i;
      if (2 * std::abs(i - j) >= n) continue;
      const int t = i - j + n / 2;
      ker.values[static_cast<std::size_t>(i) * n + j] = scale * row[static_cast<std::size_t>(t)];
    }
  }
  return ker;
}

OperatorKernel operator_kernel(const SymbolSpec& a, const SampledSignal& psi,
                               const SampledSignal& gamma) {
  require_same_grid(psi.grid, gamma.grid, "operator_kernel");
  if (psi.grid.dim() != 1) throw std::invalid_argument("operator_kernel: dim 1 only");
  const Grid& g = psi.grid;
  const int n = g.n();
  const double h = g.spacing(0);
  const double dxi = g.freq_spacing(0);
  const int rpsi = window_mass_radius(psi);
  const int rgam = window_mass_radius(gamma);
  const int pad = std::min(rpsi, rgam);

  // Same symbol samples on the same extended lattice as the direct assembly,
  // so both routes sum identical terms.
  const std::vector<cplx> sym = sample_symbol_extended(a, g, pad);

  // Window ambiguity on the half-step lattice: midpoint l at (l - n) h/2,
  // frequency kappa at (kappa - n) dxi/2. At a fixed midpoint only offsets
  // t = nu h with nu = l (mod 2) hit coarse nodes, with step 2h.
  const int n2 = 2 * n;
  std::vector<cplx> w2(static_cast<std::size_t>(n2) * n2, cplx(0.0, 0.0));
  std::vector<cplx> buf(static_cast<std::size_t>(n2));
  for (int l = 0; l < n2; ++l) {
    const int kb = l / 2;
    std::fill(buf.begin(), buf.end(), cplx(0.0, 0.0));
    bool any = false;
    if (l % 2 == 0) {
      const int lo = std::max({-kb, kb - n + 1, -n / 2});
      const int hi = std::min({n - 1 - kb, kb, n / 2 - 1});
      for (int mu = lo; mu <= hi; ++mu) {
        const cplx v = gamma.values[static_cast<std::size_t>(kb + mu)] *
                       std::conj(psi.values[static_cast<std::size_t>(kb - mu)]);
        if (v != cplx(0.0, 0.0)) {
          buf[static_cast<std::size_t>(2 * mu + n)] = v;
          any = true;
        }
      }
    } else {
      const int lo = std::max({-kb - 1, kb - n + 1, -(n / 2)});
      const int hi = std::min({n - 2 - kb, kb, n / 2 - 1});
      for (int mu = lo; mu <= hi; ++mu) {
        const cplx v = gamma.values[static_cast<std::size_t>(kb + mu + 1)] *
                       std::conj(psi.values[static_cast<std::size_t>(kb - mu)]);
        if (v != cplx(0.0, 0.0)) {
          buf[static_cast<std::size_t>(2 * mu + 1 + n)] = v;
          any = true;
        }
      }
    }
    if (!any) continue;
    fft::centered_forward(buf.data(), n2);
    for (int kap = 0; kap < n2; ++kap) {
      w2[static_cast<std::size_t>(l) * n2 + kap] = (2.0 * h) * buf[static_cast<std::size_t>(kap)];
    }
  }

  // Zero-padded linear convolution of the symbol comb against the half-step
  // ambiguity, in fine integer coordinates (units h/2 and dxi/2): comb point
  // (c, m) at coords (2c - n, 2m - n), ambiguity node (l, kappa) at
  // (l - n, kappa - n). Conv output t maps to coord sums shifted by the two
  // array origins: coord1 = t1 - 2n - 2 pad, coord2 = t2 - 2n.
  const int a1n = 2 * n + 4 * pad - 1;  // comb axis-1 size
  const int l1 = fft::next_fast_size(a1n + n2 - 1);
  const int l2 = fft::next_fast_size((2 * n - 1) + n2 - 1);
  std::vector<cplx> ca(static_cast<std::size_t>(l1) * l2, cplx(0.0, 0.0));
  std::vector<cplx> wb(static_cast<std::size_t>(l1) * l2, cplx(0.0, 0.0));
  for (int c = -pad; c < n + pad; ++c) {
    for (int m = 0; m < n; ++m) {
      const cplx v = sym[static_cast<std::size_t>(c + pad) * n + m];
      if (v == cplx(0.0, 0.0)) continue;
      ca[static_cast<std::size_t>(2 * c + 2 * pad) * l2 + 2 * m] = v;
    }
  }
  for (int l = 0; l < n2; ++l) {
    for (int kap = 0; kap < n2; ++kap) {
      const cplx v = w2[static_cast<std::size_t>(l) * n2 + kap];
      if (v != cplx(0.0, 0.0)) wb[static_cast<std::size_t>(l) * l2 + kap] = v;
    }
  }
  const std::vector<int> shape = {l1, l2};
  fft::raw_nd(ca.data(), shape, -1);
  fft::raw_nd(wb.data(), shape, -1);
  for (std::size_t i = 0; i < ca.size(); ++i) ca[i] *= wb[i];
  fft::raw_nd(ca.data(), shape, 1);
  const double cscale = (h * dxi) / (static_cast<double>(l1) * static_cast<double>(l2));

  // Midpoint kernel formula on the fine frequency range: per midpoint
  // s = i + j one length-4n centered transform gives every offset at once;
  // the offset u = (i - j) h reads bin 2(i - j) + 2n. Per symbol frequency
  // the 2n ambiguity bins span two periods of the fixed-parity offset
  // exponential (spacing 2h, period pi/h), so each offset is resolved with
  // weight 2n instead of the one-period n; dividing by 2 restores the
  // quadrature, after which the route reproduces the direct assembly term
  // by term.
  Grid kg(2, n, {h, h});
  SampledSignal ker(kg);
  const int n4 = 4 * n;
  std::vector<cplx> row(static_cast<std::size_t>(n4));
  const double kscale = (dxi / 2.0) / (2.0 * kPi) / 2.0;
  for (int s = 0; s <= 2 * n - 2; ++s) {
    const int t1 = s + n + 2 * pad;
    std::fill(row.begin(), row.end(), cplx(0.0, 0.0));
    for (int t2 = 0; t2 <= 4 * n - 3; ++t2) {
      row[static_cast<std::size_t>(t2)] = ca[static_cast<std::size_t>(t1) * l2 + t2] * cscale;
    }
    fft::centered_backward(row.data(), n4);
    for (int i = std::max(0, s - (n - 1)); i <= std::min(n - 1, s); ++i) {
      const int j = s - i;
      ker.values[static_cast<std::size_t>(i) * n + j] =
          kscale * row[static_cast<std::size_t>(2 * (i - j) + 2 * n)];
    }
  }
  return OperatorKernel{std::move(ker), provenance_string(a, psi, gamma)};
}

LocOpMatrix kernel_route_matrix(const SymbolSpec& a, const SampledSignal& psi,
                                const SampledSignal& gamma) {
  OperatorKernel k = operator_kernel(a, psi, gamma);
  const Grid& g = psi.grid;
  const int n = g.n();
  const double h = g.spacing(0);
  LocOpMatrix op{g, Eigen::MatrixXcd(n, n), std::move(k.provenance)};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      op.mat(i, j) = h * k.kernel.values[static_cast<std::size_t>(i) * n + j];
    }
  }
  return op;
}

double operator_norm(const LocOpMatrix& op, const MixedNormParams& prm,
                     const SampledSignal& window, int trials, std::uint64_t seed) {
  require_same_grid(op.grid, window.grid, "operator_norm");
  bool plain = !prm.p.is_inf() && !prm.q.is_inf() && prm.p.value() == 2.0 && prm.q.value() == 2.0;
  if (plain) {
    for (const WeightSpec& w : prm.weights) {
      if (w.exponent_scale() != 0.0) plain = false;
    }
  }
  // Unweighted (2,2): the windowed transform is a multiple of an isometry, so
  // the norm ratio collapses to the spectral norm of the matrix.
  if (plain) return spectral_norm(op);
  if (trials < 1) throw std::invalid_argument("operator_norm: trials must be >= 1");
  std::mt19937_64 gen(seed);
  double best = 0.0;
  for (int t = 0; t < trials; ++t) {
    const SampledSignal f = random_coherent_mixture(op.grid, 3, gen);
    const double den = modulation_norm(f, window, prm);
    if (!(den > 1e-300)) continue;
    const double num = modulation_norm(apply(op, f), window, prm);
    best = std::max(best, num / den);
  }
  return best;
}

Decay2m2Report check_2m2(const SymbolSpec& a, const Grid& signal_grid,
                         const WeightFunction& omega, double lambda,
                         std::span<const double> radii, int stride) {
  if (signal_grid.dim() != 1) throw std::invalid_argument("check_2m2: dim 1 signal grids only");
  if (radii.empty()) throw std::invalid_argument("check_2m2: need at least one radius");
  if (stride < 1) throw std::invalid_argument("check_2m2: stride must be >= 1");
  const int n = signal_grid.n();
  const double h = signal_grid.spacing(0);
  const double dxi = signal_grid.freq_spacing(0);

  // Treat the symbol as a 2-dim signal on the phase grid (x, xi) and scan its
  // windowed transform: slices live on the dual grid with spacings (dxi, h).
  Grid pg(2, n, {h, dxi});
  SampledSignal symb(pg);
  {
    std::array<double, 2> xs = {0.0, 0.0}, qs = {0.0, 0.0};
    for (int i = 0; i < n; ++i) {
      xs[0] = pg.node(0, i);
      for (int j = 0; j < n; ++j) {
        qs[0] = pg.node(1, j);
        symb.values[static_cast<std::size_t>(i) * n + j] =
            a.value_at(std::span<const double>(xs.data(), 1), std::span<const double>(qs.data(), 1));
      }
    }
  }
  const SampledSignal win = gaussian_window(pg);
  const Grid zg = pg.dual();

  struct BallPt {
    std::int64_t flat;
    double r2;
  };
  std::vector<std::vector<BallPt>> balls(radii.size());
  double rmax = 0.0;
  for (double r : radii) {
    if (!(r > 0.0)) throw std::invalid_argument("check_2m2: radii must be positive");
    rmax = std::max(rmax, r);
  }
  if (rmax > std::min(zg.half_extent(0), zg.half_extent(1))) {
    throw std::invalid_argument("check_2m2: radius exceeds the dual grid extent");
  }
  for (int k0 = 0; k0 < n; ++k0) {
    const double z0 = zg.node(0, k0);
    for (int k1 = 0; k1 < n; ++k1) {
      const double z1 = zg.node(1, k1);
      const double r2 = z0 * z0 + z1 * z1;
      for (std::size_t q = 0; q < radii.size(); ++q) {
        if (r2 <= radii[q] * radii[q] + 1e-9) {
          balls[q].push_back(BallPt{static_cast<std::int64_t>(k0) * n + k1, r2});
        }
      }
    }
  }

  Decay2m2Report rep;
  rep.radii.assign(radii.begin(), radii.end());
  rep.edge.assign(radii.size(), 0.0);
  rep.peak.assign(radii.size(), 0.0);
  rep.stride = stride;
  const double x0 = std::abs(pg.node(0, 0));
  const double x1 = std::abs(pg.node(1, 0));
  scan_stft_slices(symb, win, stride, [&](std::int64_t zflat, std::span<const cplx> slice) {
    const std::array<int, 2> zi = pg.unflat(zflat);
    const double za = pg.node(0, zi[0]);
    const double zb = pg.node(1, zi[1]);
    const double zr2 = za * za + zb * zb;
    const double scaled = std::max(std::abs(za) / x0, std::abs(zb) / x1);
    const bool on_edge = scaled >= rep.edge_threshold;
    for (std::size_t q = 0; q < balls.size(); ++q) {
      double stat = 0.0;
      for (const BallPt& b : balls[q]) {
        const double wgt = std::exp(lambda * omega(std::sqrt(zr2 + b.r2)));
        stat = std::max(stat, std::abs(slice[static_cast<std::size_t>(b.flat)]) * wgt);
      }
      rep.peak[q] = std::max(rep.peak[q], stat);
      if (on_edge) rep.edge[q] = std::max(rep.edge[q], stat);
    }
  });
  return rep;
}

}  // namespace tfloc
