// Copyright 2026 tfloc authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "tfloc/weights.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "tfloc/errors.hpp"

namespace tfloc {

namespace {

// Radical-inverse (Halton) sequence; deterministic low-discrepancy samples.
double halton(std::uint64_t i, int base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

// Positive root of u = s*(1 - exp(-u)) for s > 1; the tangency point of a
// line through the origin against (log(1+t))^s sits at t = e^u - 1.
double tangency_parameter(double s) {
  double u = s;  // root lies in (0, s)
  for (int it = 0; it < 64; ++it) {
    double e = std::exp(-u);
    double f = u - s * (1.0 - e);
    double df = 1.0 - s * e;
    double step = f / df;
    u -= step;
    if (std::abs(step) < 1e-15 * (1.0 + u)) break;
  }
  return u;
}

}  // namespace

WeightFunction::WeightFunction(WeightKind k, double p) : kind_(k), param_(p) {}

WeightFunction WeightFunction::make_log1p() { return WeightFunction(WeightKind::log1p, 1.0); }

WeightFunction WeightFunction::make_power(double beta) {
  if (!(beta > 0.0) || !(beta < 1.0)) {
    throw std::invalid_argument("power weight needs 0 < beta < 1");
  }
  return WeightFunction(WeightKind::power, beta);
}

WeightFunction WeightFunction::make_logpower(double s) {
  if (!(s >= 1.0)) throw std::invalid_argument("logpower weight needs s >= 1");
  WeightFunction w(WeightKind::logpower, s);
  if (s > 1.0) {
    double u = tangency_parameter(s);
    w.knee_t_ = std::expm1(u);
    w.knee_slope_ = std::pow(u, s) / w.knee_t_;
  }
  return w;
}

WeightFunction WeightFunction::parse(const std::string& text) {
  auto colon = text.find(':');
  std::string kind = text.substr(0, colon);
  double param = 0.0;
  bool has_param = colon != std::string::npos;
  if (has_param) {
    try {
      param = std::stod(text.substr(colon + 1));
    } catch (const std::exception&) {
      throw ConfigError("bad weight parameter in '" + text + "'");
    }
  }
  if (kind == "log1p") {
    if (has_param) throw ConfigError("log1p takes no parameter");
    return make_log1p();
  }
  try {
    if (kind == "power") return make_power(has_param ? param : 0.5);
    if (kind == "logpower") return make_logpower(has_param ? param : 2.0);
  } catch (const std::invalid_argument& e) {
    // out-of-range parameter on the config path
    throw ConfigError(std::string(e.what()) + " in '" + text + "'");
  }
  throw ConfigError("unknown weight kind: " + text);
}

double WeightFunction::operator()(double t) const {
  if (!(t >= 0.0)) throw std::domain_error("weight argument must be >= 0");
  switch (kind_) {
    case WeightKind::log1p:
      return std::log1p(t);
    case WeightKind::power:
      return std::pow(t, param_);
    case WeightKind::logpower:
      if (param_ == 1.0) return std::log1p(t);
      if (t <= knee_t_) return knee_slope_ * t;
      return std::pow(std::log1p(t), param_);
  }
  throw std::logic_error("unreachable");
}

std::string WeightFunction::name() const {
  switch (kind_) {
    case WeightKind::log1p:
      return "log1p";
    case WeightKind::power:
      return "power:" + std::to_string(param_);
    case WeightKind::logpower:
      return "logpower:" + std::to_string(param_);
  }
  return "?";
}

std::pair<double, double> WeightFunction::log_bound_constants() const {
  switch (kind_) {
    case WeightKind::log1p:
      return {0.0, 1.0};
    case WeightKind::power:
      // t^beta >= beta*log(1+t) for 0 < beta < 1.
      return {0.0, param_};
    case WeightKind::logpower:
      // u^s >= u - 1 for u >= 0, s >= 1, and the linear head only increases it.
      return {-1.0, 1.0};
  }
  return {0.0, 0.0};
}

double WeightSpec::eval(std::span<const double> x, std::span<const double> xi) const {
  double r2 = 0.0;
  if (block == WeightBlock::full || block == WeightBlock::first) {
    for (double v : x) r2 += v * v;
  }
  if (block == WeightBlock::full || block == WeightBlock::second) {
    for (double v : xi) r2 += v * v;
  }
  return eval_radius(std::sqrt(r2));
}

double WeightSpec::eval_radius(double r) const {
  double lam = exponent_scale();
  if (lam == 0.0) return 1.0;
  return std::exp(lam * omega(r));
}

namespace {

ConditionReport run_checks(const std::function<double(double)>& omega,
                           std::pair<double, double> log_bound, bool tail_claim,
                           double t_max, int sample_count) {
  if (!(t_max > 2.0)) throw std::invalid_argument("check_weight_conditions: t_max > 2 required");
  if (sample_count < 16) throw std::invalid_argument("check_weight_conditions: too few samples");

  ConditionReport rep;
  rep.sample_count = sample_count;
  rep.log_bound = log_bound;

  const double rel_tol = 1e-12;
  for (int i = 1; i <= sample_count; ++i) {
    double t1 = t_max * halton(static_cast<std::uint64_t>(i), 2);
    double t2 = t_max * halton(static_cast<std::uint64_t>(i), 3);
    double w1 = omega(t1), w2 = omega(t2), w12 = omega(t1 + t2);
    double tol = rel_tol * (1.0 + std::abs(w1) + std::abs(w2));
    double gap = w12 - w1 - w2;
    if (gap > rep.worst_subadditivity_gap) rep.worst_subadditivity_gap = gap;
    if (gap > tol) ++rep.subadditivity_violations;

    double lb = log_bound.first + log_bound.second * std::log1p(t1);
    if (w1 + tol < lb) ++rep.log_bound_violations;
  }

  // Convexity of phi(tau) = omega(e^tau), midpoint test on Halton pairs.
  const double tau_lo = std::log(1e-6), tau_hi = std::log(t_max);
  for (int i = 1; i <= sample_count; ++i) {
    double tau1 = tau_lo + (tau_hi - tau_lo) * halton(static_cast<std::uint64_t>(i), 2);
    double tau2 = tau_lo + (tau_hi - tau_lo) * halton(static_cast<std::uint64_t>(i), 3);
    double p1 = omega(std::exp(tau1)), p2 = omega(std::exp(tau2));
    double pm = omega(std::exp(0.5 * (tau1 + tau2)));
    double tol = rel_tol * (1.0 + std::abs(p1) + std::abs(p2));
    if (pm > 0.5 * (p1 + p2) + tol) ++rep.convexity_violations;
  }

  // int_1^{t_max} omega(t)/t^2 dt via Simpson in tau = log t.
  {
    const int nodes = 2000;  // even interval count
    double a = 0.0, b = std::log(t_max);
    double hstep = (b - a) / nodes;
    double acc = 0.0;
    for (int i = 0; i <= nodes; ++i) {
      double tau = a + i * hstep;
      double val = omega(std::exp(tau)) * std::exp(-tau);
      double coef = (i == 0 || i == nodes) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      acc += coef * val;
    }
    rep.tail_integral = acc * hstep / 3.0;
  }
  {
    double r_full = omega(t_max) / t_max;
    double r_half = omega(0.5 * t_max) / (0.5 * t_max);
    rep.tail_ratio_halving = r_half > 0.0 ? r_full / r_half : 1.0;
  }
  rep.tail_integrable = tail_claim && rep.tail_ratio_halving < 0.999;
  return rep;
}

}  // namespace

ConditionReport check_weight_conditions(const WeightFunction& omega, double t_max,
                                        int sample_count) {
  auto fn = [&omega](double t) { return omega(t); };
  return run_checks(fn, omega.log_bound_constants(), true, t_max, sample_count);
}

ConditionReport check_weight_conditions(const std::function<double(double)>& omega,
                                        std::pair<double, double> log_bound,
                                        bool tail_integrable_claim, double t_max,
                                        int sample_count) {
  return run_checks(omega, log_bound, tail_integrable_claim, t_max, sample_count);
}

}  // namespace tfloc
