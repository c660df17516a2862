// Copyright 2026 tfloc authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#ifndef TFLOC_WEIGHTS_HPP
#define TFLOC_WEIGHTS_HPP

#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <utility>

namespace tfloc {

enum class WeightKind { log1p, power, logpower };

// Concave growth function omega on [0, inf) with omega(0) = 0, used as the
// exponent of phase-space weights exp(lambda * omega(|z|)). All built-ins are
// subadditive, satisfy the integral tail condition  int_1^inf omega(t)/t^2 dt < inf,
// dominate A + B*log(1+t) for reported constants (A, B), and have convex
// t -> omega(e^t).
class WeightFunction {
 public:
  // log(1 + t)
  static WeightFunction make_log1p();
  // t^beta, 0 < beta < 1
  static WeightFunction make_power(double beta);
  // Concave majorant of (log(1+t))^s, s >= 1: the raw power of a log is not
  // subadditive near the origin for s > 1, so the branch below the tangency
  // point t* is replaced by the tangent line through the origin. For s = 1
  // this is exactly log1p.
  static WeightFunction make_logpower(double s);
  static WeightFunction parse(const std::string& text);  // "log1p", "power:0.5", ...

  double operator()(double t) const;
  WeightKind kind() const { return kind_; }
  double param() const { return param_; }
  std::string name() const;

  // Constants (A, B) with omega(t) >= A + B*log(1+t) for all t >= 0.
  std::pair<double, double> log_bound_constants() const;

 private:
  WeightFunction(WeightKind k, double p);
  WeightKind kind_;
  double param_;
  double knee_t_ = 0.0;     // logpower: end of the linear segment
  double knee_slope_ = 0.0; // logpower: slope of the linear segment
};

// Weight on phase-space points built from omega. block selects the argument:
// full |(x, xi)|, first |x|, second |xi|. With absolute set the exponent uses
// |lambda| (the submultiplicative companion family); otherwise lambda itself
// (negative lambda gives a decaying weight).
enum class WeightBlock { full, first, second };

struct WeightSpec {
  WeightFunction omega;
  double lambda = 0.0;
  WeightBlock block = WeightBlock::full;
  bool absolute = false;

  double exponent_scale() const { return absolute ? std::abs(lambda) : lambda; }
  // Weight value at the point (x, xi); spans may be 1 or 2 entries each.
  double eval(std::span<const double> x, std::span<const double> xi) const;
  // Weight value expressed through the selected block radius.
  double eval_radius(double r) const;
};

// Numerical audit of the four standing conditions on omega over [0, t_max]:
// (subadditivity, integral tail, log lower bound, convexity of omega(e^t)).
// Sample pairs are Halton points, so reports are deterministic.
struct ConditionReport {
  int sample_count = 0;
  int subadditivity_violations = 0;
  double worst_subadditivity_gap = 0.0;  // max of omega(s+t) - omega(s) - omega(t)
  bool tail_integrable = false;          // claimed flag for the checked function
  double tail_integral = 0.0;            // int_1^{t_max} omega(t)/t^2 dt
  double tail_ratio_halving = 0.0;       // (omega(t)/t at t_max) / (same at t_max/2)
  std::pair<double, double> log_bound;   // constants (A, B) audited
  int log_bound_violations = 0;
  int convexity_violations = 0;
  bool all_hold() const {
    return subadditivity_violations == 0 && log_bound_violations == 0 &&
           convexity_violations == 0 && tail_integrable;
  }
};

ConditionReport check_weight_conditions(const WeightFunction& omega, double t_max,
                                        int sample_count);
// Same audit for an arbitrary callable; the caller supplies the claimed
// log-bound constants and tail flag to test against.
ConditionReport check_weight_conditions(const std::function<double(double)>& omega,
                                        std::pair<double, double> log_bound,
                                        bool tail_integrable_claim, double t_max,
                                        int sample_count);

}  // namespace tfloc

#endif
