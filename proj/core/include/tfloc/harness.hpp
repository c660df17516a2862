// Copyright 2026 tfloc authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#ifndef TFLOC_HARNESS_HPP
#define TFLOC_HARNESS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace tfloc {

// Verification suites. Each one builds a family of numerical checks on a
// discretized configuration and reports one row per check with a uniform
// pass rule: lhs <= tol * rhs.
enum class SuiteId {
  inversion,         // transform round trips, adjointness, covariance, Moyal constant
  weyl_equivalence,  // identity symbol, direct vs kernel-route matrices
  boundedness,       // operator norm estimates against the product bound
  convolution,       // weighted convolution inequality across exponent tuples
  compactness,       // singular value decay for vanishing symbols, and its absence
  m01_decay,         // off-center decay of the twisted symbol profile
  frame_nuclear,     // Gabor tightness, coefficient tails, trace norm domination
};

std::vector<SuiteId> all_suites();
std::string suite_name(SuiteId id);
SuiteId parse_suite(const std::string& name);  // throws ConfigError
std::string describe_suite(SuiteId id);

// Knobs shared by the suites. Zero-valued n/extent/z_stride mean "use the
// suite default". Exponents are strings so "inf" is representable.
struct SuiteConfig {
  SuiteId suite = SuiteId::inversion;
  int n = 0;            // grid size per axis
  double extent = 0.0;  // half extent T; spacing is 2T/n
  std::string omega = "log1p";
  double lambda = 1.0;
  std::string p = "2", q = "2";
  std::vector<std::string> symbols;  // empty = suite default set
  std::string psi = "g0", gamma = "g0";
  std::uint64_t seed = 20260818;
  double c_disc = 2.0;   // discretization headroom multiplier for inequalities
  int trials = 6;        // random trial count for norm estimators
  int pairs = 20;        // signal pairs for the convolution suite
  int z_stride = 0;      // phase-space scan stride; 0 = max(2, n/32)
  std::vector<double> radii = {1.0, 2.0, 4.0};       // 2m2 frequency radii
  std::vector<double> tail_radii = {4.0, 6.0, 8.0};  // coefficient tail radii (lattice steps)
  int gabor_p = 2, gabor_q = 4;                      // Gabor lattice steps
  double prune_rel = 1e-24;                          // coefficient pair pruning
};

SuiteConfig default_config(SuiteId id);

// key=value lines, '#' comments, blank lines ignored. A "suite" key is
// required; remaining keys override that suite's defaults. Unknown keys or
// malformed values throw ConfigError.
SuiteConfig parse_config_text(const std::string& text);
SuiteConfig parse_config_file(const std::string& path);

struct ReportRow {
  std::string suite;
  std::string case_name;
  std::string param_json;  // compact JSON of the case parameters
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;  // lhs / rhs (0 when rhs == 0)
  double tol = 0.0;
  bool pass = false;  // lhs <= tol * rhs
  double seconds = 0.0;
};

struct VerificationReport {
  std::string suite;
  std::vector<ReportRow> rows;
  bool all_pass() const;
  int failed_count() const;
};

VerificationReport run_suite(const SuiteConfig& cfg);

// CSV with a header row; field order suite,case,params,lhs,rhs,ratio,tol,pass
// and optionally seconds. Numeric fields print with %.17g so equal doubles
// give equal bytes; params is CSV-quoted. With include_timing false the
// output depends only on the computed values, not the clock.
std::string report_csv(const VerificationReport& rep, bool include_timing);

// One JSON object: suite, row count, pass counts, failed case names.
std::string report_summary_json(const VerificationReport& rep);

}  // namespace tfloc

#endif
