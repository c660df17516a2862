// Copyright 2026 tfloc authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

// End-to-end gate: runs every verification suite at its default configuration
// and checks the battery's headline guarantees, one line per guarantee.

#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tfloc/harness.hpp"

using tfloc::ReportRow;
using tfloc::SuiteConfig;
using tfloc::SuiteId;
using tfloc::VerificationReport;

namespace {

struct Criterion {
  std::string label;
  bool ok = true;
  std::vector<std::string> why;

  void expect(bool cond, const std::string& msg) {
    if (!cond) {
      ok = false;
      why.push_back(msg);
    }
  }
};

const ReportRow* find_row(const VerificationReport& rep, const std::string& name) {
  for (const ReportRow& r : rep.rows) {
    if (r.case_name == name) return &r;
  }
  return nullptr;
}

std::vector<const ReportRow*> rows_with_prefix(const VerificationReport& rep,
                                               const std::string& prefix) {
  std::vector<const ReportRow*> out;
  for (const ReportRow& r : rep.rows) {
    if (r.case_name.rfind(prefix, 0) == 0) out.push_back(&r);
  }
  return out;
}

// Row must exist, pass, and (when tol >= 0) carry exactly the advertised
// tolerance, so a silently loosened threshold trips the gate.
void require_row(Criterion& c, const VerificationReport& rep, const std::string& name,
                 double tol = -1.0) {
  const ReportRow* r = find_row(rep, name);
  if (!r) {
    c.expect(false, "missing row " + name);
    return;
  }
  c.expect(r->pass, name + " failed: lhs=" + std::to_string(r->lhs) +
                        " rhs=" + std::to_string(r->rhs) + " tol=" + std::to_string(r->tol));
  if (tol >= 0.0) {
    c.expect(r->tol == tol, name + " tolerance drifted to " + std::to_string(r->tol));
  }
}

}  // namespace

int main() {
  std::map<SuiteId, VerificationReport> reps;
  for (SuiteId id : tfloc::all_suites()) {
    const SuiteConfig cfg = tfloc::default_config(id);
    std::printf("running suite %-16s (n=%d, extent=%g) ...\n", tfloc::suite_name(id).c_str(),
                cfg.n, cfg.extent);
    std::fflush(stdout);
    reps[id] = tfloc::run_suite(cfg);
  }

  std::vector<Criterion> cs;

  {
    Criterion c{"analysis/synthesis round trip below 1e-6 for reference signals"};
    const SuiteConfig cfg = tfloc::default_config(SuiteId::inversion);
    c.expect(cfg.n == 256 && cfg.extent == 12.0, "inversion defaults moved off n=256, T=12");
    require_row(c, reps[SuiteId::inversion], "roundtrip_g0", 1e-6);
    require_row(c, reps[SuiteId::inversion], "roundtrip_hermite1", 1e-6);
    cs.push_back(c);
  }
  {
    Criterion c{"flat symbol gives the scaled identity to 1e-6"};
    require_row(c, reps[SuiteId::weyl_equivalence], "identity_operator", 1e-6);
    cs.push_back(c);
  }
  {
    Criterion c{"kernel route matches direct assembly to 1e-5 for all built-in symbols"};
    for (const char* s : {"one", "gauss", "box", "xonly"}) {
      require_row(c, reps[SuiteId::weyl_equivalence], std::string("kernel_route_") + s, 1e-5);
    }
    cs.push_back(c);
  }
  {
    Criterion c{"norm estimates stay within 2x of the product bound over 50+ seeded cases"};
    const auto rows = rows_with_prefix(reps[SuiteId::boundedness], "bound_");
    c.expect(rows.size() >= 50, "only " + std::to_string(rows.size()) + " bound cases");
    for (const ReportRow* r : rows) {
      c.expect(r->pass, r->case_name + " exceeded the bound");
      c.expect(r->tol == 2.0, r->case_name + " tolerance drifted");
    }
    require_row(c, reps[SuiteId::boundedness], "ladder_stability", 0.1);
    cs.push_back(c);
  }
  {
    Criterion c{"convolution inequality holds across 20+ pairs and 5+ exponent tuples"};
    const auto rows = rows_with_prefix(reps[SuiteId::convolution], "conv_pair");
    std::set<std::string> pairs, tuples;
    for (const ReportRow* r : rows) {
      const auto cut = r->case_name.find("_tuple");
      pairs.insert(r->case_name.substr(0, cut));
      tuples.insert(r->case_name.substr(cut + 1));
      c.expect(r->pass, r->case_name + " exceeded the bound");
      c.expect(r->tol == 2.0, r->case_name + " tolerance drifted");
    }
    c.expect(pairs.size() >= 20, "only " + std::to_string(pairs.size()) + " signal pairs");
    c.expect(tuples.size() >= 5, "only " + std::to_string(tuples.size()) + " exponent tuples");
    require_row(c, reps[SuiteId::convolution], "ladder_stability", 0.1);
    cs.push_back(c);
  }
  {
    Criterion c{"vanishing symbols show spectral collapse, flat symbols show none"};
    for (const char* s : {"gauss", "box"}) {
      for (int n : {128, 256, 512}) {
        require_row(c, reps[SuiteId::compactness],
                    std::string("compact_") + s + "_n" + std::to_string(n), 1e-3);
      }
      require_row(c, reps[SuiteId::compactness], std::string("compact_") + s + "_K_stable", 1.0);
    }
    for (int n : {128, 256, 512}) {
      require_row(c, reps[SuiteId::compactness], "noncompact_one_n" + std::to_string(n), 1e-3);
    }
    cs.push_back(c);
  }
  {
    Criterion c{"windowed symbols decay off-center and the profile edge recedes on wider grids"};
    for (const char* s : {"gauss", "box"}) {
      require_row(c, reps[SuiteId::m01_decay], std::string("decay2m2_") + s, 1e-4);
      require_row(c, reps[SuiteId::m01_decay], std::string("m01_edge_") + s, 1e-3);
      require_row(c, reps[SuiteId::m01_decay], std::string("m01_ladder_") + s, 0.25);
    }
    require_row(c, reps[SuiteId::m01_decay], "m01_growth_one", 1.0);
    cs.push_back(c);
  }
  {
    Criterion c{"dense Gabor frame is tight, coefficient tails halve, nuclear bound dominates"};
    require_row(c, reps[SuiteId::frame_nuclear], "tight_defect", 1e-8);
    for (const char* r : {"4", "6", "8"}) {
      require_row(c, reps[SuiteId::frame_nuclear], std::string("l1_tail_halving_r") + r, 0.1);
    }
    require_row(c, reps[SuiteId::frame_nuclear], "nuclear_dominates_trace", 1.0);
    cs.push_back(c);
  }
  {
    Criterion c{"transform identities hold at rounding level"};
    require_row(c, reps[SuiteId::inversion], "adjoint_identity", 1e-12);
    require_row(c, reps[SuiteId::inversion], "wigner_real", 1e-10);
    require_row(c, reps[SuiteId::inversion], "orthogonality_g0", 1e-6);
    require_row(c, reps[SuiteId::inversion], "orthogonality_hermite1", 1e-6);
    require_row(c, reps[SuiteId::inversion], "covariance", 1e-10);
    cs.push_back(c);
  }
  {
    Criterion c{"repeated runs with one config and seed produce identical report rows"};
    for (SuiteId id : tfloc::all_suites()) {
      SuiteConfig cfg = tfloc::default_config(id);
      // Small grids keep the double runs quick; weyl_equivalence needs
      // spacing <= 0.13 for its interpolation row, m01 needs n % 6 == 0.
      cfg.n = 64;
      if (id == SuiteId::m01_decay) cfg.n = 96;
      if (id == SuiteId::weyl_equivalence) cfg.n = 128;
      cfg.extent = 8.0;
      if (id == SuiteId::boundedness) cfg.trials = 4;
      if (id == SuiteId::convolution) cfg.pairs = 3;
      const std::string a = tfloc::report_csv(tfloc::run_suite(cfg), false);
      const std::string b = tfloc::report_csv(tfloc::run_suite(cfg), false);
      c.expect(!a.empty() && a == b, tfloc::suite_name(id) + " rows differ between runs");
    }
    cs.push_back(c);
  }

  int failures = 0;
  std::printf("\n");
  for (std::size_t i = 0; i < cs.size(); ++i) {
    std::printf("[%2zu] %s  %s\n", i + 1, cs[i].ok ? "PASS" : "FAIL", cs[i].label.c_str());
    for (const std::string& w : cs[i].why) {
      std::printf("       - %s\n", w.c_str());
      ++failures;
    }
  }
  std::printf("\n%zu criteria, %d failing checks\n", cs.size(), failures > 0 ? failures : 0);
  return failures == 0 ? 0 : 1;
}
