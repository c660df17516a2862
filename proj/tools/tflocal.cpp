// Copyright 2026 tfloc authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tfloc/errors.hpp"
#include "tfloc/harness.hpp"
#include "tfloc/io.hpp"
#include "tfloc/locop.hpp"
#include "tfloc/transforms.hpp"
#include "tfloc/version.hpp"

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw tfloc::Error("cannot open output file: " + path.string());
  out << text;
}

std::string file_tag(const std::string& name) {
  std::string out;
  for (char c : name) out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  return out;
}

// Operator matrices and their singular spectra for the run's symbols, in the
// flat binary container format.
void export_artifacts(const std::filesystem::path& dir, const tfloc::SuiteConfig& cfg) {
  const tfloc::Grid g = tfloc::Grid::from_extent(1, cfg.n, cfg.extent);
  const tfloc::SampledSignal psi = tfloc::make_window(g, cfg.psi);
  const tfloc::SampledSignal gamma = tfloc::make_window(g, cfg.gamma);
  std::vector<std::string> syms = cfg.symbols;
  if (syms.empty()) syms = {"one", "gauss", "box", "xonly"};
  for (const std::string& sym : syms) {
    const tfloc::LocOpMatrix op =
        tfloc::localization_matrix(tfloc::SymbolSpec::parse(sym), psi, gamma);
    tfloc::PhaseSpaceFunction mat(g, g);
    for (std::int64_t i = 0; i < g.size(); ++i) {
      for (std::int64_t j = 0; j < g.size(); ++j) {
        mat.values[static_cast<std::size_t>(i * g.size() + j)] = op.mat(i, j);
      }
    }
    tfloc::write_phase_space((dir / ("operator_" + file_tag(sym) + ".tfb")).string(), mat);
    const std::vector<double> sv = tfloc::singular_values(op);
    tfloc::SampledSignal spec(g);
    for (std::size_t k = 0; k < sv.size(); ++k) spec.values[k] = sv[k];
    tfloc::write_signal((dir / ("spectrum_" + file_tag(sym) + ".tfb")).string(), spec);
  }
}

int run_command(const std::string& config_path, const std::string& suite,
                const std::vector<std::string>& sets, const std::string& out_dir, bool summary,
                bool no_timing) {
  if (config_path.empty() && suite.empty()) {
    throw tfloc::ConfigError("run needs --config or --suite");
  }
  std::string text;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw tfloc::ConfigError("cannot open config file: " + config_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
    if (!text.empty() && text.back() != '\n') text += '\n';
  }
  // later lines win, so command line overrides the file
  if (!suite.empty()) text += "suite=" + suite + "\n";
  for (const std::string& s : sets) text += s + "\n";

  tfloc::SuiteConfig cfg = tfloc::parse_config_text(text);
  tfloc::VerificationReport rep = tfloc::run_suite(cfg);
  const std::string csv = tfloc::report_csv(rep, !no_timing);
  if (!out_dir.empty()) {
    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    write_text(dir / "report.csv", csv);
    write_text(dir / "summary.json", tfloc::report_summary_json(rep) + "\n");
    export_artifacts(dir, cfg);
  } else if (!summary) {
    std::cout << csv;
  }
  if (summary) std::cout << tfloc::report_summary_json(rep) << "\n";
  return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification suites for time-frequency localization operators"};
  app.require_subcommand(0, 1);

  std::string config_path, suite, out_path;
  std::vector<std::string> sets;
  bool summary = false, no_timing = false;
  CLI::App* run = app.add_subcommand("run", "run one suite and report a row per check");
  run->add_option("--config", config_path, "key=value config file; must set suite=<name>");
  run->add_option("--suite", suite, "suite name with default config; see 'list'");
  run->add_option("--set", sets, "key=value override, repeatable, wins over the file");
  run->add_option("--out", out_path,
                  "directory for report.csv, summary.json and operator/spectrum containers");
  run->add_flag("--summary", summary, "print a one-line JSON summary on stdout");
  run->add_flag("--no-timing", no_timing, "omit the seconds column for byte-stable output");

  CLI::App* list = app.add_subcommand("list", "list suite names with one-line descriptions");

  std::string dsuite;
  CLI::App* describe = app.add_subcommand("describe", "explain what one suite checks");
  describe->add_option("suite", dsuite, "suite name")->required();

  CLI::App* version = app.add_subcommand("version", "print the library version");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return run_command(config_path, suite, sets, out_path, summary, no_timing);
    }
    if (list->parsed()) {
      for (tfloc::SuiteId id : tfloc::all_suites()) std::cout << tfloc::suite_name(id) << "\n";
      return 0;
    }
    if (describe->parsed()) {
      tfloc::SuiteId id = tfloc::parse_suite(dsuite);
      std::cout << tfloc::suite_name(id) << ": " << tfloc::describe_suite(id) << "\n";
      return 0;
    }
    if (version->parsed()) {
      std::cout << tfloc::version() << "\n";
      return 0;
    }
    std::cout << app.help();
    return 0;
  } catch (const tfloc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
