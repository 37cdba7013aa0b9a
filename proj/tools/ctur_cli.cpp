// ctur: steady-state current statistics and uncertainty bounds for the
// three-level maser and its classical reference.
//
//   ctur sweep <config> [-o out.csv]
//   ctur scatter <config> [-o out.csv]
//   ctur validate [--skip-mc] [--tol KEY=VAL ...]
//
// Exit status: 0 success, 1 validation or bound failure, 2 config error,
// 3 I/O error.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ctur/errors.hpp"
#include "ctur/runner.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

ctur::SweepConfig load(const std::string& path, const std::string& output_override) {
  ctur::SweepConfig cfg = ctur::load_config(path);
  if (!output_override.empty()) cfg.output = output_override;
  if (cfg.output.empty()) throw ctur::ConfigError("no output path (set 'output' or pass -o)");
  return cfg;
}

void emit(const ctur::SweepConfig& cfg, const std::string& text) {
  if (cfg.output == "-") {
    std::cout << text;
  } else {
    ctur::write_file(cfg.output, text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Current statistics and thermodynamic uncertainty bounds for Lindblad models"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output;
  auto* sweep = app.add_subcommand("sweep", "Sweep detuning or n_c and write one CSV row per point");
  sweep->add_option("config", config_path, "key = value config file")->required()->check(CLI::ExistingFile);
  sweep->add_option("-o,--output", output, "CSV path ('-' for stdout), overrides the config");

  auto* scatter = app.add_subcommand("scatter", "Random (detuning, omega) samples as CSV");
  scatter->add_option("config", config_path, "key = value config file")->required()->check(CLI::ExistingFile);
  scatter->add_option("-o,--output", output, "CSV path ('-' for stdout), overrides the config");

  bool skip_mc = false;
  std::vector<std::string> tol_overrides;
  std::size_t mc_trajectories = 2000;
  auto* validate = app.add_subcommand("validate", "Run the invariant suites and report pass/fail");
  validate->add_flag("--skip-mc", skip_mc, "Skip the Monte Carlo cross-check");
  validate->add_option("--tol", tol_overrides, "Tolerance override KEY=VAL (repeatable)");
  validate->add_option("--mc-trajectories", mc_trajectories, "Trajectories for the Monte Carlo suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*sweep) {
      const auto cfg = load(config_path, output);
      const auto records = ctur::run_sweep(cfg);
      std::ostringstream csv;
      ctur::write_sweep_csv(csv, cfg, records);
      emit(cfg, csv.str());
      int violations = 0;
      for (const auto& r : records) violations += r.error == "BoundViolation";
      if (violations > 0) {
        std::cerr << "sweep: " << violations << " point(s) violated a bound\n";
        return kExitFailure;
      }
      return 0;
    }

    if (*scatter) {
      const auto cfg = load(config_path, output);
      const auto records = ctur::run_scatter(cfg);
      std::ostringstream csv;
      ctur::write_scatter_csv(csv, cfg, records);
      emit(cfg, csv.str());
      for (const auto& r : records) {
        if (r.error.find("BoundViolation") != std::string::npos) return kExitFailure;
      }
      return 0;
    }

    ctur::ValidateOptions opts;
    opts.skip_mc = skip_mc;
    opts.mc_trajectories = mc_trajectories;
    for (const auto& kv : tol_overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ctur::ConfigError("--tol expects KEY=VAL, got '" + kv + "'");
      double value = 0.0;
      try {
        value = std::stod(kv.substr(eq + 1));
      } catch (const std::exception&) {
        throw ctur::ConfigError("--tol value in '" + kv + "' is not a number");
      }
      opts.tol.set(kv.substr(0, eq), value);
    }

    const auto results = ctur::run_validate(opts);
    std::vector<std::string> failed;
    for (const auto& r : results) {
      std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ':' << r.detail << '\n';
      if (!r.passed) failed.push_back(r.name);
    }
    if (!failed.empty()) {
      std::cout << "failed suites:";
      for (const auto& f : failed) std::cout << ' ' << f;
      std::cout << '\n';
      return kExitFailure;
    }
    std::cout << "all suites passed\n";
    return 0;
  } catch (const ctur::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ctur::ValidationError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ctur::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}
