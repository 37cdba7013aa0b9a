#pragma once

// Configuration-driven sweeps, the random scatter experiment and the
// validation suites behind the `ctur` command line tool.
//
// Config files are flat UTF-8 text, one `key = value` per line, `#` starts a
// comment. Recognized keys:
//
//   model            ssdb | classical | both                 (default ssdb)
//   gamma_h gamma_c n_h n_c omega_drive_amp detuning         (default: reference maser point)
//   sweep            detuning | n_c                          (default detuning)
//   lo hi points     sweep grid; points = 1 evaluates lo only
//                    (default -1.5, 1.5, 61; n_c sweeps default to 0.001, 1.0)
//   detuning_lo detuning_hi omega_lo omega_hi samples        scatter ranges (-1.5, 1.5, 0.01, 0.8, 500)
//   seed             scatter sampling seed                   (default 1)
//   output           CSV path                                (required by the CLI)
//   tol.<name>       override of any Tolerances field

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ctur/models.hpp"
#include "ctur/tolerances.hpp"
#include "ctur/tur.hpp"

namespace ctur {

enum class ModelKind { Ssdb, Classical, Both };
enum class SweepVariable { Detuning, BathPopulationCold };

struct SweepConfig {
  ModelKind model = ModelKind::Ssdb;
  models::SsdbParams params;
  SweepVariable variable = SweepVariable::Detuning;
  double lo = -1.5;
  double hi = 1.5;
  std::size_t points = 61;

  double detuning_lo = -1.5;
  double detuning_hi = 1.5;
  double omega_lo = 0.01;
  double omega_hi = 0.8;
  std::size_t samples = 500;

  std::string output;
  Tolerances tol;
  std::uint64_t seed = 1;

  /// Throws ConfigError on an inconsistent configuration.
  void validate() const;
};

SweepConfig parse_config(std::istream& in);
SweepConfig load_config(const std::filesystem::path& path);

struct SweepRecord {
  std::string model;  // "ssdb" or "classical"
  double value = 0.0; // swept parameter
  std::optional<TurReport> report;
  std::string error;  // empty on success, else the error kind
  std::string message;
};

/// One record per grid point and model, in sweep order (ssdb before classical).
std::vector<SweepRecord> run_sweep(const SweepConfig& config);
void write_sweep_csv(std::ostream& out, const SweepConfig& config, const std::vector<SweepRecord>& records);

struct ScatterRecord {
  double detuning = 0.0;
  double omega_drive_amp = 0.0;
  std::optional<TurReport> quantum;
  std::optional<TurReport> classical;
  std::string error;
};

std::vector<ScatterRecord> run_scatter(const SweepConfig& config);
void write_scatter_csv(std::ostream& out, const SweepConfig& config, const std::vector<ScatterRecord>& records);

/// Writes `text` to `path`; throws IoError on failure.
void write_file(const std::filesystem::path& path, const std::string& text);

struct ValidateOptions {
  Tolerances tol;
  bool skip_mc = false;
  std::size_t mc_trajectories = 2000;
  std::uint64_t seed = 7;
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<SuiteResult> run_validate(const ValidateOptions& options);

/// Fixed-width "%.16e" formatting, with inf / nan spelled out.
std::string format_number(double v);

}  // namespace ctur
