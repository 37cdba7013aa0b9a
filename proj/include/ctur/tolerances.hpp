#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ctur {

// Numerical thresholds shared by all modules. Defaults are the documented
// acceptance levels; every field can be overridden by name (see set()).
struct Tolerances {
  double hermiticity = 1e-12;         // ||H - H^dag||_max for a valid Hamiltonian
  double trace_preservation = 1e-12;  // ||<1| L||_max
  double kernel_rel = 1e-6;           // |lambda| < gap * kernel_rel counts as kernel
  double steady_residual = 1e-9;      // ||L vec(rho_s)||_inf
  double steady_hermitian = 1e-10;
  double steady_trace = 1e-10;
  double positivity = 1e-9;           // smallest admissible eigenvalue of rho_s is -positivity
  double pinv_rcond = 1e-12;          // singular values below rcond * sigma_max are zero
  double condition_limit = 1e12;
  double drazin_identity = 1e-10;
  double imag_residue = 1e-10;       // relative to max(1, |real part|)
  double branch_guard = 1e-8;
  double ldb = 1e-10;                 // local detailed balance entrywise check
  double bound_slack = 1e-9;
  double current_floor = 1e-12;       // |J| at or below this makes psi undefined
  double chi_step = 1e-3;
  double theta_step = 1e-5;
  double j_rel = 1e-5;
  double d_rel = 1e-3;
  double sensitivity_rel = 1e-3;

  /// Overrides a field by name. Throws ConfigError for an unknown key.
  void set(std::string_view key, double value);
  double get(std::string_view key) const;
  static std::vector<std::string> keys();
};

}  // namespace ctur
