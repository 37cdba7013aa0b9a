#pragma once

// Entropy production, Fisher-information rate, coherence factors and the
// uncertainty-relation bounds assembled into a TurReport.

#include <vector>

#include "ctur/errors.hpp"
#include "ctur/model.hpp"
#include "ctur/superop.hpp"
#include "ctur/tolerances.hpp"

namespace ctur {

struct TurReport {
  double J = 0.0;
  double D = 0.0;
  double sigma = 0.0;            // entropy production rate
  double psi = 0.0;              // coherence factor
  double upsilon = 0.0;          // dynamical activity
  double psi_cap = 0.0;          // coherent correction of the activity bound
  double qfi_rate = 0.0;         // I(0) / tau
  double tur_lhs = 0.0;          // D sigma / J^2
  double coherence_bound = 0.0;  // 2 (1 + psi)^2
  double xi_bound = 0.0;         // sigma / (upsilon + psi_cap)
  double classical_bound = 2.0;
  double sigma_lower = 0.0;

  double spectral_gap = 0.0;
  double drazin_condition = 0.0;
};

/// Raised when a computed report breaks one of the proven inequalities.
class BoundViolation : public Error {
 public:
  BoundViolation(const std::string& what, TurReport report) : Error(what), report_(report) {}
  const char* kind() const noexcept override { return "BoundViolation"; }
  const TurReport& report() const { return report_; }

 private:
  TurReport report_;
};

double entropy_production_rate(const LindbladModel& model, const SteadyState& ss,
                               const Tolerances& tol = {});

/// l_k = (r_k - r_k') / (r_k + r_k') with r the stationary fluxes; 0 for an
/// idle pair, 1 for a channel without reverse process.
std::vector<double> ell_weights(const LindbladModel& model, const SteadyState& ss);

/// I(0) / tau = sum_k l_k^2 Tr{L_k^dag L_k rho_s}, summed over channels.
double qfi_rate(const LindbladModel& model, const SteadyState& ss);

/// sum_k (r_k - r_k')^2 / (r_k + r_k'), summed over channels.
double sigma_lower_bound(const LindbladModel& model, const SteadyState& ss);

/// psi = Tr{J L^+ H rho_s} / J with H rho = -i[H, rho].
double coherence_factor_psi(const LindbladModel& model, const SteadyState& ss,
                            const DrazinInverse& drazin, const Tolerances& tol = {});

double dynamical_activity(const LindbladModel& model, const SteadyState& ss);

struct ActivitySuperOperators {
  SuperOperator k1;  // rho -> -i H rho + 1/2 sum_k (L_k rho L_k^dag - L_k^dag L_k rho)
  SuperOperator k2;  // rho ->  i rho H + 1/2 sum_k (L_k rho L_k^dag - rho L_k^dag L_k)
};

ActivitySuperOperators activity_superoperators(const LindbladModel& model);

/// Psi = -4 Tr[K1 L^+ K2 rho_s + K2 L^+ K1 rho_s].
double hasegawa_psi_cap(const LindbladModel& model, const SteadyState& ss, const DrazinInverse& drazin,
                        const Tolerances& tol = {});

/// Full evaluation at the model's steady state. Throws BoundViolation if
/// D sigma / J^2 < 2 (1 + psi)^2, sigma < sigma_lower or qfi_rate > sigma / 2
/// beyond tol.bound_slack.
TurReport tur_report(const LindbladModel& model, const Tolerances& tol = {});

}  // namespace ctur
