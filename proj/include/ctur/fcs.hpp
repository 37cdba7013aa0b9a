#pragma once

// Full counting statistics of the integrated current
// N(tau) = sum_k nu_k * (number of k-jumps in [0, tau]).

#include <string_view>

#include "ctur/model.hpp"
#include "ctur/superop.hpp"
#include "ctur/tolerances.hpp"

namespace ctur {

enum class CumulantMethod { Analytic, NumericCgf, MonteCarlo };

std::string_view to_string(CumulantMethod m);

struct CumulantEstimates {
  double J = 0.0;  // counts per unit time
  double D = 0.0;  // counts^2 per unit time
  CumulantMethod method = CumulantMethod::Analytic;
  double chi_step = 0.0;  // zero for the analytic route
};

/// J-superoperator: rho -> sum_k nu_k L_k rho L_k^dag.
SuperOperator current_superoperator(const LindbladModel& model);

/// L_chi = L + sum_k (exp(i nu_k chi) - 1) L_k . L_k^dag.
SuperOperator tilted_liouvillian(const LindbladModel& model, double chi);

/// Scaled CGF zeta(chi): the eigenvalue of L_chi with the largest real
/// part. Throws BranchCrossing when a second eigenvalue comes within
/// tol.branch_guard of that real part.
Complex cgf_dominant_eigenvalue(const LindbladModel& model, double chi, const Tolerances& tol = {});

double mean_current_analytic(const LindbladModel& model, const SteadyState& ss,
                             const Tolerances& tol = {});

double noise_analytic(const LindbladModel& model, const SteadyState& ss, const DrazinInverse& drazin,
                      const Tolerances& tol = {});

/// J and D from central differences of zeta with step tol.chi_step.
CumulantEstimates cumulants_numeric(const LindbladModel& model, const Tolerances& tol = {});

/// d/dtheta E_theta[N(tau)] at theta = 0 under the deformation
/// L_k -> sqrt(1 + l_k theta) L_k, starting from rho_s. Evaluated with
/// matrix exponentials and nested central differences (steps
/// tol.chi_step and tol.theta_step). Requires tau >= 50 / spectral gap.
double deformed_mean_sensitivity(const LindbladModel& model, const SteadyState& ss, double tau,
                                 const Tolerances& tol = {});

}  // namespace ctur
