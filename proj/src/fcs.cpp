#include "ctur/fcs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ctur/errors.hpp"
#include "ctur/tur.hpp"

namespace ctur {

namespace {

constexpr Complex kI{0.0, 1.0};

double real_checked(Complex z, double tol, const char* what) {
  if (std::abs(z.imag()) > tol * std::max(1.0, std::abs(z.real()))) {
    throw InternalConsistencyError(std::string(what) + ": imaginary residue " +
                                   std::to_string(z.imag()));
  }
  return z.real();
}

}  // namespace

std::string_view to_string(CumulantMethod m) {
  switch (m) {
    case CumulantMethod::Analytic: return "analytic";
    case CumulantMethod::NumericCgf: return "numeric-cgf";
    case CumulantMethod::MonteCarlo: return "monte-carlo";
  }
  return "unknown";
}

SuperOperator current_superoperator(const LindbladModel& model) {
  SuperOperator out = SuperOperator::zero(model.dim());
  for (const auto& ch : model.channels()) {
    if (ch.nu != 0) out += sandwich(ch.jump, ch.jump.adjoint()) * static_cast<double>(ch.nu);
  }
  return out;
}

SuperOperator tilted_liouvillian(const LindbladModel& model, double chi) {
  SuperOperator out = build_liouvillian(model);
  if (chi == 0.0) return out;
  for (const auto& ch : model.channels()) {
    if (ch.nu == 0) continue;
    // Reduce the angle first so that chi and chi + 2 pi give identical tilts.
    const double angle = std::remainder(static_cast<double>(ch.nu) * chi, 2.0 * std::numbers::pi);
    const Complex phase = std::exp(kI * angle) - 1.0;
    out += sandwich(ch.jump, ch.jump.adjoint()) * phase;
  }
  return out;
}

Complex cgf_dominant_eigenvalue(const LindbladModel& model, double chi, const Tolerances& tol) {
  const SuperOperator tilted = tilted_liouvillian(model, chi);
  Eigen::ComplexEigenSolver<ComplexMatrix> es(tilted.matrix(), /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw InternalConsistencyError("cgf_dominant_eigenvalue: eigendecomposition failed");
  }
  const ComplexVector& lambda = es.eigenvalues();
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < lambda.size(); ++i) {
    if (lambda(i).real() > lambda(best).real()) best = i;
  }
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (i != best && lambda(best).real() - lambda(i).real() <= tol.branch_guard) {
      throw BranchCrossing("cgf_dominant_eigenvalue: two eigenvalues share the leading real part at chi = " +
                           std::to_string(chi));
    }
  }
  return lambda(best);
}

double mean_current_analytic(const LindbladModel& model, const SteadyState& ss, const Tolerances& tol) {
  const Complex j = trace_of(current_superoperator(model), ss.rho);
  return real_checked(j, tol.imag_residue, "mean_current_analytic");
}

double noise_analytic(const LindbladModel& model, const SteadyState& ss, const DrazinInverse& drazin,
                      const Tolerances& tol) {
  const SuperOperator jop = current_superoperator(model);
  Complex direct{0.0, 0.0};
  for (const auto& ch : model.channels()) {
    if (ch.nu == 0) continue;
    direct += static_cast<double>(ch.nu * ch.nu) * (ch.jump * ss.rho * ch.jump.adjoint()).trace();
  }
  const RowVector one = trace_row(model.dim());
  const Complex correlated = (one * jop.matrix() * drazin.op.matrix() * jop.matrix() * vectorize(ss.rho))(0);
  const double d = real_checked(direct - 2.0 * correlated, tol.imag_residue, "noise_analytic");
  if (d < -tol.bound_slack) {
    throw InternalConsistencyError("noise_analytic: negative noise " + std::to_string(d));
  }
  return d;
}

CumulantEstimates cumulants_numeric(const LindbladModel& model, const Tolerances& tol) {
  const double h = tol.chi_step;
  if (!(h > 0.0)) throw StepError("cumulants_numeric: chi step must be positive");

  const Complex zp = cgf_dominant_eigenvalue(model, h, tol);
  const Complex z0 = cgf_dominant_eigenvalue(model, 0.0, tol);
  const Complex zm = cgf_dominant_eigenvalue(model, -h, tol);

  constexpr double kResidue = 1e-8;
  CumulantEstimates out;
  out.method = CumulantMethod::NumericCgf;
  out.chi_step = h;
  out.J = real_checked(-kI * (zp - zm) / (2.0 * h), kResidue, "cumulants_numeric(J)");
  out.D = real_checked(-(zp - 2.0 * z0 + zm) / (h * h), kResidue, "cumulants_numeric(D)");
  return out;
}

double deformed_mean_sensitivity(const LindbladModel& model, const SteadyState& ss, double tau,
                                 const Tolerances& tol) {
  if (!(tau > 0.0) || (std::isfinite(ss.spectral_gap) && tau * ss.spectral_gap < 50.0)) {
    throw PreconditionError("deformed_mean_sensitivity: tau must be at least 50 / spectral gap");
  }
  const std::vector<double> ell = ell_weights(model, ss);
  const double theta = tol.theta_step;
  const double chi = tol.chi_step;
  double ell_max = 0.0;
  for (double l : ell) ell_max = std::max(ell_max, std::abs(l));
  if (!(theta > 0.0) || !(chi > 0.0) || (1.0 + theta) == 1.0 || (1.0 + chi) == 1.0 ||
      theta * ell_max >= 1.0) {
    throw StepError("deformed_mean_sensitivity: unusable finite-difference step");
  }

  const RowVector one = trace_row(model.dim());
  const ComplexVector rho = vectorize(ss.rho);

  // E_theta[N(tau)] = -i d/dchi Tr[exp(L_{theta,chi} tau) rho_s] at chi = 0.
  auto expected_count = [&](double th) {
    std::vector<double> factors(ell.size());
    for (std::size_t k = 0; k < ell.size(); ++k) factors[k] = std::sqrt(1.0 + ell[k] * th);
    const LindbladModel deformed = model.with_scaled_jumps(factors);
    auto moment = [&](double c) {
      return (one * expm(tilted_liouvillian(deformed, c).matrix(), tau) * rho)(0);
    };
    return (-kI * (moment(chi) - moment(-chi)) / (2.0 * chi)).real();
  };

  return (expected_count(theta) - expected_count(-theta)) / (2.0 * theta);
}

}  // namespace ctur
