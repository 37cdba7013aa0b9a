#include "ctur/tur.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "ctur/fcs.hpp"

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

double pair_ratio(double forward, double backward) {
  const double total = forward + backward;
  return total > 0.0 ? (forward - backward) / total : 0.0;
}

}  // namespace

double entropy_production_rate(const LindbladModel& model, const SteadyState& ss, const Tolerances& tol) {
  double sigma = 0.0;
  for (std::size_t k = 0; k < model.size(); ++k) {
    const auto& ch = model.channels()[k];
    if (!ch.delta_s) {
      throw ConfigError("entropy_production_rate: " +
                        (ch.label.empty() ? "channel " + std::to_string(k) : ch.label) +
                        " has no entropy step");
    }
    const Complex flux = (ch.jump.adjoint() * ch.jump * ss.rho).trace();
    const double r = real_checked(flux, tol.imag_residue, "entropy_production_rate");
    // A closed channel with an infinite entropy step contributes nothing.
    if (r != 0.0) sigma += r * *ch.delta_s;
  }
  if (sigma < -tol.bound_slack) {
    throw InternalConsistencyError("entropy_production_rate: negative sigma " + std::to_string(sigma));
  }
  return sigma;
}

std::vector<double> ell_weights(const LindbladModel& model, const SteadyState& ss) {
  const auto fwd = channel_fluxes(model, ss.rho);
  const auto bwd = reverse_fluxes(model, fwd);
  std::vector<double> ell(fwd.size());
  for (std::size_t k = 0; k < fwd.size(); ++k) ell[k] = pair_ratio(fwd[k], bwd[k]);
  return ell;
}

double qfi_rate(const LindbladModel& model, const SteadyState& ss) {
  const auto fwd = channel_fluxes(model, ss.rho);
  const auto ell = ell_weights(model, ss);
  double out = 0.0;
  for (std::size_t k = 0; k < fwd.size(); ++k) out += ell[k] * ell[k] * fwd[k];
  return out;
}

double sigma_lower_bound(const LindbladModel& model, const SteadyState& ss) {
  const auto fwd = channel_fluxes(model, ss.rho);
  const auto bwd = reverse_fluxes(model, fwd);
  double out = 0.0;
  for (std::size_t k = 0; k < fwd.size(); ++k) {
    const double total = fwd[k] + bwd[k];
    if (total > 0.0) out += (fwd[k] - bwd[k]) * (fwd[k] - bwd[k]) / total;
  }
  return out;
}

double coherence_factor_psi(const LindbladModel& model, const SteadyState& ss, const DrazinInverse& drazin,
                            const Tolerances& tol) {
  const double j = mean_current_analytic(model, ss, tol);
  if (std::abs(j) <= tol.current_floor) {
    throw CurrentVanishes("coherence_factor_psi: mean current " + std::to_string(j) +
                          " too small, psi undefined");
  }
  const SuperOperator h = commutator_generator(model.hamiltonian());
  const Complex raw = (trace_row(model.dim()) * current_superoperator(model).matrix() *
                       drazin.op.matrix() * h.matrix() * vectorize(ss.rho))(0);
  return real_checked(raw / j, tol.imag_residue, "coherence_factor_psi");
}

double dynamical_activity(const LindbladModel& model, const SteadyState& ss) {
  const auto fwd = channel_fluxes(model, ss.rho);
  double total = 0.0;
  for (double r : fwd) total += r;
  return total;
}

ActivitySuperOperators activity_superoperators(const LindbladModel& model) {
  const std::size_t d = model.dim();
  const ComplexMatrix& h = model.hamiltonian();
  ActivitySuperOperators out{left_multiply(h) * (-kI), right_multiply(h) * kI};
  SuperOperator jumps = SuperOperator::zero(d);
  ComplexMatrix ldl = ComplexMatrix::Zero(h.rows(), h.cols());
  for (const auto& ch : model.channels()) {
    jumps += sandwich(ch.jump, ch.jump.adjoint());
    ldl += ch.jump.adjoint() * ch.jump;
  }
  out.k1 += (jumps - left_multiply(ldl)) * 0.5;
  out.k2 += (jumps - right_multiply(ldl)) * 0.5;
  return out;
}

double hasegawa_psi_cap(const LindbladModel& model, const SteadyState& ss, const DrazinInverse& drazin,
                        const Tolerances& tol) {
  const auto [k1, k2] = activity_superoperators(model);
  // The Hamiltonian parts carry -/+ i Tr(H rho); the jump parts and K1 + K2 are traceless.
  const ComplexMatrix& h = model.hamiltonian();
  const SuperOperator jump1 = k1 - left_multiply(h) * (-kI);
  const SuperOperator jump2 = k2 - right_multiply(h) * kI;
  const double scale = std::max({1.0, max_abs(k1.matrix()), max_abs(k2.matrix())});
  if (trace_defect(jump1) > tol.imag_residue * scale || trace_defect(jump2) > tol.imag_residue * scale ||
      trace_defect(k1 + k2) > tol.imag_residue * scale) {
    throw InternalConsistencyError("hasegawa_psi_cap: jump parts of K1, K2 are not traceless");
  }
  const RowVector one = trace_row(model.dim());
  const ComplexVector rho = vectorize(ss.rho);
  const ComplexMatrix& lp = drazin.op.matrix();
  const Complex raw = (one * (k1.matrix() * lp * k2.matrix() + k2.matrix() * lp * k1.matrix()) * rho)(0);
  return real_checked(-4.0 * raw, tol.imag_residue, "hasegawa_psi_cap");
}

TurReport tur_report(const LindbladModel& model, const Tolerances& tol) {
  const SuperOperator gen = build_liouvillian(model, tol);
  const SteadyState ss = steady_state(gen, tol);
  const DrazinInverse lp = drazin_inverse(gen, ss, tol);

  TurReport r;
  r.spectral_gap = ss.spectral_gap;
  r.drazin_condition = lp.condition;
  r.J = mean_current_analytic(model, ss, tol);
  r.D = noise_analytic(model, ss, lp, tol);
  r.sigma = entropy_production_rate(model, ss, tol);
  r.psi = coherence_factor_psi(model, ss, lp, tol);
  r.upsilon = dynamical_activity(model, ss);
  r.psi_cap = hasegawa_psi_cap(model, ss, lp, tol);
  r.qfi_rate = qfi_rate(model, ss);
  r.sigma_lower = sigma_lower_bound(model, ss);
  r.tur_lhs = r.D * r.sigma / (r.J * r.J);
  r.coherence_bound = 2.0 * (1.0 + r.psi) * (1.0 + r.psi);
  r.xi_bound = r.sigma / (r.upsilon + r.psi_cap);
  r.classical_bound = 2.0;

  std::ostringstream bad;
  if (r.tur_lhs < r.coherence_bound - tol.bound_slack) {
    bad << " D*sigma/J^2=" << r.tur_lhs << " < 2(1+psi)^2=" << r.coherence_bound << ';';
  }
  if (r.sigma < r.sigma_lower - tol.bound_slack) {
    bad << " sigma=" << r.sigma << " < sigma_lower=" << r.sigma_lower << ';';
  }
  if (r.qfi_rate > r.sigma / 2.0 + tol.bound_slack) {
    bad << " qfi_rate=" << r.qfi_rate << " > sigma/2=" << r.sigma / 2.0 << ';';
  }
  if (!bad.str().empty()) throw BoundViolation("tur_report:" + bad.str(), r);
  return r;
}

}  // namespace ctur
