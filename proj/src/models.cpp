#include "ctur/models.hpp"

#include <cmath>
#include <string>

#include "ctur/errors.hpp"

namespace ctur::models {

namespace {

constexpr std::size_t kDim = 3;

std::vector<CountingChannel> thermal_channels(const SsdbParams& p) {
  // Entropy steps follow from L_k = exp(ds_k / 2) L_k'^dag.
  const double ds_h = std::log((p.n_h + 1.0) / p.n_h);
  const double ds_c = std::log((p.n_c + 1.0) / p.n_c);
  std::vector<CountingChannel> ch(4);
  ch[0] = {std::sqrt(p.gamma_h * p.n_h) * transition(kX, kH), 0, -ds_h, 1, "hot_absorb"};
  ch[1] = {std::sqrt(p.gamma_h * (p.n_h + 1.0)) * transition(kH, kX), 0, ds_h, 0, "hot_emit"};
  ch[2] = {std::sqrt(p.gamma_c * p.n_c) * transition(kX, kC), -1, -ds_c, 3, "cold_absorb"};
  ch[3] = {std::sqrt(p.gamma_c * (p.n_c + 1.0)) * transition(kC, kX), 1, ds_c, 2, "cold_emit"};
  return ch;
}

}  // namespace

void SsdbParams::validate() const {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!(finite(gamma_h) && finite(gamma_c) && finite(n_h) && finite(n_c) && finite(omega_drive_amp) &&
        finite(detuning))) {
    throw ValidationError("maser parameters must be finite");
  }
  if (!(gamma_h > 0.0 && gamma_c > 0.0)) throw ValidationError("bath couplings must be positive");
  if (!(n_h >= 0.0 && n_c >= 0.0)) throw ValidationError("bath populations must be non-negative");
}

ComplexMatrix transition(std::size_t i, std::size_t j) {
  ComplexMatrix m = ComplexMatrix::Zero(kDim, kDim);
  m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
  return m;
}

LindbladModel build_ssdb(const SsdbParams& p) {
  p.validate();
  const ComplexMatrix h = -p.detuning * transition(kC, kC) +
                          p.omega_drive_amp * (transition(kC, kH) + transition(kH, kC));
  return LindbladModel(h, thermal_channels(p), /*enforce_ldb=*/true);
}

double classical_transition_rate(const ClassicalParams& p) {
  p.validate();
  const double g = 0.5 * (p.gamma_h * p.n_h + p.gamma_c * p.n_c);
  const double denom = p.detuning * p.detuning + g * g;
  if (denom == 0.0) {
    throw DegenerateRate("classical_transition_rate: zero decoherence rate at zero detuning");
  }
  return 2.0 * p.omega_drive_amp * p.omega_drive_amp * g / denom;
}

LindbladModel build_classical_reference(const ClassicalParams& p) {
  const double gamma = classical_transition_rate(p);
  auto channels = thermal_channels(p);
  channels.push_back({std::sqrt(gamma) * transition(kC, kH), 0, 0.0, 5, "work_hc"});
  channels.push_back({std::sqrt(gamma) * transition(kH, kC), 0, 0.0, 4, "work_ch"});
  return LindbladModel(ComplexMatrix::Zero(kDim, kDim), std::move(channels), /*enforce_ldb=*/true);
}

}  // namespace ctur::models
