#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ctur/superop.hpp"
#include "ctur/tolerances.hpp"

namespace ctur {

/// One monitored jump channel L_k of a Lindblad generator.
struct CountingChannel {
  ComplexMatrix jump;                       // units sqrt(rate)
  int nu = 0;                               // weight of this jump in the counted current
  std::optional<double> delta_s;            // environment entropy step, k_B = 1
  std::optional<std::size_t> reverse_index; // k' of the time-reversed jump; none = no reverse process
  std::string label;
};

/// Hamiltonian plus jump channels. Validated on construction; immutable.
///
/// Pairing rules: reverse indices are reciprocal, paired channels have
/// nu_k = -nu_k' and delta_s_k = -delta_s_k'. A channel paired with itself
/// must carry nu = 0 and delta_s = 0. With enforce_ldb the local detailed
/// balance L_k = exp(delta_s_k / 2) L_k'^dag is also checked entrywise.
class LindbladModel {
 public:
  LindbladModel(ComplexMatrix hamiltonian, std::vector<CountingChannel> channels,
                bool enforce_ldb = false, const Tolerances& tol = {});

  std::size_t dim() const { return static_cast<std::size_t>(hamiltonian_.rows()); }
  const ComplexMatrix& hamiltonian() const { return hamiltonian_; }
  const std::vector<CountingChannel>& channels() const { return channels_; }
  std::size_t size() const { return channels_.size(); }

  /// Same generator with jump k replaced by factors[k] * L_k. Counting data kept.
  LindbladModel with_scaled_jumps(const std::vector<double>& factors) const;

 private:
  void validate(bool enforce_ldb, const Tolerances& tol) const;

  ComplexMatrix hamiltonian_;
  std::vector<CountingChannel> channels_;
};

/// Tr{L_k rho L_k^dag}, the stationary jump flux of every channel.
std::vector<double> channel_fluxes(const LindbladModel& model, const ComplexMatrix& rho);

/// Flux of the reverse partner of each channel (0 when unpaired).
std::vector<double> reverse_fluxes(const LindbladModel& model, const std::vector<double>& fluxes);

}  // namespace ctur
