#include "ctur/model.hpp"

#include <cmath>
#include <string>

#include "ctur/errors.hpp"

namespace ctur {

namespace {

bool all_finite(const ComplexMatrix& m) {
  return m.unaryExpr([](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); })
      .all();
}

std::string channel_name(const CountingChannel& ch, std::size_t k) {
  return ch.label.empty() ? "channel " + std::to_string(k) : "channel '" + ch.label + "'";
}

}  // namespace

LindbladModel::LindbladModel(ComplexMatrix hamiltonian, std::vector<CountingChannel> channels,
                             bool enforce_ldb, const Tolerances& tol)
    : hamiltonian_(std::move(hamiltonian)), channels_(std::move(channels)) {
  validate(enforce_ldb, tol);
}

void LindbladModel::validate(bool enforce_ldb, const Tolerances& tol) const {
  const auto& h = hamiltonian_;
  if (h.rows() != h.cols() || h.rows() == 0) {
    throw DimensionError("LindbladModel: Hamiltonian must be a non-empty square matrix");
  }
  if (!all_finite(h)) throw ValidationError("LindbladModel: Hamiltonian has non-finite entries");
  if (max_abs(h - h.adjoint()) > tol.hermiticity) {
    throw ValidationError("LindbladModel: Hamiltonian is not Hermitian");
  }

  const std::size_t n = channels_.size();
  for (std::size_t k = 0; k < n; ++k) {
    const auto& ch = channels_[k];
    if (ch.jump.rows() != h.rows() || ch.jump.cols() != h.cols()) {
      throw DimensionError("LindbladModel: " + channel_name(ch, k) + " has the wrong dimension");
    }
    if (!all_finite(ch.jump)) {
      throw ValidationError("LindbladModel: " + channel_name(ch, k) + " has non-finite entries");
    }
    if (ch.delta_s && std::isnan(*ch.delta_s)) {
      throw ValidationError("LindbladModel: " + channel_name(ch, k) + " has NaN entropy step");
    }
    if (!ch.reverse_index) continue;

    const std::size_t r = *ch.reverse_index;
    if (r >= n) {
      throw ValidationError("LindbladModel: " + channel_name(ch, k) + " reverse index out of range");
    }
    const auto& rev = channels_[r];
    if (rev.reverse_index != k) {
      throw ValidationError("LindbladModel: " + channel_name(ch, k) + " reverse pairing not reciprocal");
    }
    if (ch.nu != -rev.nu) {
      throw ValidationError("LindbladModel: " + channel_name(ch, k) + " violates nu_k = -nu_k'");
    }
    if (ch.delta_s.has_value() != rev.delta_s.has_value()) {
      throw ValidationError("LindbladModel: " + channel_name(ch, k) +
                            " entropy step set on only one side of the pair");
    }
    if (ch.delta_s && *ch.delta_s != -*rev.delta_s &&
        std::abs(*ch.delta_s + *rev.delta_s) > 1e-12) {
      throw ValidationError("LindbladModel: " + channel_name(ch, k) + " violates ds_k = -ds_k'");
    }

    if (enforce_ldb) {
      if (!ch.delta_s) {
        throw ValidationError("LindbladModel: " + channel_name(ch, k) +
                              " needs an entropy step for detailed balance");
      }
      const double factor = std::exp(*ch.delta_s / 2.0);
      const ComplexMatrix expected = std::isfinite(factor) ? ComplexMatrix(factor * rev.jump.adjoint())
                                                           : ComplexMatrix(ch.jump);
      if (!std::isfinite(factor) && max_abs(rev.jump) != 0.0) {
        throw ValidationError("LindbladModel: " + channel_name(ch, k) +
                              " infinite entropy step needs a vanishing reverse jump");
      }
      if (max_abs(ch.jump - expected) > tol.ldb) {
        throw ValidationError("LindbladModel: " + channel_name(ch, k) +
                              " violates local detailed balance");
      }
    }
  }
}

LindbladModel LindbladModel::with_scaled_jumps(const std::vector<double>& factors) const {
  if (factors.size() != channels_.size()) {
    throw DimensionError("with_scaled_jumps: one factor per channel required");
  }
  std::vector<CountingChannel> scaled = channels_;
  for (std::size_t k = 0; k < scaled.size(); ++k) scaled[k].jump *= factors[k];
  return LindbladModel(hamiltonian_, std::move(scaled));
}

std::vector<double> channel_fluxes(const LindbladModel& model, const ComplexMatrix& rho) {
  std::vector<double> out;
  out.reserve(model.size());
  for (const auto& ch : model.channels()) {
    out.push_back((ch.jump * rho * ch.jump.adjoint()).trace().real());
  }
  return out;
}

std::vector<double> reverse_fluxes(const LindbladModel& model, const std::vector<double>& fluxes) {
  std::vector<double> out(model.size(), 0.0);
  for (std::size_t k = 0; k < model.size(); ++k) {
    if (const auto r = model.channels()[k].reverse_index) out[k] = fluxes[*r];
  }
  return out;
}

}  // namespace ctur
