#pragma once

// Three-level maser heat engine (rotating frame) and its classical
// reference. Basis order is (|x>, |c>, |h>): |x> is the excited level,
// |c> and |h> are coupled to the cold and hot bath respectively.
//
// Channels, in order:
//   0  sqrt(g_h n_h)     |x><h|   hot absorption    nu =  0
//   1  sqrt(g_h (n_h+1)) |h><x|   hot emission      nu =  0
//   2  sqrt(g_c n_c)     |x><c|   cold absorption   nu = -1
//   3  sqrt(g_c (n_c+1)) |c><x|   cold emission     nu = +1
// plus, for the classical reference only,
//   4  sqrt(gamma) |c><h|,  5  sqrt(gamma) |h><c|   work channels, nu = 0, ds = 0
//
// The counted current is the net number of quanta emitted into the cold
// bath; it is positive when the device runs as an engine.

#include <array>
#include <utility>

#include "ctur/model.hpp"
#include "ctur/superop.hpp"

namespace ctur::models {

inline constexpr std::size_t kX = 0;
inline constexpr std::size_t kC = 1;
inline constexpr std::size_t kH = 2;

struct SsdbParams {
  double gamma_h = 0.1;
  double gamma_c = 2.0;
  double n_h = 5.0;
  double n_c = 0.027;
  double omega_drive_amp = 0.15;
  double detuning = 0.0;

  /// Throws ValidationError unless gamma_h, gamma_c > 0, n_h, n_c >= 0 and all finite.
  void validate() const;
};

using ClassicalParams = SsdbParams;

/// |i><j| on the three-level space.
ComplexMatrix transition(std::size_t i, std::size_t j);

/// H = -detuning |c><c| + omega (|c><h| + |h><c|) with the four thermal channels.
LindbladModel build_ssdb(const SsdbParams& p);

/// gamma = 2 omega^2 G / (detuning^2 + G^2), G = (g_h n_h + g_c n_c) / 2.
double classical_transition_rate(const ClassicalParams& p);

/// H = 0, thermal channels of build_ssdb plus incoherent work channels.
LindbladModel build_classical_reference(const ClassicalParams& p);

/// Basis (rho_xx, rho_cc, rho_hh, rho_ch, rho_hc) as (row, col) pairs.
inline constexpr std::array<std::pair<std::size_t, std::size_t>, 5> kReducedBasis{
    {{kX, kX}, {kC, kC}, {kH, kH}, {kC, kH}, {kH, kC}}};

/// Population basis (rho_xx, rho_cc, rho_hh).
inline constexpr std::array<std::pair<std::size_t, std::size_t>, 3> kPopulationBasis{
    {{kX, kX}, {kC, kC}, {kH, kH}}};

/// Block of a superoperator restricted to the given density-matrix entries
/// (rows and columns both in that basis, column-stacked indexing).
template <std::size_t N>
ComplexMatrix restrict_to(const SuperOperator& op, const std::array<std::pair<std::size_t, std::size_t>, N>& basis) {
  const std::size_t d = op.dim();
  ComplexMatrix out(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
  for (std::size_t a = 0; a < N; ++a) {
    for (std::size_t b = 0; b < N; ++b) {
      const auto row = static_cast<Eigen::Index>(basis[a].first + d * basis[a].second);
      const auto col = static_cast<Eigen::Index>(basis[b].first + d * basis[b].second);
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = op.matrix()(row, col);
    }
  }
  return out;
}

}  // namespace ctur::models
