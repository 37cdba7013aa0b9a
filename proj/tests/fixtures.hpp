#pragma once

// Small hand-checkable models shared by the unit and acceptance suites.

#include <cmath>
#include <random>
#include <vector>

#include "ctur/model.hpp"
#include "ctur/superop.hpp"

namespace ctur::testing {

inline ComplexMatrix ket_bra(Eigen::Index d, Eigen::Index i, Eigen::Index j) {
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  m(i, j) = 1.0;
  return m;
}

/// Basis (|g>, |e>), H = omega sigma_z / 2, jumps sqrt(g(n+1)) sigma_- (nu=+1), sqrt(g n) sigma_+ (nu=-1).
inline LindbladModel thermal_qubit(double gamma, double n, double omega = 1.0) {
  const ComplexMatrix lower = ket_bra(2, 0, 1);
  ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  h(0, 0) = -omega / 2.0;
  h(1, 1) = omega / 2.0;
  const double ds = std::log((n + 1.0) / n);
  return LindbladModel(h,
                       {{std::sqrt(gamma * (n + 1.0)) * lower, 1, ds, 1, "emit"},
                        {std::sqrt(gamma * n) * ComplexMatrix(lower.adjoint()), -1, -ds, 0, "absorb"}},
                       /*enforce_ldb=*/true);
}

/// Two classical states; g->e at rate b (not counted), e->g at rate a (counted +1).
/// Neither channel has a reverse partner.
inline LindbladModel two_state_renewal(double a, double b) {
  return LindbladModel(ComplexMatrix::Zero(2, 2),
                       {{std::sqrt(a) * ket_bra(2, 0, 1), 1, std::nullopt, std::nullopt, "e_to_g"},
                        {std::sqrt(b) * ket_bra(2, 1, 0), 0, std::nullopt, std::nullopt, "g_to_e"}});
}

/// One level, one counted channel firing at rate r: a Poisson process.
inline LindbladModel poisson_source(double r) {
  return LindbladModel(ComplexMatrix::Zero(1, 1),
                       {{std::sqrt(r) * ComplexMatrix::Identity(1, 1), 1, std::nullopt, std::nullopt, "tick"}});
}

inline ComplexMatrix random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> g;
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = Complex(g(rng), g(rng));
  return m;
}

inline ComplexMatrix random_density(std::mt19937_64& rng, Eigen::Index d) {
  const ComplexMatrix a = random_matrix(rng, d, d);
  ComplexMatrix rho = a * a.adjoint();
  return rho / rho.trace();
}

inline double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace ctur::testing
