#pragma once

// Quantum-jump unraveling of a Lindblad model with jump counting, used as a
// statistical cross-check of the current cumulants.

#include <cstddef>
#include <cstdint>
#include <random>

#include "ctur/model.hpp"
#include "ctur/superop.hpp"

namespace ctur {

struct TrajectoryEnsembleResult {
  std::size_t n_traj = 0;
  double tau = 0.0;
  double mean_rate = 0.0;  // E[N(tau)] / tau
  double var_rate = 0.0;   // Var[N(tau)] / tau, unbiased sample variance
  double se_mean = 0.0;
  double se_var = 0.0;
  std::uint64_t seed = 0;
};

struct TrajectoryOptions {
  /// Worker threads; 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
  /// Waiting-time bisection stops once the bracket is below this fraction of tau.
  double time_tol_rel = 1e-8;
};

/// Pure-state propagation under H_eff = H - i/2 sum_k L_k^dag L_k with
/// norm-threshold jump times.
class JumpUnraveling {
 public:
  explicit JumpUnraveling(const LindbladModel& model);

  struct Outcome {
    std::int64_t count = 0;  // sum of nu_k over recorded jumps
    std::size_t jumps = 0;
    double max_norm_error = 0.0;  // | ||psi|| - 1 | right after each jump
  };

  /// Evolves psi (normalized on entry) over [0, tau].
  Outcome run(ComplexVector psi, double tau, std::mt19937_64& rng, double time_tol) const;

  std::size_t dim() const { return dim_; }

 private:
  // ||exp(-i H_eff t) psi||^2 for the state encoded by modal coefficients.
  ComplexVector evolve(const ComplexVector& modal, double t) const;
  ComplexVector to_modal(const ComplexVector& psi) const;

  std::size_t dim_;
  std::vector<CountingChannel> channels_;
  ComplexMatrix generator_;  // -i H_eff
  bool spectral_ = false;    // modal evaluation when H_eff is well diagonalizable
  ComplexVector modes_;      // eigenvalues of -i H_eff
  ComplexMatrix vecs_;
  ComplexMatrix vecs_inv_;
};

/// Runs n_traj independent trajectories of length tau, each started from an
/// eigenvector of rho_s drawn with its eigenvalue as probability, and returns
/// the ensemble statistics of N(tau) / tau. Deterministic for a fixed seed
/// regardless of thread count. Requires tau >= 20 / spectral gap.
TrajectoryEnsembleResult simulate_ensemble(const LindbladModel& model, double tau, std::size_t n_traj,
                                           std::uint64_t seed, const TrajectoryOptions& options = {});

/// Seed of trajectory `index` within an ensemble seeded with `seed`.
std::uint64_t trajectory_seed(std::uint64_t seed, std::uint64_t index);

/// Uniform double in (0, 1] built from the top 53 bits of one draw.
double uniform_open_closed(std::mt19937_64& rng);

}  // namespace ctur
