#include "ctur/trajectories.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "ctur/errors.hpp"

namespace ctur {

namespace {

constexpr Complex kI{0.0, 1.0};

// Above this eigenvector condition number the modal form of exp(-i H_eff t)
// loses too many digits and the dense exponential is used instead.
constexpr double kModalConditionLimit = 1e8;

constexpr int kMaxBisections = 200;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t trajectory_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

double uniform_open_closed(std::mt19937_64& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

JumpUnraveling::JumpUnraveling(const LindbladModel& model)
    : dim_(model.dim()), channels_(model.channels()) {
  ComplexMatrix heff = model.hamiltonian();
  for (const auto& ch : channels_) heff -= 0.5 * kI * (ch.jump.adjoint() * ch.jump);
  generator_ = -kI * heff;

  Eigen::ComplexEigenSolver<ComplexMatrix> es(generator_);
  if (es.info() == Eigen::Success) {
    Eigen::JacobiSVD<ComplexMatrix> svd(es.eigenvectors());
    const auto& s = svd.singularValues();
    const double cond = s(s.size() - 1) > 0.0 ? s(0) / s(s.size() - 1) : INFINITY;
    if (cond < kModalConditionLimit) {
      spectral_ = true;
      modes_ = es.eigenvalues();
      vecs_ = es.eigenvectors();
      vecs_inv_ = vecs_.inverse();
    }
  }
}

ComplexVector JumpUnraveling::to_modal(const ComplexVector& psi) const {
  return spectral_ ? ComplexVector(vecs_inv_ * psi) : psi;
}

ComplexVector JumpUnraveling::evolve(const ComplexVector& modal, double t) const {
  if (!spectral_) return expm(generator_, t) * modal;
  ComplexVector scaled(modal.size());
  for (Eigen::Index i = 0; i < modal.size(); ++i) scaled(i) = std::exp(modes_(i) * t) * modal(i);
  return vecs_ * scaled;
}

JumpUnraveling::Outcome JumpUnraveling::run(ComplexVector psi, double tau, std::mt19937_64& rng,
                                            double time_tol) const {
  Outcome out;
  double t = 0.0;
  std::vector<double> weights(channels_.size());

  while (t < tau) {
    const double target = uniform_open_closed(rng);
    const ComplexVector modal = to_modal(psi);
    const double remaining = tau - t;

    const double end_norm = evolve(modal, remaining).squaredNorm();
    if (!std::isfinite(end_norm)) throw SimulationError("JumpUnraveling: non-finite norm");
    if (end_norm > target) break;  // no further jump inside the window

    // Norm decays monotonically; bracket [lo, hi] with norm(lo) > target >= norm(hi).
    double lo = 0.0;
    double hi = remaining;
    int iterations = 0;
    while (hi - lo > time_tol) {
      if (++iterations > kMaxBisections) {
        throw SimulationError("JumpUnraveling: waiting-time bisection did not converge");
      }
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) {
        throw SimulationError("JumpUnraveling: waiting-time step underflow");
      }
      if (evolve(modal, mid).squaredNorm() > target) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    t += hi;
    const ComplexVector state = evolve(modal, hi);

    double total = 0.0;
    for (std::size_t k = 0; k < channels_.size(); ++k) {
      weights[k] = (channels_[k].jump * state).squaredNorm();
      total += weights[k];
    }
    if (!(total > 0.0)) throw SimulationError("JumpUnraveling: jump with vanishing total rate");

    double pick = uniform_open_closed(rng) * total;
    std::size_t k = 0;
    for (; k + 1 < channels_.size(); ++k) {
      if (pick <= weights[k]) break;
      pick -= weights[k];
    }
    while (weights[k] == 0.0 && k > 0) --k;

    psi = channels_[k].jump * state;
    psi /= psi.norm();
    out.max_norm_error = std::max(out.max_norm_error, std::abs(psi.norm() - 1.0));
    out.count += channels_[k].nu;
    ++out.jumps;
  }
  return out;
}

TrajectoryEnsembleResult simulate_ensemble(const LindbladModel& model, double tau, std::size_t n_traj,
                                           std::uint64_t seed, const TrajectoryOptions& options) {
  const SteadyState ss = steady_state(build_liouvillian(model));
  if (!(tau > 0.0) || (std::isfinite(ss.spectral_gap) && tau * ss.spectral_gap < 20.0)) {
    throw PreconditionError("simulate_ensemble: tau must be at least 20 / spectral gap");
  }

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(ss.rho);
  std::vector<double> probs(static_cast<std::size_t>(eig.eigenvalues().size()));
  for (std::size_t i = 0; i < probs.size(); ++i) {
    probs[i] = std::max(0.0, eig.eigenvalues()(static_cast<Eigen::Index>(i)));
  }
  double norm = 0.0;
  for (double p : probs) norm += p;

  const JumpUnraveling unraveling(model);
  const double time_tol = options.time_tol_rel * tau;
  std::vector<std::int64_t> counts(n_traj, 0);

  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      std::mt19937_64 rng(trajectory_seed(seed, i));
      double pick = uniform_open_closed(rng) * norm;
      std::size_t e = 0;
      for (; e + 1 < probs.size(); ++e) {
        if (pick <= probs[e]) break;
        pick -= probs[e];
      }
      while (probs[e] == 0.0 && e > 0) --e;
      ComplexVector psi = eig.eigenvectors().col(static_cast<Eigen::Index>(e));
      counts[i] = unraveling.run(psi, tau, rng, time_tol).count;
    }
  };

  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, n_traj)));
  if (threads <= 1) {
    run_range(0, n_traj);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n_traj + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      const std::size_t begin = std::min(n_traj, w * chunk);
      const std::size_t end = std::min(n_traj, begin + chunk);
      pool.emplace_back(run_range, begin, end);
    }
  }

  TrajectoryEnsembleResult res;
  res.n_traj = n_traj;
  res.tau = tau;
  res.seed = seed;
  if (n_traj == 0) return res;

  const double n = static_cast<double>(n_traj);
  double mean = 0.0;
  for (auto c : counts) mean += static_cast<double>(c);
  mean /= n;
  double m2 = 0.0;
  double m4 = 0.0;
  for (auto c : counts) {
    const double dev = static_cast<double>(c) - mean;
    m2 += dev * dev;
    m4 += dev * dev * dev * dev;
  }
  res.mean_rate = mean / tau;
  if (n_traj >= 2) {
    const double var = m2 / (n - 1.0);
    const double var_of_var = std::max(0.0, (m4 / n - var * var * (n - 3.0) / (n - 1.0)) / n);
    res.var_rate = var / tau;
    res.se_mean = std::sqrt(var / n) / tau;
    res.se_var = std::sqrt(var_of_var) / tau;
  }
  return res;
}

}  // namespace ctur
