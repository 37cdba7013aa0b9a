#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "ctur/errors.hpp"
#include "ctur/fcs.hpp"
#include "ctur/models.hpp"
#include "ctur/tur.hpp"
#include "fixtures.hpp"

using namespace ctur;
using namespace ctur::testing;

namespace {

struct Solved {
  SuperOperator l;
  SteadyState ss;
  DrazinInverse lp;
};

Solved solve(const LindbladModel& m) {
  Solved s{build_liouvillian(m), {}, {}};
  s.ss = steady_state(s.l);
  s.lp = drazin_inverse(s.l, s.ss);
  return s;
}

// Decay sqrt(g) sigma_- paired with a closed absorption channel, plus an unpaired pump sqrt(p) sigma_+.
LindbladModel pumped_decay(double g, double p) {
  const double inf = std::numeric_limits<double>::infinity();
  const ComplexMatrix lower = ket_bra(2, 0, 1);
  return LindbladModel(ComplexMatrix::Zero(2, 2),
                       {{std::sqrt(g) * lower, 1, inf, 1, "decay"},
                        {ComplexMatrix::Zero(2, 2), -1, -inf, 0, "closed"},
                        {std::sqrt(p) * ComplexMatrix(lower.adjoint()), 0, std::nullopt, std::nullopt, "pump"}});
}

}  // namespace

TEST_CASE("equilibrium has no dissipation") {
  const LindbladModel m = thermal_qubit(0.5, 1.0);
  const Solved s = solve(m);
  for (double l : ell_weights(m, s.ss)) CHECK(std::abs(l) <= 1e-12);
  CHECK(std::abs(entropy_production_rate(m, s.ss)) <= 1e-12);
  CHECK(std::abs(qfi_rate(m, s.ss)) <= 1e-24);
  CHECK(std::abs(sigma_lower_bound(m, s.ss)) <= 1e-24);
  // fluxes gamma (n + 1) / 3 + gamma n 2 / 3 with n = 1
  CHECK(dynamical_activity(m, s.ss) == doctest::Approx(4.0 * 0.5 / 3.0).epsilon(1e-12));
  CHECK_THROWS_AS(coherence_factor_psi(m, s.ss, s.lp), CurrentVanishes);
}

TEST_CASE("unidirectional channels") {
  SUBCASE("an unpaired channel has weight one") {
    const LindbladModel m = two_state_renewal(1.0, 1.0);
    const Solved s = solve(m);
    const auto ell = ell_weights(m, s.ss);
    CHECK(ell[0] == 1.0);
    CHECK(ell[1] == 1.0);
    // two channels of flux 1/2 each
    CHECK(qfi_rate(m, s.ss) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sigma_lower_bound(m, s.ss) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(entropy_production_rate(m, s.ss), ConfigError);
  }

  SUBCASE("a closed reverse channel") {
    const double g = 0.8, p = 0.3;
    const LindbladModel m = pumped_decay(g, p);
    const Solved s = solve(m);
    const double r = g * p / (g + p);  // decay flux = pump flux
    const auto ell = ell_weights(m, s.ss);
    CHECK(ell[0] == doctest::Approx(1.0));
    CHECK(ell[1] == doctest::Approx(-1.0));
    CHECK(ell[2] == 1.0);
    // decay r, closed partner (0 - r)^2 / r, pump r
    CHECK(sigma_lower_bound(m, s.ss) == doctest::Approx(3.0 * r).epsilon(1e-12));
    CHECK(qfi_rate(m, s.ss) == doctest::Approx(2.0 * r).epsilon(1e-12));
  }
}

TEST_CASE("dynamical activity edge cases") {
  const LindbladModel empty(ComplexMatrix::Zero(1, 1), {});
  const Solved s = solve(empty);
  CHECK(dynamical_activity(empty, s.ss) == 0.0);
  CHECK(hasegawa_psi_cap(empty, s.ss, s.lp) == 0.0);

  const LindbladModel dark(ComplexMatrix::Zero(2, 2), {{ket_bra(2, 0, 1), 0, {}, {}, ""}});
  const Solved sd = solve(dark);
  CHECK(std::abs(dynamical_activity(dark, sd.ss)) <= 1e-14);
}

TEST_CASE("maser pair weights are antisymmetric") {
  const LindbladModel m = models::build_ssdb({});
  const Solved s = solve(m);
  const auto ell = ell_weights(m, s.ss);
  CHECK(std::abs(ell[0] + ell[1]) <= 1e-12);
  CHECK(std::abs(ell[2] + ell[3]) <= 1e-12);
  for (double l : ell) CHECK(std::abs(l) <= 1.0);
  // every channel is paired, so the ordered sums differ by exactly two
  CHECK(qfi_rate(m, s.ss) == doctest::Approx(sigma_lower_bound(m, s.ss) / 2.0).epsilon(1e-12));
}

TEST_CASE("coherence factor") {
  SUBCASE("agrees with the dissipative decomposition") {
    // L rho_s = 0 gives H rho_s = -D rho_s.
    for (double delta : {-0.8, 0.0, 1.2}) {
      models::SsdbParams p;
      p.detuning = delta;
      const LindbladModel m = models::build_ssdb(p);
      const Solved s = solve(m);
      SuperOperator diss = SuperOperator::zero(3);
      for (const auto& ch : m.channels()) diss += dissipator(ch.jump);
      const ComplexVector rho = vectorize(s.ss.rho);
      const ComplexVector h_rho = s.l.matrix() * rho - diss.matrix() * rho;
      const double j = mean_current_analytic(m, s.ss);
      const double via_l =
          (trace_row(3) * current_superoperator(m).matrix() * s.lp.op.matrix() * h_rho)(0).real() / j;
      CHECK(std::abs(coherence_factor_psi(m, s.ss, s.lp) - via_l) <= 1e-10);
    }
  }

  SUBCASE("reference value") {
    const LindbladModel m = models::build_ssdb({});
    const Solved s = solve(m);
    CHECK(coherence_factor_psi(m, s.ss, s.lp) == doctest::Approx(-1.06577).epsilon(1e-5));
  }

  SUBCASE("vanishes far from resonance") {
    std::vector<double> mags;
    for (double delta : {0.0, 5.0, 50.0, -50.0}) {
      models::SsdbParams p;
      p.detuning = delta;
      const LindbladModel m = models::build_ssdb(p);
      const Solved s = solve(m);
      mags.push_back(std::abs(coherence_factor_psi(m, s.ss, s.lp)));
    }
    CHECK(mags[2] < 1e-2);
    CHECK(mags[3] < 1e-2);
    CHECK(mags[2] < mags[1]);
    CHECK(mags[1] < mags[0]);
  }
}

TEST_CASE("activity superoperators") {
  const LindbladModel m = models::build_ssdb({});
  const auto [k1, k2] = activity_superoperators(m);
  CHECK(max_abs((k1 + k2 - build_liouvillian(m)).matrix()) <= 1e-14);
  // K2 is the adjoint image of K1: K2(rho) = K1(rho^dag)^dag
  std::mt19937_64 rng(9);
  const ComplexMatrix x = random_matrix(rng, 3, 3);
  CHECK(max_abs(k2.apply(x) - ComplexMatrix(k1.apply(x.adjoint()).adjoint())) <= 1e-14);
}

TEST_CASE("activity bound at the reference point and far detuning") {
  const TurReport r = tur_report(models::build_ssdb({}));
  CHECK(std::isfinite(r.psi_cap));
  CHECK(r.xi_bound <= r.tur_lhs);
  CHECK(r.upsilon > 0.0);

  models::SsdbParams far;
  far.detuning = 50.0;
  const TurReport f = tur_report(models::build_ssdb(far));
  CHECK(std::isfinite(f.psi_cap));
  CHECK(std::abs(f.psi_cap) > 1e-8);
  CHECK(std::abs(f.psi) < 1e-2);
  CHECK(f.xi_bound <= f.tur_lhs);
}

TEST_CASE("reference point report") {
  const TurReport r = tur_report(models::build_ssdb({}));
  CHECK(r.tur_lhs < 2.0);
  CHECK(r.tur_lhs >= r.coherence_bound);
  CHECK(r.classical_bound == 2.0);
  CHECK(r.qfi_rate <= r.sigma / 2.0);
  CHECK(r.sigma >= r.sigma_lower);
  CHECK(r.J == doctest::Approx(0.0792548).epsilon(1e-5));
  CHECK(r.sigma == doctest::Approx(0.273924).epsilon(1e-5));
  CHECK(r.tur_lhs == doctest::Approx(r.D * r.sigma / (r.J * r.J)).epsilon(1e-14));
  CHECK(r.coherence_bound == doctest::Approx(2.0 * (1.0 + r.psi) * (1.0 + r.psi)).epsilon(1e-14));
}

TEST_CASE("bounds hold on random maser draws") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> delta(-1.5, 1.5);
  std::uniform_real_distribution<double> omega(0.01, 0.8);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    models::SsdbParams p;
    p.detuning = delta(rng);
    p.omega_drive_amp = omega(rng);
    const TurReport q = tur_report(models::build_ssdb(p));
    CHECK(q.tur_lhs >= q.coherence_bound - 1e-9);
    CHECK(q.qfi_rate <= q.sigma / 2.0 + 1e-9);
    CHECK(q.sigma >= q.sigma_lower - 1e-9);
    const TurReport c = tur_report(models::build_classical_reference(p));
    CHECK(c.tur_lhs >= 2.0 - 1e-9);
    CHECK(std::abs(c.psi) <= 1e-12);
    ++checked;
  }
  CHECK(checked == 200);
}

TEST_CASE("bound violations carry the report") {
  TurReport r;
  r.J = 0.5;
  const BoundViolation e("tur_report: test", r);
  CHECK(std::string(e.kind()) == "BoundViolation");
  CHECK(e.report().J == 0.5);
  const Error& base = e;
  CHECK(std::string(base.what()) == "tur_report: test");
}
