#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ctur/errors.hpp"
#include "ctur/fcs.hpp"
#include "ctur/models.hpp"
#include "ctur/tur.hpp"
#include "fixtures.hpp"

using namespace ctur;
using namespace ctur::models;

namespace {

// Printed five-entry generator in the (xx, cc, hh, ch, hc) basis.
ComplexMatrix printed_reduced_generator(const SsdbParams& p) {
  const Complex i{0.0, 1.0};
  const double gh = p.gamma_h, gc = p.gamma_c, nh = p.n_h, nc = p.n_c;
  const double e = p.omega_drive_amp, dl = p.detuning;
  const double deph = gc * nc / 2.0 + gh * nh / 2.0;
  ComplexMatrix m(5, 5);
  m << -gh * (nh + 1) - gc * (nc + 1), gc * nc, gh * nh, 0.0, 0.0,
       gc * (nc + 1), -gc * nc, 0.0, i * e, -i * e,
       gh * (nh + 1), 0.0, -gh * nh, -i * e, i * e,
       0.0, i * e, -i * e, i * dl - deph, 0.0,
       0.0, -i * e, i * e, 0.0, -i * dl - deph;
  return m;
}

ComplexMatrix printed_classical_generator(const SsdbParams& p, double g) {
  const double gh = p.gamma_h, gc = p.gamma_c, nh = p.n_h, nc = p.n_c;
  ComplexMatrix m(3, 3);
  m << -gh * (nh + 1) - gc * (nc + 1), gc * nc, gh * nh,
       gc * (nc + 1), -g - gc * nc, g,
       gh * (nh + 1), g, -g - gh * nh;
  return m;
}

std::vector<SsdbParams> parameter_points() {
  std::vector<SsdbParams> out(3);
  out[1].detuning = 0.7;
  out[1].omega_drive_amp = 0.4;
  out[2] = {0.3, 1.1, 2.0, 0.4, 0.05, -1.2};
  return out;
}

}  // namespace

TEST_CASE("ssdb generator matches the printed reduced matrix") {
  for (const auto& p : parameter_points()) {
    const SuperOperator l = build_liouvillian(build_ssdb(p));
    CHECK(max_abs(restrict_to(l, kReducedBasis) - printed_reduced_generator(p)) <= 1e-12);
  }
}

TEST_CASE("coherences outside the (c, h) pair decouple") {
  const SuperOperator l = build_liouvillian(build_ssdb({}));
  const ComplexMatrix& m = l.matrix();
  std::vector<Eigen::Index> kept;
  for (const auto& [r, c] : kReducedBasis) kept.push_back(static_cast<Eigen::Index>(r + 3 * c));
  for (Eigen::Index row = 0; row < 9; ++row) {
    const bool row_kept = std::find(kept.begin(), kept.end(), row) != kept.end();
    for (Eigen::Index col : kept) {
      if (!row_kept) CHECK(m(row, col) == Complex(0.0));
      if (!row_kept) CHECK(m(col, row) == Complex(0.0));
    }
  }
}

TEST_CASE("classical reference matches the printed population matrix") {
  for (const auto& p : parameter_points()) {
    const double g = classical_transition_rate(p);
    const SuperOperator l = build_liouvillian(build_classical_reference(p));
    CHECK(max_abs(restrict_to(l, kPopulationBasis) - printed_classical_generator(p, g)) <= 1e-12);
  }
}

TEST_CASE("classical transition rate") {
  SsdbParams p;
  // Gamma = (0.1 * 5 + 2 * 0.027) / 2 = 0.277
  CHECK(classical_transition_rate(p) == doctest::Approx(2.0 * 0.0225 / 0.277).epsilon(1e-14));
  CHECK(classical_transition_rate(p) == doctest::Approx(0.162455).epsilon(1e-6));
  p.detuning = 0.277;
  CHECK(classical_transition_rate(p) == doctest::Approx(0.0225 / 0.277).epsilon(1e-14));

  p.detuning = 0.0;
  p.n_h = 0.0;
  p.n_c = 0.0;
  CHECK_THROWS_AS(classical_transition_rate(p), DegenerateRate);
}

TEST_CASE("parameter validation") {
  SsdbParams p;
  p.gamma_h = 0.0;
  CHECK_THROWS_AS(build_ssdb(p), ValidationError);
  p = {};
  p.n_c = -0.1;
  CHECK_THROWS_AS(build_ssdb(p), ValidationError);
  p = {};
  p.detuning = std::nan("");
  CHECK_THROWS_AS(build_classical_reference(p), ValidationError);
}

TEST_CASE("thermal channels satisfy local detailed balance") {
  const LindbladModel m = build_ssdb({});
  const auto& ch = m.channels();
  REQUIRE(ch.size() == 4);
  CHECK(ch[0].nu == 0);
  CHECK(ch[1].nu == 0);
  CHECK(ch[2].nu == -1);
  CHECK(ch[3].nu == 1);
  CHECK(*ch[0].reverse_index == 1);
  CHECK(*ch[2].reverse_index == 3);
  CHECK(*ch[1].delta_s == doctest::Approx(std::log(6.0 / 5.0)).epsilon(1e-14));
  CHECK(*ch[3].delta_s == doctest::Approx(std::log(1.027 / 0.027)).epsilon(1e-14));
  for (std::size_t k = 0; k < 4; ++k) {
    const auto& rev = ch[*ch[k].reverse_index];
    const ComplexMatrix expected = std::exp(*ch[k].delta_s / 2.0) * rev.jump.adjoint();
    CHECK(max_abs(ch[k].jump - expected) <= 1e-12);
  }
}

TEST_CASE("classical steady state is diagonal and carries a current") {
  const TurReport r = tur_report(build_classical_reference({}));
  const SteadyState ss = steady_state(build_liouvillian(build_classical_reference({})));
  CHECK(max_abs(ss.rho - ComplexMatrix(ss.rho.diagonal().asDiagonal())) <= 1e-12);
  CHECK(r.J > 0.0);
  CHECK(std::abs(r.psi) <= 1e-12);
  CHECK(r.tur_lhs >= 2.0 - 1e-9);
}

TEST_CASE("zero drive leaves no current") {
  SsdbParams p;
  p.omega_drive_amp = 0.0;
  const LindbladModel m = build_ssdb(p);
  const SuperOperator l = build_liouvillian(m);
  const SteadyState ss = steady_state(l);
  CHECK(std::abs(mean_current_analytic(m, ss)) <= 1e-14);
  CHECK_THROWS_AS(coherence_factor_psi(m, ss, drazin_inverse(l, ss)), CurrentVanishes);
  CHECK_THROWS_AS(tur_report(m), CurrentVanishes);
}
