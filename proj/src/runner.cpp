#include "ctur/runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <random>
#include <sstream>

#include "ctur/errors.hpp"
#include "ctur/fcs.hpp"
#include "ctur/trajectories.hpp"

namespace ctur {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw ConfigError("config key '" + key + "': '" + text + "' is not a number");
  }
  return v;
}

std::uint64_t parse_count(const std::string& key, const std::string& text) {
  const double v = parse_double(key, text);
  if (!(v >= 0.0) || v != std::floor(v) || v > 9.0e15) {
    throw ConfigError("config key '" + key + "' must be a non-negative integer");
  }
  return static_cast<std::uint64_t>(v);
}

double uniform_between(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

std::string kind_name(ModelKind k) {
  switch (k) {
    case ModelKind::Ssdb: return "ssdb";
    case ModelKind::Classical: return "classical";
    case ModelKind::Both: return "both";
  }
  return "?";
}

std::string variable_name(SweepVariable v) {
  return v == SweepVariable::Detuning ? "detuning" : "n_c";
}

void write_preamble(std::ostream& out, const char* title, const SweepConfig& c) {
  const auto& p = c.params;
  out << "# ctur " << title << '\n'
      << "# counting: nu=-1 for cold-bath absorption |x><c|, nu=+1 for cold-bath emission |c><x|;"
         " J>0 is net emission into the cold bath\n"
      << "# fixed: gamma_h=" << format_number(p.gamma_h) << " gamma_c=" << format_number(p.gamma_c)
      << " n_h=" << format_number(p.n_h) << " n_c=" << format_number(p.n_c)
      << " omega_drive_amp=" << format_number(p.omega_drive_amp) << " detuning=" << format_number(p.detuning)
      << '\n';
}

struct Evaluated {
  std::optional<TurReport> report;
  std::string error;
  std::string message;
};

Evaluated evaluate(const std::function<LindbladModel()>& build, const Tolerances& tol) {
  Evaluated e;
  try {
    e.report = tur_report(build(), tol);
  } catch (const BoundViolation& ex) {
    e.report = ex.report();
    e.error = ex.kind();
    e.message = ex.what();
  } catch (const Error& ex) {
    e.error = ex.kind();
    e.message = ex.what();
  }
  return e;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

// ---------------------------------------------------------------------------

void SweepConfig::validate() const {
  params.validate();
  if (points < 1) throw ConfigError("points must be at least 1");
  if (points == 1 ? !(lo <= hi) : !(lo < hi)) throw ConfigError("sweep range needs lo < hi");
  if (variable == SweepVariable::BathPopulationCold && lo < 0.0) {
    throw ConfigError("n_c sweep must stay non-negative");
  }
  if (!(detuning_lo <= detuning_hi) || !(omega_lo <= omega_hi)) {
    throw ConfigError("scatter ranges need lo <= hi");
  }
}

SweepConfig parse_config(std::istream& in) {
  SweepConfig c;
  bool range_given = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));

    if (key == "model") {
      if (val == "ssdb") c.model = ModelKind::Ssdb;
      else if (val == "classical") c.model = ModelKind::Classical;
      else if (val == "both") c.model = ModelKind::Both;
      else throw ConfigError("unknown model kind '" + val + "'");
    } else if (key == "sweep") {
      if (val == "detuning") c.variable = SweepVariable::Detuning;
      else if (val == "n_c") c.variable = SweepVariable::BathPopulationCold;
      else throw ConfigError("unknown sweep variable '" + val + "'");
    } else if (key == "gamma_h") c.params.gamma_h = parse_double(key, val);
    else if (key == "gamma_c") c.params.gamma_c = parse_double(key, val);
    else if (key == "n_h") c.params.n_h = parse_double(key, val);
    else if (key == "n_c") c.params.n_c = parse_double(key, val);
    else if (key == "omega_drive_amp") c.params.omega_drive_amp = parse_double(key, val);
    else if (key == "detuning") c.params.detuning = parse_double(key, val);
    else if (key == "lo") { c.lo = parse_double(key, val); range_given = true; }
    else if (key == "hi") { c.hi = parse_double(key, val); range_given = true; }
    else if (key == "points") c.points = parse_count(key, val);
    else if (key == "detuning_lo") c.detuning_lo = parse_double(key, val);
    else if (key == "detuning_hi") c.detuning_hi = parse_double(key, val);
    else if (key == "omega_lo") c.omega_lo = parse_double(key, val);
    else if (key == "omega_hi") c.omega_hi = parse_double(key, val);
    else if (key == "samples") c.samples = parse_count(key, val);
    else if (key == "seed") c.seed = parse_count(key, val);
    else if (key == "output") c.output = val;
    else if (key.rfind("tol.", 0) == 0) c.tol.set(key.substr(4), parse_double(key, val));
    else throw ConfigError("unknown config key '" + key + "'");
  }
  if (!range_given && c.variable == SweepVariable::BathPopulationCold) {
    c.lo = 0.001;
    c.hi = 1.0;
  }
  c.validate();
  return c;
}

SweepConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return parse_config(in);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write to " + path.string() + " failed");
}

// ---------------------------------------------------------------------------

std::vector<SweepRecord> run_sweep(const SweepConfig& config) {
  config.validate();
  std::vector<SweepRecord> records;
  const bool want_q = config.model != ModelKind::Classical;
  const bool want_c = config.model != ModelKind::Ssdb;

  for (std::size_t i = 0; i < config.points; ++i) {
    const double value = config.points == 1
                             ? config.lo
                             : config.lo + (config.hi - config.lo) * static_cast<double>(i) /
                                               static_cast<double>(config.points - 1);
    models::SsdbParams p = config.params;
    if (config.variable == SweepVariable::Detuning) p.detuning = value;
    else p.n_c = value;

    auto push = [&](const char* name, const std::function<LindbladModel()>& build) {
      Evaluated e = evaluate(build, config.tol);
      records.push_back({name, value, std::move(e.report), std::move(e.error), std::move(e.message)});
    };
    if (want_q) push("ssdb", [&] { return models::build_ssdb(p); });
    if (want_c) push("classical", [&] { return models::build_classical_reference(p); });
  }
  return records;
}

void write_sweep_csv(std::ostream& out, const SweepConfig& config, const std::vector<SweepRecord>& records) {
  write_preamble(out, "sweep", config);
  out << "# sweep: " << variable_name(config.variable) << " from " << format_number(config.lo) << " to "
      << format_number(config.hi) << ", points=" << config.points << ", model=" << kind_name(config.model)
      << '\n';
  out << "model," << variable_name(config.variable)
      << ",J,D,sigma,psi,upsilon,psi_cap,qfi_rate,tur_lhs,coherence_bound,xi_bound,classical_bound,"
         "sigma_lower,error\n";
  for (const auto& r : records) {
    out << r.model << ',' << format_number(r.value);
    if (r.report) {
      const auto& t = *r.report;
      for (double v : {t.J, t.D, t.sigma, t.psi, t.upsilon, t.psi_cap, t.qfi_rate, t.tur_lhs,
                       t.coherence_bound, t.xi_bound, t.classical_bound, t.sigma_lower}) {
        out << ',' << format_number(v);
      }
    } else {
      for (int k = 0; k < 12; ++k) out << ",ERR";
    }
    out << ',' << (r.error.empty() ? "ok" : r.error) << '\n';
  }
}

std::vector<ScatterRecord> run_scatter(const SweepConfig& config) {
  config.validate();
  std::mt19937_64 rng(config.seed);
  std::vector<ScatterRecord> records;
  records.reserve(config.samples);
  for (std::size_t i = 0; i < config.samples; ++i) {
    ScatterRecord r;
    r.detuning = uniform_between(rng, config.detuning_lo, config.detuning_hi);
    r.omega_drive_amp = uniform_between(rng, config.omega_lo, config.omega_hi);
    models::SsdbParams p = config.params;
    p.detuning = r.detuning;
    p.omega_drive_amp = r.omega_drive_amp;

    Evaluated q = evaluate([&] { return models::build_ssdb(p); }, config.tol);
    Evaluated c = evaluate([&] { return models::build_classical_reference(p); }, config.tol);
    r.quantum = std::move(q.report);
    r.classical = std::move(c.report);
    if (!q.error.empty()) r.error = "ssdb:" + q.error;
    if (!c.error.empty()) r.error += (r.error.empty() ? "" : ";") + std::string("classical:") + c.error;
    records.push_back(std::move(r));
  }
  return records;
}

void write_scatter_csv(std::ostream& out, const SweepConfig& config, const std::vector<ScatterRecord>& records) {
  write_preamble(out, "scatter", config);
  out << "# scatter: detuning in [" << format_number(config.detuning_lo) << ", "
      << format_number(config.detuning_hi) << "], omega_drive_amp in [" << format_number(config.omega_lo)
      << ", " << format_number(config.omega_hi) << "], samples=" << config.samples
      << ", seed=" << config.seed << '\n';
  out << "detuning,omega_drive_amp,tur_lhs,coherence_bound,xi_bound,q_cl,error\n";
  auto cell = [](const std::optional<TurReport>& r, double TurReport::*field) {
    return r ? format_number((*r).*field) : std::string("ERR");
  };
  for (const auto& r : records) {
    out << format_number(r.detuning) << ',' << format_number(r.omega_drive_amp) << ','
        << cell(r.quantum, &TurReport::tur_lhs) << ',' << cell(r.quantum, &TurReport::coherence_bound) << ','
        << cell(r.quantum, &TurReport::xi_bound) << ',' << cell(r.classical, &TurReport::tur_lhs) << ','
        << (r.error.empty() ? "ok" : r.error) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Validation suites

namespace {

using Check = std::function<void(std::ostringstream&, bool&)>;

SuiteResult run_suite(const std::string& name, const Check& body) {
  SuiteResult r{name, true, {}};
  std::ostringstream detail;
  detail.precision(6);
  try {
    body(detail, r.passed);
  } catch (const std::exception& ex) {
    r.passed = false;
    detail << " exception: " << ex.what();
  }
  r.detail = detail.str();
  return r;
}

void expect(bool ok, std::ostringstream& detail, bool& passed, const std::string& what) {
  if (!ok) {
    passed = false;
    detail << " [" << what << ']';
  }
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

LindbladModel thermal_qubit(double gamma, double n, double omega) {
  ComplexMatrix sm = ComplexMatrix::Zero(2, 2);  // |g><e| with basis (|g>, |e>)
  sm(0, 1) = 1.0;
  ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  h(0, 0) = -omega / 2.0;
  h(1, 1) = omega / 2.0;
  const double ds = std::log((n + 1.0) / n);
  std::vector<CountingChannel> ch{{std::sqrt(gamma * (n + 1.0)) * sm, 1, ds, 1, "emit"},
                                  {std::sqrt(gamma * n) * ComplexMatrix(sm.adjoint()), -1, -ds, 0, "absorb"}};
  return LindbladModel(h, std::move(ch), true);
}

}  // namespace

std::vector<SuiteResult> run_validate(const ValidateOptions& options) {
  const Tolerances& tol = options.tol;
  const models::SsdbParams fig1;
  std::vector<SuiteResult> out;

  out.push_back(run_suite("liouvillian", [&](std::ostringstream& d, bool& ok) {
    std::mt19937_64 rng(options.seed);
    for (const auto& m : {models::build_ssdb(fig1), models::build_classical_reference(fig1),
                          thermal_qubit(1.0, 1.0, 1.0)}) {
      const SuperOperator l = build_liouvillian(m, tol);
      expect(trace_defect(l) <= tol.trace_preservation, d, ok, "trace preservation");
      ComplexMatrix a = ComplexMatrix::Zero(m.dim(), m.dim());
      for (Eigen::Index i = 0; i < a.size(); ++i) {
        a(i) = Complex(uniform_between(rng, -1, 1), uniform_between(rng, -1, 1));
      }
      const ComplexMatrix rho = a * a.adjoint();
      const ComplexMatrix drho = l.apply(rho);
      expect(max_abs(drho - drho.adjoint()) <= tol.hermiticity, d, ok, "hermiticity preservation");
    }
  }));

  out.push_back(run_suite("steady_state", [&](std::ostringstream& d, bool& ok) {
    const SteadyState ss = steady_state(build_liouvillian(thermal_qubit(1.0, 1.0, 1.0)), tol);
    const double ree = ss.rho(1, 1).real();
    d << " rho_ee=" << ree;
    expect(std::abs(ree - 1.0 / 3.0) <= 1e-12, d, ok, "thermal qubit rho_ee = 1/3");
    for (const auto& m : {models::build_ssdb(fig1), models::build_classical_reference(fig1)}) {
      const SteadyState s = steady_state(build_liouvillian(m, tol), tol);
      expect(s.residual_norm <= tol.steady_residual, d, ok, "residual");
      expect(std::abs(s.rho.trace() - 1.0) <= tol.steady_trace, d, ok, "trace");
      expect(max_abs(s.rho - s.rho.adjoint()) <= tol.steady_hermitian, d, ok, "hermitian");
      expect(s.spectral_gap > 0.0, d, ok, "gap");
    }
  }));

  out.push_back(run_suite("drazin", [&](std::ostringstream& d, bool& ok) {
    double worst = 0.0;
    for (const auto& m : {models::build_ssdb(fig1), models::build_classical_reference(fig1)}) {
      const SuperOperator l = build_liouvillian(m, tol);
      const SteadyState ss = steady_state(l, tol);
      const DrazinInverse lp = drazin_inverse(l, ss, tol);
      const SuperOperator q = SuperOperator::identity(m.dim()) - stationary_projector(ss);
      const SuperOperator p = stationary_projector(ss);
      for (const ComplexMatrix& e : {ComplexMatrix((l * lp.op - q).matrix()),
                                     ComplexMatrix((lp.op * l - q).matrix()),
                                     ComplexMatrix((lp.op * l * lp.op - lp.op).matrix()),
                                     ComplexMatrix((l * lp.op * l - l).matrix()),
                                     ComplexMatrix((lp.op * p).matrix()), ComplexMatrix((p * lp.op).matrix()),
                                     ComplexMatrix(lp.op.matrix() * vectorize(ss.rho)),
                                     ComplexMatrix(trace_row(m.dim()) * lp.op.matrix())}) {
        worst = std::max(worst, max_abs(e));
      }
    }
    d << " max identity defect=" << worst;
    expect(worst <= tol.drazin_identity, d, ok, "Drazin identities");
  }));

  out.push_back(run_suite("fcs", [&](std::ostringstream& d, bool& ok) {
    for (double delta : {-1.5, -0.75, 0.0, 0.75, 1.5}) {
      models::SsdbParams p = fig1;
      p.detuning = delta;
      const LindbladModel m = models::build_ssdb(p);
      const SuperOperator l = build_liouvillian(m, tol);
      const SteadyState ss = steady_state(l, tol);
      const DrazinInverse lp = drazin_inverse(l, ss, tol);
      const double ja = mean_current_analytic(m, ss, tol);
      const double da = noise_analytic(m, ss, lp, tol);
      const CumulantEstimates num = cumulants_numeric(m, tol);
      expect(rel_diff(num.J, ja) <= tol.j_rel, d, ok, "J analytic vs CGF");
      expect(rel_diff(num.D, da) <= tol.d_rel, d, ok, "D analytic vs CGF");
      expect(std::abs(cgf_dominant_eigenvalue(m, 0.0, tol)) <= 1e-10, d, ok, "zeta(0) = 0");
      const Complex zp = cgf_dominant_eigenvalue(m, 0.3, tol);
      const Complex zm = cgf_dominant_eigenvalue(m, -0.3, tol);
      expect(std::abs(zm - std::conj(zp)) <= 1e-10, d, ok, "zeta(-chi) = conj zeta(chi)");
    }
  }));

  out.push_back(run_suite("sensitivity_incoherent", [&](std::ostringstream& d, bool& ok) {
    const LindbladModel m = models::build_classical_reference(fig1);
    const SuperOperator l = build_liouvillian(m, tol);
    const SteadyState ss = steady_state(l, tol);
    const DrazinInverse lp = drazin_inverse(l, ss, tol);
    const double tau = 100.0 / ss.spectral_gap;
    const double sens = deformed_mean_sensitivity(m, ss, tau, tol);
    const double target = tau * mean_current_analytic(m, ss, tol) * (1.0 + coherence_factor_psi(m, ss, lp, tol));
    d << " relative deviation=" << rel_diff(sens, target);
    expect(rel_diff(sens, target) <= tol.sensitivity_rel, d, ok, "classical sensitivity = tau J");
  }));

  out.push_back(run_suite("sensitivity", [&](std::ostringstream& d, bool& ok) {
    const LindbladModel m = models::build_ssdb(fig1);
    const SuperOperator l = build_liouvillian(m, tol);
    const SteadyState ss = steady_state(l, tol);
    const DrazinInverse lp = drazin_inverse(l, ss, tol);
    const double tau = 100.0 / ss.spectral_gap;
    const double sens = deformed_mean_sensitivity(m, ss, tau, tol);
    const double target = tau * mean_current_analytic(m, ss, tol) * (1.0 + coherence_factor_psi(m, ss, lp, tol));
    d << " finite difference=" << sens << " tau*J*(1+psi)=" << target
      << " relative deviation=" << rel_diff(sens, target);
    expect(rel_diff(sens, target) <= tol.sensitivity_rel, d, ok, "sensitivity identity");
  }));

  out.push_back(run_suite("bounds", [&](std::ostringstream& d, bool& ok) {
    std::mt19937_64 rng(options.seed);
    int violations = 0;
    for (int i = 0; i < 200; ++i) {
      models::SsdbParams p = fig1;
      p.detuning = uniform_between(rng, -1.5, 1.5);
      p.omega_drive_amp = uniform_between(rng, 0.01, 0.8);
      try {
        (void)tur_report(models::build_ssdb(p), tol);
        const TurReport c = tur_report(models::build_classical_reference(p), tol);
        if (c.tur_lhs < 2.0 - tol.bound_slack) ++violations;
      } catch (const BoundViolation&) {
        ++violations;
      }
    }
    d << " violations=" << violations << "/200";
    expect(violations == 0, d, ok, "uncertainty bounds");
  }));

  if (!options.skip_mc) {
    out.push_back(run_suite("trajectories", [&](std::ostringstream& d, bool& ok) {
      const LindbladModel m = models::build_ssdb(fig1);
      const SuperOperator l = build_liouvillian(m, tol);
      const SteadyState ss = steady_state(l, tol);
      const DrazinInverse lp = drazin_inverse(l, ss, tol);
      const double ja = mean_current_analytic(m, ss, tol);
      const double da = noise_analytic(m, ss, lp, tol);
      const auto mc = simulate_ensemble(m, 200.0 / ss.spectral_gap, options.mc_trajectories, options.seed);
      d << " J_mc=" << mc.mean_rate << "+-" << mc.se_mean << " J=" << ja << " D_mc=" << mc.var_rate << "+-"
        << mc.se_var << " D=" << da;
      expect(std::abs(mc.mean_rate - ja) <= 3.0 * mc.se_mean, d, ok, "J within 3 se");
      expect(std::abs(mc.var_rate - da) <= 3.0 * mc.se_var, d, ok, "D within 3 se");
    }));
  }
  return out;
}

}  // namespace ctur
