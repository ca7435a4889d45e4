#pragma once

// Runs verification suites for a scenario and renders the report: a human
// section, a machine section of CHECK/VALUE records and the resolved
// scenario, which can be parsed back in.
//
// Exit codes are a bitmask: 1 verify-core, 2 universal-check, 4 series,
// 8 anomaly failed; 16 scenario rejected; 32 usage error.

#include <fmt/format.h>

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "eqcw/anomaly.hpp"
#include "eqcw/char_series.hpp"
#include "eqcw/equivariant_conn.hpp"
#include "eqcw/geometry_oracle.hpp"
#include "eqcw/scenario.hpp"
#include "eqcw/suites.hpp"

namespace eqcw {

enum ExitCode : int {
  exit_ok = 0,
  exit_verify_core = 1,
  exit_universal_check = 2,
  exit_series = 4,
  exit_anomaly = 8,
  exit_scenario = 16,
  exit_usage = 32,
};

inline int suite_exit_bit(const std::string& suite) {
  if (suite == "verify-core") return exit_verify_core;
  if (suite == "universal-check") return exit_universal_check;
  if (suite == "series") return exit_series;
  if (suite == "anomaly") return exit_anomaly;
  return exit_usage;
}

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"verify-core", "universal-check", "series", "anomaly", "all"};
  return names;
}

struct SuiteReport {
  std::string suite;
  std::vector<std::string> notes;   // human-only lines
  std::vector<CheckResult> checks;
  std::vector<std::string> values;  // machine VALUE payloads
  bool pass() const { return all_pass(checks); }
};

struct RunOutput {
  int exit_code = 0;
  std::vector<SuiteReport> suites;
  std::string report;
};

/// Replaces the scenario's truncation, re-applying the series/anomaly bound.
inline void override_truncation(Scenario& sc, int truncation) {
  if (truncation < 0 || truncation > 64) throw ScenarioError({{0, "--truncation must be in [0, 64]"}});
  const bool needs_four = std::any_of(sc.suites.begin(), sc.suites.end(),
                                      [](const std::string& s) { return s == "series" || s == "anomaly"; });
  if (needs_four && truncation < 4)
    throw ScenarioError({{0, "truncation must be at least 4 when series or anomaly checks are requested"}});
  sc.truncation = truncation;
}

namespace runner_detail {

inline std::string format_residual(const CheckResult& c) {
  return c.residual ? fmt::format("{:.3e}", *c.residual) : std::string("exact");
}

inline std::string format_complex(Complex z) { return fmt::format("{:+.12e}{:+.12e}i", z.real(), z.imag()); }

inline void prefix_checks(std::vector<CheckResult>& checks, const std::string& prefix, std::vector<CheckResult> more) {
  for (auto& c : more) {
    c.name = prefix + c.name;
    checks.push_back(std::move(c));
  }
}

/// Builds U(g, h) with at least one degree of headroom above the curvature,
/// which the construction's own Lie-derivative checks need.
inline UniversalConnectionAlgebra universal(const Scenario& sc, int truncation) {
  return UniversalConnectionAlgebra::build(sc.symmetry_algebra(), sc.structure_algebra(), std::max(truncation, 3));
}

inline SuiteReport verify_core(const Scenario& sc) {
  SuiteReport r{"verify-core", {}, {}, {}};
  const auto g = sc.symmetry_algebra(), h = sc.structure_algebra();
  prefix_checks(r.checks, "", verify_lie(g, "symmetry"));
  prefix_checks(r.checks, "", verify_lie(h, "structure"));
  std::vector<LieAlgebraData> weil{g};
  if (sc.structure != sc.symmetry) weil.push_back(h);
  for (const auto& alg : weil) {
    const WeilAlgebra W(alg, sc.truncation);
    r.notes.push_back(fmt::format("W({}) probed on its full monomial basis up to degree {}", alg.name(), sc.truncation));
    prefix_checks(r.checks, "", verify_graded_algebra(W));
    prefix_checks(r.checks, "", verify_weil_calculus(W));
  }
  return r;
}

inline SuiteReport universal_check(const Scenario& sc) {
  SuiteReport r{"universal-check", {}, {}, {}};
  const auto U = universal(sc, sc.truncation);
  r.notes.push_back(fmt::format("U({}, {}) at truncation {}", U.symmetry().name(), U.structure().name(), U.truncation()));
  prefix_checks(r.checks, "", U.consistency_suite());
  const TensorWeilAlgebra T(U);
  r.checks.push_back(verify_prop1(T));
  r.checks.push_back(verify_horizontality(T));
  r.checks.push_back(verify_augmentation(T));
  prefix_checks(r.checks, "", verify_equivariant_closedness(U));
  return r;
}

/// B_0..B_n from sum_{k<=m} C(m+1, k) B_k = 0.
inline std::vector<Rational> bernoulli(int n) {
  std::vector<Rational> B(static_cast<std::size_t>(n) + 1);
  B[0] = 1;
  for (int m = 1; m <= n; ++m) {
    Rational sum = 0, binom = 1;  // C(m+1, k)
    for (int k = 0; k < m; ++k) {
      sum += binom * B[static_cast<std::size_t>(k)];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    B[static_cast<std::size_t>(m)] = -sum / (m + 1);
  }
  return B;
}

/// Closed-form coefficients: 1/k! for exp, and for (x/2)/sinh(x/2) the
/// even coefficients (2 - 2^{2n}) B_{2n} / ((2n)! 2^{2n}).
inline PowerSeries closed_form_series(const std::string& name, int order) {
  std::vector<Rational> c(static_cast<std::size_t>(order) + 1);
  Rational fact = 1;
  const auto B = bernoulli(order);
  for (int k = 0; k <= order; ++k) {
    if (k > 0) fact *= k;
    if (name == "ch") {
      c[static_cast<std::size_t>(k)] = 1 / fact;
    } else if (k % 2 == 0) {
      Rational two_pow = 1;
      for (int j = 0; j < k; ++j) two_pow *= 2;
      c[static_cast<std::size_t>(k)] = (2 - two_pow) * B[static_cast<std::size_t>(k)] / (fact * two_pow);
    }
  }
  return PowerSeries(c);
}

inline SuiteReport series(const Scenario& sc) {
  SuiteReport r{"series", {}, {}, {}};
  const auto& spec = *sc.series;
  const int top = std::min(spec.degree, sc.truncation);
  const CharSeries S = *CharSeries::by_name(spec.name, std::max(spec.degree, 1), sc.normalization);
  const std::string base = "series." + spec.name;
  r.notes.push_back(fmt::format("{} with {} normalization, coefficients to degree {}", spec.name,
                                to_string(sc.normalization), spec.degree));

  for (int k = 0; k <= spec.degree; ++k) {
    const Rational& c = S.function[k];
    r.notes.push_back(fmt::format("  f[{}] = {}", k, c.get_str()));
    r.values.push_back(fmt::format("{}.coefficient {} {}", base, k, c.get_str()));
  }
  if (S.kind == SeriesKind::multiplicative)
    for (int k = 1; k <= spec.degree; ++k)
      r.values.push_back(fmt::format("{}.log_coefficient {} {}", base, k, S.log_coefficients[k].get_str()));
  // Scalar coefficient of tr(R^k) once u = scale * R is substituted.
  Scalar scale_power(1);
  for (int k = 1; k <= spec.degree; ++k) {
    scale_power = scale_power * S.curvature_scale();
    const Rational& c = S.kind == SeriesKind::additive ? S.function[k] : S.log_coefficients[k];
    const Scalar coef = Scalar(c) * scale_power * Scalar(S.kind == SeriesKind::additive ? Rational(1) : make_rational(1, 2));
    if (!coef.is_zero()) r.values.push_back(fmt::format("{}.trace_coefficient {} {}", base, k, coef.to_string()));
  }

  r.checks.push_back(
      CheckResult::exact(base + ".closed_form", S.function == closed_form_series(spec.name, S.function.order())));
  r.checks.push_back(CheckResult::exact(base + ".log_exp", S.function.log().exp() == S.function));

  const auto U = universal(sc, top);
  const auto& h = U.structure();
  if (!h.rep()) {
    r.checks.push_back(CheckResult::exact(base + ".universal_closed", false,
                                          "structure algebra " + h.name() + " has no matrix realization"));
    return r;
  }
  HVector comps;
  for (const auto& c : equivariant_curvature(U)) comps.push_back(c.value());
  const GradedMatrix omega_g = GradedMatrix::from_components(comps, *h.rep());
  CartanElement form;
  try {
    form = equivariant_substitute(S, omega_g, top);
  } catch (const NotAntisymmetricError& e) {
    r.checks.push_back(CheckResult::exact(base + ".universal_closed", false, e.what()));
    return r;
  }
  const CartanElement dform = cartan_differential(form, U.carrier());
  r.checks.push_back(CheckResult::exact(base + ".universal_closed", dform.is_zero(), dform.is_zero() ? "" : dform.to_string()));

  if (top >= 2) {
    const auto w = two_form_component(form, 0, U.symmetry().dim());
    const CartanElement rebuilt = reconstruct(w);
    const GradedElement low = form.chi_component(0).value().component(2) + form.chi_component(1).value().component(2);
    r.checks.push_back(CheckResult::exact(base + ".two_form_reconstruction", rebuilt.value() == Scalar::tau() * low));
    r.values.push_back(fmt::format("{}.omega {}", base, w.omega.to_string()));
    for (std::size_t a = 0; a < w.moment.size(); ++a)
      r.values.push_back(fmt::format("{}.moment {} {}", base, a + 1, w.moment[a].to_string()));
  }
  return r;
}

inline SuiteReport anomaly(const Scenario& sc) {
  SuiteReport r{"anomaly", {}, {}, {}};
  const auto& m = *sc.monopole;
  const SphereGrid grid(m.n_theta, m.n_phi);
  const std::string name = sc.series ? sc.series->name : "ch";
  const CharSeries S = *CharSeries::by_name(name, std::max(sc.series ? sc.series->degree : 4, 4), sc.normalization);
  r.notes.push_back(fmt::format("grid {}x{}, series {}", m.n_theta, m.n_phi, name));
  r.notes.push_back("  k  gen  lambda  exact closed form  |  closed form (quadrature)  |  tau*mu  |  mu = closed/tau");
  for (int k : m.charges) {
    const auto s = monopole(k, grid);
    const std::string prefix = fmt::format("k={}.", k);
    const Complex flux = integrate(s.curvature(), grid), exact = s.exact_flux().evaluate();
    const double flux_residual = k == 0 ? std::abs(flux) : std::abs(flux - exact) / std::abs(exact);
    r.checks.push_back(CheckResult::numeric(prefix + "geometry.flux", flux_residual, 1e-12));
    for (const auto& id : {"invariance", "eq4", "equivariant_closedness"}) {
      CheckResult c = verify_pointwise(s, id);
      c.name = prefix + c.name;
      r.checks.push_back(std::move(c));
    }
    const auto cv = cross_validate(s, S, m.gauge);
    prefix_checks(r.checks, prefix, cv.checks);
    const Complex tau(0.0, 2 * std::numbers::pi);
    for (const auto& row : cv.rows) {
      r.notes.push_back(fmt::format("  {:>2}  e{}  {:>6}  {}  |  {}  |  {}  |  {}", row.charge, row.generator + 1,
                                    row.lambda.get_str(), row.exact_closed_form.to_string(),
                                    format_complex(row.closed_form), format_complex(tau * row.moment_symbolic),
                                    format_complex(row.closed_form_stripped)));
      r.values.push_back(fmt::format(
          "anomaly k={} generator={} lambda={} exact={} closed={} tau_mu_symbolic={} tau_mu_numeric={} stripped={} "
          "residual={:.3e}",
          row.charge, row.generator + 1, row.lambda.get_str(), row.exact_closed_form.to_string(),
          format_complex(row.closed_form), format_complex(tau * row.moment_symbolic),
          format_complex(tau * row.moment_numeric), format_complex(row.closed_form_stripped), row.residual));
    }
  }
  return r;
}

inline SuiteReport run_suite(const std::string& suite, const Scenario& sc) {
  try {
    if (suite == "verify-core") return verify_core(sc);
    if (suite == "universal-check") return universal_check(sc);
    if (suite == "series") return series(sc);
    return anomaly(sc);
  } catch (const Error& e) {
    SuiteReport r{suite, {}, {}, {}};
    r.checks.push_back(CheckResult::exact(suite + ".aborted", false, e.what()));
    return r;
  }
}

// Top-level identities read as titles ("Prop1"); dotted paths stay as they are.
inline std::string human_label(std::string name) {
  if (!name.empty() && name.find('.') == std::string::npos) name[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
  return name;
}

inline std::string render(const std::string& command, const Scenario& sc, const RunOutput& out) {
  std::ostringstream os;
  os << "eqcw report\n"
     << "command: " << command << "\n"
     << "symmetry: " << sc.symmetry << "  structure: " << sc.structure << "  truncation: " << sc.truncation << "\n";
  for (const auto& s : out.suites) {
    os << "\n== " << s.suite << " ==\n";
    for (const auto& n : s.notes) os << n << "\n";
    for (const auto& c : s.checks) {
      os << human_label(c.name) << ": " << (c.pass ? "PASS" : "FAIL") << " ("
         << (c.residual ? "residual " + format_residual(c) : std::string("exact")) << ")";
      if (!c.pass && !c.detail.empty()) os << "\n    " << c.detail;
      os << "\n";
    }
  }
  os << "\n== summary ==\n";
  for (const auto& s : out.suites) os << s.suite << ": " << (s.pass() ? "PASS" : "FAIL") << "\n";
  os << "exit code: " << out.exit_code << "\n";

  os << "\nBEGIN MACHINE\n";
  os << "COMMAND " << command << "\n";
  for (const auto& s : out.suites) {
    os << "SUITE " << s.suite << " " << (s.pass() ? "PASS" : "FAIL") << "\n";
    for (const auto& c : s.checks) os << "CHECK " << c.name << " " << (c.pass ? "PASS" : "FAIL") << " " << format_residual(c) << "\n";
    for (const auto& v : s.values) os << "VALUE " << v << "\n";
  }
  os << "EXIT " << out.exit_code << "\n";
  os << "END MACHINE\n";

  os << "\nBEGIN SCENARIO\n" << sc.resolved() << "END SCENARIO\n";
  return os.str();
}

}  // namespace runner_detail

/// Runs one command. Throws ScenarioError when the scenario lacks the inputs
/// the command needs.
inline RunOutput run(const std::string& command, const Scenario& sc) {
  if (std::find(command_names().begin(), command_names().end(), command) == command_names().end())
    throw std::invalid_argument("unknown command '" + command + "'");
  std::vector<std::string> suites = command == "all" ? sc.suites : std::vector<std::string>{command};
  if (command == "series" && !sc.series) throw ScenarioError({{0, "command 'series' needs the 'series' key"}});
  if (command == "anomaly" && !sc.monopole) throw ScenarioError({{0, "command 'anomaly' needs a [monopole] section"}});
  if ((command == "series" || command == "anomaly") && sc.truncation < 4)
    throw ScenarioError({{0, "truncation must be at least 4 for command '" + command + "'"}});

  RunOutput out;
  for (const auto& s : suites) {
    out.suites.push_back(runner_detail::run_suite(s, sc));
    if (!out.suites.back().pass()) out.exit_code |= suite_exit_bit(s);
  }
  out.report = runner_detail::render(command, sc, out);
  return out;
}

/// The lines between BEGIN MACHINE and END MACHINE, markers included.
inline std::string machine_section(const std::string& report) {
  const auto b = report.find("BEGIN MACHINE\n");
  const auto e = report.find("END MACHINE\n");
  if (b == std::string::npos || e == std::string::npos || e < b) return {};
  return report.substr(b, e + std::string("END MACHINE\n").size() - b);
}

}  // namespace eqcw
