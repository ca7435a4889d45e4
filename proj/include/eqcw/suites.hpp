#pragma once

// Exact verification suites over the core layers: the graded-commutative
// kernel, Lie algebra data and the Weil calculus. Probes are whole monomial
// bases, so a passing suite holds on every element up to the truncation.

#include <string>
#include <vector>

#include "eqcw/check.hpp"
#include "eqcw/graded_algebra.hpp"
#include "eqcw/lie.hpp"
#include "eqcw/weil_cartan.hpp"

namespace eqcw {

/// Every monomial in gens of degree at most max_degree, the unit included.
/// Odd generators appear at most once.
inline std::vector<GradedElement> monomial_basis(const std::vector<Generator>& gens, int max_degree,
                                                 int truncation = kUntruncated) {
  std::vector<GradedElement> out;
  auto grow = [&](auto& self, std::size_t next, const GradedElement& m, int degree) -> void {
    out.push_back(m.truncated(truncation));
    for (std::size_t k = next; k < gens.size(); ++k) {
      const Generator& g = gens[k];
      if (g.degree() <= 0) continue;
      GradedElement power = m;
      int d = degree;
      for (int p = 1; d + g.degree() <= max_degree; ++p) {
        power = power * GradedElement(g);
        d += g.degree();
        self(self, k + 1, power, d);
        if (g.is_odd()) break;
      }
    }
  };
  grow(grow, 0, GradedElement(Scalar(1)), 0);
  return out;
}

namespace suite_detail {
inline void note(std::string& detail, const std::string& what, const GradedElement& residual) {
  if (detail.empty() && !residual.is_zero()) detail = what + " leaves " + residual.to_string();
}
}  // namespace suite_detail

/// Antisymmetry and Jacobi of the structure constants, and the bracket
/// relations of the matrix realization when there is one. The detail lists
/// every violating triple.
inline std::vector<CheckResult> verify_lie(const LieAlgebraData& g, const std::string& label) {
  std::vector<CheckResult> out;
  const LieValidation v = validate(g);
  std::string antisym, jacobi;
  for (const auto& x : v.violations) {
    std::string& target = x.kind == LieViolation::Kind::jacobi ? jacobi : antisym;
    target += (target.empty() ? "" : "; ") + x.describe();
  }
  out.push_back(CheckResult::exact("lie." + label + ".antisymmetry", antisym.empty(), antisym));
  out.push_back(CheckResult::exact("lie." + label + ".jacobi", jacobi.empty(), jacobi));
  if (g.rep() && v.ok) {
    const RepCheck r = check_rep(g, *g.rep());
    std::string detail;
    for (const auto& [a, b] : r.failing_pairs)
      detail += (detail.empty() ? "" : "; ") + std::string("[M_") + std::to_string(a + 1) + ",M_" + std::to_string(b + 1) + "]";
    out.push_back(CheckResult::exact("lie." + label + ".representation", r.ok, detail));
  }
  return out;
}

/// Graded commutativity, associativity and the Leibniz rule for d and the
/// contractions of W(g), on all basis products up to the truncation.
inline std::vector<CheckResult> verify_graded_algebra(const WeilAlgebra& W) {
  const int top = std::min(W.truncation(), 8);
  const auto small = monomial_basis(W.generators(), std::min(top, 3), W.truncation());
  std::string commute, assoc, leibniz;
  for (const auto& x : small)
    for (const auto& y : small) {
      const int dx = x.degree().value_or(0), dy = y.degree().value_or(0);
      if (dx + dy > top) continue;
      const Scalar sign((dx * dy) % 2 == 0 ? 1 : -1);
      suite_detail::note(commute, x.to_string() + " * " + y.to_string(), x * y - sign * (y * x));
      const Scalar sx(dx % 2 == 0 ? 1 : -1);
      suite_detail::note(leibniz, "d(" + x.to_string() + " * " + y.to_string() + ")",
                         W.d()(x * y) - W.d()(x) * y - sx * (x * W.d()(y)));
      for (int a = 0; a < W.dim(); ++a)
        suite_detail::note(leibniz, "iota_" + std::to_string(a + 1) + "(" + x.to_string() + " * " + y.to_string() + ")",
                           W.iota(a)(x * y) - W.iota(a)(x) * y - sx * (x * W.iota(a)(y)));
      for (int k = 0; k < W.dim() && dx + dy + 1 <= top; ++k) {
        const GradedElement z = W.theta(k);
        suite_detail::note(assoc, x.to_string() + " * " + y.to_string() + " * " + z.to_string(), (x * y) * z - x * (y * z));
      }
    }
  const std::string name = "graded." + W.algebra().name();
  return {CheckResult::exact(name + ".commutativity", commute.empty(), commute),
          CheckResult::exact(name + ".associativity", assoc.empty(), assoc),
          CheckResult::exact(name + ".leibniz", leibniz.empty(), leibniz)};
}

/// d^2 = 0, {iota_a, iota_b} = 0, [L_a, iota_b] = f^c_{ab} iota_c on the full
/// monomial basis up to the truncation, and d nu^a = -f^a_{bc} theta^b nu^c.
inline std::vector<CheckResult> verify_weil_calculus(const WeilAlgebra& truncated_W) {
  const LieAlgebraData& g = truncated_W.algebra();
  const int n = g.dim();
  const int top = truncated_W.truncation() == kUntruncated ? 8 : truncated_W.truncation();
  // Lie derivatives pass through degree top + 1 on the way (iota d x), so the
  // arithmetic runs one degree above the probes.
  const WeilAlgebra W(g, top + 1);
  std::string d2, anti, lie_iota, bianchi;
  for (const auto& x : monomial_basis(W.generators(), top, W.truncation())) {
    suite_detail::note(d2, "d^2 " + x.to_string(), W.d()(W.d()(x)));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const std::string ab = std::to_string(a + 1) + std::to_string(b + 1);
        suite_detail::note(anti, "{iota,iota}_" + ab + " " + x.to_string(), graded_commutator(W.iota(a), W.iota(b), x));
        GradedElement r = W.lie_derivative(a, W.iota(b)(x)) - W.iota(b)(W.lie_derivative(a, x));
        for (int c = 0; c < n; ++c)
          if (!g.f(c, a, b).is_zero()) r -= g.f(c, a, b) * W.iota(c)(x);
        suite_detail::note(lie_iota, "[L,iota]_" + ab + " " + x.to_string(), r);
      }
  }
  for (int a = 0; a < n; ++a) {
    GradedElement r = W.d()(nu(W, a));
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (!g.f(a, b, c).is_zero()) r += g.f(a, b, c) * (W.theta(b) * nu(W, c));
    suite_detail::note(bianchi, "d nu^" + std::to_string(a + 1), r);
  }
  const std::string name = "weil." + g.name();
  return {CheckResult::exact(name + ".d_squared", d2.empty(), d2),
          CheckResult::exact(name + ".iota_anticommute", anti.empty(), anti),
          CheckResult::exact(name + ".lie_iota", lie_iota.empty(), lie_iota),
          CheckResult::exact(name + ".bianchi", bianchi.empty(), bianchi)};
}

}  // namespace eqcw
