#pragma once

// Universal model of a G-invariant connection on a principal H-bundle.
//
// The free algebra is generated by the connection Theta^i (degree 1), its
// curvature Omega^i (degree 2), the moment components mu_a^i = iota_a Theta^i
// (degree 0) and rho_a^i = iota_a Omega^i (degree 1). Indices a run over g,
// indices i over h; c^i_{jk} are the structure constants of h.
//
//   d Theta  = Omega - 1/2 [Theta, Theta]
//   d Omega  = c Omega Theta
//   d mu_a   = -rho_a + c mu_a Theta
//   d rho_a  = -c (rho_a Theta + Omega mu_a)
//   iota_a Theta = mu_a,  iota_a Omega = rho_a,  iota_a mu_b = 0
//   iota_b rho_a = f^c_{ab} mu_c + [mu_a, mu_b]
//
// with [alpha ^ beta]^i = c^i_{jk} alpha^j beta^k throughout. These are the
// relations forced by G-invariance of Theta; nothing else is imposed.

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eqcw/check.hpp"
#include "eqcw/graded_matrix.hpp"
#include "eqcw/weil_cartan.hpp"

namespace eqcw {

inline Generator Theta_gen(int i) { return Generator("Theta", 1, {h_index(i)}); }
inline Generator Omega_gen(int i) { return Generator("Omega", 2, {h_index(i)}); }
inline Generator mu_gen(int a, int i) { return Generator("mu", 0, {g_index(a), h_index(i)}); }
inline Generator rho_gen(int a, int i) { return Generator("rho", 1, {g_index(a), h_index(i)}); }

/// h-valued element, one GradedElement per basis vector of h.
using HVector = std::vector<GradedElement>;

/// [alpha ^ beta]^i = c^i_{jk} alpha^j beta^k.
inline HVector h_bracket(const LieAlgebraData& h, const HVector& alpha, const HVector& beta) {
  HVector out(static_cast<std::size_t>(h.dim()));
  for (int i = 0; i < h.dim(); ++i)
    for (int j = 0; j < h.dim(); ++j)
      for (int k = 0; k < h.dim(); ++k) {
        const Scalar& c = h.f(i, j, k);
        if (c.is_zero()) continue;
        out[static_cast<std::size_t>(i)] +=
            c * (alpha[static_cast<std::size_t>(j)] * beta[static_cast<std::size_t>(k)]);
      }
  return out;
}

/// Image tables of d and iota_a on the universal generators.
class ConnectionTables {
 public:
  ConnectionTables(LieAlgebraData g, LieAlgebraData h) : g_(std::move(g)), h_(std::move(h)) {}

  const LieAlgebraData& symmetry() const { return g_; }
  const LieAlgebraData& structure() const { return h_; }

  std::optional<GradedElement> d_table(const Generator& x) const {
    const Scalar half = Scalar::rational(1, 2);
    if (x.name() == "Theta") {
      const int i = x.index(IndexClass::h);
      GradedElement out(Omega_gen(i));
      for_c(i, [&](int j, int k, const Scalar& c) {
        out -= half * c * (GradedElement(Theta_gen(j)) * GradedElement(Theta_gen(k)));
      });
      return out;
    }
    if (x.name() == "Omega") {
      const int i = x.index(IndexClass::h);
      GradedElement out;
      for_c(i, [&](int j, int k, const Scalar& c) { out += c * (GradedElement(Omega_gen(j)) * GradedElement(Theta_gen(k))); });
      return out;
    }
    if (x.name() == "mu") {
      const int a = x.index(IndexClass::g), i = x.index(IndexClass::h);
      GradedElement out = -GradedElement(rho_gen(a, i));
      for_c(i, [&](int j, int k, const Scalar& c) { out += c * (GradedElement(mu_gen(a, j)) * GradedElement(Theta_gen(k))); });
      return out;
    }
    if (x.name() == "rho") {
      const int a = x.index(IndexClass::g), i = x.index(IndexClass::h);
      GradedElement out;
      for_c(i, [&](int j, int k, const Scalar& c) {
        out -= c * (GradedElement(rho_gen(a, j)) * GradedElement(Theta_gen(k)) +
                    GradedElement(Omega_gen(j)) * GradedElement(mu_gen(a, k)));
      });
      return out;
    }
    return std::nullopt;
  }

  std::optional<GradedElement> iota_table(int b, const Generator& x) const {
    if (x.name() == "Theta") return GradedElement(mu_gen(b, x.index(IndexClass::h)));
    if (x.name() == "Omega") return GradedElement(rho_gen(b, x.index(IndexClass::h)));
    if (x.name() == "mu") return GradedElement();
    if (x.name() == "rho") {
      const int a = x.index(IndexClass::g), i = x.index(IndexClass::h);
      GradedElement out;
      for (int c = 0; c < g_.dim(); ++c)
        if (!g_.f(c, a, b).is_zero()) out += g_.f(c, a, b) * GradedElement(mu_gen(c, i));
      for_c(i, [&](int j, int k, const Scalar& c) { out += c * (GradedElement(mu_gen(a, j)) * GradedElement(mu_gen(b, k))); });
      return out;
    }
    return std::nullopt;
  }

 private:
  template <class F>
  void for_c(int i, F&& f) const {
    for (int j = 0; j < h_.dim(); ++j)
      for (int k = 0; k < h_.dim(); ++k)
        if (!h_.f(i, j, k).is_zero()) f(j, k, h_.f(i, j, k));
  }

  LieAlgebraData g_;
  LieAlgebraData h_;
};

class UniversalConnectionAlgebra {
 public:
  /// Validates g and h, builds the tables and runs the consistency suite;
  /// throws ConsistencyError if any identity fails.
  static UniversalConnectionAlgebra build(const LieAlgebraData& g, const LieAlgebraData& h, int truncation) {
    for (const auto* alg : {&g, &h}) {
      auto report = validate(*alg);
      if (!report.ok)
        throw ConsistencyError("algebra " + alg->name() + " is not a Lie algebra: " +
                               report.violations.front().describe());
    }
    UniversalConnectionAlgebra U(g, h, truncation);
    for (const auto& r : U.consistency_suite())
      if (!r.pass) throw ConsistencyError("universal connection algebra: " + r.name + " failed: " + r.detail);
    return U;
  }

  const LieAlgebraData& symmetry() const { return tables_->symmetry(); }
  const LieAlgebraData& structure() const { return tables_->structure(); }
  const std::shared_ptr<const ConnectionTables>& tables() const { return tables_; }
  int truncation() const { return truncation_; }

  GradedElement Theta(int i) const { return gen(Theta_gen(i), truncation_); }
  GradedElement Omega(int i) const { return gen(Omega_gen(i), truncation_); }
  GradedElement mu(int a, int i) const { return gen(mu_gen(a, i), truncation_); }
  GradedElement rho(int a, int i) const { return gen(rho_gen(a, i), truncation_); }

  HVector Theta() const { return per_h([this](int i) { return Theta(i); }); }
  HVector Omega() const { return per_h([this](int i) { return Omega(i); }); }
  HVector mu(int a) const { return per_h([this, a](int i) { return mu(a, i); }); }

  const Derivation& d() const { return d_; }
  const Derivation& iota(int a) const { return iota_.at(static_cast<std::size_t>(a)); }
  DifferentialCarrier carrier() const { return {d_, iota_}; }

  std::vector<Generator> generators() const {
    std::vector<Generator> out;
    for (int i = 0; i < structure().dim(); ++i) {
      out.push_back(Theta_gen(i));
      out.push_back(Omega_gen(i));
      for (int a = 0; a < symmetry().dim(); ++a) {
        out.push_back(mu_gen(a, i));
        out.push_back(rho_gen(a, i));
      }
    }
    return out;
  }

  /// Covariant derivative d x + [Theta ^ x] on h-valued elements.
  HVector covariant_d(const HVector& x) const {
    HVector out = h_bracket(structure(), Theta(), x);
    for (std::size_t i = 0; i < x.size(); ++i) out[i] += d_(x[i]);
    return out;
  }

  /// d^2 = 0, {iota_a, iota_b} = 0 and the Lie derivative rules on every
  /// generator, all exact.
  std::vector<CheckResult> consistency_suite() const {
    std::vector<CheckResult> out;
    auto first_failure = [](std::string& detail, const Generator& g, const GradedElement& r) {
      if (detail.empty() && !r.is_zero()) detail = g.to_string() + " -> " + r.to_string();
    };
    const int ng = symmetry().dim();
    std::string d2, iota_anti, lie_rules, eq4_anti;
    for (const auto& x : generators()) {
      const GradedElement gx = gen(x, truncation_);
      first_failure(d2, x, d_(d_(gx)));
      for (int a = 0; a < ng; ++a)
        for (int b = 0; b < ng; ++b) first_failure(iota_anti, x, graded_commutator(iota(a), iota(b), gx));
      for (int a = 0; a < ng; ++a) first_failure(lie_rules, x, carrier().lie_derivative(a, gx) - expected_lie(a, x));
    }
    for (int a = 0; a < ng; ++a)
      for (int b = 0; b < ng; ++b)
        for (int i = 0; i < structure().dim(); ++i)
          first_failure(eq4_anti, rho_gen(a, i), iota(b)(rho(a, i)) + iota(a)(rho(b, i)));
    out.push_back(CheckResult::exact("universal.d_squared", d2.empty(), d2));
    out.push_back(CheckResult::exact("universal.iota_anticommute", iota_anti.empty(), iota_anti));
    out.push_back(CheckResult::exact("universal.lie_derivatives", lie_rules.empty(), lie_rules));
    out.push_back(CheckResult::exact("universal.contraction_antisymmetry", eq4_anti.empty(), eq4_anti));
    return out;
  }

 private:
  UniversalConnectionAlgebra(const LieAlgebraData& g, const LieAlgebraData& h, int truncation)
      : tables_(std::make_shared<const ConnectionTables>(g, h)), truncation_(truncation),
        d_("d_U", 1, [t = tables_](const Generator& x) { return t->d_table(x); }) {
    for (int b = 0; b < g.dim(); ++b)
      iota_.emplace_back("iota_" + std::to_string(b + 1), -1,
                         [t = tables_, b](const Generator& x) { return t->iota_table(b, x); });
  }

  template <class F>
  HVector per_h(F&& f) const {
    HVector out;
    for (int i = 0; i < structure().dim(); ++i) out.push_back(f(i));
    return out;
  }

  /// L_a on generators: Theta and Omega are invariant, mu_b and rho_b
  /// transform in the adjoint, L_a x_b = f^c_{ab} x_c.
  GradedElement expected_lie(int a, const Generator& x) const {
    if (x.name() == "Theta" || x.name() == "Omega") return GradedElement();
    const int b = x.index(IndexClass::g), i = x.index(IndexClass::h);
    GradedElement out;
    for (int c = 0; c < symmetry().dim(); ++c)
      if (!symmetry().f(c, a, b).is_zero())
        out += symmetry().f(c, a, b) * GradedElement(x.name() == "mu" ? mu_gen(c, i) : rho_gen(c, i));
    return out;
  }

  std::shared_ptr<const ConnectionTables> tables_;
  int truncation_;
  Derivation d_;
  std::vector<Derivation> iota_;
};

/// W(g) (x) U with total differential and total contractions.
class TensorWeilAlgebra {
 public:
  explicit TensorWeilAlgebra(const UniversalConnectionAlgebra& U)
      : U_(U), W_(U.symmetry(), U.truncation()), d_(make_d(U.tables())), iota_(make_iota(U.tables())) {}

  const UniversalConnectionAlgebra& universal() const { return U_; }
  const WeilAlgebra& weil() const { return W_; }
  const Derivation& d() const { return d_; }
  const Derivation& iota(int a) const { return iota_.at(static_cast<std::size_t>(a)); }
  DifferentialCarrier carrier() const { return {d_, iota_}; }

  std::vector<Generator> generators() const {
    auto out = W_.generators();
    for (const auto& g : U_.generators()) out.push_back(g);
    return out;
  }

 private:
  using Tables = std::shared_ptr<const ConnectionTables>;

  static Derivation make_d(const Tables& t) {
    return Derivation("d_tot", 1, [t](const Generator& x) -> std::optional<GradedElement> {
      if (auto w = WeilAlgebra::d_table(x)) return w;
      return t->d_table(x);
    });
  }
  static std::vector<Derivation> make_iota(const Tables& t) {
    std::vector<Derivation> out;
    for (int b = 0; b < t->symmetry().dim(); ++b)
      out.emplace_back("iota_tot_" + std::to_string(b + 1), -1, [t, b](const Generator& x) -> std::optional<GradedElement> {
        if (auto w = WeilAlgebra::iota_table(t->symmetry(), b, x)) return w;
        return t->iota_table(b, x);
      });
    return out;
  }

  UniversalConnectionAlgebra U_;
  WeilAlgebra W_;
  Derivation d_;
  std::vector<Derivation> iota_;
};

/// Cartan-model curvature, components Omega^i - chi^a mu_a^i.
inline std::vector<CartanElement> equivariant_curvature(const UniversalConnectionAlgebra& U) {
  std::vector<CartanElement> out;
  for (int i = 0; i < U.structure().dim(); ++i) {
    GradedElement c = U.Omega(i);
    for (int a = 0; a < U.symmetry().dim(); ++a) c -= GradedElement(chi_gen(a)) * U.mu(a, i);
    out.emplace_back(c);
  }
  return out;
}

/// Theta^i - theta^a mu_a^i.
inline HVector universal_connection(const TensorWeilAlgebra& T) {
  const auto& U = T.universal();
  HVector out;
  for (int i = 0; i < U.structure().dim(); ++i) {
    GradedElement c = U.Theta(i);
    for (int a = 0; a < U.symmetry().dim(); ++a) c -= T.weil().theta(a) * U.mu(a, i);
    out.push_back(c);
  }
  return out;
}

/// Weil-model curvature
///   Omega - theta^a rho_a + 1/2 theta^a theta^b iota_b iota_a Omega - nu^a mu_a,
/// with iota_b iota_a Omega expanded by the contraction table.
inline HVector weil_curvature(const TensorWeilAlgebra& T) {
  const auto& U = T.universal();
  const auto& W = T.weil();
  const int ng = U.symmetry().dim();
  const Scalar half = Scalar::rational(1, 2);
  HVector out;
  for (int i = 0; i < U.structure().dim(); ++i) {
    GradedElement c = U.Omega(i);
    for (int a = 0; a < ng; ++a) {
      c -= W.theta(a) * U.rho(a, i);
      for (int b = 0; b < ng; ++b) c += half * (W.theta(a) * W.theta(b) * T.iota(b)(U.rho(a, i)));
      c -= nu(W, a) * U.mu(a, i);
    }
    out.push_back(c);
  }
  return out;
}

namespace conn_detail {
inline std::string mismatch(const HVector& lhs, const HVector& rhs) {
  for (std::size_t i = 0; i < lhs.size(); ++i)
    if (!(lhs[i] == rhs[i]))
      return "component " + std::to_string(i + 1) + ": lhs = " + lhs[i].to_string() + " ; rhs = " + rhs[i].to_string();
  return {};
}
}  // namespace conn_detail

/// d Theta_W + 1/2 [Theta_W ^ Theta_W] against the Weil-model curvature.
inline CheckResult verify_prop1(const TensorWeilAlgebra& T) {
  const HVector theta_w = universal_connection(T);
  HVector lhs = h_bracket(T.universal().structure(), theta_w, theta_w);
  for (std::size_t i = 0; i < lhs.size(); ++i) lhs[i] = T.d()(theta_w[i]) + Scalar::rational(1, 2) * lhs[i];
  const HVector rhs = weil_curvature(T);
  std::string detail = conn_detail::mismatch(lhs, rhs);
  return CheckResult::exact("prop1", detail.empty(), detail);
}

/// Augmentation of the Weil-model curvature against the Cartan-model one.
inline CheckResult verify_augmentation(const TensorWeilAlgebra& T) {
  HVector lhs, rhs;
  for (const auto& c : weil_curvature(T)) lhs.push_back(augmentation(T.weil(), c).value());
  for (const auto& c : equivariant_curvature(T.universal())) rhs.push_back(c.value());
  std::string detail = conn_detail::mismatch(lhs, rhs);
  return CheckResult::exact("augmentation.curvature", detail.empty(), detail);
}

/// Horizontality of the universal connection: iota_a^tot Theta_W = 0.
inline CheckResult verify_horizontality(const TensorWeilAlgebra& T) {
  const HVector theta_w = universal_connection(T);
  std::string detail;
  for (int a = 0; a < T.universal().symmetry().dim() && detail.empty(); ++a)
    for (std::size_t i = 0; i < theta_w.size() && detail.empty(); ++i) {
      GradedElement r = T.iota(a)(theta_w[i]);
      if (!r.is_zero()) detail = "iota_" + std::to_string(a + 1) + " Theta_W^" + std::to_string(i + 1) + " = " + r.to_string();
    }
  return CheckResult::exact("prop1.horizontal", detail.empty(), detail);
}

/// (d + [Theta, .] - chi^a iota_a) Omega_G = 0, and, when h carries a matrix
/// representation, (d - chi^a iota_a) tr(Omega_G^m) = 0 for 2m <= truncation.
inline std::vector<CheckResult> verify_equivariant_closedness(const UniversalConnectionAlgebra& U, int max_power = -1) {
  std::vector<CheckResult> out;
  const auto omega_g = equivariant_curvature(U);
  HVector components;
  for (const auto& c : omega_g) components.push_back(c.value());

  const HVector twist = h_bracket(U.structure(), U.Theta(), components);
  const auto carrier = U.carrier();
  std::string detail;
  for (std::size_t i = 0; i < twist.size(); ++i) {
    GradedElement r = cartan_differential(CartanElement(components[i]), carrier).value() + twist[i];
    if (!r.is_zero() && detail.empty()) detail = "component " + std::to_string(i + 1) + ": " + r.to_string();
  }
  out.push_back(CheckResult::exact("closedness.curvature", detail.empty(), detail));

  if (U.structure().rep()) {
    const GradedMatrix F = GradedMatrix::from_components(components, *U.structure().rep());
    const int top = max_power >= 0 ? max_power : U.truncation() / 2;
    GradedMatrix power = F;
    for (int m = 1; m <= top; ++m) {
      if (m > 1) power = power * F;
      CartanElement tr(power.trace());
      CartanElement r = cartan_differential(tr, carrier);
      out.push_back(CheckResult::exact("closedness.trace_power_" + std::to_string(m), r.is_zero(),
                                       r.is_zero() ? std::string() : r.to_string()));
    }
  }
  return out;
}

}  // namespace eqcw
