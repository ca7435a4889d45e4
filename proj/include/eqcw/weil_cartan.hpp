#pragma once

// Weil algebra W(g) = Sym(g*) (x) Lambda(g*) with generators theta^a (degree 1)
// and chi^a = d theta^a (degree 2), its Cartan calculus, and the Cartan model.
//
// The contraction table is iota_b theta^a = delta^a_b and
// iota_b chi^a = -f^a_{bc} theta^c, which makes nu^a = chi^a + 1/2 f^a_{bc}
// theta^b theta^c horizontal. Lie derivatives are always d iota + iota d.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eqcw/graded_algebra.hpp"
#include "eqcw/lie.hpp"

namespace eqcw {

inline Generator theta_gen(int a) { return Generator("theta", 1, {g_index(a)}); }
/// chi^a: the Weil generator d theta^a and, by the same token, the
/// polynomial variable of the Cartan model.
inline Generator chi_gen(int a) { return Generator("chi", 2, {g_index(a)}); }

inline bool is_cartan_symbol(const Generator& g) { return g.name() == "chi" && g.indices().size() == 1; }

/// Derivation d and contractions iota_a of a g-differential algebra.
struct DifferentialCarrier {
  Derivation d;
  std::vector<Derivation> iota;

  GradedElement lie_derivative(int a, const GradedElement& x) const {
    return graded_commutator(d, iota.at(static_cast<std::size_t>(a)), x);
  }
};

class WeilAlgebra {
 public:
  WeilAlgebra(LieAlgebraData g, int truncation = kUntruncated)
      : g_(std::move(g)), truncation_(truncation), d_(make_d()), iota_(make_iota()) {}

  const LieAlgebraData& algebra() const { return g_; }
  int truncation() const { return truncation_; }
  int dim() const { return g_.dim(); }

  GradedElement theta(int a) const { return gen(theta_gen(check(a)), truncation_); }
  GradedElement chi(int a) const { return gen(chi_gen(check(a)), truncation_); }
  GradedElement one() const { return GradedElement(Scalar(1)).truncated(truncation_); }

  const Derivation& d() const { return d_; }
  const Derivation& iota(int a) const { return iota_.at(static_cast<std::size_t>(check(a))); }
  const std::vector<Derivation>& iotas() const { return iota_; }
  DifferentialCarrier carrier() const { return {d_, iota_}; }

  GradedElement lie_derivative(int a, const GradedElement& x) const { return graded_commutator(d_, iota(a), x); }

  std::vector<Generator> generators() const {
    std::vector<Generator> out;
    for (int a = 0; a < dim(); ++a) out.push_back(theta_gen(a));
    for (int a = 0; a < dim(); ++a) out.push_back(chi_gen(a));
    return out;
  }

  /// Image tables, usable when W(g) is a tensor factor of a larger algebra.
  static std::optional<GradedElement> d_table(const Generator& x) {
    if (x.name() == "theta") return GradedElement(chi_gen(x.index(IndexClass::g)));
    if (x.name() == "chi") return GradedElement();
    return std::nullopt;
  }
  static std::optional<GradedElement> iota_table(const LieAlgebraData& g, int b, const Generator& x) {
    if (x.name() == "theta") return GradedElement(Scalar(x.index(IndexClass::g) == b ? 1 : 0));
    if (x.name() == "chi") {
      const int a = x.index(IndexClass::g);
      GradedElement out;
      for (int c = 0; c < g.dim(); ++c)
        if (!g.f(a, b, c).is_zero()) out -= g.f(a, b, c) * GradedElement(theta_gen(c));
      return out;
    }
    return std::nullopt;
  }

 private:
  int check(int a) const {
    if (a < 0 || a >= dim()) throw IndexError("Weil algebra index " + std::to_string(a) + " out of range");
    return a;
  }
  Derivation make_d() const { return Derivation("d_W", 1, [](const Generator& x) { return d_table(x); }); }
  std::vector<Derivation> make_iota() const {
    std::vector<Derivation> out;
    for (int b = 0; b < g_.dim(); ++b)
      out.emplace_back("iota_" + std::to_string(b + 1), -1,
                       [g = g_, b](const Generator& x) { return iota_table(g, b, x); });
    return out;
  }

  LieAlgebraData g_;
  int truncation_;
  Derivation d_;
  std::vector<Derivation> iota_;
};

/// nu^a = chi^a + 1/2 f^a_{bc} theta^b theta^c.
inline GradedElement nu(const WeilAlgebra& W, int a) {
  if (a < 0 || a >= W.dim()) throw IndexError("nu: index " + std::to_string(a) + " out of range");
  GradedElement out = W.chi(a);
  const Scalar half = Scalar::rational(1, 2);
  for (int b = 0; b < W.dim(); ++b)
    for (int c = 0; c < W.dim(); ++c)
      if (!W.algebra().f(a, b, c).is_zero()) out += half * W.algebra().f(a, b, c) * (W.theta(b) * W.theta(c));
  return out;
}

struct BasicTest {
  bool basic = true;
  std::string witness;  // first failing operator, e.g. "iota_1" or "L_2"
};

inline BasicTest is_basic(const DifferentialCarrier& carrier, const GradedElement& x) {
  for (std::size_t a = 0; a < carrier.iota.size(); ++a)
    if (!carrier.iota[a](x).is_zero()) return {false, "iota_" + std::to_string(a + 1)};
  for (std::size_t a = 0; a < carrier.iota.size(); ++a)
    if (!carrier.lie_derivative(static_cast<int>(a), x).is_zero()) return {false, "L_" + std::to_string(a + 1)};
  return {};
}

inline BasicTest is_basic(const WeilAlgebra& W, const GradedElement& x) { return is_basic(W.carrier(), x); }

/// Element of the Cartan model: a polynomial in the degree-2 symbols chi^a
/// whose coefficients belong to some g-differential algebra.
class CartanElement {
 public:
  CartanElement() = default;
  explicit CartanElement(GradedElement value) : value_(std::move(value)) {}

  const GradedElement& value() const { return value_; }
  bool is_zero() const { return value_.is_zero(); }

  /// Terms whose chi-polynomial has the given degree in chi.
  CartanElement chi_component(int chi_power) const {
    return CartanElement(value_.filter([chi_power](const Monomial& m) { return chi_power_of(m) == chi_power; }));
  }

  /// Coefficient of chi^a, as an element of the carrier algebra.
  GradedElement chi_linear_coefficient(int a) const {
    GradedElement out = GradedElement().truncated(value_.truncation());
    const Generator chi = chi_gen(a);
    for (const auto& [m, c] : value_.terms()) {
      if (chi_power_of(m) != 1 || m.power_of(chi) != 1) continue;
      GradedElement term(c);
      for (const auto& f : m.factors())
        if (!(f.gen == chi)) term = term * GradedElement::term(Monomial(f.gen, f.power), Scalar(1));
      out += term;
    }
    return out;
  }

  /// Form degree of the carrier part, for homogeneous monomials.
  static int form_degree(const Monomial& m) {
    return m.degree_if([](const Generator& g) { return !is_cartan_symbol(g); });
  }
  static int chi_power_of(const Monomial& m) {
    return m.degree_if([](const Generator& g) { return is_cartan_symbol(g); }) / 2;
  }

  /// Replaces each chi^a by a number s_a (the evaluation on the Lie algebra
  /// element sum_a s_a e_a); the result is generally of mixed degree.
  GradedElement evaluate_on(const std::vector<Scalar>& s) const {
    GradedElement out;
    for (const auto& [m, c] : value_.terms()) {
      GradedElement term(c);
      for (const auto& f : m.factors()) {
        if (is_cartan_symbol(f.gen)) {
          const auto a = static_cast<std::size_t>(f.gen.index(IndexClass::g));
          Scalar v = a < s.size() ? s[a] : Scalar();
          Scalar p(1);
          for (int k = 0; k < f.power; ++k) p = p * v;
          term = term * p;
        } else {
          term = term * GradedElement::term(Monomial(f.gen, f.power), Scalar(1));
        }
      }
      out += term;
    }
    return out;
  }

  friend CartanElement operator+(const CartanElement& a, const CartanElement& b) {
    return CartanElement(a.value_ + b.value_);
  }
  friend CartanElement operator-(const CartanElement& a, const CartanElement& b) {
    return CartanElement(a.value_ - b.value_);
  }
  friend CartanElement operator*(const CartanElement& a, const CartanElement& b) {
    return CartanElement(a.value_ * b.value_);
  }
  friend bool operator==(const CartanElement& a, const CartanElement& b) { return a.value_ == b.value_; }

  std::string to_string() const { return value_.to_string(); }

 private:
  GradedElement value_;
};

/// Augmentation W(g) -> Cartan model: theta^a -> 0, chi^a -> chi^a (hence
/// nu^a -> chi^a). Generators of any other tensor factor are fixed.
inline CartanElement augmentation(const WeilAlgebra& W, const GradedElement& x) {
  Substitution kill_theta;
  for (int a = 0; a < W.dim(); ++a) kill_theta.emplace(theta_gen(a), GradedElement());
  return CartanElement(substitute(kill_theta, x));
}

namespace cartan_detail {
inline Derivation constant_on_chi(const Derivation& D) {
  return Derivation(D.name(), D.degree(), [D](const Generator& g) -> std::optional<GradedElement> {
    if (is_cartan_symbol(g)) return GradedElement();
    return D.image(g);
  });
}
}  // namespace cartan_detail

/// d - chi^a iota_a, with the chi^a treated as constants for the carrier's
/// d and iota. The carrier must not itself contain chi generators.
inline CartanElement cartan_differential(const CartanElement& c, const DifferentialCarrier& carrier) {
  for (const auto& [m, coef] : c.value().terms())
    for (const auto& f : m.factors())
      if (is_cartan_symbol(f.gen) && f.gen.index(IndexClass::g) >= static_cast<int>(carrier.iota.size()))
        throw UnknownGeneratorError("cartan_differential: carrier lacks iota for " + f.gen.to_string());
  const Derivation d = cartan_detail::constant_on_chi(carrier.d);
  GradedElement out = d(c.value());
  for (std::size_t a = 0; a < carrier.iota.size(); ++a) {
    GradedElement contracted = cartan_detail::constant_on_chi(carrier.iota[a])(c.value());
    if (!contracted.is_zero()) out -= GradedElement(chi_gen(static_cast<int>(a))) * contracted;
  }
  return CartanElement(out.truncated(c.value().truncation()));
}

}  // namespace eqcw
