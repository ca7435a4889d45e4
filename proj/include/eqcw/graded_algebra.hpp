#pragma once

// Free graded-commutative algebras over Scalar.
//
// An element is a finite map from canonical monomials to coefficients. A
// monomial is a sorted list of (generator, power) pairs; odd generators carry
// power 1 and a repeated odd generator makes the monomial vanish. Products
// pick up the Koszul sign of the permutation that sorts the odd factors.

#include <algorithm>
#include <climits>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eqcw/errors.hpp"
#include "eqcw/scalar.hpp"

namespace eqcw {

enum class IndexClass : std::uint8_t { g, h };

struct Index {
  IndexClass cls;
  int pos;
  auto operator<=>(const Index&) const = default;
};

inline Index g_index(int a) { return {IndexClass::g, a}; }
inline Index h_index(int i) { return {IndexClass::h, i}; }

class Generator {
 public:
  Generator(std::string name, int degree, std::vector<Index> indices = {})
      : name_(std::move(name)), degree_(degree), indices_(std::move(indices)) {}

  const std::string& name() const { return name_; }
  int degree() const { return degree_; }
  const std::vector<Index>& indices() const { return indices_; }
  bool is_odd() const { return (degree_ & 1) != 0; }

  /// Position of the first index of the given class; throws if absent.
  int index(IndexClass cls) const {
    for (const auto& ix : indices_)
      if (ix.cls == cls) return ix.pos;
    throw IndexError("generator " + to_string() + " has no index of the requested class");
  }

  // Identity is (name, indices); the degree is a property of the identity.
  friend bool operator==(const Generator& a, const Generator& b) {
    return a.name_ == b.name_ && a.indices_ == b.indices_;
  }
  friend std::strong_ordering operator<=>(const Generator& a, const Generator& b) {
    if (auto c = a.name_ <=> b.name_; c != 0) return c;
    return a.indices_ <=> b.indices_;
  }

  /// e.g. "mu[g1,h2]" with 1-based positions.
  std::string to_string() const {
    if (indices_.empty()) return name_;
    std::string out = name_ + "[";
    for (std::size_t k = 0; k < indices_.size(); ++k) {
      if (k) out += ",";
      out += indices_[k].cls == IndexClass::g ? "g" : "h";
      out += std::to_string(indices_[k].pos + 1);
    }
    return out + "]";
  }

 private:
  std::string name_;
  int degree_;
  std::vector<Index> indices_;
};

struct Factor {
  Generator gen;
  int power;
  friend bool operator==(const Factor&, const Factor&) = default;
  friend std::strong_ordering operator<=>(const Factor& a, const Factor& b) {
    if (auto c = a.gen <=> b.gen; c != 0) return c;
    return a.power <=> b.power;
  }
};

/// Sorted product of generator powers. The empty monomial is 1.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(Generator g, int power = 1) {
    if (power > 0) factors_.push_back({std::move(g), power});
  }

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_unit() const { return factors_.empty(); }

  int degree() const {
    int d = 0;
    for (const auto& f : factors_) d += f.gen.degree() * f.power;
    return d;
  }

  /// Sum of degrees of the factors satisfying pred.
  template <class Pred>
  int degree_if(Pred pred) const {
    int d = 0;
    for (const auto& f : factors_)
      if (pred(f.gen)) d += f.gen.degree() * f.power;
    return d;
  }

  int power_of(const Generator& g) const {
    for (const auto& f : factors_)
      if (f.gen == g) return f.power;
    return 0;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial& a, const Monomial& b) { return a.factors_ <=> b.factors_; }

  std::string to_string() const {
    if (factors_.empty()) return "1";
    std::string out;
    for (const auto& f : factors_) {
      if (!out.empty()) out += " ";
      out += f.gen.to_string();
      if (f.power != 1) out += "^" + std::to_string(f.power);
    }
    return out;
  }

  /// Product of two monomials: the sign and the merged monomial, or nullopt
  /// when an odd generator repeats.
  static std::optional<std::pair<int, Monomial>> multiply(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.factors_.reserve(a.factors_.size() + b.factors_.size());
    int odd_left_in_a = 0;
    for (const auto& f : a.factors_)
      if (f.gen.is_odd()) ++odd_left_in_a;
    int sign = 1;
    std::size_t i = 0, j = 0;
    while (i < a.factors_.size() || j < b.factors_.size()) {
      if (j == b.factors_.size() || (i < a.factors_.size() && a.factors_[i].gen < b.factors_[j].gen)) {
        if (a.factors_[i].gen.is_odd()) --odd_left_in_a;
        out.factors_.push_back(a.factors_[i++]);
      } else if (i == a.factors_.size() || b.factors_[j].gen < a.factors_[i].gen) {
        // b's factor moves left past every remaining odd factor of a.
        if (b.factors_[j].gen.is_odd() && (odd_left_in_a & 1)) sign = -sign;
        out.factors_.push_back(b.factors_[j++]);
      } else {
        if (a.factors_[i].gen.is_odd()) return std::nullopt;
        out.factors_.push_back({a.factors_[i].gen, a.factors_[i].power + b.factors_[j].power});
        ++i;
        ++j;
      }
    }
    return std::make_pair(sign, std::move(out));
  }

  /// Sub-monomial of factors [first, last).
  Monomial slice(std::size_t first, std::size_t last) const {
    Monomial out;
    out.factors_.assign(factors_.begin() + static_cast<std::ptrdiff_t>(first),
                        factors_.begin() + static_cast<std::ptrdiff_t>(last));
    return out;
  }

 private:
  std::vector<Factor> factors_;
};

inline constexpr int kUntruncated = INT_MAX;

/// Normal-form element of a free graded-commutative algebra. Carries a
/// truncation degree: monomials of degree above it are dropped eagerly, and
/// binary operations use the smaller truncation of their operands. Equality
/// compares the terms only.
class GradedElement {
 public:
  using Terms = std::map<Monomial, Scalar>;

  GradedElement() = default;
  GradedElement(Scalar c) {  // NOLINT(google-explicit-constructor)
    if (!c.is_zero()) terms_.emplace(Monomial(), std::move(c));
  }
  GradedElement(long c) : GradedElement(Scalar(c)) {}  // NOLINT
  explicit GradedElement(const Generator& g) { terms_.emplace(Monomial(g), Scalar(1)); }

  static GradedElement term(Monomial m, Scalar c, int truncation = kUntruncated) {
    GradedElement e;
    e.truncation_ = truncation;
    e.add_term(std::move(m), c);
    return e;
  }

  const Terms& terms() const { return terms_; }
  int truncation() const { return truncation_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  GradedElement truncated(int degree) const {
    GradedElement out;
    out.truncation_ = std::min(truncation_, degree);
    for (const auto& [m, c] : terms_)
      if (m.degree() <= out.truncation_) out.terms_.emplace(m, c);
    return out;
  }

  /// Degree of a homogeneous nonzero element; nullopt for 0 or mixed degree.
  std::optional<int> degree() const {
    std::optional<int> d;
    for (const auto& [m, c] : terms_) {
      int md = m.degree();
      if (d && *d != md) return std::nullopt;
      d = md;
    }
    return d;
  }
  bool is_homogeneous() const { return is_zero() || degree().has_value(); }

  /// Terms of exactly the given degree.
  GradedElement component(int deg) const {
    GradedElement out;
    out.truncation_ = truncation_;
    for (const auto& [m, c] : terms_)
      if (m.degree() == deg) out.terms_.emplace(m, c);
    return out;
  }

  template <class Pred>
  GradedElement filter(Pred keep) const {
    GradedElement out;
    out.truncation_ = truncation_;
    for (const auto& [m, c] : terms_)
      if (keep(m)) out.terms_.emplace(m, c);
    return out;
  }

  Scalar coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar() : it->second;
  }

  /// Constant term.
  Scalar constant() const { return coefficient(Monomial()); }

  GradedElement& operator+=(const GradedElement& o) {
    truncation_ = std::min(truncation_, o.truncation_);
    if (truncation_ != kUntruncated) drop_above_truncation();
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  GradedElement& operator-=(const GradedElement& o) {
    truncation_ = std::min(truncation_, o.truncation_);
    if (truncation_ != kUntruncated) drop_above_truncation();
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  GradedElement& operator*=(const Scalar& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
      it->second = it->second * s;
      it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
    }
    return *this;
  }

  friend GradedElement operator+(GradedElement a, const GradedElement& b) { return a += b; }
  friend GradedElement operator-(GradedElement a, const GradedElement& b) { return a -= b; }
  friend GradedElement operator*(GradedElement a, const Scalar& s) { return a *= s; }
  friend GradedElement operator*(const Scalar& s, GradedElement a) { return a *= s; }
  GradedElement operator-() const { return *this * Scalar(-1); }

  /// Graded-commutative product in normal form.
  friend GradedElement operator*(const GradedElement& a, const GradedElement& b) {
    GradedElement out;
    out.truncation_ = std::min(a.truncation_, b.truncation_);
    for (const auto& [ma, ca] : a.terms_) {
      const int da = ma.degree();
      for (const auto& [mb, cb] : b.terms_) {
        if (out.truncation_ != kUntruncated && da + mb.degree() > out.truncation_) continue;
        auto prod = Monomial::multiply(ma, mb);
        if (!prod) continue;
        Scalar c = ca * cb;
        if (prod->first < 0) c = -c;
        out.add_term(std::move(prod->second), c);
      }
    }
    return out;
  }
  GradedElement& operator*=(const GradedElement& o) { return *this = *this * o; }

  GradedElement pow(int n) const {
    GradedElement out = GradedElement(Scalar(1)).truncated(truncation_);
    for (int k = 0; k < n; ++k) out = out * *this;
    return out;
  }

  friend bool operator==(const GradedElement& a, const GradedElement& b) { return a.terms_ == b.terms_; }

  /// Sum of `coefficient * monomial` terms, or "0".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += "(" + c.to_string() + ")";
      if (!m.is_unit()) out += " " + m.to_string();
    }
    return out;
  }

 private:
  void add_term(Monomial m, const Scalar& c) {
    if (c.is_zero()) return;
    if (truncation_ != kUntruncated && m.degree() > truncation_) return;
    auto [it, inserted] = terms_.try_emplace(std::move(m), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  void drop_above_truncation() {
    for (auto it = terms_.begin(); it != terms_.end();)
      it = it->first.degree() > truncation_ ? terms_.erase(it) : std::next(it);
  }

  Terms terms_;
  int truncation_ = kUntruncated;
};

/// Koszul product; multiply(a,b) = (-1)^{|a||b|} multiply(b,a) for homogeneous a, b.
inline GradedElement multiply(const GradedElement& a, const GradedElement& b) { return a * b; }

/// A derivation of integer degree given by its images on generators and
/// extended by the graded Leibniz rule D(xy) = D(x)y + (-1)^{|D||x|} x D(y).
class Derivation {
 public:
  using Action = std::function<std::optional<GradedElement>(const Generator&)>;

  Derivation(std::string name, int degree, Action action)
      : name_(std::move(name)), degree_(degree), action_(std::move(action)) {}

  const std::string& name() const { return name_; }
  int degree() const { return degree_; }

  GradedElement image(const Generator& g) const {
    auto img = action_(g);
    if (!img) throw UnknownGeneratorError("derivation " + name_ + " has no image for " + g.to_string());
    return std::move(*img);
  }

  GradedElement operator()(const GradedElement& x) const;

 private:
  std::string name_;
  int degree_;
  Action action_;
};

inline GradedElement apply_derivation(const Derivation& D, const GradedElement& x) {
  GradedElement out = GradedElement().truncated(x.truncation());
  const bool odd_derivation = (D.degree() & 1) != 0;
  for (const auto& [m, c] : x.terms()) {
    const auto& fs = m.factors();
    int prefix_degree = 0;
    for (std::size_t p = 0; p < fs.size(); ++p) {
      const Factor& f = fs[p];
      GradedElement img = D.image(f.gen);
      if (!img.is_zero()) {
        // D(g^e) = e g^{e-1} D(g); for odd g the power is 1.
        GradedElement piece = GradedElement::term(m.slice(0, p), c, x.truncation()) * img;
        if (f.power > 1) piece = piece * GradedElement::term(Monomial(f.gen, f.power - 1), Scalar(f.power));
        piece = piece * GradedElement::term(m.slice(p + 1, fs.size()), Scalar(1));
        if (odd_derivation && (prefix_degree & 1)) piece = -piece;
        out += piece;
      }
      prefix_degree += f.gen.degree() * f.power;
    }
  }
  return out;
}

inline GradedElement Derivation::operator()(const GradedElement& x) const { return apply_derivation(*this, x); }

/// D1 D2 - (-1)^{|D1||D2|} D2 D1 applied to the probe.
inline GradedElement graded_commutator(const Derivation& D1, const Derivation& D2, const GradedElement& probe) {
  GradedElement a = D1(D2(probe));
  GradedElement b = D2(D1(probe));
  const bool both_odd = (D1.degree() & 1) && (D2.degree() & 1);
  return both_odd ? a + b : a - b;
}

/// Derivation whose action tries each table in turn.
inline Derivation combine(std::string name, const std::vector<Derivation>& parts) {
  if (parts.empty()) throw Error("combine: no derivations");
  const int degree = parts.front().degree();
  for (const auto& p : parts)
    if (p.degree() != degree) throw DegreeMismatchError("combine: derivations of different degree");
  return Derivation(std::move(name), degree, [parts](const Generator& g) -> std::optional<GradedElement> {
    for (const auto& p : parts) {
      try {
        return p.image(g);
      } catch (const UnknownGeneratorError&) {
      }
    }
    return std::nullopt;
  });
}

/// Algebra-map extension of a degree-preserving assignment. Generators
/// absent from the map are fixed.
using Substitution = std::map<Generator, GradedElement>;

inline GradedElement substitute(const Substitution& images, const GradedElement& x) {
  for (const auto& [g, img] : images) {
    if (img.is_zero()) continue;
    auto d = img.degree();
    if (!d || *d != g.degree())
      throw DegreeMismatchError("substitute: image of " + g.to_string() + " is not homogeneous of degree " +
                                std::to_string(g.degree()));
  }
  GradedElement out = GradedElement().truncated(x.truncation());
  for (const auto& [m, c] : x.terms()) {
    GradedElement term = GradedElement(c).truncated(x.truncation());
    for (const auto& f : m.factors()) {
      auto it = images.find(f.gen);
      GradedElement base = it == images.end() ? GradedElement(f.gen) : it->second;
      term = term * base.pow(f.power);
      if (term.is_zero()) break;
    }
    out += term;
  }
  return out;
}

inline GradedElement gen(const Generator& g, int truncation = kUntruncated) {
  return GradedElement::term(Monomial(g), Scalar(1), truncation);
}

}  // namespace eqcw
