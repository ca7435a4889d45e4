#pragma once

// Exact coefficients: Gaussian rationals Q(i) adjoined with the formal unit
// tau = 2*pi*i and its inverse. Every prefactor met in equivariant
// Chern-Weil computations (1/k!, (i/2pi)^k, 2pi*i) lives in this ring.

#include <gmpxx.h>

#include <complex>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace eqcw {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

/// Element a + b*i of Q(i).
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }
  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, -im_}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    Rational norm = o.re_ * o.re_ + o.im_ * o.im_;
    if (sgn(norm) == 0) throw std::domain_error("division by zero in Q(i)");
    *this *= o.conj();
    re_ /= norm;
    im_ /= norm;
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  GaussianRational operator-() const { return {-re_, -im_}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  /// "p/q", "p/q*i" or "(p/q + r/s*i)".
  std::string to_string() const {
    if (is_real()) return re_.get_str();
    std::string imag_part = (im_ == 1) ? "i" : (im_ == -1) ? "-i" : im_.get_str() + "*i";
    if (sgn(re_) == 0) return imag_part;
    std::string sep = sgn(im_) < 0 ? " - " : " + ";
    Rational mag = abs(im_);
    std::string mag_part = (mag == 1) ? "i" : mag.get_str() + "*i";
    return "(" + re_.get_str() + sep + mag_part + ")";
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

/// Laurent polynomial in tau = 2*pi*i with Q(i) coefficients.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) { set(0, GaussianRational(v)); }  // NOLINT(google-explicit-constructor)
  Scalar(Rational v) { set(0, GaussianRational(std::move(v))); }  // NOLINT
  Scalar(GaussianRational v) { set(0, std::move(v)); }  // NOLINT

  static Scalar monomial(GaussianRational c, int tau_power) {
    Scalar s;
    s.set(tau_power, std::move(c));
    return s;
  }
  static Scalar tau(int power = 1) { return monomial(GaussianRational(1), power); }
  static Scalar i() { return Scalar(GaussianRational::i()); }
  static Scalar rational(long num, long den = 1) { return Scalar(make_rational(num, den)); }

  const std::map<int, GaussianRational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const {
    return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second == GaussianRational(1);
  }
  /// Coefficient of tau^k.
  GaussianRational coefficient(int k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? GaussianRational() : it->second;
  }

  Scalar& operator+=(const Scalar& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    for (const auto& [k, c] : o.terms_) add(k, -c);
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    *this = *this * o;
    return *this;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    Scalar out;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) out.add(ka + kb, ca * cb);
    return out;
  }
  Scalar operator-() const {
    Scalar out;
    for (const auto& [k, c] : terms_) out.terms_.emplace(k, -c);
    return out;
  }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.terms_ == b.terms_; }

  /// Inverse of a single-term scalar c*tau^k. Sums of several tau-powers are
  /// not units of the Laurent ring and are rejected.
  Scalar inverse() const {
    if (terms_.size() != 1) throw std::domain_error("Scalar::inverse: not a unit (" + to_string() + ")");
    const auto& [k, c] = *terms_.begin();
    return monomial(GaussianRational(1) / c, -k);
  }

  /// Numeric value with tau -> 2*pi*i.
  std::complex<double> evaluate() const {
    const std::complex<double> tau_value(0.0, 2.0 * std::numbers::pi);
    std::complex<double> sum = 0.0;
    for (const auto& [k, c] : terms_) sum += c.to_complex() * std::pow(tau_value, k);
    return sum;
  }

  /// Terms printed as `c * tau^k`, ascending in k, joined by " + ".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [k, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += c.to_string();
      if (k != 0) out += " * tau^" + std::to_string(k);
    }
    return out;
  }

 private:
  void set(int k, GaussianRational c) {
    if (!c.is_zero()) terms_[k] = std::move(c);
  }
  void add(int k, const GaussianRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  std::map<int, GaussianRational> terms_;
};

}  // namespace eqcw
