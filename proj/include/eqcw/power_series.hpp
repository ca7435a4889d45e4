#pragma once

// Truncated formal power series in one variable with rational coefficients.

#include <stdexcept>
#include <string>
#include <vector>

#include "eqcw/scalar.hpp"

namespace eqcw {

class PowerSeries {
 public:
  /// Zero series keeping coefficients of x^0 .. x^order.
  explicit PowerSeries(int order = 0) : c_(static_cast<std::size_t>(check_order(order) + 1), Rational(0)) {}
  PowerSeries(std::vector<Rational> coefficients) : c_(std::move(coefficients)) {  // NOLINT
    if (c_.empty()) c_.emplace_back(0);
  }

  /// sum_k x^k / k!
  static PowerSeries exponential(int order) {
    PowerSeries s(order);
    Rational term(1);
    for (int k = 0; k <= order; ++k) {
      if (k > 0) term /= k;
      s[k] = term;
    }
    return s;
  }

  /// sinh(x/2) / (x/2) = sum_k (x/2)^{2k} / (2k+1)!
  static PowerSeries sinhc_half(int order) {
    PowerSeries s(order);
    Rational fact(1), half_pow(1);
    for (int k = 0; 2 * k <= order; ++k) {
      if (k > 0) {
        fact *= (2 * k) * (2 * k + 1);
        half_pow /= 4;
      }
      s[2 * k] = half_pow / fact;
    }
    return s;
  }

  /// (x/2) / sinh(x/2), the generating function of the A-hat genus.
  static PowerSeries a_hat_function(int order) { return sinhc_half(order).inverse(); }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const Rational& operator[](int k) const { return c_.at(static_cast<std::size_t>(k)); }
  Rational& operator[](int k) { return c_.at(static_cast<std::size_t>(k)); }
  const std::vector<Rational>& coefficients() const { return c_; }

  friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries out(std::min(a.order(), b.order()));
    for (int k = 0; k <= out.order(); ++k) out[k] = a[k] + b[k];
    return out;
  }
  friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries out(std::min(a.order(), b.order()));
    for (int k = 0; k <= out.order(); ++k) out[k] = a[k] - b[k];
    return out;
  }
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries out(std::min(a.order(), b.order()));
    for (int i = 0; i <= out.order(); ++i)
      for (int j = 0; i + j <= out.order(); ++j) out[i + j] += a[i] * b[j];
    return out;
  }
  friend PowerSeries operator*(const Rational& s, PowerSeries a) {
    for (auto& x : a.c_) x *= s;
    return a;
  }
  friend bool operator==(const PowerSeries&, const PowerSeries&) = default;

  PowerSeries derivative() const {
    PowerSeries out(std::max(order() - 1, 0));
    for (int k = 1; k <= order(); ++k) out[k - 1] = k * c_[static_cast<std::size_t>(k)];
    return out;
  }

  /// Antiderivative with zero constant term; the order grows by one.
  PowerSeries integral() const {
    PowerSeries out(order() + 1);
    for (int k = 0; k <= order(); ++k) out[k + 1] = (*this)[k] / (k + 1);
    return out;
  }

  PowerSeries inverse() const {
    if (sgn(c_[0]) == 0) throw std::domain_error("PowerSeries::inverse: zero constant term");
    PowerSeries out(order());
    out[0] = 1 / c_[0];
    for (int n = 1; n <= order(); ++n) {
      Rational acc(0);
      for (int k = 1; k <= n; ++k) acc += (*this)[k] * out[n - k];
      out[n] = -acc / c_[0];
    }
    return out;
  }

  /// log f for f(0) = 1, via log f = int f'/f.
  PowerSeries log() const {
    if (c_[0] != 1) throw std::domain_error("PowerSeries::log: constant term must be 1");
    if (order() == 0) return PowerSeries(0);
    PowerSeries q = derivative() * inverse().truncated(order() - 1);
    return q.integral();
  }

  /// exp f for f(0) = 0, from e' = f' e.
  PowerSeries exp() const {
    if (sgn(c_[0]) != 0) throw std::domain_error("PowerSeries::exp: constant term must be 0");
    PowerSeries out(order());
    out[0] = 1;
    for (int n = 1; n <= order(); ++n) {
      Rational acc(0);
      for (int k = 1; k <= n; ++k) acc += k * (*this)[k] * out[n - k];
      out[n] = acc / n;
    }
    return out;
  }

  PowerSeries truncated(int order) const {
    PowerSeries out(order);
    for (int k = 0; k <= std::min(order, this->order()); ++k) out[k] = (*this)[k];
    return out;
  }

  std::string to_string() const {
    std::string out;
    for (int k = 0; k <= order(); ++k) {
      if (sgn(c_[static_cast<std::size_t>(k)]) == 0) continue;
      if (!out.empty()) out += " + ";
      out += "(" + c_[static_cast<std::size_t>(k)].get_str() + ")";
      if (k > 0) out += "*x^" + std::to_string(k);
    }
    return out.empty() ? "0" : out;
  }

 private:
  static int check_order(int order) {
    if (order < 0) throw std::invalid_argument("PowerSeries: negative order");
    return order;
  }

  std::vector<Rational> c_;
};

}  // namespace eqcw
