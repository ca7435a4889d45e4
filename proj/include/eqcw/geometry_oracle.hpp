#pragma once

// Numerical oracle: differential forms sampled on S^2, the charge-k monopole
// bundle with its rotational so(3) symmetry, finite-difference exterior
// derivatives and Gauss-Legendre quadrature. Nothing here touches the
// symbolic engine except the Realization bridge at the bottom, which maps
// universal generators to sampled forms.
//
// Coordinates are (theta, phi) with theta in (0, pi); the grid never contains
// a pole. Orientation is d theta ^ d phi, so the area form is
// sin(theta) d theta ^ d phi.
//
// Derivative accuracy: theta derivatives use 5-point Fornberg stencils on the
// (nonuniform) Gauss-Legendre nodes, 4th order in the interior and 6-point
// one-sided stencils (5th order) at the two ends; phi derivatives use the
// 8th-order periodic central difference.
//
// Quadrature: n_theta Gauss-Legendre nodes in cos(theta) are exact for
// polynomials in cos(theta) of degree <= 2 n_theta - 1; n_phi uniform nodes
// integrate e^{i m phi} exactly for |m| < n_phi.

#include <boost/math/special_functions/legendre.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "eqcw/check.hpp"
#include "eqcw/equivariant_conn.hpp"
#include "eqcw/errors.hpp"
#include "eqcw/lie.hpp"

namespace eqcw {

using Complex = std::complex<double>;

class SphereGrid {
 public:
  SphereGrid(int n_theta, int n_phi) : n_theta_(n_theta), n_phi_(n_phi) {
    if (n_theta < 6) throw std::invalid_argument("SphereGrid: need at least 6 theta nodes");
    if (n_phi < 9) throw std::invalid_argument("SphereGrid: need at least 9 phi nodes");
    std::vector<std::pair<double, double>> nodes;  // (theta, weight in cos theta)
    // Boost returns the nonnegative zeros of P_n; the rest follow by symmetry.
    for (double x : boost::math::legendre_p_zeros<double>(n_theta)) {
      const double dp = boost::math::legendre_p_prime<double>(n_theta, x);
      const double w = 2.0 / ((1 - x * x) * dp * dp);
      nodes.emplace_back(std::acos(x), w);
      if (x != 0.0) nodes.emplace_back(std::acos(-x), w);
    }
    std::sort(nodes.begin(), nodes.end());
    for (const auto& [t, w] : nodes) {
      theta_.push_back(t);
      weight_.push_back(w);
    }
    for (int j = 0; j < n_phi; ++j) phi_.push_back(2 * std::numbers::pi * j / n_phi);
    build_theta_stencils();
  }

  int n_theta() const { return n_theta_; }
  int n_phi() const { return n_phi_; }
  std::size_t size() const { return static_cast<std::size_t>(n_theta_) * static_cast<std::size_t>(n_phi_); }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_phi_) + static_cast<std::size_t>(j); }

  double theta(int i) const { return theta_[static_cast<std::size_t>(i)]; }
  double phi(int j) const { return phi_[static_cast<std::size_t>(j)]; }
  /// Gauss-Legendre weight for integration in cos(theta).
  double weight(int i) const { return weight_[static_cast<std::size_t>(i)]; }
  double phi_step() const { return 2 * std::numbers::pi / n_phi_; }

  /// sum of the quadrature weights of the area form; 4 pi up to rounding.
  double area() const {
    double s = 0;
    for (int i = 0; i < n_theta_; ++i) s += weight(i);
    return s * phi_step() * n_phi_;
  }

  struct Stencil {
    int first;
    std::vector<double> w;
  };
  const Stencil& theta_stencil(int i) const { return stencils_[static_cast<std::size_t>(i)]; }

 private:
  // Fornberg's recursion for first-derivative weights at z.
  static std::vector<double> fornberg(double z, const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<std::array<double, 2>> c(n, {0.0, 0.0});
    double c1 = 1.0, c4 = x[0] - z;
    c[0][0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
      double c2 = 1.0;
      const double c5 = c4;
      c4 = x[i] - z;
      for (std::size_t j = 0; j < i; ++j) {
        const double c3 = x[i] - x[j];
        c2 *= c3;
        if (j == i - 1) {
          c[i][1] = c1 * (c[i - 1][0] - c5 * c[i - 1][1]) / c2;
          c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
        }
        c[j][1] = (c4 * c[j][1] - c[j][0]) / c3;
        c[j][0] = c4 * c[j][0] / c3;
      }
      c1 = c2;
    }
    std::vector<double> w(n);
    for (std::size_t k = 0; k < n; ++k) w[k] = c[k][1];
    return w;
  }

  void build_theta_stencils() {
    for (int i = 0; i < n_theta_; ++i) {
      int first = 0, count = 5;
      if (i < 2) {
        first = 0;
        count = 6;
      } else if (i > n_theta_ - 3) {
        first = n_theta_ - 6;
        count = 6;
      } else {
        first = i - 2;
      }
      std::vector<double> x(theta_.begin() + first, theta_.begin() + first + count);
      stencils_.push_back({first, fornberg(theta_[static_cast<std::size_t>(i)], x)});
    }
  }

  int n_theta_, n_phi_;
  std::vector<double> theta_, weight_, phi_;
  std::vector<Stencil> stencils_;
};

enum class Chart { north, south };

inline std::string to_string(Chart c) { return c == Chart::north ? "north" : "south"; }

/// Form of degree 0, 1 or 2 sampled at every grid node. Component layout:
/// degree 0 {f}, degree 1 {f_theta, f_phi}, degree 2 {f_theta_phi}.
struct SampledForm {
  int degree = 0;
  Chart chart = Chart::north;
  std::vector<std::vector<Complex>> components;

  static SampledForm zero(const SphereGrid& g, int degree, Chart chart = Chart::north) {
    if (degree < 0 || degree > 2) throw DegreeMismatchError("SampledForm: degree must be 0, 1 or 2");
    return {degree, chart, std::vector<std::vector<Complex>>(degree == 1 ? 2u : 1u, std::vector<Complex>(g.size()))};
  }

  std::vector<Complex>& operator[](std::size_t c) { return components[c]; }
  const std::vector<Complex>& operator[](std::size_t c) const { return components[c]; }

  SampledForm& operator+=(const SampledForm& o) {
    if (o.degree != degree) throw DegreeMismatchError("SampledForm: adding forms of different degree");
    for (std::size_t c = 0; c < components.size(); ++c)
      for (std::size_t n = 0; n < components[c].size(); ++n) components[c][n] += o.components[c][n];
    return *this;
  }
  SampledForm& operator*=(Complex s) {
    for (auto& comp : components)
      for (auto& x : comp) x *= s;
    return *this;
  }
  friend SampledForm operator+(SampledForm a, const SampledForm& b) { return a += b; }
  friend SampledForm operator-(SampledForm a, SampledForm b) { return a += (b *= -1.0); }
  friend SampledForm operator*(Complex s, SampledForm a) { return a *= s; }

  double max_abs() const {
    double m = 0;
    for (const auto& comp : components)
      for (const auto& x : comp) m = std::max(m, std::abs(x));
    return m;
  }
};

/// f(theta, phi) sampled as a 0-form.
template <class F>
SampledForm sample_function(const SphereGrid& g, F&& f, Chart chart = Chart::north) {
  SampledForm out = SampledForm::zero(g, 0, chart);
  for (int i = 0; i < g.n_theta(); ++i)
    for (int j = 0; j < g.n_phi(); ++j) out[0][g.index(i, j)] = f(g.theta(i), g.phi(j));
  return out;
}

/// f(theta, phi) d theta ^ d phi.
template <class F>
SampledForm sample_two_form(const SphereGrid& g, F&& f, Chart chart = Chart::north) {
  SampledForm out = sample_function(g, std::forward<F>(f), chart);
  out.degree = 2;
  return out;
}

/// a(theta, phi) d theta + b(theta, phi) d phi.
template <class A, class B>
SampledForm sample_one_form(const SphereGrid& g, A&& a, B&& b, Chart chart = Chart::north) {
  SampledForm out = SampledForm::zero(g, 1, chart);
  for (int i = 0; i < g.n_theta(); ++i)
    for (int j = 0; j < g.n_phi(); ++j) {
      out[0][g.index(i, j)] = a(g.theta(i), g.phi(j));
      out[1][g.index(i, j)] = b(g.theta(i), g.phi(j));
    }
  return out;
}

inline SampledForm wedge(const SphereGrid& g, const SampledForm& a, const SampledForm& b) {
  if (a.degree + b.degree > 2) return SampledForm::zero(g, 2, a.chart);
  SampledForm out = SampledForm::zero(g, a.degree + b.degree, a.chart);
  const std::size_t n = g.size();
  if (a.degree == 0 || b.degree == 0) {
    const SampledForm& f = a.degree == 0 ? a : b;
    const SampledForm& w = a.degree == 0 ? b : a;
    for (std::size_t c = 0; c < w.components.size(); ++c)
      for (std::size_t k = 0; k < n; ++k) out[c][k] = f[0][k] * w[c][k];
    return out;
  }
  // (a_t dt + a_p dp) ^ (b_t dt + b_p dp) = (a_t b_p - a_p b_t) dt ^ dp
  for (std::size_t k = 0; k < n; ++k) out[0][k] = a[0][k] * b[1][k] - a[1][k] * b[0][k];
  return out;
}

/// Vector field X^theta d/dtheta + X^phi d/dphi sampled on the grid.
struct VectorField {
  std::vector<double> theta, phi;
};

/// The three rotation generators as analytic fields, normalized so that
/// [L_a, L_b] = eps_{abc} L_c:
///   L_x = -sin(phi) d_theta - cot(theta) cos(phi) d_phi
///   L_y = -cos(phi) d_theta + cot(theta) sin(phi) d_phi
///   L_z = d_phi
inline std::array<double, 2> rotation_field(int a, double theta, double phi) {
  const double cot = std::cos(theta) / std::sin(theta);
  switch (a) {
    case 0: return {-std::sin(phi), -cot * std::cos(phi)};
    case 1: return {-std::cos(phi), cot * std::sin(phi)};
    case 2: return {0.0, 1.0};
    default: throw IndexError("rotation_field: index " + std::to_string(a) + " out of range");
  }
}

inline std::array<VectorField, 3> rotation_fields(const SphereGrid& g) {
  std::array<VectorField, 3> out;
  for (int a = 0; a < 3; ++a) {
    out[static_cast<std::size_t>(a)].theta.resize(g.size());
    out[static_cast<std::size_t>(a)].phi.resize(g.size());
    for (int i = 0; i < g.n_theta(); ++i)
      for (int j = 0; j < g.n_phi(); ++j) {
        const auto v = rotation_field(a, g.theta(i), g.phi(j));
        out[static_cast<std::size_t>(a)].theta[g.index(i, j)] = v[0];
        out[static_cast<std::size_t>(a)].phi[g.index(i, j)] = v[1];
      }
  }
  return out;
}

/// Max over grid nodes and pairs (a,b) of |[L_a, L_b] - f^c_{ab} L_c|, the
/// field derivatives taken by central differences with step h and one
/// Richardson extrapolation (h, h/2).
inline double rotation_commutator_residual(const SphereGrid& g, const LieAlgebraData& so3_data, double h = 1e-4) {
  auto derivative = [](const std::function<double(double)>& f, double x, double step) {
    auto central = [&](double s) { return (f(x + s) - f(x - s)) / (2 * s); };
    return (4 * central(step / 2) - central(step)) / 3;
  };
  double worst = 0;
  for (int i = 0; i < g.n_theta(); ++i)
    for (int j = 0; j < g.n_phi(); ++j) {
      const double t = g.theta(i), p = g.phi(j);
      for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
          const auto X = rotation_field(a, t, p), Y = rotation_field(b, t, p);
          std::array<double, 2> bracket{};
          for (int comp = 0; comp < 2; ++comp) {
            auto Yc_t = [&](double s) { return rotation_field(b, s, p)[static_cast<std::size_t>(comp)]; };
            auto Yc_p = [&](double s) { return rotation_field(b, t, s)[static_cast<std::size_t>(comp)]; };
            auto Xc_t = [&](double s) { return rotation_field(a, s, p)[static_cast<std::size_t>(comp)]; };
            auto Xc_p = [&](double s) { return rotation_field(a, t, s)[static_cast<std::size_t>(comp)]; };
            bracket[static_cast<std::size_t>(comp)] = X[0] * derivative(Yc_t, t, h) + X[1] * derivative(Yc_p, p, h) -
                                                      Y[0] * derivative(Xc_t, t, h) - Y[1] * derivative(Xc_p, p, h);
          }
          for (int c = 0; c < 3; ++c) {
            const double fc = so3_data.f(c, a, b).evaluate().real();
            const auto Z = rotation_field(c, t, p);
            bracket[0] -= fc * Z[0];
            bracket[1] -= fc * Z[1];
          }
          worst = std::max({worst, std::abs(bracket[0]), std::abs(bracket[1])});
        }
    }
  return worst;
}

/// iota_X of a sampled 1- or 2-form.
inline SampledForm contract(const SphereGrid& g, const VectorField& X, const SampledForm& w) {
  if (w.degree == 0) throw DegreeMismatchError("contract: cannot contract a 0-form");
  SampledForm out = SampledForm::zero(g, w.degree - 1, w.chart);
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (w.degree == 1) {
      out[0][k] = X.theta[k] * w[0][k] + X.phi[k] * w[1][k];
    } else {
      // iota_X (f dt ^ dp) = f (X^t dp - X^p dt)
      out[0][k] = -w[0][k] * X.phi[k];
      out[1][k] = w[0][k] * X.theta[k];
    }
  }
  return out;
}

namespace oracle_detail {

inline std::vector<Complex> d_theta(const SphereGrid& g, const std::vector<Complex>& f) {
  std::vector<Complex> out(g.size());
  for (int i = 0; i < g.n_theta(); ++i) {
    const auto& st = g.theta_stencil(i);
    for (int j = 0; j < g.n_phi(); ++j) {
      Complex acc = 0;
      for (std::size_t s = 0; s < st.w.size(); ++s) acc += st.w[s] * f[g.index(st.first + static_cast<int>(s), j)];
      out[g.index(i, j)] = acc;
    }
  }
  return out;
}

inline std::vector<Complex> d_phi(const SphereGrid& g, const std::vector<Complex>& f) {
  static constexpr std::array<double, 4> w{4.0 / 5, -1.0 / 5, 4.0 / 105, -1.0 / 280};
  const double h = g.phi_step();
  const int n = g.n_phi();
  std::vector<Complex> out(g.size());
  for (int i = 0; i < g.n_theta(); ++i)
    for (int j = 0; j < n; ++j) {
      Complex acc = 0;
      for (int s = 1; s <= 4; ++s)
        acc += w[static_cast<std::size_t>(s - 1)] * (f[g.index(i, (j + s) % n)] - f[g.index(i, (j - s + n) % n)]);
      out[g.index(i, j)] = acc / h;
    }
  return out;
}

}  // namespace oracle_detail

/// Exterior derivative by finite differences (orders in the file comment).
inline SampledForm fd_exterior_derivative(const SampledForm& f, const SphereGrid& g) {
  if (f.degree >= 2) throw DegreeMismatchError("fd_exterior_derivative: input has top degree");
  SampledForm out = SampledForm::zero(g, f.degree + 1, f.chart);
  if (f.degree == 0) {
    out[0] = oracle_detail::d_theta(g, f[0]);
    out[1] = oracle_detail::d_phi(g, f[0]);
  } else {
    const auto dt_b = oracle_detail::d_theta(g, f[1]);
    const auto dp_a = oracle_detail::d_phi(g, f[0]);
    for (std::size_t k = 0; k < g.size(); ++k) out[0][k] = dt_b[k] - dp_a[k];
  }
  return out;
}

/// Integral of a 2-form over S^2: Gauss-Legendre in cos(theta) times the
/// trapezoid rule in phi. Rows are summed in node order, then combined by a
/// fixed pairwise tree, so the result does not depend on anything but the grid.
inline Complex integrate(const SampledForm& w, const SphereGrid& g) {
  if (w.degree != 2) throw DegreeMismatchError("integrate: expected a 2-form, got degree " + std::to_string(w.degree));
  std::vector<Complex> rows(static_cast<std::size_t>(g.n_theta()));
  for (int i = 0; i < g.n_theta(); ++i) {
    Complex row = 0;
    for (int j = 0; j < g.n_phi(); ++j) row += w[0][g.index(i, j)];
    // f dtheta dphi = (f / sin theta) d(cos theta) dphi up to orientation.
    rows[static_cast<std::size_t>(i)] = row * (g.weight(i) * g.phi_step() / std::sin(g.theta(i)));
  }
  while (rows.size() > 1) {
    std::vector<Complex> next;
    for (std::size_t k = 0; k + 1 < rows.size(); k += 2) next.push_back(rows[k] + rows[k + 1]);
    if (rows.size() % 2) next.push_back(rows.back());
    rows = std::move(next);
  }
  return rows.front();
}

/// Charge-k monopole bundle on S^2 with its so(3)-invariant connection.
///   Theta_N = -(ik/2)(1 - cos theta) d phi      (north chart)
///   Theta_S = +(ik/2)(1 + cos theta) d phi      (south chart)
///   F       = -(ik/2) sin theta d theta ^ d phi
/// so that (-1/tau) int F = k. On the overlap Theta_N - Theta_S = -ik d phi.
///
/// The moment map mu_a = iota_a Theta on the total space is seen in a chart
/// as Theta_chart(L_a) + lambda_chart,a, where the compensator lambda is the
/// infinitesimal gauge transformation that undoes the rotation of the local
/// section:
///   lambda_N = (ik/2) (cos phi tan(theta/2), -sin phi tan(theta/2), 1)
///   lambda_S = lambda_N - ik L_a^phi
/// The axial compensator is the constant ik/2 in the north chart and -ik/2 in
/// the south chart.
class MonopoleScenario {
 public:
  MonopoleScenario(int charge, SphereGrid grid) : charge_(charge), grid_(std::move(grid)), symmetry_(so3()) {
    const Complex half_ik(0.0, 0.5 * charge);
    theta_north_ = sample_one_form(
        grid_, [](double, double) { return Complex(0); }, [&](double t, double) { return -half_ik * (1 - std::cos(t)); },
        Chart::north);
    theta_south_ = sample_one_form(
        grid_, [](double, double) { return Complex(0); }, [&](double t, double) { return half_ik * (1 + std::cos(t)); },
        Chart::south);
    curvature_ = sample_two_form(grid_, [&](double t, double) { return -half_ik * std::sin(t); });
    fields_ = rotation_fields(grid_);
    for (int a = 0; a < 3; ++a) {
      compensator_[0][static_cast<std::size_t>(a)] =
          sample_function(grid_, [&](double t, double p) { return compensator(a, Chart::north, t, p); }, Chart::north);
      compensator_[1][static_cast<std::size_t>(a)] =
          sample_function(grid_, [&](double t, double p) { return compensator(a, Chart::south, t, p); }, Chart::south);
      analytic_moment_[static_cast<std::size_t>(a)] =
          sample_function(grid_, [&](double t, double p) { return analytic_moment(a, t, p); });
    }
  }

  int charge() const { return charge_; }
  const SphereGrid& grid() const { return grid_; }
  const LieAlgebraData& symmetry() const { return symmetry_; }
  const SampledForm& potential(Chart c) const { return c == Chart::north ? theta_north_ : theta_south_; }
  const SampledForm& curvature() const { return curvature_; }
  const VectorField& field(int a) const { return fields_.at(static_cast<std::size_t>(a)); }
  const SampledForm& compensator(int a, Chart c) const {
    return compensator_[c == Chart::north ? 0 : 1].at(static_cast<std::size_t>(a));
  }

  /// mu_a computed in a chart from the local potential and compensator.
  SampledForm moment(int a, Chart c) const {
    SampledForm m = contract(grid_, field(a), potential(c)) + compensator(a, c);
    m.chart = c;
    return m;
  }

  /// mu_a on the whole sphere, each hemisphere taken from the chart that
  /// contains it.
  SampledForm moment(int a) const {
    SampledForm north = moment(a, Chart::north);
    const SampledForm south = moment(a, Chart::south);
    for (int i = 0; i < grid_.n_theta(); ++i)
      if (grid_.theta(i) > std::numbers::pi / 2)
        for (int j = 0; j < grid_.n_phi(); ++j) north[0][grid_.index(i, j)] = south[0][grid_.index(i, j)];
    return north;
  }

  /// Closed-form mu_a = (ik/2)(sin theta cos phi, -sin theta sin phi, cos theta).
  const SampledForm& analytic_moment(int a) const { return analytic_moment_.at(static_cast<std::size_t>(a)); }

  Complex analytic_moment(int a, double t, double p) const {
    const Complex half_ik(0.0, 0.5 * charge_);
    switch (a) {
      case 0: return half_ik * std::sin(t) * std::cos(p);
      case 1: return -half_ik * std::sin(t) * std::sin(p);
      case 2: return half_ik * std::cos(t);
      default: throw IndexError("moment index out of range");
    }
  }

  Complex compensator(int a, Chart c, double t, double p) const {
    const Complex half_ik(0.0, 0.5 * charge_);
    Complex north;
    switch (a) {
      case 0: north = half_ik * std::cos(p) * std::tan(t / 2); break;
      case 1: north = -half_ik * std::sin(p) * std::tan(t / 2); break;
      case 2: north = half_ik; break;
      default: throw IndexError("compensator index out of range");
    }
    if (c == Chart::north) return north;
    return north - 2.0 * half_ik * rotation_field(a, t, p)[1];
  }

  /// Exact value of int F, namely -k tau.
  Scalar exact_flux() const { return Scalar(-charge_) * Scalar::tau(); }

 private:
  int charge_;
  SphereGrid grid_;
  LieAlgebraData symmetry_;
  SampledForm theta_north_, theta_south_, curvature_;
  std::array<VectorField, 3> fields_;
  std::array<std::array<SampledForm, 3>, 2> compensator_;
  std::array<SampledForm, 3> analytic_moment_;
};

inline MonopoleScenario monopole(int k, const SphereGrid& grid) { return MonopoleScenario(k, grid); }

namespace oracle_detail {

/// Nodes whose theta lies in the chart's hemisphere; each chart is only
/// trusted away from the pole it excludes.
inline bool in_hemisphere(const SphereGrid& g, int i, Chart c) {
  return c == Chart::north ? g.theta(i) <= std::numbers::pi / 2 : g.theta(i) > std::numbers::pi / 2;
}

inline double max_abs_on(const SphereGrid& g, const SampledForm& w, Chart c) {
  double m = 0;
  for (const auto& comp : w.components)
    for (int i = 0; i < g.n_theta(); ++i) {
      if (!in_hemisphere(g, i, c)) continue;
      for (int j = 0; j < g.n_phi(); ++j) m = std::max(m, std::abs(comp[g.index(i, j)]));
    }
  return m;
}

}  // namespace oracle_detail

/// Pointwise check of one identity on the grid, reporting the max residual.
///   invariance              L_a Theta_chart + d lambda_chart,a = 0 and
///                           L_a mu_b = f^c_{ab} mu_c (chart-wise moment)
///   eq4                     F(L_a, L_b) = f^c_{ab} mu_c, F from FD of Theta
///   equivariant_closedness  (d - iota_a)(F - mu_a) = -(d mu_a + iota_a F) = 0
///   transition              Theta_N - Theta_S + ik d phi = 0
///   moment_charts           mu_a from the north and south charts agree
/// Derivatives are finite differences; contractions use the analytic fields.
inline CheckResult verify_pointwise(const MonopoleScenario& s, const std::string& identity, double tolerance = 1e-6) {
  const auto& g = s.grid();
  const auto& f = s.symmetry();
  double worst = 0;
  auto fd_curvature = [&](Chart c) { return fd_exterior_derivative(s.potential(c), g); };

  if (identity == "invariance") {
    for (Chart c : {Chart::north, Chart::south}) {
      const SampledForm F = fd_curvature(c);
      for (int a = 0; a < 3; ++a) {
        const SampledForm lie = fd_exterior_derivative(contract(g, s.field(a), s.potential(c)), g) + contract(g, s.field(a), F);
        worst = std::max(worst, oracle_detail::max_abs_on(g, lie + fd_exterior_derivative(s.compensator(a, c), g), c));
        for (int b = 0; b < 3; ++b) {
          const SampledForm dmu = fd_exterior_derivative(s.moment(b, c), g);
          SampledForm r = contract(g, s.field(a), dmu);
          for (int k = 0; k < 3; ++k)
            if (!f.f(k, a, b).is_zero()) r = r - f.f(k, a, b).evaluate() * s.moment(k, c);
          worst = std::max(worst, oracle_detail::max_abs_on(g, r, c));
        }
      }
    }
  } else if (identity == "eq4") {
    for (Chart c : {Chart::north, Chart::south}) {
      const SampledForm F = fd_curvature(c);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          // iota_b iota_a F = F(L_a, L_b)
          SampledForm r = contract(g, s.field(b), contract(g, s.field(a), F));
          for (int k = 0; k < 3; ++k)
            if (!f.f(k, a, b).is_zero()) r = r - f.f(k, a, b).evaluate() * s.moment(k, c);
          worst = std::max(worst, oracle_detail::max_abs_on(g, r, c));
        }
    }
  } else if (identity == "equivariant_closedness") {
    for (Chart c : {Chart::north, Chart::south}) {
      const SampledForm F = fd_curvature(c);
      for (int a = 0; a < 3; ++a) {
        const SampledForm r = fd_exterior_derivative(s.moment(a, c), g) + contract(g, s.field(a), F);
        worst = std::max(worst, oracle_detail::max_abs_on(g, r, c));
      }
    }
  } else if (identity == "transition") {
    SampledForm r = s.potential(Chart::north) - s.potential(Chart::south);
    for (auto& x : r[1]) x += Complex(0.0, s.charge());
    worst = r.max_abs();
  } else if (identity == "moment_charts") {
    for (int a = 0; a < 3; ++a) {
      worst = std::max(worst, (s.moment(a, Chart::north) - s.moment(a, Chart::south)).max_abs());
      worst = std::max(worst, oracle_detail::max_abs_on(g, s.moment(a, Chart::north) - s.analytic_moment(a), Chart::north));
      worst = std::max(worst, oracle_detail::max_abs_on(g, s.moment(a, Chart::south) - s.analytic_moment(a), Chart::south));
    }
  } else {
    throw UnknownNameError("verify_pointwise: unknown identity '" + identity + "'");
  }
  return CheckResult::numeric("pointwise." + identity, worst, tolerance);
}

/// Mixed form on S^2 polynomial in one Cartan variable t: entry p holds the
/// (0-form, 2-form) parts of the coefficient of t^p.
struct MixedForm {
  std::vector<std::array<std::vector<Complex>, 2>> coefficients;
};

/// tr exp(-tau^{-1} (F - t v)) for a 1x1 curvature F and 0-form v, computed
/// nodewise in complex arithmetic with forms above degree 2 dropped; terms up
/// to t^max_power are kept.
inline MixedForm numeric_equivariant_ch(const SphereGrid& g, const SampledForm& F, const SampledForm& v, int max_power) {
  if (F.degree != 2 || v.degree != 0) throw DegreeMismatchError("numeric_equivariant_ch: expects a 2-form and a 0-form");
  const Complex tau(0.0, 2 * std::numbers::pi);
  const Complex scale = -1.0 / tau;
  const std::size_t n = g.size();
  const std::size_t P = static_cast<std::size_t>(max_power) + 1;
  MixedForm out;
  out.coefficients.assign(P, {std::vector<Complex>(n), std::vector<Complex>(n)});
  for (std::size_t k = 0; k < n; ++k) {
    // exp(scale F - scale v t) = exp(-scale v t) (1 + scale F) since F^2 = 0 on S^2.
    const Complex a = -scale * v[0][k];
    Complex term = 1.0;
    for (std::size_t p = 0; p < P; ++p) {
      if (p > 0) term *= a / static_cast<double>(p);
      out.coefficients[p][0][k] = term;
      out.coefficients[p][1][k] = term * scale * F[0][k];
    }
  }
  return out;
}

/// Bridge from universal generators to sampled forms: each generator is
/// assigned a SampledForm of the matching degree; a GradedElement is evaluated
/// monomial by monomial (scalars at tau = 2 pi i) and its 2-form part
/// integrated. Generators outside the map raise UnknownGeneratorError.
class RealizationIntegral {
 public:
  RealizationIntegral(const SphereGrid& grid, std::map<Generator, SampledForm> images)
      : grid_(&grid), images_(std::move(images)) {
    for (const auto& [gen, form] : images_)
      if (gen.degree() != form.degree)
        throw DegreeMismatchError("RealizationIntegral: " + gen.to_string() + " realized with wrong degree");
  }

  int dimension() const { return 2; }

  SampledForm realize(const GradedElement& x) const {
    SampledForm total = SampledForm::zero(*grid_, 2);
    for (const auto& [m, c] : x.terms()) {
      if (m.degree() != 2) continue;
      SampledForm term = SampledForm::zero(*grid_, 0);
      std::fill(term[0].begin(), term[0].end(), c.evaluate());
      for (const auto& f : m.factors()) {
        auto it = images_.find(f.gen);
        if (it == images_.end()) throw UnknownGeneratorError("RealizationIntegral: no realization for " + f.gen.to_string());
        for (int p = 0; p < f.power; ++p) term = wedge(*grid_, term, it->second);
      }
      total += term;
    }
    return total;
  }

  Complex operator()(const GradedElement& x) const { return integrate(realize(x), *grid_); }

 private:
  const SphereGrid* grid_;
  std::map<Generator, SampledForm> images_;
};

}  // namespace eqcw
