#pragma once

// Characteristic series of matrix-valued curvature: the Chern character
// (additive, tr exp) and the A-hat genus (multiplicative, built from the log
// of (u/2)/sinh(u/2)). Both act on u = i R / 2pi, written -tau^{-1} R with
// tau = 2 pi i, so every coefficient stays in the exact scalar ring.

#include <optional>
#include <string>
#include <vector>

#include "eqcw/graded_matrix.hpp"
#include "eqcw/power_series.hpp"
#include "eqcw/weil_cartan.hpp"

namespace eqcw {

enum class SeriesKind { additive, multiplicative };

/// Rescaling of the curvature before the series is applied: u = iR/2pi
/// (two_pi) or u = iR/4pi (four_pi).
enum class Normalization { two_pi, four_pi };

inline std::string to_string(Normalization n) { return n == Normalization::two_pi ? "2pi" : "4pi"; }

inline std::optional<Normalization> parse_normalization(const std::string& s) {
  if (s == "2pi") return Normalization::two_pi;
  if (s == "4pi") return Normalization::four_pi;
  return std::nullopt;
}

struct CharSeries {
  std::string name;
  SeriesKind kind = SeriesKind::additive;
  /// Taylor coefficients of the defining scalar function f.
  PowerSeries function;
  /// Taylor coefficients of log f (multiplicative series only).
  PowerSeries log_coefficients;
  Normalization normalization = Normalization::two_pi;

  /// tr exp(u): f = exp.
  static CharSeries chern_character(int order, Normalization n = Normalization::two_pi) {
    PowerSeries f = PowerSeries::exponential(order);
    return {"ch", SeriesKind::additive, f, PowerSeries(order), n};
  }

  /// prod_j f(x_j) with f(u) = (u/2)/sinh(u/2), applied as exp(1/2 tr log f(u)).
  static CharSeries a_hat(int order, Normalization n = Normalization::two_pi) {
    PowerSeries f = PowerSeries::a_hat_function(order);
    return {"a_hat", SeriesKind::multiplicative, f, f.log(), n};
  }

  static std::optional<CharSeries> by_name(const std::string& name, int order, Normalization n) {
    if (name == "ch") return chern_character(order, n);
    if (name == "a_hat") return a_hat(order, n);
    return std::nullopt;
  }

  /// u = scale * R.
  Scalar curvature_scale() const {
    Scalar s = -Scalar::tau(-1);
    return normalization == Normalization::two_pi ? s : Scalar::rational(1, 2) * s;
  }
};

namespace series_detail {

inline void require_degree_two(const GradedMatrix& m, const char* who) {
  if (!m.entries_homogeneous_of_degree(2))
    throw DegreeMismatchError(std::string(who) + ": curvature entries must be homogeneous of degree 2");
}

/// tr(u^k) for k = 1 .. top/2, truncated at top.
inline std::vector<GradedElement> power_traces(const GradedMatrix& u, int top) {
  std::vector<GradedElement> out{GradedElement()};
  GradedMatrix p = u.truncated(top);
  for (int k = 1; 2 * k <= top; ++k) {
    if (k > 1) p = (p * u).truncated(top);
    out.push_back(p.trace().truncated(top));
  }
  return out;
}

inline GradedElement exp_truncated(const GradedElement& x, int top) {
  GradedElement out = GradedElement(Scalar(1)).truncated(top);
  GradedElement term = out;
  for (int m = 1; 2 * m <= top; ++m) {
    term = Scalar(make_rational(1, m)) * (term * x);
    if (term.is_zero()) break;
    out += term;
  }
  return out;
}

inline GradedElement apply(const CharSeries& S, const GradedMatrix& curvature, int top) {
  if (top < 0) throw TruncationError("characteristic series: negative top degree");
  if (2 * (top / 2) > 2 * S.function.order())
    throw TruncationError(S.name + ": series order " + std::to_string(S.function.order()) +
                          " too small for degree " + std::to_string(top));
  const GradedMatrix u = S.curvature_scale() * curvature.truncated(top);
  const auto traces = power_traces(u, top);
  if (S.kind == SeriesKind::additive) {
    GradedElement out = (Scalar(S.function[0]) * Scalar(curvature.size())) * GradedElement(Scalar(1)).truncated(top);
    for (std::size_t k = 1; k < traces.size(); ++k) out += Scalar(S.function[static_cast<int>(k)]) * traces[k];
    return out;
  }
  GradedElement log_total = GradedElement().truncated(top);
  for (std::size_t k = 1; k < traces.size(); ++k)
    log_total += Scalar(Rational(make_rational(1, 2) * S.log_coefficients[static_cast<int>(k)])) * traces[k];
  return exp_truncated(log_total, top);
}

}  // namespace series_detail

/// sum_k (1/k!) tr((-tau^{-1} F)^k) up to total degree top. When a degree-0
/// matrix v is supplied the curvature is replaced by F - chi v, with chi the
/// Cartan symbol of the first symmetry generator.
inline GradedElement chern_character(const GradedMatrix& F, const std::optional<GradedMatrix>& v, int top) {
  GradedMatrix curvature = F;
  if (v) {
    if (v->size() != F.size()) throw DegreeMismatchError("chern_character: v and F differ in size");
    if (!v->entries_homogeneous_of_degree(0))
      throw DegreeMismatchError("chern_character: v entries must have degree 0");
    curvature = F - GradedElement(chi_gen(0)) * *v;
  }
  series_detail::require_degree_two(curvature, "chern_character");
  return series_detail::apply(CharSeries::chern_character(std::max(top, 0)), curvature, top);
}

inline GradedElement chern_character(const GradedMatrix& F, int top) { return chern_character(F, std::nullopt, top); }

inline GradedElement a_hat(const GradedMatrix& R, int top, Normalization n = Normalization::two_pi) {
  if (!R.is_antisymmetric()) throw NotAntisymmetricError("a_hat: curvature matrix is not antisymmetric");
  series_detail::require_degree_two(R, "a_hat");
  return series_detail::apply(CharSeries::a_hat(std::max(top, 0), n), R, top);
}

/// Applies S to a Cartan-valued curvature matrix (entries mixing forms and
/// chi symbols, chi counted in degree 2). The entries must be known at least
/// up to top_total_degree.
inline CartanElement equivariant_substitute(const CharSeries& S, const GradedMatrix& omega_g, int top_total_degree) {
  if (omega_g.truncation() < top_total_degree)
    throw TruncationError("equivariant_substitute: curvature truncated at degree " +
                          std::to_string(omega_g.truncation()) + ", below requested " +
                          std::to_string(top_total_degree));
  series_detail::require_degree_two(omega_g, "equivariant_substitute");
  if (S.kind == SeriesKind::multiplicative && !omega_g.is_antisymmetric())
    throw NotAntisymmetricError("equivariant_substitute: multiplicative series needs an antisymmetric matrix");
  return CartanElement(series_detail::apply(S, omega_g, top_total_degree));
}

}  // namespace eqcw
