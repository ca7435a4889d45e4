#include <gtest/gtest.h>

#include "eqcw/char_series.hpp"
#include "eqcw/equivariant_conn.hpp"
#include "series_oracles.hpp"

using namespace eqcw;
using namespace eqcw::fixtures;

namespace {

Generator form(const std::string& name, int idx = 0) { return Generator(name, 2, {h_index(idx)}); }

GradedMatrix diag(const std::vector<GradedElement>& entries) {
  GradedMatrix m(static_cast<int>(entries.size()));
  for (std::size_t k = 0; k < entries.size(); ++k) m(static_cast<int>(k), static_cast<int>(k)) = entries[k];
  return m;
}

// Real 2m x 2m block-diagonal antisymmetric matrix with blocks [[0, x],[-x, 0]].
GradedMatrix skew_blocks(const std::vector<GradedElement>& xs) {
  GradedMatrix m(2 * static_cast<int>(xs.size()));
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const int r = 2 * static_cast<int>(j);
    m(r, r + 1) = xs[j];
    m(r + 1, r) = -xs[j];
  }
  return m;
}

GradedElement exp_series(const GradedElement& x, int top) {
  GradedElement out(Scalar(1)), term(Scalar(1));
  for (int k = 1; 2 * k <= top; ++k) {
    term = Scalar(make_rational(1, k)) * (term * x).truncated(top);
    out += term;
  }
  return out;
}

}  // namespace

TEST(SeriesOracle, BernoulliSanity) {
  const auto B = bernoulli(8);
  EXPECT_EQ(B[1], make_rational(-1, 2));
  EXPECT_EQ(B[2], make_rational(1, 6));
  EXPECT_EQ(B[4], make_rational(-1, 30));
  EXPECT_EQ(B[6], make_rational(1, 42));
  EXPECT_EQ(B[8], make_rational(-1, 30));
}

TEST(PowerSeries, AHatCoefficientsMatchBernoulliOracle) {
  const PowerSeries f = PowerSeries::a_hat_function(12);
  for (int k = 0; 2 * k <= 12; ++k) {
    EXPECT_EQ(f[2 * k], a_hat_coefficient(k)) << "k=" << k;
    if (2 * k + 1 <= 12) {
      EXPECT_EQ(sgn(f[2 * k + 1]), 0);
    }
  }
  EXPECT_EQ(f[2], make_rational(-1, 24));
  EXPECT_EQ(f[4], make_rational(7, 5760));
  EXPECT_EQ(f[6], make_rational(-31, 967680));
}

TEST(PowerSeries, AHatLogCoefficients) {
  const CharSeries S = CharSeries::a_hat(12);
  for (int k = 1; 2 * k <= 12; ++k) EXPECT_EQ(S.log_coefficients[2 * k], a_hat_log_coefficient(k)) << "k=" << k;
  EXPECT_EQ(S.log_coefficients[2], make_rational(-1, 24));
}

TEST(PowerSeries, ExpLogRoundTrip) {
  for (const auto& f : {PowerSeries::a_hat_function(10), PowerSeries::exponential(10), PowerSeries::sinhc_half(10)})
    EXPECT_EQ(f.log().exp(), f);
  const PowerSeries e = PowerSeries::exponential(8);
  PowerSeries x(8);
  x[1] = 1;
  EXPECT_EQ(e.log(), x);
  EXPECT_EQ(x.exp(), e);
}

TEST(PowerSeries, InverseAndErrors) {
  const PowerSeries s = PowerSeries::sinhc_half(9);
  PowerSeries one(9);
  one[0] = 1;
  EXPECT_EQ(s * s.inverse(), one);
  EXPECT_THROW(PowerSeries(3).inverse(), std::domain_error);
  EXPECT_THROW(PowerSeries::exponential(3).exp(), std::domain_error);
}

TEST(ChernCharacter, ZeroCurvatureIsRank) {
  EXPECT_EQ(chern_character(diag({GradedElement()}), 6), GradedElement(Scalar(1)));
  EXPECT_EQ(chern_character(GradedMatrix(3), 6), GradedElement(Scalar(3)));
}

TEST(ChernCharacter, OneByOneExpansion) {
  const GradedElement F(form("F"));
  const GradedElement expected = GradedElement(Scalar(1)) - Scalar::tau(-1) * F +
                                 Scalar::rational(1, 2) * Scalar::tau(-2) * F * F;
  EXPECT_EQ(chern_character(diag({F}), 4), expected);
}

TEST(ChernCharacter, SelfConsistencyWithExponentialToDegreeEight) {
  // ch of a diagonal matrix is the sum of exp(-tau^{-1} F_j), expanded independently.
  const std::vector<GradedElement> Fs{GradedElement(form("F", 0)), GradedElement(form("F", 1)) + GradedElement(form("G")),
                                      Scalar::i() * GradedElement(form("F", 2))};
  GradedElement expected;
  for (const auto& F : Fs) expected += exp_series(-Scalar::tau(-1) * F, 8);
  EXPECT_EQ(chern_character(diag(Fs), 8), expected);
}

TEST(ChernCharacter, ChiLinearPartWithGaugeValue) {
  const GradedElement F(form("F"));
  GradedMatrix v(1);
  v(0, 0) = GradedElement(Scalar::rational(3));
  const GradedElement ch = chern_character(diag({F}), v, 4);
  const CartanElement c(ch);
  // (1/2) tau^{-2} (F - 3 chi)^2 has chi-linear part -3 tau^{-2} F chi.
  EXPECT_EQ(c.chi_linear_coefficient(0).component(2), Scalar::rational(-3) * Scalar::tau(-2) * F);
  EXPECT_EQ(c.chi_linear_coefficient(0).component(0), Scalar::rational(3) * Scalar::tau(-1));
}

TEST(ChernCharacter, NonHomogeneousRejected) {
  const GradedMatrix bad = diag({GradedElement(form("F")) + GradedElement(Scalar(1))});
  EXPECT_THROW(chern_character(bad, 4), DegreeMismatchError);
}

TEST(AHat, ZeroCurvature) { EXPECT_EQ(a_hat(GradedMatrix(2), 8), GradedElement(Scalar(1))); }

TEST(AHat, SingleBlock) {
  const GradedElement x(form("x"));
  // 1 - (1/24)(x/2pi)^2 = 1 + (1/24) tau^{-2} x^2.
  const GradedElement expected = GradedElement(Scalar(1)) + Scalar::rational(1, 24) * Scalar::tau(-2) * x * x;
  EXPECT_EQ(a_hat(skew_blocks({x}), 6), expected);
  const auto v = (Scalar::rational(1, 24) * Scalar::tau(-2)).evaluate();
  EXPECT_NEAR(v.real(), -1.0 / (24 * 4 * std::numbers::pi * std::numbers::pi), 1e-16);
}

TEST(AHat, FourPiNormalization) {
  const GradedElement x(form("x"));
  const GradedElement expected = GradedElement(Scalar(1)) + Scalar::rational(1, 96) * Scalar::tau(-2) * x * x;
  EXPECT_EQ(a_hat(skew_blocks({x}), 6, Normalization::four_pi), expected);
}

TEST(AHat, ProductOverBlocksToDegreeEight) {
  const std::vector<GradedElement> xs{GradedElement(form("x", 0)), GradedElement(form("x", 1))};
  GradedElement expected(Scalar(1));
  for (const auto& x : xs) {
    // prod_j sum_k f_{2k} y_j^{2k} with y_j^2 = (x_j / 2pi)^2 = -tau^{-2} x_j^2.
    const GradedElement y2 = -Scalar::tau(-2) * x * x;
    GradedElement block(Scalar(1)), power(Scalar(1));
    for (int k = 1; k <= 2; ++k) {
      power = power * y2;
      block += Scalar(a_hat_coefficient(k)) * power;
    }
    expected = (expected * block).truncated(8);
  }
  EXPECT_EQ(a_hat(skew_blocks(xs), 8), expected);
}

TEST(AHat, RejectsNonAntisymmetric) {
  EXPECT_THROW(a_hat(diag({GradedElement(form("x"))}), 4), NotAntisymmetricError);
}

TEST(Multiplicativity, DirectSums) {
  const GradedElement a(form("a")), b(form("b")), c(form("c"));
  GradedMatrix F1(2), F2(1);
  F1(0, 0) = a;
  F1(0, 1) = b;
  F1(1, 0) = c;
  F1(1, 1) = -a;
  F2(0, 0) = b + c;
  GradedMatrix F(3);
  for (int r = 0; r < 2; ++r)
    for (int s = 0; s < 2; ++s) F(r, s) = F1(r, s);
  F(2, 2) = F2(0, 0);
  EXPECT_EQ(chern_character(F, 8), chern_character(F1, 8) + chern_character(F2, 8));

  const GradedMatrix R1 = skew_blocks({a}), R2 = skew_blocks({b + c});
  EXPECT_EQ(a_hat(skew_blocks({a, b + c}), 8), (a_hat(R1, 8) * a_hat(R2, 8)).truncated(8));
}

TEST(EquivariantSubstitute, CartanClosedForU1AndU2) {
  for (const auto& h : {u1(), u2()}) {
    const auto U = UniversalConnectionAlgebra::build(su2(), h, 6);
    HVector comps;
    for (const auto& c : equivariant_curvature(U)) comps.push_back(c.value());
    const GradedMatrix omega_g = GradedMatrix::from_components(comps, *h.rep());
    const CartanElement ch = equivariant_substitute(CharSeries::chern_character(6), omega_g, 6);
    EXPECT_EQ(ch.value().component(0), GradedElement(Scalar(h.rep()->dim_v)));
    EXPECT_TRUE(cartan_differential(ch, U.carrier()).is_zero()) << h.name();
  }
}

TEST(EquivariantSubstitute, AHatCartanClosedForSo3) {
  const auto U = UniversalConnectionAlgebra::build(u1(), so3(), 6);
  HVector comps;
  for (const auto& c : equivariant_curvature(U)) comps.push_back(c.value());
  const GradedMatrix omega_g = GradedMatrix::from_components(comps, *so3().rep());
  const CartanElement ah = equivariant_substitute(CharSeries::a_hat(6), omega_g, 6);
  EXPECT_EQ(ah.value().component(0), GradedElement(Scalar(1)));
  EXPECT_TRUE(cartan_differential(ah, U.carrier()).is_zero());
}

TEST(EquivariantSubstitute, NoChiReducesToOrdinary) {
  const auto U = UniversalConnectionAlgebra::build(trivial_algebra(), u1(), 6);
  HVector comps{equivariant_curvature(U)[0].value()};
  const GradedMatrix omega_g = GradedMatrix::from_components(comps, *u1().rep());
  EXPECT_EQ(equivariant_substitute(CharSeries::chern_character(6), omega_g, 6).value(), chern_character(omega_g, 6));
}

TEST(EquivariantSubstitute, AbelianChMatchesExpansion) {
  const auto U = UniversalConnectionAlgebra::build(u1(), u1(), 4);
  HVector comps{equivariant_curvature(U)[0].value()};
  const GradedMatrix omega_g = GradedMatrix::from_components(comps, *u1().rep());
  // u = -tau^{-1} i (Omega - chi mu).
  const GradedElement u = -Scalar::tau(-1) * Scalar::i() * (U.Omega(0) - GradedElement(chi_gen(0)) * U.mu(0, 0));
  EXPECT_EQ(equivariant_substitute(CharSeries::chern_character(4), omega_g, 4).value(), exp_series(u, 4));
}

TEST(EquivariantSubstitute, TruncationTooSmall) {
  const auto U = UniversalConnectionAlgebra::build(u1(), u1(), 4);
  HVector comps{equivariant_curvature(U)[0].value()};
  const GradedMatrix omega_g = GradedMatrix::from_components(comps, *u1().rep());
  EXPECT_THROW(equivariant_substitute(CharSeries::chern_character(6), omega_g, 6), TruncationError);
}
