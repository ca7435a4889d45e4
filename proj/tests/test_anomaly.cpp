#include <gtest/gtest.h>

#include "eqcw/anomaly.hpp"

using namespace eqcw;

namespace {

struct AlgebraPair {
  LieAlgebraData g, h;
};

std::vector<AlgebraPair> pairs() {
  return {{u1(), u1()}, {su2(), u1()}, {u1(), u2()}, {su2(), u2()}, {so3(), so3()}};
}

GradedMatrix curvature_matrix(const UniversalConnectionAlgebra& U) {
  HVector comps;
  for (const auto& c : equivariant_curvature(U)) comps.push_back(c.value());
  return GradedMatrix::from_components(comps, *U.structure().rep());
}

CartanElement universal_ch(const UniversalConnectionAlgebra& U, int top) {
  return equivariant_substitute(CharSeries::chern_character(top), curvature_matrix(U), top);
}

}  // namespace

namespace eqcw {
void PrintTo(const GradedElement& x, std::ostream* os) { *os << x.to_string(); }
}  // namespace eqcw

TEST(TwoFormComponent, ReconstructsTauTimesLowChiPart) {
  for (const auto& [g, h] : pairs())
    for (int fiber : {0, 2}) {
      // The build runs Lie-derivative checks that need one degree of headroom.
      const auto U = UniversalConnectionAlgebra::build(g, h, fiber + 3);
      const CartanElement c = universal_ch(U, fiber + 2);
      const auto w = two_form_component(c, fiber, g.dim());
      ASSERT_EQ(w.moment.size(), static_cast<std::size_t>(g.dim()));
      const GradedElement low =
          c.chi_component(0).value().component(fiber + 2) + c.chi_component(1).value().component(fiber + 2);
      EXPECT_EQ(reconstruct(w).value(), Scalar::tau() * low) << g.name() << " / " << h.name() << " fiber " << fiber;
    }
}

TEST(TwoFormComponent, AbelianPointFiberByHand) {
  // omega_G = i (Omega - chi mu), so tau [ch]_2 = -omega_G.
  const auto U = UniversalConnectionAlgebra::build(u1(), u1(), 2);
  const auto w = two_form_component(universal_ch(U, 2), 0, 1);
  EXPECT_EQ(w.omega, -Scalar::i() * U.Omega(0));
  EXPECT_EQ(w.moment[0], -Scalar::i() * U.mu(0, 0));
}

TEST(TwoFormComponent, MomentIsLinear) {
  const auto U = UniversalConnectionAlgebra::build(su2(), u2(), 4);
  const auto w = two_form_component(universal_ch(U, 4), 2, 3);
  const std::vector<Scalar> s{Scalar::rational(2, 3), Scalar::i(), Scalar::rational(-5)};
  GradedElement expected;
  for (int a = 0; a < 3; ++a) expected += s[static_cast<std::size_t>(a)] * w.moment[static_cast<std::size_t>(a)];
  EXPECT_EQ(w.moment_on(s), expected);
}

TEST(TwoFormComponent, RejectsShortTruncationAndWrongDimension) {
  const auto U = UniversalConnectionAlgebra::build(u1(), u1(), 2);
  const CartanElement c = universal_ch(U, 2);
  EXPECT_THROW(two_form_component(c, 2, 1), TruncationError);
  EXPECT_THROW(two_form_component(c, 0, 1, FormalIntegral{2}), DegreeMismatchError);
}

TEST(CovariantAnomaly, ClosedFormIsTauTimesExtractedMoment) {
  for (const auto& [g, h] : pairs())
    for (int n : {1, 2}) {
      const int fiber = 2 * n;
      const auto U = UniversalConnectionAlgebra::build(g, h, fiber + 3);
      const auto w = two_form_component(universal_ch(U, fiber + 2), fiber, g.dim());
      const GradedMatrix F = GradedMatrix::from_components(U.Omega(), *h.rep());
      for (int a = 0; a < g.dim(); ++a) {
        const GradedMatrix v = GradedMatrix::from_components(U.mu(a), *h.rep());
        const GradedElement closed = covariant_anomaly(n, v, F, FormalIntegral{fiber});
        EXPECT_EQ(closed, Scalar::tau() * w.moment[static_cast<std::size_t>(a)])
            << g.name() << " / " << h.name() << " n=" << n << " a=" << a;
      }
    }
}

TEST(CovariantAnomaly, AbelianByHand) {
  // tr(v F) = i mu * i Omega = -mu Omega, prefactor -tau * (-1/tau) = 1.
  const auto U = UniversalConnectionAlgebra::build(u1(), u1(), 4);
  GradedMatrix v(1), F(1);
  v(0, 0) = Scalar::i() * U.mu(0, 0);
  F(0, 0) = Scalar::i() * U.Omega(0);
  EXPECT_EQ(covariant_anomaly(1, v, F, FormalIntegral{2}), -(U.mu(0, 0) * U.Omega(0)));
}

TEST(CovariantAnomaly, RejectsBadInput) {
  const auto U = UniversalConnectionAlgebra::build(u1(), u1(), 4);
  GradedMatrix v(1), F(1);
  v(0, 0) = U.mu(0, 0);
  F(0, 0) = U.Omega(0);
  EXPECT_THROW(covariant_anomaly(2, v, F, FormalIntegral{2}), DegreeMismatchError);
  EXPECT_THROW(covariant_anomaly(1, F, F, FormalIntegral{2}), DegreeMismatchError);
  EXPECT_THROW(covariant_anomaly(1, v, v, FormalIntegral{2}), DegreeMismatchError);
  EXPECT_THROW(covariant_anomaly(1, v, GradedMatrix(2), FormalIntegral{2}), DegreeMismatchError);
}

TEST(CrossValidate, MonopoleDualPathAgrees) {
  const SphereGrid grid(32, 64);
  const std::vector<Rational> lambdas{Rational(0), make_rational(1, 2), Rational(-3)};
  for (int k : {-2, 1, 3}) {
    const auto s = monopole(k, grid);
    const auto result = cross_validate(s, CharSeries::chern_character(4), lambdas);
    EXPECT_EQ(result.rows.size(), 9u);
    for (const auto& c : result.checks) EXPECT_TRUE(c.pass) << "k=" << k << " " << c.name << " " << c.residual.value_or(0);
    for (const auto& row : result.rows) {
      const Complex tau(0.0, 2 * std::numbers::pi);
      EXPECT_NEAR(std::abs(row.closed_form_stripped * tau - row.closed_form), 0.0, 1e-12);
      // closed form = i lambda (-k tau) = 2 pi k lambda
      EXPECT_NEAR(row.closed_form.real(), 2 * std::numbers::pi * k * row.lambda.get_d(), 1e-8);
      EXPECT_NEAR(row.closed_form.imag(), 0.0, 1e-8);
    }
  }
}

TEST(CrossValidate, ZeroChargeHasNoAnomaly) {
  const SphereGrid grid(16, 32);
  const auto result = cross_validate(monopole(0, grid), CharSeries::chern_character(4), {Rational(1)});
  for (const auto& row : result.rows) EXPECT_LT(std::abs(row.closed_form), 1e-12);
}

TEST(CrossValidate, OnlyChernCharacterIsSupported) {
  const SphereGrid grid(16, 32);
  const auto result = cross_validate(monopole(1, grid), CharSeries::a_hat(4), {Rational(1)});
  EXPECT_TRUE(result.rows.empty());
  EXPECT_FALSE(all_pass(result.checks));
}

TEST(CovariantAnomaly, ScalesExactlyWithV) {
  const auto U = UniversalConnectionAlgebra::build(su2(), u2(), 7);
  const GradedMatrix F = GradedMatrix::from_components(U.Omega(), *u2().rep());
  const GradedMatrix v = GradedMatrix::from_components(U.mu(1), *u2().rep());
  const Scalar c = Scalar::rational(-7, 3) * Scalar::tau(2);
  for (int n : {1, 2}) {
    const GradedElement base = covariant_anomaly(n, v, F, FormalIntegral{2 * n});
    EXPECT_FALSE(base.is_zero());
    EXPECT_EQ(covariant_anomaly(n, c * v, F, FormalIntegral{2 * n}), c * base);
    EXPECT_TRUE(covariant_anomaly(n, Scalar(0) * v, F, FormalIntegral{2 * n}).is_zero());
  }
}
