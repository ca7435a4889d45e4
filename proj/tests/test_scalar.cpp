#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "eqcw/scalar.hpp"
#include "random_elements.hpp"

using namespace eqcw;

TEST(Scalar, NoStoredZeros) {
  Scalar s = Scalar::tau(2) + Scalar::rational(1, 3);
  s = s - Scalar::tau(2);
  EXPECT_EQ(s.terms().size(), 1u);
  EXPECT_EQ(s, Scalar::rational(1, 3));
  EXPECT_TRUE((s - s).is_zero());
}

TEST(Scalar, TauEvaluatesToTwoPiI) {
  const auto v = Scalar::tau().evaluate();
  EXPECT_DOUBLE_EQ(v.real(), 0.0);
  EXPECT_DOUBLE_EQ(v.imag(), 2 * std::numbers::pi);
  const auto w = Scalar::tau(-2).evaluate();
  EXPECT_NEAR(w.real(), -1.0 / (4 * std::numbers::pi * std::numbers::pi), 1e-15);
}

TEST(Scalar, IOverTwoPiIsMinusInverseTau) {
  // i / (2 pi) = -1/tau since tau = 2 pi i.
  const Scalar s = -Scalar::tau(-1);
  const auto v = s.evaluate();
  EXPECT_NEAR(v.real(), 0.0, 1e-15);
  EXPECT_NEAR(v.imag(), 1.0 / (2 * std::numbers::pi), 1e-15);
}

TEST(Scalar, InverseOfUnit) {
  const Scalar s = Scalar::monomial(GaussianRational(make_rational(2, 3), make_rational(1)), 3);
  EXPECT_EQ(s * s.inverse(), Scalar(1));
  EXPECT_THROW((Scalar::tau() + Scalar(1)).inverse(), std::domain_error);
}

TEST(Scalar, ToString) {
  EXPECT_EQ(Scalar().to_string(), "0");
  EXPECT_EQ(Scalar::rational(-1, 2).to_string(), "-1/2");
  EXPECT_EQ((Scalar::rational(3) * Scalar::tau(-2)).to_string(), "3 * tau^-2");
  EXPECT_EQ(Scalar::i().to_string(), "i");
}

TEST(ScalarProperty, RingAxioms) {
  fixtures::RandomElements gen(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Scalar a = gen.scalar(), b = gen.scalar(), c = gen.scalar();
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a + b) - b, a);
  }
}

TEST(ScalarProperty, EvaluationIsRingHomomorphism) {
  fixtures::RandomElements gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Scalar a = gen.nonzero_scalar(), b = gen.nonzero_scalar();
    const auto lhs = (a * b).evaluate();
    const auto rhs = a.evaluate() * b.evaluate();
    EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::max(1.0, std::abs(rhs)));
    const auto sum = (a + b).evaluate() - (a.evaluate() + b.evaluate());
    EXPECT_LE(std::abs(sum), 1e-12 * std::max(1.0, std::abs(a.evaluate()) + std::abs(b.evaluate())));
  }
}
