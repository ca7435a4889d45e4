#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "eqcw/geometry_oracle.hpp"

using namespace eqcw;

namespace {

constexpr double kPi = std::numbers::pi;

const SphereGrid& standard_grid() {
  static const SphereGrid g(200, 400);
  return g;
}

double fd_cos_error(const SphereGrid& g) {
  const SampledForm f = sample_function(g, [](double t, double) { return Complex(std::cos(t)); });
  const SampledForm df = fd_exterior_derivative(f, g);
  const SampledForm exact =
      sample_one_form(g, [](double t, double) { return Complex(-std::sin(t)); }, [](double, double) { return Complex(0); });
  return (df - exact).max_abs();
}

// Error of d of a phi-dependent 1-form against its analytic derivative.
double fd_one_form_error(const SphereGrid& g) {
  auto a = [](double t, double p) { return Complex(std::sin(t) * std::sin(t) * std::cos(2 * p)); };
  auto b = [](double t, double p) { return Complex(std::cos(t) * std::sin(p), std::sin(3 * t)); };
  // d(a dt + b dp) = (d_t b - d_p a) dt ^ dp
  auto exact = [](double t, double p) {
    return Complex(-std::sin(t) * std::sin(p), 3 * std::cos(3 * t)) + 2.0 * std::sin(t) * std::sin(t) * std::sin(2 * p);
  };
  const SampledForm w = sample_one_form(g, a, b);
  return (fd_exterior_derivative(w, g) - sample_two_form(g, exact)).max_abs();
}

}  // namespace

TEST(SphereGrid, WeightsSumToArea) {
  for (auto [nt, np] : {std::pair{6, 9}, std::pair{40, 80}, std::pair{200, 400}}) {
    const SphereGrid g(nt, np);
    EXPECT_NEAR(g.area() / (4 * kPi), 1.0, 1e-12);
  }
}

TEST(SphereGrid, RejectsTinyGrids) { EXPECT_THROW(SphereGrid(4, 20), std::invalid_argument); }

TEST(Integrate, AreaForm) {
  const auto& g = standard_grid();
  const Complex v = integrate(sample_two_form(g, [](double t, double) { return Complex(std::sin(t)); }), g);
  EXPECT_NEAR(v.real(), 4 * kPi, 4 * kPi * 1e-12);
  EXPECT_NEAR(v.imag(), 0.0, 1e-14);
}

TEST(Integrate, PolynomialTimesTrigIsExact) {
  // int cos^4(theta) sin^2(phi) sin(theta) dtheta dphi = (2/5) * pi.
  const SphereGrid g(5 + 3, 12);
  const Complex v = integrate(sample_two_form(g, [](double t, double p) {
                                return Complex(std::pow(std::cos(t), 4) * std::sin(p) * std::sin(p) * std::sin(t));
                              }),
                              g);
  EXPECT_NEAR(v.real(), 2.0 / 5 * kPi, 1e-13);
}

TEST(Integrate, ExactFormIntegratesToZero) {
  const auto& g = standard_grid();
  const SampledForm f = sample_one_form(
      g, [](double, double) { return Complex(0); }, [](double t, double) { return Complex(std::cos(t) * std::cos(t)); });
  // d(cos^2 theta d phi) = -2 cos sin dtheta ^ dphi, analytic.
  const SampledForm exact = sample_two_form(g, [](double t, double) { return Complex(-2 * std::cos(t) * std::sin(t)); });
  EXPECT_NEAR(std::abs(integrate(exact, g)), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(integrate(fd_exterior_derivative(f, g), g)), 0.0, 1e-10);
}

TEST(Integrate, WrongDegreeThrows) {
  const auto& g = standard_grid();
  EXPECT_THROW(integrate(SampledForm::zero(g, 1), g), DegreeMismatchError);
}

TEST(Monopole, ZeroChargeIsFlat) {
  const auto s = monopole(0, SphereGrid(20, 40));
  EXPECT_EQ(s.curvature().max_abs(), 0.0);
  EXPECT_EQ(s.potential(Chart::north).max_abs(), 0.0);
  for (const auto& id : {"invariance", "eq4", "equivariant_closedness", "transition", "moment_charts"}) {
    const auto r = verify_pointwise(s, id);
    EXPECT_EQ(*r.residual, 0.0) << id;
  }
}

TEST(Monopole, FluxQuadratureMatchesChargeToRelativeTolerance) {
  const auto& g = standard_grid();
  for (int k = -2; k <= 2; ++k) {
    const auto s = monopole(k, g);
    const Complex flux = integrate(s.curvature(), g);
    const Complex exact(0.0, -2 * kPi * k);
    EXPECT_LE(std::abs(flux - exact), 1e-12 * std::max(1.0, std::abs(exact))) << k;
    // first Chern number (-1/tau) int F = k
    const Complex chern = -flux / Complex(0.0, 2 * kPi);
    EXPECT_NEAR(chern.real(), k, 1e-12);
    EXPECT_EQ(s.exact_flux().evaluate(), exact);
  }
}

TEST(RotationFields, AxialFieldIsDPhi) {
  const auto& g = standard_grid();
  const auto fields = rotation_fields(g);
  for (std::size_t k = 0; k < g.size(); k += 97) {
    EXPECT_EQ(fields[2].theta[k], 0.0);
    EXPECT_EQ(fields[2].phi[k], 1.0);
  }
  // iota_{d/dphi} dphi = 1
  const SampledForm dphi = sample_one_form(g, [](double, double) { return Complex(0); }, [](double, double) { return Complex(1); });
  const SampledForm one = contract(g, fields[2], dphi);
  for (const auto& x : one[0]) EXPECT_EQ(x, Complex(1));
}

TEST(RotationFields, CommutatorsMatchSo3) {
  const double r = rotation_commutator_residual(SphereGrid(40, 80), so3());
  EXPECT_LT(r, 1e-6);
}

TEST(FiniteDifference, CosTheta) { EXPECT_LT(fd_cos_error(standard_grid()), 1e-8); }

TEST(FiniteDifference, TopDegreeRejectedAndPhiIndependent) {
  const auto& g = standard_grid();
  EXPECT_THROW(fd_exterior_derivative(SampledForm::zero(g, 2), g), DegreeMismatchError);
  const SampledForm f = sample_function(g, [](double t, double) { return Complex(std::exp(std::cos(t))); });
  const SampledForm df = fd_exterior_derivative(f, g);
  for (const auto& x : df[1]) EXPECT_LT(std::abs(x), 1e-12);
}

TEST(FiniteDifference, ConvergesAtFourthOrderInTheta) {
  // Halving the theta step must cut the error by at least 2^4 (up to slack).
  double previous = 0;
  for (int n : {24, 48, 96}) {
    const SphereGrid g(n, 64);
    const double e = std::max(fd_cos_error(g), fd_one_form_error(g));
    if (previous > 0) {
      const double order = std::log2(previous / e);
      EXPECT_GE(order, 3.8) << "n=" << n << " error=" << e;
    }
    previous = e;
  }
}

TEST(Pointwise, IdentitiesHoldForCharges) {
  const auto& g = standard_grid();
  for (int k : {-2, 1, 3}) {
    const auto s = monopole(k, g);
    for (const auto& id : {"invariance", "eq4", "equivariant_closedness"}) {
      const auto r = verify_pointwise(s, id);
      EXPECT_TRUE(r.pass) << id << " k=" << k << " residual=" << *r.residual;
    }
    EXPECT_LT(*verify_pointwise(s, "transition").residual, 1e-10);
    EXPECT_LT(*verify_pointwise(s, "moment_charts").residual, 1e-10);
  }
}

TEST(Pointwise, UnknownIdentityThrows) {
  EXPECT_THROW(verify_pointwise(monopole(1, SphereGrid(10, 20)), "bianchi"), UnknownNameError);
}

TEST(Monopole, ChartCompensatorsDifferByConstantForAxialGenerator) {
  const auto s = monopole(2, SphereGrid(10, 20));
  for (std::size_t k = 0; k < s.grid().size(); ++k) {
    EXPECT_EQ(s.compensator(2, Chart::north)[0][k], Complex(0.0, 1.0));
    EXPECT_EQ(s.compensator(2, Chart::south)[0][k], Complex(0.0, -1.0));
  }
}

TEST(Monopole, MomentIntegralsAgreeAcrossCharts) {
  const auto& g = standard_grid();
  const auto s = monopole(3, g);
  for (int a = 0; a < 3; ++a) {
    const Complex north = integrate(wedge(g, s.moment(a, Chart::north), s.curvature()), g);
    const Complex south = integrate(wedge(g, s.moment(a, Chart::south), s.curvature()), g);
    EXPECT_LT(std::abs(north - south), 1e-10);
  }
}

TEST(NumericCh, MatchesClosedFormPerNode) {
  const SphereGrid g(8, 12);
  const SampledForm F = sample_two_form(g, [](double t, double) { return Complex(0.0, std::sin(t)); });
  const SampledForm v = sample_function(g, [](double t, double) { return Complex(0.0, std::cos(t)); });
  const MixedForm ch = numeric_equivariant_ch(g, F, v, 3);
  const Complex tau(0.0, 2 * kPi);
  for (std::size_t k = 0; k < g.size(); ++k) {
    EXPECT_EQ(ch.coefficients[0][0][k], Complex(1));
    EXPECT_LT(std::abs(ch.coefficients[0][1][k] - (-F[0][k] / tau)), 1e-15);
    // t-linear 2-form part: -(1/tau)^2 v F ... sign from (-(F - t v)/tau)^2 / 2
    EXPECT_LT(std::abs(ch.coefficients[1][1][k] - (-v[0][k] * F[0][k] / (tau * tau))), 1e-15);
  }
}
