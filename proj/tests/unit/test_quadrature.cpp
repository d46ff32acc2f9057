#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "cpcav/constants.hpp"
#include "cpcav/errors.hpp"
#include "cpcav/numerics/quadrature.hpp"

using namespace cpcav;
using std::numbers::pi;

TEST(Quadrature, KronrodWeightsSumToTwo) {
  double sum = detail::kK21Weights[10];
  for (int i = 0; i < 10; ++i) sum += 2.0 * detail::kK21Weights[i];
  EXPECT_NEAR(sum, 2.0, 1e-15);
  double gauss = 0.0;
  for (double w : detail::kG10Weights) gauss += 2.0 * w;
  EXPECT_NEAR(gauss, 2.0, 1e-15);
}

TEST(Quadrature, SinglePanelExactForHighDegreePolynomial) {
  auto f = [](double x) { return std::complex<double>(std::pow(x, 30), 0.0); };
  const detail::Segment s = detail::gk21(f, -1.0, 1.0);
  EXPECT_NEAR(s.value.real(), 2.0 / 31.0, 1e-15);
}

TEST(Quadrature, ZeroIntegrand) {
  auto r = integrate([](double) { return 0.0; }, 0.0, 1.0);
  EXPECT_EQ(r.value, std::complex<double>(0.0, 0.0));
}

TEST(Quadrature, XSquaredSinHalfX) {
  auto r = integrate([](double x) { return x * x * std::sin(0.5 * x); }, 0.0, 2.0 * pi);
  EXPECT_NEAR(r.value.real(), 8.0 * pi * pi - 32.0, 1e-10);
  EXPECT_NEAR(r.value.real(), 46.956, 1e-3);
}

TEST(Quadrature, ComplexOscillatoryMoments) {
  for (int l = 0; l <= 3; ++l) {
    const double p = l + 0.5;
    auto r = integrate([p](double x) { return x * x * std::exp(std::complex<double>(0.0, p * x)); }, 0.0, 2.0 * pi);
    const double expected = 4.0 * pi * pi / p - 4.0 / (p * p * p);
    EXPECT_NEAR(r.value.imag(), expected, 1e-10 * std::abs(expected)) << "l = " << l;
  }
}

TEST(Quadrature, ExponentialCutoffGeometricIntegral) {
  // int_0^inf x^2 e^-x / (1 - e^-2x) dx = 7 zeta(3) / 4, cut at x = 60
  auto f = [](double x) {
    if (x == 0.0) return 0.0;
    return x * x * std::exp(-x) / -std::expm1(-2.0 * x);
  };
  auto r = integrate(f, 0.0, 60.0);
  EXPECT_NEAR(r.value.real(), 1.75 * constants::zeta3, 1e-10);
  EXPECT_NEAR(r.value.real(), 2.10360, 1e-5);
}

TEST(Quadrature, BreakpointsResolveNarrowPeak) {
  const double w = 1e-6;
  auto f = [w](double x) { return w / (pi * ((x - 0.3) * (x - 0.3) + w * w)); };
  const std::vector<double> edges = make_breakpoints(0.0, 1.0, {0.3 - 100 * w, 0.3, 0.3 + 100 * w});
  auto r = integrate(f, std::span<const double>(edges));
  const double expected = (std::atan(0.7 / w) + std::atan(0.3 / w)) / pi;
  EXPECT_NEAR(r.value.real(), expected, 1e-9);
}

TEST(Quadrature, BudgetExhaustionCarriesEstimate) {
  QuadratureSpec spec;
  spec.max_subdivisions = 3;
  spec.rel_tol = 1e-14;
  try {
    integrate([](double x) { return std::sin(1.0 / (x + 1e-3)); }, 0.0, 1.0, spec);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_GT(e.error(), 0.0);
    EXPECT_TRUE(std::isfinite(e.estimate().real()));
  }
}

TEST(Quadrature, RejectsBadSpecAndInterval) {
  QuadratureSpec bad;
  bad.rel_tol = 0.0;
  EXPECT_THROW(integrate([](double x) { return x; }, 0.0, 1.0, bad), DomainError);
  EXPECT_THROW(integrate([](double x) { return x; }, 1.0, 0.0), DomainError);
  QuadratureSpec gain;
  gain.roundoff_gain = 0.5;
  EXPECT_THROW(integrate([](double x) { return x; }, 0.0, 1.0, gain), DomainError);
}

TEST(Quadrature, RoundoffGainAcceptsNoisyIntegrand) {
  auto noisy = [](double x) { return 1.0 + 1e-9 * std::sin(1e7 * x); };
  QuadratureSpec tight;
  tight.rel_tol = 1e-14;
  tight.max_subdivisions = 50;
  EXPECT_THROW(integrate(noisy, 0.0, 1.0, tight), ConvergenceError);
  tight.roundoff_gain = 1e8;
  EXPECT_NEAR(integrate(noisy, 0.0, 1.0, tight).value.real(), 1.0, 1e-8);
}

TEST(Quadrature, MakeBreakpointsClipsAndSorts) {
  auto b = make_breakpoints(0.0, 1.0, {0.5, -1.0, 2.0, 0.25, 0.5});
  ASSERT_EQ(b.size(), 4u);
  EXPECT_EQ(b[0], 0.0);
  EXPECT_EQ(b[1], 0.25);
  EXPECT_EQ(b[2], 0.5);
  EXPECT_EQ(b[3], 1.0);
}
