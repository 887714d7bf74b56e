#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ldx/errors.hpp"
#include "ldx/fit.hpp"
#include "ldx/quadrature.hpp"

using namespace ldx;
constexpr double kPi = std::numbers::pi;

TEST(Quadrature, PolynomialIsExact) {
  const auto r = integrate([](double x) { return 3 * x * x - x; }, -1.0, 2.0);
  EXPECT_NEAR(r.value, 9.0 - 1.5, 1e-13);
}

TEST(Quadrature, GaussianLaplaceIntegrals) {
  auto one = [](double) { return 1.0; };
  auto half_sq = [](double z) { return 0.5 * z * z; };
  EXPECT_NEAR(integrate_laplace(one, half_sq, -20, 20, 1.0).value, std::sqrt(2 * kPi), 1e-10);
  EXPECT_NEAR(integrate_laplace(one, half_sq, -20, 20, 0.25).value, std::sqrt(kPi / 2), 1e-10);
  // Independent closed form: int cos(z) e^{-z^2/(2 eps)} dz = sqrt(2 pi eps) e^{-eps/2}.
  auto c = [](double z) { return std::cos(z); };
  EXPECT_NEAR(integrate_laplace(c, half_sq, -20, 20, 0.5).value,
              std::sqrt(kPi) * std::exp(-0.25), 1e-10);
}

TEST(Quadrature, UnderflowRegionContributesZero) {
  int calls_far = 0;
  auto f = [&](double z) {
    if (std::abs(z) > 15) ++calls_far;
    return 1.0;
  };
  auto half_sq = [](double z) { return 0.5 * z * z; };
  const double v = integrate_laplace(f, half_sq, -20, 20, 0.01).value;
  EXPECT_NEAR(v, std::sqrt(2 * kPi * 0.01), 1e-12);
  EXPECT_EQ(calls_far, 0);
}

TEST(Quadrature, BudgetExhaustionThrows) {
  QuadratureOptions o;
  o.max_panels = 20;
  EXPECT_THROW(integrate([](double x) { return std::sin(1.0 / x); }, 1e-6, 1.0, {}, o),
               QuadratureNonConvergent);
}

TEST(Quadrature, BreakpointsResolveNarrowPeak) {
  auto peak = [](double z) { return std::exp(-0.5 * (z - 13.3) * (z - 13.3) / 1e-6); };
  const double want = std::sqrt(2 * kPi * 1e-6);
  EXPECT_NEAR(integrate(peak, -50, 50, {13.3}).value, want, 1e-12);
}

TEST(Fit, RecoversExactPolynomial) {
  std::vector<double> x, y;
  for (double t : dyadic_grid(1.0 / 1024, 6)) {
    x.push_back(t);
    y.push_back(1 + 2 * t + 3 * t * t);
  }
  const PolyFit f = polyfit(x, y, 2);
  EXPECT_NEAR(f.coeffs[0], 1, 1e-12);
  EXPECT_NEAR(f.coeffs[1], 2, 1e-12);
  EXPECT_NEAR(f.coeffs[2], 3, 1e-9);
}

TEST(Fit, IllConditionedThrows) {
  std::vector<double> x{1.0, 1.0 + 1e-9, 1.0 + 2e-9, 1.0 + 3e-9};
  std::vector<double> y{1, 2, 3, 4};
  EXPECT_THROW(polyfit(x, y, 3), FitIllConditioned);
}

TEST(Fit, LogLogSlopeAndNoiseFloor) {
  std::vector<double> x, r;
  for (double e : dyadic_grid(1.0 / 16, 7)) {
    x.push_back(e);
    r.push_back(3 * e * e);
  }
  const SlopeFit s = loglog_slope(x, r);
  EXPECT_NEAR(s.slope, 2.0, 1e-12);
  EXPECT_FALSE(s.exact);
  const SlopeFit z = loglog_slope(x, std::vector<double>(x.size(), 1e-17), 1e-15);
  EXPECT_TRUE(z.exact);
  EXPECT_TRUE(order_at_least(z, 1.8));
}
