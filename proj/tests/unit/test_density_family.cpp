#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ldx/density_family.hpp"
#include "ldx/errors.hpp"
#include "ldx/heston.hpp"
#include "ldx/quadrature.hpp"

using namespace ldx;

namespace {

const std::vector<double> kEpsGrid = dyadic_grid(1.0 / 16, 7);

EquivalentFamily gaussian_family(double l1 = 0.0, double l2 = 0.0) {
  return EquivalentFamily(RateData(CGFExpansion::gaussian(l1, l2)));
}

EquivalentFamily heston_family(const HestonParams& p = {}) {
  return EquivalentFamily(RateData(heston_cgf(p)));
}

// C1 rebuilt from derivatives of phi_u(z) = u z + d(z)^2/2 at z*(u), with
// u = u*(z); an independent arrangement of the same first-order identity.
double c1_from_phi(const EquivalentFamily& fam, double z) {
  const RateData& rd = fam.rate_data();
  const double u = rd.ustar(z);
  const auto p = rd.phi_u_derivatives(u);
  const double c0 = fam.c0(z);
  const auto [dc0, d2c0] = fam.c0_derivatives(z);
  return c0 * rd.cgf().lambda2(u) - d2c0 / (2 * p.d2) -
         5 * p.d3 * p.d3 * c0 / (24 * p.d2 * p.d2 * p.d2) + p.d4 * c0 / (8 * p.d2 * p.d2) +
         p.d3 * dc0 / (2 * p.d2 * p.d2);
}

}  // namespace

TEST(C0, Examples) {
  EXPECT_NEAR(gaussian_family().c0(0.7), 1.0, 1e-14);
  EXPECT_NEAR(gaussian_family().c0(-2.0), 1.0, 1e-14);
  EXPECT_NEAR(gaussian_family(1.0).c0(1.0), std::exp(-1.0), 1e-12);
}

TEST(C0, HestonAtRateMinimum) {
  const HestonParams p;
  const auto fam = heston_family(p);
  const double curv = p.v0 * (2 * p.theta() + p.sigma) / (2 * p.sigma);
  const double zb = fam.rate_data().zbar();
  EXPECT_NEAR(fam.rate_data().cgf().lambda0.derivative(0.0, 2), curv, 1e-12);
  EXPECT_NEAR(fam.c0(zb), 1 / std::sqrt(curv), 1e-12);
}

TEST(C0, PositiveEverywhere) {
  const auto fam = heston_family(HestonParams{0.03, -0.5, 0.2, 1.5, 0.6, -0.5, 0.1, 0.04});
  for (double z = -6; z <= 6; z += 0.25) EXPECT_GT(fam.c0(z), 0.0) << z;
}

TEST(C0, ChainRuleDerivativesMatchFiniteDifferences) {
  for (const auto& fam : {heston_family(), gaussian_family(0.4),
                          heston_family(HestonParams{0.01, 0.3, 0.5, 2, 0.8, 0.5, -0.2, 0.3})}) {
    const SmoothScalarFn c0([&fam](double z) { return fam.c0(z); });
    for (double z : {-1.5, -0.2, 0.4, 2.0}) {
      const auto [d1, d2] = fam.c0_derivatives(z);
      EXPECT_NEAR(c0.fd_derivative(z, 1), d1, 1e-7 * (1 + std::abs(d1))) << z;
      EXPECT_NEAR(c0.fd_derivative(z, 2), d2, 1e-5 * (1 + std::abs(d2))) << z;
    }
  }
}

TEST(C1, Examples) {
  EXPECT_NEAR(gaussian_family().c1(0.3), 0.0, 1e-14);
  EXPECT_NEAR(gaussian_family(0.0, 0.7).c1(0.3), 0.7, 1e-14);
  EXPECT_NEAR(gaussian_family(0.0, 0.7).c1(-4.0), 0.7, 1e-14);
}

TEST(C1, MatchesPhiForm) {
  for (const auto& fam : {heston_family(), gaussian_family(0.4, 0.3),
                          heston_family(HestonParams{0.03, -0.5, 0.2, 1.5, 0.6, -0.5, 0.1, 0.04}),
                          heston_family(HestonParams{0.01, 0.3, 0.5, 2, 0.8, 0.5, -0.2, 0.3})}) {
    const double zb = fam.rate_data().zbar();
    for (double dz = -3; dz <= 3; dz += 0.5) {
      const double z = zb + dz;
      EXPECT_NEAR(fam.c1(z), c1_from_phi(fam, z), 1e-8 * (1 + std::abs(fam.c1(z)))) << z;
    }
  }
}

TEST(C1, HestonAtRateMinimum) {
  const auto fam = heston_family();
  const double zb = fam.rate_data().zbar();
  EXPECT_NEAR(fam.c1(zb), c1_from_phi(fam, zb), 1e-10);
}

TEST(FEps, GaussianDensity) {
  const auto fam = gaussian_family();
  const double s = 1 / std::sqrt(2 * std::numbers::pi);
  EXPECT_NEAR(fam.f_eps(0.0, 1.0), s, 1e-14);
  EXPECT_NEAR(fam.f_eps(1.0, 1.0), s * std::exp(-0.5), 1e-14);
  const auto shifted = gaussian_family(0.0, 2.0);
  EXPECT_NEAR(shifted.f_eps(0.0, 0.25), (1 + 0.25 * 2) / std::sqrt(2 * std::numbers::pi * 0.25),
              1e-14);
  EXPECT_THROW(fam.f_eps(0.0, 0.0), DomainError);
}

TEST(FEps, GaussianIntegratesToOne) {
  const auto fam = gaussian_family();
  for (double eps : {1.0, 0.1, 0.01}) {
    const double w = 40 * std::sqrt(eps);
    const auto q = integrate([&](double z) { return fam.f_eps(z, eps); }, -w, w, {0.0});
    EXPECT_NEAR(q.value, 1.0, 1e-10) << eps;
  }
}

TEST(FEps, NegativeValuesAreReportedNotClamped) {
  const EquivalentFamily fam(RateData(CGFExpansion::gaussian()), [](double) { return -10.0; });
  EXPECT_LT(fam.f_eps(0.0, 1.0), 0.0);
}

TEST(Windows, IncreasingAndExhaustive) {
  const auto fam = heston_family();
  const auto& cgf = fam.rate_data().cgf();
  double lo = 0, hi = 0;
  for (double n = 1; n <= 1e6; n *= 10) {
    const auto [a, b] = fam.window(n);
    EXPECT_LT(a, lo);
    EXPECT_GT(b, hi);
    EXPECT_TRUE(cgf.contains(a) && cgf.contains(b));
    lo = a;
    hi = b;
  }
  EXPECT_LT(cgf.u_hi - hi, 0.01);
  EXPECT_LT(lo - cgf.u_lo, 0.01);
  EXPECT_THROW(fam.window(0.0), WindowError);
}

TEST(Certification, GaussianIsExact) {
  const auto rep = certify_equivalence(gaussian_family(), 20, 0.5, kEpsGrid);
  for (double r : rep.ratio_minus_one) EXPECT_LT(std::abs(r), 1e-12);
  EXPECT_TRUE(rep.passed);
  EXPECT_EQ(rep.negative_kernel_points, 0);
}

TEST(Certification, GaussianWithConstantCorrection) {
  const EquivalentFamily fam(RateData(CGFExpansion::gaussian(0.0, 1.0)), [](double) { return 1.0; });
  const auto rep = certify_equivalence(fam, 20, 0.5, kEpsGrid);
  // The corrected kernel reproduces the transform exactly.
  EXPECT_TRUE(rep.passed) << rep.fit.slope;
  for (double r : rep.ratio_minus_one) EXPECT_LT(std::abs(r), 1e-11);
}

TEST(Certification, GaussianWithVaryingCorrection) {
  // C1 matches L2 at z*(0.5) = -0.5 only, which leaves an eps^2 term.
  const EquivalentFamily fam(RateData(CGFExpansion::gaussian(0.0, 1.0)),
                             [](double z) { return 1.0 + 0.3 * (z + 0.5) * (z + 0.5); });
  const auto rep = certify_equivalence(fam, 20, 0.5, kEpsGrid);
  EXPECT_FALSE(rep.fit.exact);
  EXPECT_TRUE(rep.passed) << rep.fit.slope;
}

TEST(Certification, WrongCorrectionIsDetected) {
  // C1 = 0 while L2 = 1 leaves a first-order error.
  const EquivalentFamily fam(RateData(CGFExpansion::gaussian(0.0, 1.0)), [](double) { return 0.0; });
  const auto rep = certify_equivalence(fam, 20, 0.5, kEpsGrid);
  EXPECT_FALSE(rep.passed);
  EXPECT_NEAR(rep.fit.slope, 1.0, 0.1);
}

TEST(Certification, HestonToy) {
  const auto rep = certify_equivalence(heston_family(), 4, 0.5, kEpsGrid);
  EXPECT_TRUE(rep.passed) << rep.fit.slope;
}

TEST(Certification, HestonSkewed) {
  const auto fam = heston_family(HestonParams{0.03, -0.5, 0.2, 1.5, 0.6, -0.5, 0.1, 0.04});
  const auto rep = certify_equivalence(fam, 4, 0.5, kEpsGrid);
  EXPECT_TRUE(rep.passed) << rep.fit.slope;
}

TEST(Certification, OutsideWindowThrows) {
  const auto fam = gaussian_family();
  EXPECT_THROW(certify_equivalence(fam, 1, 1.5, kEpsGrid), WindowError);
}
