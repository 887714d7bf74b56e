#include "ldx/density_family.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "ldx/errors.hpp"

namespace ldx {

EquivalentFamily::EquivalentFamily(RateData rd) : rd_(std::move(rd)) {}

EquivalentFamily::EquivalentFamily(RateData rd, std::function<double(double)> c1_override)
    : rd_(std::move(rd)), c1_override_(std::move(c1_override)) {}

EquivalentFamily::AtU EquivalentFamily::derivatives_at(double z) const {
  const double u = rd_.ustar(z);
  const auto& l0 = rd_.cgf().lambda0;
  const double l2 = l0.derivative(u, 2);
  if (!(l2 > 1e-14)) {
    std::ostringstream os;
    os << "lambda0''(u*(" << z << ")) = " << l2;
    throw DegenerateCurvature(os.str());
  }
  return {u, l2, l0.derivative(u, 3), l0.derivative(u, 4)};
}

double EquivalentFamily::c0_at(double u, double l2) const {
  return std::exp(rd_.cgf().lambda1(u)) / std::sqrt(l2);
}

double EquivalentFamily::c0(double z) const {
  const double u = rd_.ustar(z);
  const double l2 = rd_.cgf().lambda0.derivative(u, 2);
  if (!(l2 > 1e-14)) {
    std::ostringstream os;
    os << "lambda0''(u*(" << z << ")) = " << l2;
    throw DegenerateCurvature(os.str());
  }
  return c0_at(u, l2);
}

std::pair<double, double> EquivalentFamily::c0_derivatives(double z) const {
  // C0(z) = g(u*(z)) with g = exp(L1) L0''^{-1/2} and du*/dz = -1/L0''.
  const AtU d = derivatives_at(z);
  const auto& l1 = rd_.cgf().lambda1;
  const double g = c0_at(d.u, d.l2);
  const double a = l1.derivative(d.u, 1) - d.l3 / (2 * d.l2);
  const double da = l1.derivative(d.u, 2) - d.l4 / (2 * d.l2) + d.l3 * d.l3 / (2 * d.l2 * d.l2);
  const double g1 = g * a;
  const double g2 = g * (a * a + da);
  const double dz1 = -g1 / d.l2;
  const double dz2 = (g2 * d.l2 - g1 * d.l3) / (d.l2 * d.l2 * d.l2);
  return {dz1, dz2};
}

double EquivalentFamily::c1(double z) const {
  if (c1_override_) return c1_override_(z);
  const AtU d = derivatives_at(z);
  const double c0v = c0_at(d.u, d.l2);
  const auto [dc0, d2c0] = c0_derivatives(z);
  const double l2 = d.l2, l3 = d.l3, l4 = d.l4;
  return c0v * rd_.cgf().lambda2(d.u) - d2c0 * l2 / 2 -
         5 * c0v * l3 * l3 / (24 * l2 * l2 * l2) +
         c0v * (3 * l3 * l3 - l2 * l4) / (8 * l2 * l2 * l2) + dc0 * l3 / (2 * l2);
}

double EquivalentFamily::f_eps(double z, double eps) const {
  if (!(eps > 0)) throw DomainError("eps must be positive");
  const double r = rd_.rate(z);
  return std::exp(-r / eps) / std::sqrt(2 * std::numbers::pi * eps) * (c0(z) + eps * c1(z));
}

std::pair<double, double> EquivalentFamily::window(double n) const {
  if (!(n > 0)) throw WindowError("window index must be positive");
  return {rd_.ustar(n), rd_.ustar(-n)};
}

CertificationReport certify_equivalence(const EquivalentFamily& family, double n, double u,
                                        const std::vector<double>& eps_grid, double min_order,
                                        double noise_floor, const QuadratureOptions& opts) {
  const auto [jlo, jhi] = family.window(n);
  if (!(u > jlo && u < jhi)) {
    std::ostringstream os;
    os << "u = " << u << " outside J_" << n << " = (" << jlo << ", " << jhi << ")";
    throw WindowError(os.str());
  }
  const RateData& rd = family.rate_data();
  const CGFExpansion& cgf = rd.cgf();
  const double l0 = cgf.lambda0(u);
  const double l1 = cgf.lambda1(u);
  const double l2 = cgf.lambda2(u);
  const double zc = rd.zstar(u);

  CertificationReport rep;
  rep.n = n;
  rep.u = u;
  for (double eps : eps_grid) {
    int negatives = 0;
    // Exponent u z + d^2/2 measured from its minimum -L0(u), attained at z*(u).
    auto phi = [&](double z) { return u * z + rd.rate(z); };
    auto f = [&](double z) {
      const double k = family.c0(z) + eps * family.c1(z);
      if (k < 0) ++negatives;
      return k / std::sqrt(2 * std::numbers::pi * eps);
    };
    const auto q = integrate_laplace(f, phi, -n, n, eps, -l0, {zc}, opts);
    const double ratio = q.value / (std::exp(l1) * (1 + eps * l2));
    rep.eps.push_back(eps);
    rep.ratio_minus_one.push_back(ratio - 1);
    rep.negative_kernel_points += negatives;
  }
  rep.fit = loglog_slope(rep.eps, rep.ratio_minus_one, noise_floor);
  rep.passed = order_at_least(rep.fit, min_order);
  return rep;
}

}  // namespace ldx
