#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ldx/smooth_fn.hpp"

namespace ldx {

/// First-order expansion of a rescaled cumulant generating function:
/// Lambda(eps, u) = L0(u) + eps L1(u) + eps^2 L2(u) + ...  on an open interval.
struct CGFExpansion {
  SmoothScalarFn lambda0;
  SmoothScalarFn lambda1;
  SmoothScalarFn lambda2;
  double u_lo = -std::numeric_limits<double>::infinity();
  double u_hi = std::numeric_limits<double>::infinity();

  bool contains(double u) const { return u > u_lo && u < u_hi; }

  /// Describes every violated structural condition (empty when all hold):
  /// 0 inside the domain, vanishing coefficients at 0, and a strictly
  /// increasing first derivative of L0 on `samples` interior points.
  std::vector<std::string> check(int samples = 200) const;

  /// The N(0, eps) family: L0 = u^2/2, L1 = l1_slope * u, L2 = l2_const.
  static CGFExpansion gaussian(double l1_slope = 0.0, double l2_const = 0.0);
};

}  // namespace ldx
