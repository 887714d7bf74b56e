#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "ldx/fit.hpp"
#include "ldx/legendre.hpp"
#include "ldx/quadrature.hpp"

namespace ldx {

/// Family of kernels f_eps(z) = (2 pi eps)^{-1/2} exp(-d(z)^2 / 2 eps) (C0 + eps C1)
/// whose exponential moments reproduce a CGF expansion to first order.
class EquivalentFamily {
 public:
  explicit EquivalentFamily(RateData rd);
  /// Uses a caller-supplied C1 in place of the derived one.
  EquivalentFamily(RateData rd, std::function<double(double)> c1_override);

  const RateData& rate_data() const { return rd_; }

  /// exp(L1(u*)) / sqrt(L0''(u*)) at u* = u*(z).
  double c0(double z) const;
  /// First and second z-derivatives of C0, by the chain rule through u*(z).
  std::pair<double, double> c0_derivatives(double z) const;
  double c1(double z) const;
  double f_eps(double z, double eps) const;

  /// J_n = {u : z*(u) in (-n, n)} = (u*(n), u*(-n)).
  std::pair<double, double> window(double n) const;

 private:
  struct AtU {
    double u, l2, l3, l4;
  };
  double c0_at(double u, double l2) const;
  AtU derivatives_at(double z) const;

  RateData rd_;
  std::function<double(double)> c1_override_;
};

struct CertificationReport {
  double n = 0.0;
  double u = 0.0;
  std::vector<double> eps;
  std::vector<double> ratio_minus_one;
  SlopeFit fit;
  bool passed = false;
  int negative_kernel_points = 0;  ///< sampled z with C0 + eps C1 < 0
};

/// Order in eps of |int_{-n}^{n} e^{-uz/eps} f_eps dz / (e^{L0/eps} e^{L1} (1 + eps L2)) - 1|.
/// Passes when the fitted order reaches min_order (or the ratio is exact to
/// quadrature precision). Throws WindowError when u is outside J_n.
CertificationReport certify_equivalence(const EquivalentFamily& family, double n, double u,
                                        const std::vector<double>& eps_grid,
                                        double min_order = 1.8, double noise_floor = 1e-11,
                                        const QuadratureOptions& opts = {1e-14, 1e-13,
                                                                         1 << 15, 16});

}  // namespace ldx
