#pragma once

#include <array>
#include <memory>
#include <vector>

#include "ldx/cgf.hpp"

namespace ldx {

/// Second, third and fourth z-derivatives of phi_u(z) = u z + d(z)^2 / 2 at
/// its critical point z*(u).
struct PhiDerivatives {
  double d2, d3, d4;
};

/// Rate-function machinery for a CGF expansion: the critical point u*(z),
/// the Legendre transform of L0, the distance d(z) and the reverse map z*(u).
/// Immutable after construction; every query is thread-safe.
class RateData {
 public:
  explicit RateData(CGFExpansion cgf, int grid_nodes = 512);

  const CGFExpansion& cgf() const { return *cgf_; }

  /// Solves L0'(u) = -z.
  double ustar(double z) const;
  /// -z u*(z) - L0(u*(z)), clamped at zero.
  double rate(double z) const;
  double distance(double z) const;
  /// -L0'(u).
  double zstar(double u) const;
  /// Minimiser of the rate, z*(0).
  double zbar() const { return zstar(0.0); }
  PhiDerivatives phi_u_derivatives(double u) const;

  const std::vector<double>& table_u() const { return table_u_; }
  const std::vector<double>& table_slope() const { return table_g_; }

 private:
  std::shared_ptr<const CGFExpansion> cgf_;
  std::vector<double> table_u_;
  std::vector<double> table_g_;  ///< L0' at table_u_, increasing
};

}  // namespace ldx
