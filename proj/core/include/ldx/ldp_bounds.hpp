#pragma once

#include <string>

#include "ldx/legendre.hpp"

namespace ldx {

enum class BoundDirection { Upper, Lower };

std::string to_string(BoundDirection d);

struct GapConstant {
  double delta = 0.0;  ///< infimum of the tilted rate outside A
  double gamma = 0.0;  ///< delta / 2
};

/// First-order estimate of p_eps(A) for an interval A = (a_minus, a_plus).
struct BoundReport {
  BoundDirection direction = BoundDirection::Upper;
  bool ustar_nonnegative = true;
  double x = 0.0;
  double a_minus = 0.0;
  double a_plus = 0.0;
  double ustar = 0.0;
  double rate = 0.0;
  double exponent = 0.0;    ///< coefficient of -1/eps
  double prefactor = 1.0;   ///< exp(L1(u*(x)))
  double correction = 0.0;  ///< L2(u*(x))
  double gap_delta = 0.0;   ///< lower bounds only
  double gap_gamma = 0.0;   ///< lower bounds only

  double value(double eps) const;
  /// log(value(eps)), computed without underflow for small eps.
  double log_value(double eps) const;
  std::string case_tag() const { return ustar_nonnegative ? "u*>=0" : "u*<0"; }
};

/// Tilted rate rate(y) - rate(x) + u*(x) (y - x).
double tilted_rate(const RateData& rd, double x, double y);

GapConstant gap_constant(const RateData& rd, double a_minus, double a_plus, double x);

BoundReport upper_bound(const RateData& rd, double a_minus, double a_plus, double x);
BoundReport lower_bound(const RateData& rd, double a_minus, double a_plus, double x);

}  // namespace ldx
