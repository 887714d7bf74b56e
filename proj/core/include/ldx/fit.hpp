#pragma once

#include <vector>

namespace ldx {

struct PolyFit {
  std::vector<double> coeffs;  ///< coeffs[k] multiplies x^k
  double condition = 0.0;      ///< of the column-equilibrated Vandermonde matrix
  double residual_rms = 0.0;
};

/// Least-squares polynomial of the given degree through (x, y).
/// Throws FitIllConditioned when the condition number exceeds max_condition.
PolyFit polyfit(const std::vector<double>& x, const std::vector<double>& y, int degree,
                double max_condition = 1e12);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  int points = 0;
  /// All residuals sat below the noise floor, so no order could be measured;
  /// the expansion is exact to working precision.
  bool exact = false;
};

/// Least-squares slope of log(residual) against log(x). Points whose residual
/// is at or below noise_floor are dropped; if fewer than two remain the fit is
/// reported as exact.
SlopeFit loglog_slope(const std::vector<double>& x, const std::vector<double>& residual,
                      double noise_floor = 0.0);

/// Passes when the fit is exact or its slope reaches min_order.
inline bool order_at_least(const SlopeFit& s, double min_order) {
  return s.exact || s.slope >= min_order;
}

/// start * 2^{-j} for j = 0..count-1.
std::vector<double> dyadic_grid(double start, int count);

}  // namespace ldx
