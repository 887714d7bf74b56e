#pragma once

#include <functional>
#include <vector>

namespace ldx {

struct QuadratureOptions {
  double abs_tol_scale = 1e-12;  ///< absolute tolerance relative to the L1 mass
  double rel_tol = 1e-10;
  int max_panels = 1 << 15;
  int initial_panels = 16;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;  ///< integral of |g|, the absolute-tolerance scale
  int panels = 0;
};

/// Adaptive Gauss-Kronrod (7/15) integration of g over [a, b].
/// Interior breakpoints are always panel edges. Throws QuadratureNonConvergent
/// once the panel budget is spent.
QuadratureResult integrate(const std::function<double(double)>& g, double a, double b,
                           const std::vector<double>& breakpoints = {},
                           const QuadratureOptions& opts = {});

/// Integral of f(z) exp(-(phi(z) - shift)/eps) over [a, b]. Points where the
/// exponent exceeds the double underflow threshold contribute exactly zero.
QuadratureResult integrate_laplace(const std::function<double(double)>& f,
                                   const std::function<double(double)>& phi, double a,
                                   double b, double eps, double shift = 0.0,
                                   const std::vector<double>& breakpoints = {},
                                   const QuadratureOptions& opts = {});

}  // namespace ldx
