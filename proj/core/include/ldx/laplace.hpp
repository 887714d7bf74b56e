#pragma once

#include <optional>

#include "ldx/quadrature.hpp"
#include "ldx/smooth_fn.hpp"

namespace ldx {

/// Integral of f(z) exp(-phi(z)/eps) over (a, b) with an interior minimum
/// of phi at z0.
struct LaplaceProblem {
  SmoothScalarFn f;
  SmoothScalarFn phi;
  double a = 0.0;
  double b = 0.0;
  double z0 = 0.0;
};

struct LaplaceCoefficients {
  double exponent_value = 0.0;   ///< phi(z0)
  double gauss_curvature = 0.0;  ///< phi''(z0)
  double order0 = 0.0;           ///< f(z0)
  std::optional<double> order1;  ///< set only for first-order expansions
  int order = 0;
};

/// Golden-section bracketing followed by a Newton polish on phi'.
double find_minimizer(const SmoothScalarFn& phi, double a, double b);

/// Builds a problem with z0 located by find_minimizer.
LaplaceProblem make_problem(SmoothScalarFn f, SmoothScalarFn phi, double a, double b);

/// Throws DomainError / NonConvexAtMinimum when the problem is malformed.
void validate(const LaplaceProblem& problem);

LaplaceCoefficients expand(const LaplaceProblem& problem, int order);

/// exp(-phi(z0)/eps) sqrt(2 pi eps / phi''(z0)) (order0 + eps order1).
double evaluate(const LaplaceCoefficients& coeffs, double eps);

/// Adaptive-quadrature value of the integral, for validation.
double quadrature_reference(const SmoothScalarFn& f, const SmoothScalarFn& phi, double a,
                            double b, double eps, const QuadratureOptions& opts = {});

/// Same integral with z0 used as a breakpoint and the exponent measured from
/// phi(z0), so the result is divided by exp(-phi(z0)/eps).
double quadrature_reference_scaled(const LaplaceProblem& problem, double eps,
                                   const QuadratureOptions& opts = {});

}  // namespace ldx
