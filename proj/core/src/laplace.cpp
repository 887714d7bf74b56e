#include "ldx/laplace.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "ldx/errors.hpp"

namespace ldx {

namespace {

// Curvatures this small are a flat (degenerate) minimum in double precision.
bool convex_at(const SmoothScalarFn& phi, double z) {
  return phi.derivative(z, 2) > 1e-12 * (1 + std::abs(phi(z)));
}

}  // namespace

double find_minimizer(const SmoothScalarFn& phi, double a, double b) {
  if (!(a < b)) throw DomainError("interval must satisfy a < b");
  const double width = b - a;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = a, hi = b;
  double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
  double f1 = phi(x1), f2 = phi(x2);
  while (hi - lo > 1e-10 * width) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = phi(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = phi(x2);
    }
  }
  double z = 0.5 * (lo + hi);
  const double edge = 1e-9 * width;
  if (z - a <= edge || b - z <= edge) {
    std::ostringstream os;
    os << "minimum of phi is driven to the boundary of (" << a << ", " << b << ")";
    throw NoInteriorMinimum(os.str());
  }

  // Newton on phi' inside (a, b), falling back to the bracketed value.
  const double eps = std::numeric_limits<double>::epsilon();
  double best = z;
  double best_res = std::abs(phi.derivative(z, 1));
  for (int iter = 0; iter < 50; ++iter) {
    const double g = phi.derivative(z, 1);
    const double h = phi.derivative(z, 2);
    if (!(h > 0)) break;
    const double next = z - g / h;
    if (!(next > a + edge && next < b - edge)) break;
    const double res = std::abs(phi.derivative(next, 1));
    const double step = std::abs(next - z);
    z = next;
    if (res <= best_res) {
      best = z;
      best_res = res;
    }
    if (step <= 4 * eps * (1 + std::abs(z))) break;
  }
  z = best;
  if (!convex_at(phi, z)) {
    std::ostringstream os;
    os << "phi''(" << z << ") = " << phi.derivative(z, 2);
    throw NonConvexAtMinimum(os.str());
  }
  return z;
}

LaplaceProblem make_problem(SmoothScalarFn f, SmoothScalarFn phi, double a, double b) {
  LaplaceProblem p{std::move(f), std::move(phi), a, b, 0.0};
  p.z0 = find_minimizer(p.phi, a, b);
  return p;
}

void validate(const LaplaceProblem& p) {
  if (!(p.a < p.z0 && p.z0 < p.b)) {
    std::ostringstream os;
    os << "z0 = " << p.z0 << " not inside (" << p.a << ", " << p.b << ")";
    throw DomainError(os.str());
  }
  const double tol = 1e-10 * (1 + std::abs(p.phi(p.z0)));
  const double slope = p.phi.derivative(p.z0, 1);
  if (std::abs(slope) > tol) {
    std::ostringstream os;
    os << "phi'(z0) = " << slope << " is not zero";
    throw DomainError(os.str());
  }
  if (!convex_at(p.phi, p.z0)) throw NonConvexAtMinimum("phi''(z0) <= 0");
}

LaplaceCoefficients expand(const LaplaceProblem& p, int order) {
  if (order != 0 && order != 1) throw DomainError("expansion order must be 0 or 1");
  validate(p);
  const double z0 = p.z0;
  LaplaceCoefficients c;
  c.order = order;
  c.exponent_value = p.phi(z0);
  c.gauss_curvature = p.phi.derivative(z0, 2);
  c.order0 = p.f(z0);
  if (order == 1) {
    const double p2 = c.gauss_curvature;
    const double p3 = p.phi.derivative(z0, 3);
    const double p4 = p.phi.derivative(z0, 4);
    const double f0 = c.order0;
    const double f1 = p.f.derivative(z0, 1);
    const double f2 = p.f.derivative(z0, 2);
    c.order1 = f2 / (2 * p2) + 5 * p3 * p3 * f0 / (24 * p2 * p2 * p2) -
               p4 * f0 / (8 * p2 * p2) - p3 * f1 / (2 * p2 * p2);
  }
  return c;
}

double evaluate(const LaplaceCoefficients& c, double eps) {
  if (!(eps > 0)) throw DomainError("eps must be positive");
  double bracket = c.order0;
  if (c.order == 1 && c.order1) bracket += eps * *c.order1;
  return std::exp(-c.exponent_value / eps) *
         std::sqrt(2 * std::numbers::pi * eps / c.gauss_curvature) * bracket;
}

double quadrature_reference(const SmoothScalarFn& f, const SmoothScalarFn& phi, double a,
                            double b, double eps, const QuadratureOptions& opts) {
  return integrate_laplace(f, phi, a, b, eps, 0.0, {}, opts).value;
}

double quadrature_reference_scaled(const LaplaceProblem& p, double eps,
                                   const QuadratureOptions& opts) {
  return integrate_laplace(p.f, p.phi, p.a, p.b, eps, p.phi(p.z0), {p.z0}, opts).value;
}

}  // namespace ldx
