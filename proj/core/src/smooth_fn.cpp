#include "ldx/smooth_fn.hpp"

#include <cmath>
#include <string>

#include "ldx/errors.hpp"

namespace ldx {

namespace {

double stencil(const std::function<double(double)>& f, double z, double h, int n) {
  switch (n) {
    case 1:
      return (-f(z + 2 * h) + 8 * f(z + h) - 8 * f(z - h) + f(z - 2 * h)) / (12 * h);
    case 2:
      return (-f(z + 2 * h) + 16 * f(z + h) - 30 * f(z) + 16 * f(z - h) - f(z - 2 * h)) /
             (12 * h * h);
    case 3:
      return (f(z + 2 * h) - 2 * f(z + h) + 2 * f(z - h) - f(z - 2 * h)) / (2 * h * h * h);
    case 4:
      return (f(z + 2 * h) - 4 * f(z + h) + 6 * f(z) - 4 * f(z - h) + f(z - 2 * h)) /
             (h * h * h * h);
    case 5:
      return (f(z + 3 * h) - 4 * f(z + 2 * h) + 5 * f(z + h) - 5 * f(z - h) +
              4 * f(z - 2 * h) - f(z - 3 * h)) /
             (2 * h * h * h * h * h);
    default:
      throw DomainError("derivative order " + std::to_string(n) + " not supported");
  }
}

}  // namespace

double richardson_derivative(const std::function<double(double)>& f, double z, int n) {
  if (n == 0) return f(z);
  // Base steps per order, tuned so that the truncation error left after two
  // extrapolation levels meets the roundoff of the finest stencil.
  static constexpr double kStep[] = {0.0, 0.01, 0.02, 0.012, 0.025, 0.03};
  if (n < 0 || n > 5) throw DomainError("derivative order " + std::to_string(n) + " not supported");
  const double h = kStep[n] * (1.0 + std::abs(z));
  const double p = n <= 2 ? 4.0 : 2.0;
  const double d0 = stencil(f, z, h, n);
  const double d1 = stencil(f, z, h / 2, n);
  const double d2 = stencil(f, z, h / 4, n);
  const double w1 = std::pow(2.0, p);
  const double e0 = (w1 * d1 - d0) / (w1 - 1);
  const double e1 = (w1 * d2 - d1) / (w1 - 1);
  const double w2 = std::pow(2.0, p + 2);
  return (w2 * e1 - e0) / (w2 - 1);
}

SmoothScalarFn::SmoothScalarFn() : SmoothScalarFn(Value([](double) { return 0.0; })) {}

SmoothScalarFn::SmoothScalarFn(Value value)
    : value_(std::make_shared<const Value>(std::move(value))) {}

SmoothScalarFn::SmoothScalarFn(Value value, Derivative analytic)
    : value_(std::make_shared<const Value>(std::move(value))), analytic_(std::move(analytic)) {}

SmoothScalarFn SmoothScalarFn::constant(double c) {
  return SmoothScalarFn([c](double) { return c; },
                        [c](double, int n) { return n == 0 ? c : 0.0; });
}

double SmoothScalarFn::derivative(double z, int n) const {
  if (n < 0 || n > kMaxOrder)
    throw DomainError("derivative order " + std::to_string(n) + " outside [0, 5]");
  if (n == 0) return (*value_)(z);
  if (analytic_) return analytic_(z, n);
  return fd_derivative(z, n);
}

double SmoothScalarFn::fd_derivative(double z, int n) const {
  if (n < 0 || n > kMaxOrder)
    throw DomainError("derivative order " + std::to_string(n) + " outside [0, 5]");
  return richardson_derivative(*value_, z, n);
}

SmoothScalarFn SmoothScalarFn::without_analytic() const {
  SmoothScalarFn out;
  out.value_ = value_;
  return out;
}

SmoothScalarFn SmoothScalarFn::shifted(double offset) const {
  auto v = value_;
  Value sv = [v, offset](double z) { return (*v)(z + offset); };
  if (!analytic_) return SmoothScalarFn(sv);
  auto d = analytic_;
  return SmoothScalarFn(sv, [d, offset](double z, int n) { return d(z + offset, n); });
}

}  // namespace ldx
