#pragma once

#include <functional>
#include <memory>
#include <utility>

#include "ldx/jet.hpp"

namespace ldx {

/// A real function of one variable with derivative access up to order 5.
///
/// Derivatives come from a caller-supplied analytic routine when present and
/// from Richardson-extrapolated central differences otherwise.
class SmoothScalarFn {
 public:
  static constexpr int kMaxOrder = 5;

  using Value = std::function<double(double)>;
  using Derivative = std::function<double(double, int)>;

  SmoothScalarFn();
  explicit SmoothScalarFn(Value value);
  SmoothScalarFn(Value value, Derivative analytic);

  /// Wraps a generic callable `f(auto)` so that derivatives are exact.
  template <class F>
  static SmoothScalarFn from_generic(F f) {
    auto value = [f](double z) { return static_cast<double>(f(z)); };
    auto deriv = [f](double z, int n) {
      const Jet5 j = f(Jet5::variable(z));
      return j.derivative(n);
    };
    return SmoothScalarFn(value, deriv);
  }

  static SmoothScalarFn constant(double c);

  double operator()(double z) const { return (*value_)(z); }
  double value(double z) const { return (*value_)(z); }

  /// n-th derivative; n = 0 returns value(z) unchanged.
  double derivative(double z, int n) const;
  /// Always the finite-difference path, regardless of analytic support.
  double fd_derivative(double z, int n) const;

  bool has_analytic() const { return static_cast<bool>(analytic_); }
  /// Same function with the analytic routine dropped.
  SmoothScalarFn without_analytic() const;
  /// z -> f(z + offset).
  SmoothScalarFn shifted(double offset) const;

 private:
  std::shared_ptr<const Value> value_;
  Derivative analytic_;
};

/// Central-difference n-th derivative with two Richardson levels.
double richardson_derivative(const std::function<double(double)>& f, double z, int n);

}  // namespace ldx
