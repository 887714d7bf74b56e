#include "ldx/ode.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ldx/errors.hpp"

namespace ldx {

namespace {

constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// Difference between the 5th and embedded 4th order weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

OdeResult integrate_ode(const OdeRhs& rhs, const Eigen::VectorXd& y0, double T,
                        const OdeOptions& opts) {
  if (!(T > 0)) throw DomainError("integration horizon must be positive");
  if (!(opts.tol > 0)) throw DomainError("tolerance must be positive");
  const Eigen::Index n = y0.size();
  Eigen::VectorXd y = y0, ynew(n), k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n),
                  err(n);
  OdeResult res;
  double t = 0.0;
  double h = opts.initial_step > 0 ? opts.initial_step : 1e-3 * T;
  rhs(t, y, k1);
  double err_prev = 1e-4;

  while (t < T) {
    if (res.stats.steps + res.stats.rejected >= opts.max_steps) {
      std::ostringstream os;
      os << "step budget of " << opts.max_steps << " exhausted at t = " << t;
      throw StepUnderflow(os.str());
    }
    bool last = false;
    if (t + h >= T) {
      h = T - t;
      last = true;
    }
    if (!last && h <= 1e-14 * std::max(T, std::abs(t))) {
      std::ostringstream os;
      os << "step size " << h << " underflowed at t = " << t;
      throw StepUnderflow(os.str());
    }
    tmp = y + h * a21 * k1;
    rhs(t + c2 * h, tmp, k2);
    tmp = y + h * (a31 * k1 + a32 * k2);
    rhs(t + c3 * h, tmp, k3);
    tmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    rhs(t + c4 * h, tmp, k4);
    tmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    rhs(t + c5 * h, tmp, k5);
    tmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    rhs(t + h, tmp, k6);
    ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    rhs(t + h, ynew, k7);
    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double norm = 0.0;
    bool finite = ynew.allFinite();
    for (Eigen::Index i = 0; i < n && finite; ++i) {
      const double sc = opts.tol * (1.0 + std::max(std::abs(y(i)), std::abs(ynew(i))));
      norm = std::max(norm, std::abs(err(i)) / sc);
    }
    if (!finite || !std::isfinite(norm)) norm = 1e10;

    if (norm <= 1.0) {
      t = last ? T : t + h;
      y = ynew;
      k1 = k7;
      ++res.stats.steps;
      if (y.lpNorm<Eigen::Infinity>() > opts.blowup_norm) {
        std::ostringstream os;
        os << "solution norm exceeded " << opts.blowup_norm << " at t = " << t;
        throw BlowUp(t, os.str());
      }
      // PI step-size control.
      const double nn = std::max(norm, 1e-10);
      double fac = 0.9 * std::pow(nn, -0.7 / 5) * std::pow(err_prev, 0.4 / 5);
      fac = std::clamp(fac, 0.2, 5.0);
      err_prev = nn;
      h *= fac;
    } else {
      ++res.stats.rejected;
      h *= std::max(0.2, 0.9 * std::pow(norm, -0.2));
      if (!finite && y.lpNorm<Eigen::Infinity>() > 1e-3 * opts.blowup_norm) {
        std::ostringstream os;
        os << "solution became non-finite near t = " << t;
        throw BlowUp(t, os.str());
      }
    }
  }
  res.y = y;
  res.stats.final_tol = opts.tol;
  return res;
}

}  // namespace ldx
