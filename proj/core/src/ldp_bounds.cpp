#include "ldx/ldp_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ldx/errors.hpp"

namespace ldx {

std::string to_string(BoundDirection d) {
  return d == BoundDirection::Upper ? "upper" : "lower";
}

double BoundReport::value(double eps) const {
  if (!(eps > 0)) throw DomainError("eps must be positive");
  double v = std::exp(-exponent / eps) * prefactor * (1 + eps * correction);
  if (direction == BoundDirection::Lower) v *= -std::expm1(-gap_gamma / eps);
  return v;
}

double BoundReport::log_value(double eps) const {
  if (!(eps > 0)) throw DomainError("eps must be positive");
  double v = -exponent / eps + std::log(prefactor) + std::log1p(eps * correction);
  if (direction == BoundDirection::Lower) v += std::log(-std::expm1(-gap_gamma / eps));
  return v;
}

double tilted_rate(const RateData& rd, double x, double y) {
  return rd.rate(y) - rd.rate(x) + rd.ustar(x) * (y - x);
}

namespace {

BoundReport base_report(const RateData& rd, double a_minus, double a_plus, double x) {
  BoundReport r;
  r.x = x;
  r.a_minus = a_minus;
  r.a_plus = a_plus;
  r.ustar = rd.ustar(x);
  if (!rd.cgf().contains(r.ustar)) {
    std::ostringstream os;
    os << "u*(" << x << ") = " << r.ustar << " outside the CGF domain";
    throw DomainError(os.str());
  }
  r.ustar_nonnegative = r.ustar >= 0;
  r.rate = rd.rate(x);
  r.prefactor = std::exp(rd.cgf().lambda1(r.ustar));
  r.correction = rd.cgf().lambda2(r.ustar);
  return r;
}

}  // namespace

GapConstant gap_constant(const RateData& rd, double a_minus, double a_plus, double x) {
  if (!(a_minus < a_plus)) throw DomainError("A must satisfy a- < a+");
  if (!(x >= a_minus && x <= a_plus)) {
    std::ostringstream os;
    os << "x = " << x << " not in [" << a_minus << ", " << a_plus << "]";
    throw DomainError(os.str());
  }
  double delta = std::min(tilted_rate(rd, x, a_minus), tilted_rate(rd, x, a_plus));
  // Convexity puts the infimum at an endpoint; the scan only guards against
  // inputs where that fails.
  const double w = a_plus - a_minus;
  for (int j = 1; j <= 32; ++j) {
    const double s = w * j / 32.0;
    for (double y : {a_minus - s, a_plus + s}) {
      try {
        delta = std::min(delta, tilted_rate(rd, x, y));
      } catch (const BracketFailure&) {
      }
    }
  }
  const double tol = 1e-12 * (1 + rd.rate(x));
  if (!(delta > tol)) {
    std::ostringstream os;
    os << "delta_A = " << delta << " for x = " << x << " in (" << a_minus << ", " << a_plus
       << ")";
    throw GapVanishes(os.str());
  }
  return {delta, delta / 2};
}

BoundReport upper_bound(const RateData& rd, double a_minus, double a_plus, double x) {
  if (!(a_minus <= a_plus)) throw DomainError("A must satisfy a- <= a+");
  if (!(x >= a_minus && x <= a_plus)) {
    std::ostringstream os;
    os << "x = " << x << " not in [" << a_minus << ", " << a_plus << "]";
    throw DomainError(os.str());
  }
  BoundReport r = base_report(rd, a_minus, a_plus, x);
  r.direction = BoundDirection::Upper;
  const double xi = r.ustar_nonnegative ? a_plus : a_minus;
  r.exponent = r.rate - r.ustar * (xi - x);
  return r;
}

BoundReport lower_bound(const RateData& rd, double a_minus, double a_plus, double x) {
  BoundReport r = base_report(rd, a_minus, a_plus, x);
  r.direction = BoundDirection::Lower;
  const GapConstant g = gap_constant(rd, a_minus, a_plus, x);
  r.gap_delta = g.delta;
  r.gap_gamma = g.gamma;
  const double w = r.ustar_nonnegative ? x - a_minus : a_plus - x;
  r.exponent = r.rate + std::abs(r.ustar) * w;
  return r;
}

}  // namespace ldx
