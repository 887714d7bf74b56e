#include "ldx/legendre.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ldx/errors.hpp"

namespace ldx {

std::vector<std::string> CGFExpansion::check(int samples) const {
  std::vector<std::string> out;
  if (!contains(0.0)) out.push_back("0 is not inside the domain");
  const double tol = 1e-12;
  if (contains(0.0)) {
    if (std::abs(lambda0(0.0)) > tol) out.push_back("lambda0(0) != 0");
    if (std::abs(lambda1(0.0)) > tol) out.push_back("lambda1(0) != 0");
    if (std::abs(lambda2(0.0)) > tol) out.push_back("lambda2(0) != 0");
  }
  const double lo = std::isfinite(u_lo) ? u_lo : -10.0;
  const double hi = std::isfinite(u_hi) ? u_hi : 10.0;
  double prev = -std::numeric_limits<double>::infinity();
  for (int j = 1; j <= samples; ++j) {
    const double u = lo + (hi - lo) * j / (samples + 1);
    const double g = lambda0.derivative(u, 1);
    if (!(g > prev)) {
      std::ostringstream os;
      os << "lambda0' not strictly increasing at u = " << u;
      out.push_back(os.str());
      break;
    }
    prev = g;
  }
  return out;
}

CGFExpansion CGFExpansion::gaussian(double l1_slope, double l2_const) {
  CGFExpansion c;
  c.lambda0 = SmoothScalarFn::from_generic([](auto u) { return u * u * 0.5; });
  c.lambda1 = SmoothScalarFn::from_generic([l1_slope](auto u) { return u * l1_slope; });
  c.lambda2 = SmoothScalarFn::constant(l2_const);
  return c;
}

namespace {

// Nodes on (0, end): log-spaced gaps to a finite end, log-spaced magnitudes
// toward infinity otherwise.
std::vector<double> side_nodes(double end, int count) {
  std::vector<double> v;
  v.reserve(count);
  for (int j = 0; j < count; ++j) {
    const double s = static_cast<double>(j) / (count - 1);
    if (std::isfinite(end))
      v.push_back(end * (1.0 - std::pow(10.0, -12.0 * s)));
    else
      v.push_back(std::copysign(std::pow(10.0, -6.0 + 12.0 * s), end));
  }
  return v;
}

}  // namespace

RateData::RateData(CGFExpansion cgf, int grid_nodes)
    : cgf_(std::make_shared<const CGFExpansion>(std::move(cgf))) {
  if (!cgf_->contains(0.0)) throw DomainError("0 must lie inside the CGF domain");
  const int per_side = std::max(8, grid_nodes / 2);
  std::vector<double> nodes = side_nodes(cgf_->u_lo, per_side);
  for (double u : side_nodes(cgf_->u_hi, per_side)) nodes.push_back(u);
  nodes.push_back(0.0);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  for (double u : nodes) {
    if (!cgf_->contains(u)) continue;
    double g;
    try {
      g = cgf_->lambda0.derivative(u, 1);
    } catch (const Error&) {
      continue;
    }
    if (!std::isfinite(g)) continue;
    if (!table_g_.empty() && !(g > table_g_.back())) {
      // Ties within rounding happen where lambda0' flattens toward an end of
      // the domain; only a real decrease is a violation.
      const double prev = table_g_.back();
      if (g >= prev - 1e-12 * (1 + std::abs(prev))) continue;
      std::ostringstream os;
      os << "lambda0' is not strictly increasing near u = " << u;
      throw BracketFailure(os.str());
    }
    table_u_.push_back(u);
    table_g_.push_back(g);
  }
  if (table_u_.size() < 2) throw BracketFailure("could not tabulate lambda0'");
}

double RateData::ustar(double z) const {
  const double target = -z;
  if (!(target >= table_g_.front() && target <= table_g_.back())) {
    std::ostringstream os;
    os << "cannot bracket lambda0'(u) = " << target << "; tabulated range ["
       << table_g_.front() << ", " << table_g_.back() << "]";
    throw BracketFailure(os.str());
  }
  const auto it = std::lower_bound(table_g_.begin(), table_g_.end(), target);
  std::size_t i = static_cast<std::size_t>(it - table_g_.begin());
  if (table_g_[i] == target) return table_u_[i];
  double lo = table_u_[i - 1], hi = table_u_[i];
  const double glo = table_g_[i - 1], ghi = table_g_[i];
  double u = lo + (hi - lo) * (target - glo) / (ghi - glo);
  if (!(u > lo && u < hi)) u = 0.5 * (lo + hi);

  const auto& l0 = cgf_->lambda0;
  const double eps = std::numeric_limits<double>::epsilon();
  for (int iter = 0; iter < 250; ++iter) {
    const double f = l0.derivative(u, 1) - target;
    if (f == 0.0) return u;
    if (f < 0)
      lo = u;
    else
      hi = u;
    double next;
    const double fp = iter < 50 ? l0.derivative(u, 2) : 0.0;
    if (fp > 0) {
      next = u - f / fp;
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    } else {
      next = 0.5 * (lo + hi);
    }
    const double step = std::abs(next - u);
    u = next;
    if (step <= 2 * eps * (1 + std::abs(u)) || hi - lo <= 4 * eps * (1 + std::abs(u))) break;
  }
  return u;
}

double RateData::rate(double z) const {
  const double u = ustar(z);
  return std::max(0.0, -z * u - cgf_->lambda0(u));
}

double RateData::distance(double z) const { return std::sqrt(2.0 * rate(z)); }

double RateData::zstar(double u) const {
  if (!cgf_->contains(u)) {
    std::ostringstream os;
    os << "u = " << u << " outside (" << cgf_->u_lo << ", " << cgf_->u_hi << ")";
    throw DomainError(os.str());
  }
  return -cgf_->lambda0.derivative(u, 1);
}

PhiDerivatives RateData::phi_u_derivatives(double u) const {
  if (!cgf_->contains(u)) {
    std::ostringstream os;
    os << "u = " << u << " outside the CGF domain";
    throw DomainError(os.str());
  }
  const auto& l0 = cgf_->lambda0;
  const double l2 = l0.derivative(u, 2);
  if (!(l2 > 1e-14)) {
    std::ostringstream os;
    os << "lambda0''(" << u << ") = " << l2;
    throw DegenerateCurvature(os.str());
  }
  const double l3 = l0.derivative(u, 3);
  const double l4 = l0.derivative(u, 4);
  return {1.0 / l2, l3 / (l2 * l2 * l2), (3 * l3 * l3 - l2 * l4) / std::pow(l2, 5)};
}

}  // namespace ldx
