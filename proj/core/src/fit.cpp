#include "ldx/fit.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "ldx/errors.hpp"

namespace ldx {

PolyFit polyfit(const std::vector<double>& x, const std::vector<double>& y, int degree,
                double max_condition) {
  if (x.size() != y.size()) throw DomainError("polyfit: x and y differ in length");
  if (degree < 0 || static_cast<int>(x.size()) < degree + 1)
    throw DomainError("polyfit: not enough points for the requested degree");
  const int n = static_cast<int>(x.size());
  const int m = degree + 1;
  Eigen::MatrixXd v(n, m);
  Eigen::VectorXd rhs(n);
  for (int i = 0; i < n; ++i) {
    double p = 1.0;
    for (int k = 0; k < m; ++k) {
      v(i, k) = p;
      p *= x[i];
    }
    rhs(i) = y[i];
  }
  Eigen::VectorXd scale(m);
  for (int k = 0; k < m; ++k) {
    scale(k) = v.col(k).norm();
    if (scale(k) == 0.0) scale(k) = 1.0;
    v.col(k) /= scale(k);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(v, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cond = sv(m - 1) > 0 ? sv(0) / sv(m - 1) : INFINITY;
  if (!(cond <= max_condition)) {
    std::ostringstream os;
    os << "Vandermonde condition number " << cond << " exceeds " << max_condition;
    throw FitIllConditioned(os.str());
  }
  Eigen::VectorXd c = svd.solve(rhs);
  PolyFit out;
  out.condition = cond;
  out.coeffs.resize(m);
  for (int k = 0; k < m; ++k) out.coeffs[k] = c(k) / scale(k);
  out.residual_rms = std::sqrt((v * c - rhs).squaredNorm() / n);
  return out;
}

SlopeFit loglog_slope(const std::vector<double>& x, const std::vector<double>& residual,
                      double noise_floor) {
  if (x.size() != residual.size()) throw DomainError("loglog_slope: length mismatch");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = std::abs(residual[i]);
    if (r > noise_floor && r > 0.0) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(r));
    }
  }
  SlopeFit out;
  out.points = static_cast<int>(lx.size());
  if (lx.size() < 2) {
    out.exact = true;
    return out;
  }
  const PolyFit f = polyfit(lx, ly, 1, INFINITY);
  out.intercept = f.coeffs[0];
  out.slope = f.coeffs[1];
  return out;
}

std::vector<double> dyadic_grid(double start, int count) {
  std::vector<double> g;
  g.reserve(count);
  for (int j = 0; j < count; ++j) g.push_back(std::ldexp(start, -j));
  return g;
}

}  // namespace ldx
