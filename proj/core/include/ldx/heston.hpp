#pragma once

#include <cmath>
#include <complex>

#include "ldx/cgf.hpp"

namespace ldx {

/// dX = (r + k V) dt + sqrt(V) dW1,  dV = (a - b V) dt + sigma sqrt(V) dW2,
/// d<W1, W2> = rho dt, X_0 = x0, V_0 = v0.
struct HestonParams {
  double r = 0.0;
  double k = -0.5;
  double a = 1.0;
  double b = 1.0;
  double sigma = 1.0;
  double rho = 0.0;
  double x0 = 0.0;
  double v0 = 1.0;

  double theta() const { return sigma * std::sqrt(1 - rho * rho) / 2; }
  /// Throws DomainError unless sigma > 0, |rho| < 1, a, b >= 0 and v0 > 0.
  void validate() const;
};

/// Open interval on which L0 is finite; its ends are the roots of
/// S_hat(u) = sqrt(1 - rho^2) cos(theta u) + rho sin(theta u) nearest to 0.
struct DomainInfo {
  double u_min = 0.0;
  double u_max = 0.0;
  bool contains(double u) const { return u > u_min && u < u_max; }
};

/// Coefficients of the small-t Taylor expansions behind L1 and L2 at fixed u != 0.
struct TaylorTable {
  double c0, c1, c2;  ///< S(u,t) = c0 + c1 t + c2 t^2 / 2
  double U0, U1, U2;  ///< sin S
  double W0, W1, W2;  ///< cos S
  double V0, V1, V2;  ///< 2 S cos S + (b t + rho sigma u) sin S
  double T0, T1, T2;  ///< t D(-u/t, t)
  double L0, L1;      ///< V / (2 S) to first order
  double Q;
  double E1, E2, E3;
  double I0, I1, I2, I3;
};

struct MgfComponents {
  double C = 0.0;
  double D = 0.0;
};

// Closed forms written once for any scalar type (double or Jet) so that
// derivatives of arbitrary order come out exact.
namespace heston_expr {

template <class T>
T s_hat(const HestonParams& p, const T& u) {
  using std::cos;
  using std::sin;
  const double q = std::sqrt(1 - p.rho * p.rho);
  const T th = u * p.theta();
  return q * cos(th) + p.rho * sin(th);
}

template <class T>
T lambda0(const HestonParams& p, const T& u) {
  using std::sin;
  const T th = u * p.theta();
  return p.v0 * u * sin(th) / (p.sigma * s_hat(p, u)) - p.x0 * u;
}

template <class T>
T lambda1(const HestonParams& p, const T& u) {
  using std::cos;
  using std::log;
  using std::sin;
  const double s = p.sigma, rho = p.rho, q = std::sqrt(1 - rho * rho);
  const double K = p.k * s + p.b * rho;
  const T th = u * p.theta();
  const T cs = cos(th), sn = sin(th);
  const T sh = q * cs + rho * sn;
  const T e1 = -u * (s * K / 2);
  const double e2 = -2 * p.k * s * q + K / q;
  const T e3 = -(2 * p.k * rho * s + p.b + u * (s * K / 2));
  return (p.a * rho / s - p.r) * u - 2 * p.a / (s * s) * log(sh / q) +
         p.v0 * (e1 * cs * cs + e2 * cs * sn + e3 * sn * sn) / (s * s * sh * sh);
}

/// Valid for u != 0; the 1/u singularities are removable.
template <class T>
T lambda2(const HestonParams& p, const T& u) {
  using std::cos;
  using std::sin;
  const double s = p.sigma, rho = p.rho, b = p.b, k = p.k;
  const double r2 = 1 - rho * rho, q = std::sqrt(r2);
  const double K = k * s + b * rho;
  const double G = b * b * r2 + K * K;
  const T th = u * p.theta();
  const T cs = cos(th), sn = sin(th);
  const T sh = q * cs + rho * sn;
  const T i0 = -u * (rho * s * q * K) * cs + (2 * b + 2 * rho * k * s + u * (s * K * r2)) * sn;
  const T i1 = -G / (2 * r2) + K * K / r2 * sn * sn +
               (G / (s * r2 * q * u) + b * K / q) * sn * cs;
  const T i2 = 2 * (2 * k * s * q - (2 + rho * s * u) * K / (2 * q)) * cs +
               2 * (2 * k * rho * s + b + u * (s * K / 2)) * sn;
  const T i3 = u * (s * K / 2) + b * sn * sn - K / q * sn * cs;
  return p.a * b / (s * s) - p.a / (s * s * s * r2 * u) * i0 / sh +
         p.v0 / 2 * i1 / (s * s * sh * sh) + p.v0 / 2 * i2 * i3 / (u * s * s * s * sh * sh * sh);
}

}  // namespace heston_expr

DomainInfo domain(const HestonParams& p);

/// C(u,t), D(u,t) with E exp(u X_t) = exp(C + D v0 + u x0).
MgfComponents mgf_components(const HestonParams& p, double u, double t);

/// S(u,t); negative argument of the square root yields NaN.
double s_ut(const HestonParams& p, double u, double t);

/// Lambda(u,t) = t C(-u/t,t) + t D(-u/t,t) v0 - u x0 via the real
/// trigonometric form, falling back to the complex MGF where S^2 <= 0.
double lambda_scaled(const HestonParams& p, double u, double t);
/// Same quantity, always through mgf_components.
double lambda_scaled_complex(const HestonParams& p, double u, double t);

double lambda0(const HestonParams& p, double u);
double dlambda0(const HestonParams& p, double u);
double d2lambda0(const HestonParams& p, double u);
double lambda1(const HestonParams& p, double u);
double lambda2(const HestonParams& p, double u);
/// d/du lambda2, consistent with the small-|u| interpolation.
double dlambda2(const HestonParams& p, double u);

/// Solves L0'(u) = -x inside the domain.
double ustar_heston(const HestonParams& p, double x);

/// use_abs_u = false replaces |u| by u in c0, c1, c2.
TaylorTable taylor_table(const HestonParams& p, double u, bool use_abs_u = true);
/// L1 and L2 assembled from the Taylor coefficients.
double lambda1_from_table(const HestonParams& p, const TaylorTable& tt, double u);
double lambda2_from_table(const HestonParams& p, const TaylorTable& tt);

/// The (L0, L1, L2) triple with exact derivatives, on the Heston domain.
CGFExpansion heston_cgf(const HestonParams& p);

}  // namespace ldx
