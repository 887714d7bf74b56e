#include "ldx/heston.hpp"

#include <limits>
#include <numbers>
#include <sstream>

#include "ldx/errors.hpp"
#include "ldx/jet.hpp"

namespace ldx {

namespace {

using cd = std::complex<double>;

void require_domain(const HestonParams& p, double u) {
  const DomainInfo d = domain(p);
  if (!d.contains(u)) {
    std::ostringstream os;
    os.precision(17);
    os << "u = " << u << " outside the Heston domain (" << d.u_min << ", " << d.u_max << ")";
    throw DomainError(os.str());
  }
}

constexpr double kSmallU = 1e-4;

// Odd/even least-squares fit a u + b u^2 through lambda2 at +-1e-4, +-2e-4.
std::pair<double, double> lambda2_small_fit(const HestonParams& p) {
  double num_a = 0, den_a = 0, num_b = 0, den_b = 0;
  for (double h : {kSmallU, 2 * kSmallU}) {
    for (double u : {-h, h}) {
      const double y = heston_expr::lambda2(p, u);
      num_a += u * y;
      den_a += u * u;
      num_b += u * u * y;
      den_b += u * u * u * u;
    }
  }
  return {num_a / den_a, num_b / den_b};
}

}  // namespace

void HestonParams::validate() const {
  std::ostringstream os;
  if (!(sigma > 0)) os << "sigma must be > 0; ";
  if (!(rho > -1 && rho < 1)) os << "rho must lie in (-1, 1); ";
  if (!(a >= 0)) os << "a must be >= 0; ";
  if (!(b >= 0)) os << "b must be >= 0; ";
  if (!(v0 > 0)) os << "v0 must be > 0; ";
  for (double v : {r, k, a, b, sigma, rho, x0, v0})
    if (!std::isfinite(v)) {
      os << "parameters must be finite; ";
      break;
    }
  if (!os.str().empty()) throw DomainError("invalid Heston parameters: " + os.str());
}

DomainInfo domain(const HestonParams& p) {
  p.validate();
  // S_hat(u) = sin(theta u + arccos rho); its nearest roots around 0.
  const double th = p.theta();
  const double phase = std::acos(p.rho);
  DomainInfo d{-phase / th, (std::numbers::pi - phase) / th};
  const double q = std::sqrt(1 - p.rho * p.rho);
  for (double* e : {&d.u_min, &d.u_max}) {
    for (int i = 0; i < 3; ++i) {
      const double s = q * std::cos(th * *e) + p.rho * std::sin(th * *e);
      const double ds = th * (-q * std::sin(th * *e) + p.rho * std::cos(th * *e));
      if (ds == 0) break;
      *e -= s / ds;
    }
  }
  return d;
}

double s_ut(const HestonParams& p, double u, double t) {
  const double s = p.sigma, rho = p.rho;
  const double arg = u * u * (1 - rho * rho) * s * s - 2 * t * u * (p.k * s * s + p.b * rho * s) -
                     t * t * p.b * p.b;
  return arg >= 0 ? 0.5 * std::sqrt(arg) : std::numeric_limits<double>::quiet_NaN();
}

MgfComponents mgf_components(const HestonParams& p, double u, double t) {
  p.validate();
  if (!(t > 0)) throw DomainError("t must be positive");
  if (u == 0) return {0.0, 0.0};
  const double s = p.sigma;
  const double A = p.b - p.rho * s * u;
  const double c = p.k * u + 0.5 * u * u;
  // Written through cosh(dt/2) and sinh(dt/2)/d, both even in d, so the
  // choice of square-root branch cannot matter.
  const double d2 = A * A - 2 * s * s * c;
  // L(t) = cosh(dt/2) + A sinh(dt/2)/d must stay positive on all of [0, t];
  // once it has crossed zero the moment is infinite even if L(t) > 0 again.
  double t_explode = std::numeric_limits<double>::infinity();
  if (d2 < 0) {
    const double w = std::sqrt(-d2);
    t_explode = 2 * (std::numbers::pi / 2 + std::atan(A / w)) / w;
  } else if (A < 0) {
    const double dr = std::sqrt(d2);
    if (dr < -A) t_explode = dr > 0 ? 2 * std::atanh(dr / -A) / dr : -2 / A;
  }
  if (t >= t_explode) {
    std::ostringstream os;
    os << "E exp(u X_t) is infinite for u = " << u << ", t = " << t << " (explodes at t = "
       << t_explode << ")";
    throw ExplosionRegion(os.str());
  }
  const cd d = std::sqrt(cd(d2, 0.0));
  const cd x = d * (t / 2);
  const cd ch = std::cosh(x);
  cd shd;
  if (std::abs(x) < 1e-4) {
    const cd x2 = x * x;
    shd = (t / 2) * (1.0 + x2 / 6.0 + x2 * x2 / 120.0);
  } else {
    shd = std::sinh(x) / d;
  }
  const cd L = ch + A * shd;
  const cd Dc = 2 * c * shd / L;
  const double scale = std::max(1.0, std::abs(L));
  if (std::abs(L.imag()) > 1e-9 * scale || std::abs(Dc.imag()) > 1e-9 * std::max(1.0, std::abs(Dc))) {
    std::ostringstream os;
    os << "non-real MGF components at u = " << u << ", t = " << t;
    throw BranchFault(os.str());
  }
  const double Lr = L.real();
  if (!(Lr > 1e-12) || !std::isfinite(Lr)) {
    std::ostringstream os;
    os << "MGF denominator " << Lr << " at u = " << u << ", t = " << t;
    throw ExplosionRegion(os.str());
  }
  MgfComponents m;
  m.D = Dc.real();
  m.C = p.r * u * t + p.a / (s * s) * (A * t - 2 * std::log(Lr));
  return m;
}

double lambda_scaled_complex(const HestonParams& p, double u, double t) {
  if (u == 0) return 0.0;
  const MgfComponents m = mgf_components(p, -u / t, t);
  return t * m.C + t * m.D * p.v0 - u * p.x0;
}

double lambda_scaled(const HestonParams& p, double u, double t) {
  p.validate();
  if (!(t > 0)) throw DomainError("t must be positive");
  if (u == 0) return 0.0;
  const double S = s_ut(p, u, t);
  if (!(S > 0)) return lambda_scaled_complex(p, u, t);
  const double s = p.sigma;
  const double B = p.b * t + p.rho * s * u;
  const double den = 2 * S * std::cos(S) + B * std::sin(S);
  if (!(den > 0)) {
    std::ostringstream os;
    os << "2 S cos S + (b t + rho sigma u) sin S = " << den << " at u = " << u << ", t = " << t;
    throw ExplosionRegion(os.str());
  }
  const double tC = -t * p.r * u + t * p.a / (s * s) * (p.b * t + p.rho * s * u - 2 * std::log(den / (2 * S)));
  const double tD = (u * u - 2 * t * p.k * u) * std::sin(S) / den;
  return tC + tD * p.v0 - u * p.x0;
}

double lambda0(const HestonParams& p, double u) {
  require_domain(p, u);
  return heston_expr::lambda0(p, u);
}

double dlambda0(const HestonParams& p, double u) {
  require_domain(p, u);
  const double th = p.theta(), rho = p.rho, q = std::sqrt(1 - rho * rho);
  const double sh = q * std::cos(th * u) + rho * std::sin(th * u);
  const double num = rho * (1 - std::cos(2 * th * u)) + q * std::sin(2 * th * u) +
                     p.sigma * (1 - rho * rho) * u;
  return p.v0 / (2 * p.sigma) * num / (sh * sh) - p.x0;
}

double d2lambda0(const HestonParams& p, double u) {
  require_domain(p, u);
  const double th = p.theta(), rho = p.rho, r2 = 1 - rho * rho, q = std::sqrt(r2);
  const double s = p.sigma;
  const double sn = std::sin(th * u), cs = std::cos(th * u);
  const double sh = q * cs + rho * sn;
  const double S = (2 * th + s * q) * (rho * q * sn + r2 * cs) +
                   2 * s * th * r2 * u * (q * sn - rho * cs);
  return p.v0 * S / (2 * s * sh * sh * sh);
}

double lambda1(const HestonParams& p, double u) {
  require_domain(p, u);
  if (u == 0) return 0.0;
  return heston_expr::lambda1(p, u);
}

double lambda2(const HestonParams& p, double u) {
  require_domain(p, u);
  if (u == 0) return 0.0;
  if (std::abs(u) < kSmallU) {
    const auto [al, be] = lambda2_small_fit(p);
    return al * u + be * u * u;
  }
  return heston_expr::lambda2(p, u);
}

double dlambda2(const HestonParams& p, double u) {
  require_domain(p, u);
  if (std::abs(u) < kSmallU) {
    const auto [al, be] = lambda2_small_fit(p);
    return al + 2 * be * u;
  }
  return heston_expr::lambda2(p, Jet<1>::variable(u)).derivative(1);
}

double ustar_heston(const HestonParams& p, double x) {
  const DomainInfo dom = domain(p);
  auto f = [&](double u) { return dlambda0(p, u) + x; };
  double lo = std::numeric_limits<double>::quiet_NaN(), hi = lo;
  for (double s = 1e-1; s >= 1e-15; s /= 10) {
    const double u = dom.u_min * (1 - s);
    if (f(u) < 0) {
      lo = u;
      break;
    }
  }
  for (double s = 1e-1; s >= 1e-15; s /= 10) {
    const double u = dom.u_max * (1 - s);
    if (f(u) > 0) {
      hi = u;
      break;
    }
  }
  if (!(lo < hi)) {
    std::ostringstream os;
    os << "cannot bracket the critical point for x = " << x;
    throw BracketFailure(os.str());
  }
  double u = 0.0;
  if (!(u > lo && u < hi)) u = 0.5 * (lo + hi);
  const double eps = std::numeric_limits<double>::epsilon();
  for (int iter = 0; iter < 250; ++iter) {
    const double fu = f(u);
    if (fu == 0) return u;
    if (fu < 0)
      lo = u;
    else
      hi = u;
    double next = 0.5 * (lo + hi);
    if (iter < 50) {
      const double fp = d2lambda0(p, u);
      const double nt = u - fu / fp;
      if (fp > 0 && nt > lo && nt < hi) next = nt;
    }
    const double step = std::abs(next - u);
    u = next;
    if (step <= 2 * eps * (1 + std::abs(u)) || hi - lo <= 4 * eps * (1 + std::abs(u))) break;
  }
  return u;
}

TaylorTable taylor_table(const HestonParams& p, double u, bool use_abs_u) {
  require_domain(p, u);
  if (u == 0) throw DomainError("the Taylor table needs u != 0");
  const double s = p.sigma, rho = p.rho, b = p.b, k = p.k;
  const double r2 = 1 - rho * rho, q = std::sqrt(r2);
  const double K = k * s + b * rho;
  const double G = b * b * r2 + K * K;
  const double au = use_abs_u ? std::abs(u) : u;
  TaylorTable tt{};
  tt.c0 = au * s * q / 2;
  tt.c1 = -(au / u) * K / (2 * q);
  tt.c2 = -(au / (u * u)) * G / (2 * s * r2 * q);
  const double sc = std::sin(tt.c0), cc = std::cos(tt.c0);
  tt.U0 = sc;
  tt.U1 = tt.c1 * cc;
  tt.U2 = tt.c2 * cc - tt.c1 * tt.c1 * sc;
  tt.W0 = cc;
  tt.W1 = -tt.c1 * sc;
  tt.W2 = -(tt.c2 * sc + tt.c1 * tt.c1 * cc);
  const double rsu = rho * s * u;
  tt.V0 = 2 * tt.c0 * tt.W0 + rsu * tt.U0;
  tt.V1 = 2 * tt.c0 * tt.W1 + 2 * tt.c1 * tt.W0 + b * tt.U0 + rsu * tt.U1;
  tt.V2 = 2 * tt.c0 * tt.W2 + 4 * tt.c1 * tt.W1 + 2 * tt.c2 * tt.W0 + 2 * b * tt.U1 + rsu * tt.U2;
  const double V0 = tt.V0, V1 = tt.V1, V2 = tt.V2, U0 = tt.U0, U1 = tt.U1, U2 = tt.U2;
  tt.Q = u * u * U2 * V0 * V0 - 4 * k * u * U1 * V0 * V0 - u * u * U0 * V0 * V2 -
         2 * u * u * U1 * V0 * V1 + 4 * k * u * U0 * V0 * V1 + 2 * u * u * U0 * V1 * V1;
  tt.T0 = u * u * U0 / V0;
  tt.T1 = (u * u * U1 * V0 - 2 * k * u * U0 * V0 - u * u * U0 * V1) / (V0 * V0);
  tt.T2 = tt.Q / (V0 * V0 * V0);
  tt.L0 = V0 / (2 * tt.c0);
  tt.L1 = (tt.c0 * V1 - tt.c1 * V0) / (2 * tt.c0 * tt.c0);
  tt.E1 = -u * s * K / 2;
  tt.E2 = -2 * k * s * q + K / q;
  tt.E3 = -(2 * k * rho * s + b + u * s * K / 2);
  const double th = u * p.theta();
  const double sn = std::sin(th), cs = std::cos(th);
  tt.I0 = -u * rho * s * q * K * cs + (2 * b + 2 * rho * k * s + u * s * K * r2) * sn;
  tt.I1 = -G / (2 * r2) + K * K / r2 * sn * sn + (G / (s * r2 * q * u) + b * K / q) * sn * cs;
  tt.I2 = 2 * (2 * k * s * q - (2 + rho * s * u) * K / (2 * q)) * cs +
          2 * (2 * k * rho * s + b + u * s * K / 2) * sn;
  tt.I3 = u * s * K / 2 + b * sn * sn - K / q * sn * cs;
  return tt;
}

double lambda1_from_table(const HestonParams& p, const TaylorTable& tt, double u) {
  const double s = p.sigma;
  return (p.a * p.rho / s - p.r) * u - 2 * p.a / (s * s) * std::log(tt.V0 / (2 * tt.c0)) +
         p.v0 * tt.T1;
}

double lambda2_from_table(const HestonParams& p, const TaylorTable& tt) {
  const double s = p.sigma;
  return p.a * p.b / (s * s) -
         2 * p.a / (s * s) * (tt.c0 * tt.V1 - tt.c1 * tt.V0) / (tt.c0 * tt.V0) +
         p.v0 / 2 * tt.Q / (tt.V0 * tt.V0 * tt.V0);
}

CGFExpansion heston_cgf(const HestonParams& p) {
  const DomainInfo d = domain(p);
  CGFExpansion c;
  c.u_lo = d.u_min;
  c.u_hi = d.u_max;
  c.lambda0 = SmoothScalarFn([p](double u) { return lambda0(p, u); },
                             [p](double u, int n) {
                               if (n == 1) return dlambda0(p, u);
                               if (n == 2) return d2lambda0(p, u);
                               require_domain(p, u);
                               return heston_expr::lambda0(p, Jet5::variable(u)).derivative(n);
                             });
  c.lambda1 = SmoothScalarFn([p](double u) { return lambda1(p, u); },
                             [p](double u, int n) {
                               require_domain(p, u);
                               return heston_expr::lambda1(p, Jet5::variable(u)).derivative(n);
                             });
  c.lambda2 = SmoothScalarFn([p](double u) { return lambda2(p, u); },
                             [p](double u, int n) {
                               if (n == 1) return dlambda2(p, u);
                               require_domain(p, u);
                               if (std::abs(u) < kSmallU) {
                                 const auto [al, be] = lambda2_small_fit(p);
                                 return n == 2 ? 2 * be : 0.0;
                               }
                               return heston_expr::lambda2(p, Jet5::variable(u)).derivative(n);
                             });
  return c;
}

}  // namespace ldx
