#include "ldx/affine.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "ldx/errors.hpp"
#include "ldx/fit.hpp"

namespace ldx {

namespace {

bool is_psd(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) return true;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return es.eigenvalues().minCoeff() >= -1e-12 * scale;
}

void check_shape(bool ok, const std::string& what) {
  if (!ok) throw DomainError("affine model: " + what);
}

}  // namespace

AffineDiffusion AffineDiffusion::zeros(int d, int m) {
  if (d <= 0 || m < 0 || m > d) throw DomainError("affine model needs d > 0 and 0 <= m <= d");
  AffineDiffusion md;
  md.d = d;
  md.m = m;
  md.a = Eigen::MatrixXd::Zero(d, d);
  md.b = Eigen::VectorXd::Zero(d);
  md.alpha.assign(d, Eigen::MatrixXd::Zero(d, d));
  md.beta.assign(d, Eigen::VectorXd::Zero(d));
  md.gamma.assign(d, 0.0);
  return md;
}

double AffineDiffusion::F(const Eigen::VectorXd& u) const {
  return 0.5 * u.dot(a * u) + b.dot(u) + c;
}

Eigen::VectorXd AffineDiffusion::R(const Eigen::VectorXd& u) const {
  Eigen::VectorXd r(d);
  for (int i = 0; i < d; ++i) r(i) = 0.5 * u.dot(alpha[i] * u) + beta[i].dot(u) + gamma[i];
  return r;
}

AffineDiffusion AffineDiffusion::scaled(double eps) const {
  if (!(eps > 0)) throw DomainError("eps must be positive");
  AffineDiffusion s = *this;
  s.b *= eps;
  s.c *= eps * eps;
  for (int i = 0; i < d; ++i) {
    s.beta[i] *= eps;
    s.gamma[i] *= eps * eps;
  }
  return s;
}

void AffineDiffusion::validate(int samples) const {
  check_shape(d > 0 && m >= 0 && m <= d, "need d > 0 and 0 <= m <= d");
  check_shape(a.rows() == d && a.cols() == d, "a must be d x d");
  check_shape(b.size() == d, "b must have length d");
  check_shape(static_cast<int>(alpha.size()) == d && static_cast<int>(beta.size()) == d &&
                  static_cast<int>(gamma.size()) == d,
              "alpha, beta, gamma need one entry per coordinate");
  for (int i = 0; i < d; ++i) {
    check_shape(alpha[i].rows() == d && alpha[i].cols() == d, "alpha_i must be d x d");
    check_shape(beta[i].size() == d, "beta_i must have length d");
    check_shape((alpha[i] - alpha[i].transpose()).cwiseAbs().maxCoeff() <= 1e-12,
                "alpha_i must be symmetric");
  }
  check_shape((a - a.transpose()).cwiseAbs().maxCoeff() <= 1e-12, "a must be symmetric");
  check_shape(is_psd(a), "a must be positive semidefinite");

  std::mt19937_64 gen(0x5eedULL);
  std::uniform_real_distribution<double> pos(0.0, 10.0), any(-10.0, 10.0);
  for (int s = 0; s < samples; ++s) {
    Eigen::VectorXd x(d);
    for (int i = 0; i < d; ++i) x(i) = i < m ? pos(gen) : any(gen);
    Eigen::MatrixXd A = a;
    double C = c;
    for (int i = 0; i < d; ++i) {
      A += x(i) * alpha[i];
      C += x(i) * gamma[i];
    }
    if (!is_psd(A)) {
      std::ostringstream os;
      os << "A(x) is not positive semidefinite at x = " << x.transpose();
      throw DomainError("affine model: " + os.str());
    }
    if (C > 1e-12) {
      std::ostringstream os;
      os << "C(x) = " << C << " > 0 at x = " << x.transpose();
      throw DomainError("affine model: " + os.str());
    }
  }
}

AffineDiffusion heston_embedding(const HestonParams& p) {
  p.validate();
  AffineDiffusion md = AffineDiffusion::zeros(2, 1);
  md.b << p.a, p.r;
  Eigen::MatrixXd av(2, 2);
  av << p.sigma * p.sigma, p.rho * p.sigma, p.rho * p.sigma, 1.0;
  md.alpha[0] = av;
  md.beta[0] << -p.b, p.k;
  return md;
}

RiccatiSolution solve_riccati(const AffineDiffusion& model, const Eigen::VectorXd& u, double T,
                              const OdeOptions& opts) {
  const int d = model.d;
  if (u.size() != d) throw DomainError("u must have length d");
  auto rhs = [&model, d](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
    const Eigen::VectorXd psi = y.head(d);
    dy.head(d) = model.R(psi);
    dy(d) = model.F(psi);
  };
  Eigen::VectorXd y0(d + 1);
  y0.head(d) = u;
  y0(d) = 0.0;
  const OdeResult r = integrate_ode(rhs, y0, T, opts);
  RiccatiSolution s;
  s.psi = r.y.head(d);
  s.phi = r.y(d);
  s.stats = r.stats;
  return s;
}

Homogenized homogenized(const AffineDiffusion& model, const Eigen::VectorXd& u, double eps,
                        double t, const OdeOptions& opts) {
  if (!(eps > 0)) throw DomainError("eps must be positive");
  const RiccatiSolution s = solve_riccati(model, u / eps, eps * t, opts);
  return {eps * s.psi, eps * s.phi};
}

Homogenized homogenized_direct(const AffineDiffusion& model, const Eigen::VectorXd& u,
                               double eps, double t, const OdeOptions& opts) {
  const RiccatiSolution s = solve_riccati(model.scaled(eps), u, t, opts);
  return {s.psi, s.phi};
}

double HomogenizationSeries::lambda_hat(int n, const Eigen::VectorXd& x) const {
  if (n < 0 || n >= static_cast<int>(phi_coeffs.size()))
    throw DomainError("series coefficient index out of range");
  return phi_coeffs[n] + x.dot(psi_coeffs[n]);
}

HomogenizationSeries series(const AffineDiffusion& model, const Eigen::VectorXd& u, double t,
                            int N, const SeriesOptions& opts) {
  const int d = model.d;
  if (u.size() != d) throw DomainError("u must have length d");
  if (N < 1) throw DomainError("series order must be at least 1");

  // State (psi0, phi0, psi1, phi1): quadratic flow plus its first variation
  // in eps, driven by the linear parts of the fields.
  auto rhs = [&model, d](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
    const Eigen::VectorXd p0 = y.head(d);
    const Eigen::VectorXd p1 = y.segment(d + 1, d);
    for (int i = 0; i < d; ++i) {
      const Eigen::VectorXd ap0 = model.alpha[i] * p0;
      dy(i) = 0.5 * p0.dot(ap0);
      dy(d + 1 + i) = ap0.dot(p1) + model.beta[i].dot(p0);
    }
    const Eigen::VectorXd ap0 = model.a * p0;
    dy(d) = 0.5 * p0.dot(ap0);
    dy(2 * d + 1) = ap0.dot(p1) + model.b.dot(p0);
  };
  Eigen::VectorXd y0 = Eigen::VectorXd::Zero(2 * d + 2);
  y0.head(d) = u;
  const OdeResult r = integrate_ode(rhs, y0, t, opts.ode);

  // The zeroth coefficient is the flow of the quadratic part alone; taking it
  // from the same integrator as the eps-grid keeps the fitted remainders clean
  // when the model has no lower-order terms.
  AffineDiffusion quad = model;
  quad.b.setZero();
  quad.c = 0.0;
  for (int i = 0; i < d; ++i) {
    quad.beta[i].setZero();
    quad.gamma[i] = 0.0;
  }
  const RiccatiSolution q0 = solve_riccati(quad, u, t, opts.ode);

  HomogenizationSeries out;
  out.psi_coeffs.push_back(q0.psi);
  out.phi_coeffs.push_back(q0.phi);
  out.psi_coeffs.push_back(r.y.segment(d + 1, d));
  out.phi_coeffs.push_back(r.y(2 * d + 1));

  const std::vector<double> grid = dyadic_grid(opts.eps0, opts.grid);
  std::vector<Eigen::VectorXd> hp;
  std::vector<double> hf;
  for (double e : grid) {
    const Homogenized h = homogenized_direct(model, u, e, t, opts.ode);
    hp.push_back(h.psi);
    hf.push_back(h.phi);
  }

  const int deg = std::max(opts.fit_degree, N - 2);
  std::vector<double> rem(grid.size()), rem1(grid.size());
  out.psi1_fit.resize(d);
  std::vector<Eigen::VectorXd> higher(std::max(0, N - 1), Eigen::VectorXd::Zero(d));
  std::vector<double> higher_phi(std::max(0, N - 1), 0.0);
  auto fit_component = [&](auto value, double c0, double c1, double& first, auto store) {
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double e = grid[j];
      rem1[j] = (value(j) - c0) / e;
      rem[j] = (value(j) - c0 - e * c1) / (e * e);
    }
    first = polyfit(grid, rem1, deg + 1).coeffs[0];
    if (N >= 2) {
      const PolyFit f = polyfit(grid, rem, deg);
      out.fit_condition = std::max(out.fit_condition, f.condition);
      for (int n = 2; n <= N; ++n) store(n, n - 2 < static_cast<int>(f.coeffs.size()) ? f.coeffs[n - 2] : 0.0);
    }
  };
  for (int i = 0; i < d; ++i) {
    double first = 0.0;
    fit_component([&](std::size_t j) { return hp[j](i); }, out.psi_coeffs[0](i),
                  out.psi_coeffs[1](i), first,
                  [&](int n, double v) { higher[n - 2](i) = v; });
    out.psi1_fit(i) = first;
  }
  fit_component([&](std::size_t j) { return hf[j]; }, out.phi_coeffs[0], out.phi_coeffs[1],
                out.phi1_fit, [&](int n, double v) { higher_phi[n - 2] = v; });
  for (int n = 2; n <= N; ++n) {
    out.psi_coeffs.push_back(higher[n - 2]);
    out.phi_coeffs.push_back(higher_phi[n - 2]);
  }
  return out;
}

}  // namespace ldx
