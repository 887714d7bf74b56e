#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "ldx/heston.hpp"
#include "ldx/ode.hpp"

namespace ldx {

/// Continuous affine diffusion on R_+^m x R^n (d = m + n) given by
///   F(u)   = 1/2 <u, a u>     + <b, u>     + c
///   R_i(u) = 1/2 <u, alpha_i u> + <beta_i, u> + gamma_i.
struct AffineDiffusion {
  int d = 0;
  int m = 0;
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  double c = 0.0;
  std::vector<Eigen::MatrixXd> alpha;
  std::vector<Eigen::VectorXd> beta;
  std::vector<double> gamma;

  /// Zero-initialised model of dimension d with m nonnegative coordinates.
  static AffineDiffusion zeros(int d, int m);

  double F(const Eigen::VectorXd& u) const;
  Eigen::VectorXd R(const Eigen::VectorXd& u) const;

  /// Model with fields eps^2 F(u/eps), eps^2 R(u/eps).
  AffineDiffusion scaled(double eps) const;

  /// Shapes, symmetry, positive semidefiniteness of a and of
  /// A(x) = a + sum x_i alpha_i, and C(x) = c + sum x_i gamma_i <= 0, the last
  /// two on `samples` pseudo-random points of the state space.
  /// Throws DomainError on the first violation.
  void validate(int samples = 100) const;
};

/// Heston log-price embedded with state order (v, x).
AffineDiffusion heston_embedding(const HestonParams& p);

struct RiccatiSolution {
  Eigen::VectorXd psi;
  double phi = 0.0;
  OdeStats stats;
  std::optional<double> blow_up_time;
};

/// psi' = R(psi), phi' = F(psi), psi(0) = u, phi(0) = 0, up to time T.
/// Throws BlowUp when |psi| grows past the blow-up threshold.
RiccatiSolution solve_riccati(const AffineDiffusion& model, const Eigen::VectorXd& u, double T,
                              const OdeOptions& opts = {});

struct Homogenized {
  Eigen::VectorXd psi;
  double phi = 0.0;
};

/// (eps psi(u/eps, eps t), eps phi(u/eps, eps t)).
Homogenized homogenized(const AffineDiffusion& model, const Eigen::VectorXd& u, double eps,
                        double t, const OdeOptions& opts = {});
/// The same pair from integrating the scaled fields directly.
Homogenized homogenized_direct(const AffineDiffusion& model, const Eigen::VectorXd& u,
                               double eps, double t, const OdeOptions& opts = {});

struct SeriesOptions {
  double eps0 = 0.05;   ///< largest eps in the fit grid
  int grid = 8;         ///< eps0 * 2^{-j}, j < grid
  int fit_degree = 4;   ///< polynomial degree of the remainder fit
  OdeOptions ode{1e-13, 0.0, 1'000'000, 1e8};
};

struct HomogenizationSeries {
  /// psi_coeffs[n] and phi_coeffs[n] multiply eps^n, n = 0..N.
  std::vector<Eigen::VectorXd> psi_coeffs;
  std::vector<double> phi_coeffs;
  /// First-order coefficient recovered from the eps-grid fit alone.
  Eigen::VectorXd psi1_fit;
  double phi1_fit = 0.0;
  double fit_condition = 0.0;

  /// phi_n + <x, psi_n>.
  double lambda_hat(int n, const Eigen::VectorXd& x) const;
};

/// Zeroth and first coefficients from their own ODEs (quadratic part, then
/// the linear variational equation); higher ones by a least-squares fit in eps.
HomogenizationSeries series(const AffineDiffusion& model, const Eigen::VectorXd& u, double t,
                            int N, const SeriesOptions& opts = {});

}  // namespace ldx
