#pragma once

#include <Eigen/Core>
#include <functional>

namespace ldx {

struct OdeOptions {
  double tol = 1e-10;           ///< mixed absolute/relative tolerance
  double initial_step = 0.0;    ///< 0 selects 1e-3 * T
  long max_steps = 1'000'000;
  double blowup_norm = 1e8;     ///< max-norm of the state that counts as blow-up
};

struct OdeStats {
  long steps = 0;
  long rejected = 0;
  double final_tol = 0.0;
};

struct OdeResult {
  Eigen::VectorXd y;
  OdeStats stats;
};

using OdeRhs = std::function<void(double t, const Eigen::VectorXd& y, Eigen::VectorXd& dy)>;

/// Dormand-Prince 5(4) from 0 to T. Throws BlowUp (with the time reached)
/// and StepUnderflow.
OdeResult integrate_ode(const OdeRhs& rhs, const Eigen::VectorXd& y0, double T,
                        const OdeOptions& opts = {});

}  // namespace ldx
