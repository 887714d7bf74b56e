#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "ldx/heston.hpp"

namespace ldx {

/// Philox4x32-10 counter-based generator (Salmon et al.).
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter ctr, Key key);
};

/// Normal draws for one simulated path; the stream is fully determined by
/// (seed, stream index) and the draw position.
class PathStream {
 public:
  PathStream(std::uint64_t seed, std::uint64_t stream, bool negate = false);
  /// Two independent standard normals.
  std::array<double, 2> normal_pair();

 private:
  Philox4x32::Key key_;
  std::uint64_t stream_;
  std::uint32_t counter_ = 0;
  double sign_;
};

struct MCConfig {
  long n_paths = 100000;
  int n_steps = 200;
  std::uint64_t seed = 20240607;
  bool antithetic = true;
  /// Worker threads; 0 reads LDX_THREADS and falls back to the hardware count.
  int threads = 0;
};

struct EmpiricalEstimate {
  double value = 0.0;
  double std_error = 0.0;
  long n = 0;
};

/// Resolves MCConfig::threads.
int resolve_threads(int requested);

/// Terminal log-prices X_eps under full-truncation Euler. Identical for any
/// number of worker threads.
std::vector<double> simulate_heston(const HestonParams& p, double eps, const MCConfig& cfg);

/// Fraction of samples inside the open interval (a_minus, a_plus).
EmpiricalEstimate empirical_probability(const std::vector<double>& samples, double a_minus,
                                        double a_plus);

/// Sample mean of exp(u X) with its standard error.
EmpiricalEstimate empirical_mgf(const std::vector<double>& samples, double u);

struct ExpansionEstimate {
  double lambda0 = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double residual_rms = 0.0;
};

/// Small-t limits of Lambda(u,t) and its first two t-derivatives, from a
/// least-squares polynomial in t over a dyadic grid of at least six points.
/// A degree above 2 only absorbs the t^3 remainder.
ExpansionEstimate extract_expansion(const std::function<double(double u, double t)>& lambda,
                                    double u, const std::vector<double>& t_grid,
                                    int degree = 3);

/// 2^-10 .. 2^-17.
std::vector<double> default_t_grid();

}  // namespace ldx
