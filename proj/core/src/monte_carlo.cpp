#include "ldx/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <thread>

#include "ldx/errors.hpp"
#include "ldx/fit.hpp"

namespace ldx {

Philox4x32::Counter Philox4x32::block(Counter ctr, Key key) {
  constexpr std::uint32_t kM0 = 0xD2511F53, kM1 = 0xCD9E8D57;
  constexpr std::uint32_t kW0 = 0x9E3779B9, kW1 = 0xBB67AE85;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * ctr[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kW0;
    key[1] += kW1;
  }
  return ctr;
}

PathStream::PathStream(std::uint64_t seed, std::uint64_t stream, bool negate)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      stream_(stream),
      sign_(negate ? -1.0 : 1.0) {}

std::array<double, 2> PathStream::normal_pair() {
  const auto out = Philox4x32::block(
      {counter_++, 0u, static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)},
      key_);
  // Two 53-bit uniforms in (0, 1], then Box-Muller.
  const std::uint64_t a = (static_cast<std::uint64_t>(out[0]) << 21) ^ (out[1] >> 11);
  const std::uint64_t b = (static_cast<std::uint64_t>(out[2]) << 21) ^ (out[3] >> 11);
  const double u1 = (static_cast<double>(a & ((1ULL << 53) - 1)) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(b & ((1ULL << 53) - 1)) * 0x1.0p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double ang = 2.0 * std::numbers::pi * u2;
  return {sign_ * r * std::cos(ang), sign_ * r * std::sin(ang)};
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("LDX_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<double> simulate_heston(const HestonParams& p, double eps, const MCConfig& cfg) {
  if (!(eps > 0)) throw DomainError("eps must be positive");
  if (cfg.n_paths <= 0 || cfg.n_steps <= 0) throw DomainError("MC needs positive paths and steps");
  if (!(p.sigma >= 0) || !(p.rho >= -1 && p.rho <= 1) || !(p.v0 >= 0))
    throw DomainError("invalid Heston parameters for simulation");
  std::vector<double> out(static_cast<std::size_t>(cfg.n_paths));
  const double dt = eps / cfg.n_steps;
  const double sdt = std::sqrt(dt);
  const double rc = std::sqrt(std::max(0.0, 1 - p.rho * p.rho));

  auto run_range = [&](long begin, long end) {
    for (long i = begin; i < end; ++i) {
      const bool anti = cfg.antithetic && (i % 2 == 1);
      const std::uint64_t stream = cfg.antithetic ? static_cast<std::uint64_t>(i / 2) : static_cast<std::uint64_t>(i);
      PathStream rng(cfg.seed, stream, anti);
      double x = p.x0, v = p.v0;
      for (int s = 0; s < cfg.n_steps; ++s) {
        const auto z = rng.normal_pair();
        const double vp = std::max(v, 0.0);
        const double sv = std::sqrt(vp) * sdt;
        x += (p.r + p.k * vp) * dt + sv * z[0];
        v += (p.a - p.b * vp) * dt + p.sigma * sv * (p.rho * z[0] + rc * z[1]);
      }
      out[static_cast<std::size_t>(i)] = x;
    }
  };

  const int threads = std::min<long>(resolve_threads(cfg.threads), cfg.n_paths);
  if (threads <= 1) {
    run_range(0, cfg.n_paths);
    return out;
  }
  std::vector<std::thread> pool;
  const long chunk = (cfg.n_paths + threads - 1) / threads;
  for (int w = 0; w < threads; ++w) {
    const long begin = w * chunk;
    const long end = std::min(cfg.n_paths, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(run_range, begin, end);
  }
  for (auto& th : pool) th.join();
  return out;
}

EmpiricalEstimate empirical_probability(const std::vector<double>& samples, double a_minus,
                                        double a_plus) {
  if (samples.empty()) throw DomainError("no samples");
  long hits = 0;
  for (double x : samples)
    if (x > a_minus && x < a_plus) ++hits;
  const double n = static_cast<double>(samples.size());
  const double ph = hits / n;
  return {ph, std::sqrt(ph * (1 - ph) / n), static_cast<long>(samples.size())};
}

EmpiricalEstimate empirical_mgf(const std::vector<double>& samples, double u) {
  if (samples.size() < 2) throw DomainError("need at least two samples");
  double mean = 0.0, m2 = 0.0;
  long n = 0;
  for (double x : samples) {
    const double y = std::exp(u * x);
    ++n;
    const double delta = y - mean;
    mean += delta / n;
    m2 += delta * (y - mean);
  }
  return {mean, std::sqrt(m2 / (n - 1) / n), n};
}

ExpansionEstimate extract_expansion(const std::function<double(double, double)>& lambda,
                                    double u, const std::vector<double>& t_grid, int degree) {
  if (t_grid.size() < 6) throw DomainError("extraction needs at least six t values");
  if (degree < 2) throw DomainError("extraction degree must be at least 2");
  std::vector<double> y;
  y.reserve(t_grid.size());
  for (double t : t_grid) y.push_back(lambda(u, t));
  const PolyFit f = polyfit(t_grid, y, degree);
  return {f.coeffs[0], f.coeffs[1], f.coeffs[2], f.residual_rms};
}

std::vector<double> default_t_grid() { return dyadic_grid(std::ldexp(1.0, -10), 8); }

}  // namespace ldx
