// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only when
// every criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "ldx/affine.hpp"
#include "ldx/cli.hpp"
#include "ldx/density_family.hpp"
#include "ldx/fit.hpp"
#include "ldx/heston.hpp"
#include "ldx/laplace.hpp"
#include "ldx/ldp_bounds.hpp"
#include "ldx/legendre.hpp"
#include "ldx/monte_carlo.hpp"
#include "ldx/quadrature.hpp"

using namespace ldx;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += "FAILED " + what;
    }
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

std::string num(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.3g", v);
  return b;
}

const HestonParams kToy{};
const HestonParams kNegRho{0.03, -0.5, 0.2, 1.5, 0.6, -0.5, 0.1, 0.04};
const HestonParams kPosRho{0.01, 0.3, 0.5, 2, 0.8, 0.5, -0.2, 0.3};

std::vector<double> spread(double lo, double hi, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(lo + (hi - lo) * (i + 0.5) / n);
  return v;
}

double normal_mass(double lo, double hi, double var) {
  const double s = std::sqrt(2 * var);
  return 0.5 * (std::erf(hi / s) - std::erf(lo / s));
}

// 1. Laplace expansion order against adaptive quadrature.
Outcome laplace_order() {
  Outcome o;
  const auto one = SmoothScalarFn::constant(1.0);
  const auto cosine = SmoothScalarFn::from_generic([](auto z) {
    using std::cos;
    return cos(z);
  });
  const auto half_square = SmoothScalarFn::from_generic([](auto z) { return z * z * 0.5; });
  const auto cubic = SmoothScalarFn::from_generic([](auto z) { return z * z * 0.5 + z * z * z / 6.0; });
  struct Case {
    const char* name;
    LaplaceProblem problem;
    double order1;
  };
  const Case cases[] = {{"gaussian", {one, half_square, -20, 20, 0}, 0.0},
                        {"cosine", {cosine, half_square, -20, 20, 0}, -0.5},
                        {"cubic", {one, cubic, -2, 6, 0}, 5.0 / 24}};
  const auto eps = dyadic_grid(1.0 / 16, 7);
  for (const auto& c : cases) {
    LaplaceCoefficients k = expand(c.problem, 1);
    o.require(std::abs(*k.order1 - c.order1) <= 1e-6, std::string(c.name) + " order1");
    k.exponent_value = 0.0;
    std::vector<double> res;
    for (double e : eps) {
      const double q = quadrature_reference_scaled(c.problem, e);
      res.push_back(std::abs(evaluate(k, e) - q) / std::abs(q));
    }
    const SlopeFit f = loglog_slope(eps, res, 1e-12);
    o.require(order_at_least(f, 1.8), std::string(c.name) + " order");
    o.note(std::string(c.name) + (f.exact ? " exact" : " order " + num(f.slope)) + " order1 " +
           num(*k.order1));
  }
  return o;
}

// 2. Legendre duality on a fine z-grid, refined by golden section.
Outcome legendre_duality() {
  Outcome o;
  const std::pair<const char*, CGFExpansion> sets[] = {{"gaussian", CGFExpansion::gaussian()},
                                                        {"toy", heston_cgf(kToy)}};
  for (const auto& [name, cgf] : sets) {
    const RateData rd(cgf);
    const double lo = std::isfinite(cgf.u_lo) ? 0.8 * cgf.u_lo : -3.0;
    const double hi = std::isfinite(cgf.u_hi) ? 0.8 * cgf.u_hi : 3.0;
    const auto us = spread(lo, hi, 50);
    const double zlo = rd.zstar(us.back()) - 0.5, zhi = rd.zstar(us.front()) + 0.5;
    const int m = 20000;
    const double h = (zhi - zlo) / m;
    std::vector<double> half_dsq(m + 1);
    for (int j = 0; j <= m; ++j) {
      const double d = rd.distance(zlo + h * j);
      half_dsq[static_cast<std::size_t>(j)] = d * d / 2;
    }
    double worst = 0.0;
    for (double u : us) {
      int best = 0;
      for (int j = 1; j <= m; ++j) {
        if (u * (zlo + h * j) + half_dsq[static_cast<std::size_t>(j)] <
            u * (zlo + h * best) + half_dsq[static_cast<std::size_t>(best)]) {
          best = j;
        }
      }
      auto g = [&](double z) {
        const double d = rd.distance(z);
        return u * z + d * d / 2;
      };
      double a = zlo + h * std::max(best - 1, 0), b = zlo + h * std::min(best + 1, m);
      const double r = (std::sqrt(5.0) - 1) / 2;
      for (int it = 0; it < 100 && b - a > 1e-12; ++it) {
        const double c = b - r * (b - a), d = a + r * (b - a);
        (g(c) < g(d) ? b : a) = g(c) < g(d) ? d : c;
      }
      worst = std::max(worst, std::abs(g((a + b) / 2) + cgf.lambda0(u)));
    }
    o.require(worst <= 1e-6, std::string(name) + " duality");
    o.note(std::string(name) + " max gap " + num(worst));
  }
  return o;
}

// 3. Certification of the equivalent family and Gaussian kernel mass.
Outcome density_family() {
  Outcome o;
  const auto eps = dyadic_grid(1.0 / 16, 7);
  const EquivalentFamily gauss{RateData(CGFExpansion::gaussian())};
  const auto g = certify_equivalence(gauss, 20, 0.5, eps);
  o.require(g.passed, "gaussian certification");
  double gmax = 0.0;
  for (double r : g.ratio_minus_one) gmax = std::max(gmax, std::abs(r));
  o.note("gaussian " + std::string(g.fit.exact ? "exact" : "order " + num(g.fit.slope)) +
         " max|r| " + num(gmax));

  const EquivalentFamily toy{RateData(heston_cgf(kToy))};
  for (double u : {0.5, -0.5}) {
    const auto t = certify_equivalence(toy, 4, u, eps);
    o.require(t.passed && (t.fit.exact || t.fit.slope >= 1.8), "toy certification u=" + num(u));
    o.note("toy u=" + num(u) + " order " + num(t.fit.slope));
  }

  double worst = 0.0;
  for (double e : {1.0, 0.5, 0.1, 0.01}) {
    const auto q = integrate([&](double z) { return gauss.f_eps(z, e); }, -30, 30, {0.0},
                             {1e-15, 1e-14, 1 << 15, 16});
    worst = std::max(worst, std::abs(q.value - 1));
  }
  o.require(worst <= 1e-10, "gaussian mass");
  o.note("gaussian mass error " + num(worst));
  return o;
}

// 4. Exact sandwich for N(0, eps).
Outcome exact_sandwich() {
  Outcome o;
  const RateData rd(CGFExpansion::gaussian());
  const BoundReport up = upper_bound(rd, 0.9, 1.1, 1.0);
  const BoundReport lo = lower_bound(rd, 0.9, 1.1, 1.0);
  o.require(std::abs(up.exponent - 0.4) <= 1e-12, "upper exponent");
  o.require(std::abs(lo.exponent - 0.6) <= 1e-12, "lower exponent");
  o.require(std::abs(lo.gap_delta - 0.005) <= 1e-12, "delta_A");
  for (double e : {0.2, 0.1, 0.05}) {
    const double exact = normal_mass(0.9, 1.1, e);
    o.require(lo.value(e) <= exact && exact <= up.value(e), "sandwich eps=" + num(e));
    o.note("eps=" + num(e) + ": " + num(lo.value(e)) + " <= " + num(exact) + " <= " + num(up.value(e)));
  }
  return o;
}

// 5. Monte Carlo sandwich for the Heston toy.
Outcome mc_sandwich() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const RateData rd(heston_cgf(kToy));
  double a = 0.0, b = 3.0;
  for (int i = 0; i < 100; ++i) {
    const double mid = (a + b) / 2;
    (rd.rate(mid) < 0.3 ? a : b) = mid;
  }
  const double x = (a + b) / 2;
  const double am = x - 0.1, ap = x + 0.1;
  const BoundReport up = upper_bound(rd, am, ap, x);
  const BoundReport lo = lower_bound(rd, am, ap, x);
  o.note("x=" + num(x) + " rate(x)=" + num(rd.rate(x)) + " A=(" + num(am) + "," + num(ap) + ")");
  MCConfig cfg;
  cfg.n_paths = 1'000'000;
  cfg.n_steps = 200;
  for (double e : {0.1, 0.05}) {
    const auto samples = simulate_heston(kToy, e, cfg);
    const EmpiricalEstimate p = empirical_probability(samples, am, ap);
    const bool ok = lo.value(e) - 3 * p.std_error <= p.value && p.value - 3 * p.std_error <= up.value(e);
    o.require(ok, "sandwich eps=" + num(e));
    o.note("eps=" + num(e) + ": " + num(lo.value(e)) + " <= " + num(p.value) + " (se " +
           num(p.std_error) + ") <= " + num(up.value(e)));
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(secs <= 120.0, "runtime");
  o.note("runtime " + num(secs) + " s");
  return o;
}

// 6. Homogenization scaling, semiflow and first-order coefficient.
Outcome riccati_homogenization() {
  Outcome o;
  OdeOptions opt;
  opt.tol = 1e-10;
  const double tol = 10 * opt.tol;
  double worst_scaling = 0.0, worst_semiflow = 0.0, worst_psi1 = 0.0;
  for (const HestonParams& p : {kToy, kNegRho}) {
    const AffineDiffusion md = heston_embedding(p);
    const Eigen::VectorXd u = (Eigen::VectorXd(2) << 0.0, -0.5).finished();
    for (double e : {1.0, 0.5, 0.2, 0.1, 0.05}) {
      for (double t : {0.2, 0.5, 1.0, 1.5, 2.0}) {
        const auto h1 = homogenized(md, u, e, t, opt);
        const auto h2 = homogenized_direct(md, u, e, t, opt);
        const double scale = 1 + h1.psi.cwiseAbs().maxCoeff();
        worst_scaling = std::max(worst_scaling, (h1.psi - h2.psi).cwiseAbs().maxCoeff() / scale);
        worst_scaling = std::max(worst_scaling, std::abs(h1.phi - h2.phi) / (1 + std::abs(h1.phi)));
      }
    }
    const Eigen::VectorXd v = (Eigen::VectorXd(2) << 0.2, -0.4).finished();
    for (double t : {0.3, 1.0}) {
      for (double s : {0.2, 0.7}) {
        const auto full = solve_riccati(md, v, t + s, opt);
        const auto first = solve_riccati(md, v, s, opt);
        const auto second = solve_riccati(md, first.psi, t, opt);
        const double scale = 1 + full.psi.cwiseAbs().maxCoeff();
        worst_semiflow = std::max(worst_semiflow, (full.psi - second.psi).cwiseAbs().maxCoeff() / scale);
        worst_semiflow = std::max(worst_semiflow, std::abs(full.phi - first.phi - second.phi) /
                                                      (1 + std::abs(full.phi)));
      }
    }
    const auto sr = series(md, v, 1.0, 2);
    worst_psi1 = std::max(worst_psi1, (sr.psi1_fit - sr.psi_coeffs[1]).cwiseAbs().maxCoeff());
    worst_psi1 = std::max(worst_psi1, std::abs(sr.phi1_fit - sr.phi_coeffs[1]));
  }
  o.require(worst_scaling <= tol, "scaling identity");
  o.require(worst_semiflow <= tol, "semiflow");
  o.require(worst_psi1 <= 1e-6, "first-order coefficient");
  o.note("scaling " + num(worst_scaling) + " semiflow " + num(worst_semiflow) + " (limit " +
         num(tol) + "), psi1 fit vs variational " + num(worst_psi1));
  return o;
}

// 7. Heston small-t expansion order and extracted coefficients.
Outcome heston_closed_forms() {
  Outcome o;
  const std::pair<const char*, HestonParams> sets[] = {
      {"rho=0", kToy}, {"rho=-0.5", kNegRho}, {"rho=+0.5", kPosRho}};
  for (const auto& [name, p] : sets) {
    const DomainInfo dom = domain(p);
    double min_slope = INFINITY;
    for (double u : spread(0.8 * dom.u_min, 0.8 * dom.u_max, 16)) {
      const double l0 = lambda0(p, u), l1 = lambda1(p, u), l2 = lambda2(p, u);
      std::vector<double> ts, res;
      for (double t = 1e-2; t >= 1e-5 * 0.999; t /= std::sqrt(10.0)) {
        ts.push_back(t);
        res.push_back(lambda_scaled(p, u, t) - (l0 + t * l1 + t * t * l2));
      }
      const SlopeFit f = loglog_slope(ts, res, 1e-14 * (1 + std::abs(l0)));
      if (!f.exact) min_slope = std::min(min_slope, f.slope);
      o.require(order_at_least(f, 2.7), std::string(name) + " order at u=" + num(u));
    }
    double worst = 0.0;
    for (double u : {0.5, -0.7, 1.3}) {
      if (!dom.contains(u)) continue;
      const auto e = extract_expansion([&p](double v, double t) { return lambda_scaled(p, v, t); }, u,
                                       default_t_grid());
      worst = std::max({worst, std::abs(e.lambda0 - lambda0(p, u)), std::abs(e.lambda1 - lambda1(p, u)),
                        std::abs(e.lambda2 - lambda2(p, u))});
    }
    o.require(worst <= 1e-5, std::string(name) + " extraction");
    o.note(std::string(name) + " min order " + num(min_slope) + " extraction err " + num(worst));
  }
  return o;
}

// 8. Riccati series of the affine embedding against the closed forms.
Outcome affine_heston() {
  Outcome o;
  const std::pair<const char*, HestonParams> sets[] = {
      {"rho=0", kToy}, {"rho=-0.5", kNegRho}, {"rho=+0.5", kPosRho}};
  for (const auto& [name, p] : sets) {
    const DomainInfo dom = domain(p);
    const AffineDiffusion md = heston_embedding(p);
    const Eigen::VectorXd x = (Eigen::VectorXd(2) << p.v0, p.x0).finished();
    double worst = 0.0;
    for (double w : spread(0.6 * dom.u_min, 0.6 * dom.u_max, 10)) {
      const auto sr = series(md, (Eigen::VectorXd(2) << 0.0, -w).finished(), 1.0, 2);
      worst = std::max({worst, std::abs(sr.lambda_hat(0, x) - lambda0(p, w)),
                        std::abs(sr.lambda_hat(1, x) - lambda1(p, w)),
                        std::abs(sr.lambda_hat(2, x) - lambda2(p, w))});
    }
    o.require(worst <= 1e-5, name);
    o.note(std::string(name) + " max err " + num(worst));
  }
  return o;
}

// 9. mc-validate output bytes across thread counts and repeated runs.
Outcome determinism() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path() / "ldx_acceptance";
  std::filesystem::create_directories(dir);
  std::vector<std::string> outputs;
  for (const char* threads : {"1", "2", "4", "1"}) {
    const std::string path = (dir / ("mc_" + std::to_string(outputs.size()) + ".csv")).string();
    const std::vector<std::string> args{"ldx",      "mc-validate", "--paths", "20000", "--steps",
                                        "100",      "--seed",      "7",       "--set", "0.7:0.9",
                                        "--eps",    "0.1,0.05",    "--threads", threads,
                                        "--out",    path};
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    o.require(code == 0, std::string("mc-validate exit with ") + threads + " threads: " + err.str());
    std::ifstream f(path, std::ios::binary);
    outputs.emplace_back(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
  }
  std::filesystem::remove_all(dir);
  bool same = !outputs.front().empty();
  for (const auto& s : outputs) same = same && s == outputs.front();
  o.require(same, "byte-identical CSV");
  o.note(std::to_string(outputs.size()) + " runs (threads 1,2,4,1), " +
         std::to_string(outputs.front().size()) + " bytes each");
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"Laplace order", laplace_order},
      {"Legendre duality", legendre_duality},
      {"Density family", density_family},
      {"Bound sandwich (exact)", exact_sandwich},
      {"Bound sandwich (Monte Carlo)", mc_sandwich},
      {"Riccati homogenization", riccati_homogenization},
      {"Heston closed forms", heston_closed_forms},
      {"Affine-Heston cross-check", affine_heston},
      {"Determinism", determinism},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome r;
    try {
      r = check();
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    if (!r.pass) ++failures;
    std::printf("%s %d %s: %s\n", r.pass ? "PASS" : "FAIL", index, name, r.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
