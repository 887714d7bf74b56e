#include "commands.hpp"

#include <cmath>
#include <sstream>

#include "ldx/affine.hpp"
#include "ldx/density_family.hpp"
#include "ldx/errors.hpp"
#include "ldx/fit.hpp"
#include "ldx/heston.hpp"
#include "ldx/laplace.hpp"
#include "ldx/ldp_bounds.hpp"
#include "ldx/legendre.hpp"
#include "ldx/monte_carlo.hpp"

namespace ldx::cli {

std::vector<double> Grid::points() const {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] =
        i == count - 1 ? stop : start + (stop - start) * static_cast<double>(i) / (count - 1);
  }
  return out;
}

std::string Grid::text() const {
  return format_number(start) + ":" + format_number(stop) + ":" + std::to_string(count);
}

namespace {

double parse_number(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw UsageError(what + ": '" + s + "' is not a number");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_number(v[i]);
  return s;
}

}  // namespace

Grid parse_grid(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw UsageError("grid '" + text + "' must be start:stop:count");
  Grid g;
  g.start = parse_number(parts[0], "grid start");
  g.stop = parse_number(parts[1], "grid stop");
  const double n = parse_number(parts[2], "grid count");
  if (n != std::floor(n) || n < 2) throw UsageError("grid '" + text + "': count must be an integer >= 2");
  if (!(g.start < g.stop)) throw UsageError("grid '" + text + "': start must be below stop");
  g.count = static_cast<long>(n);
  return g;
}

std::pair<double, double> parse_set(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw UsageError("set '" + text + "' must be a:b");
  const double a = parse_number(parts[0], "set start");
  const double b = parse_number(parts[1], "set end");
  if (!(a < b)) throw UsageError("set '" + text + "': need a < b");
  return {a, b};
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& p : split(text, ',')) out.push_back(parse_number(p, "list entry"));
  if (out.empty()) throw UsageError("empty number list");
  return out;
}

void Invocation::record(const std::string& key, const std::string& value) {
  resolved.emplace_back(key, value);
}

void Invocation::record(const std::string& key, double value) {
  record(key, format_number(value));
}

namespace {

HestonParams resolved_heston(Invocation& inv) {
  const HestonParams p = heston_from_config(inv.config);
  p.validate();
  inv.record("r", p.r);
  inv.record("k", p.k);
  inv.record("a", p.a);
  inv.record("b", p.b);
  inv.record("sigma", p.sigma);
  inv.record("rho", p.rho);
  inv.record("x0", p.x0);
  inv.record("v0", p.v0);
  return p;
}

/// `cgf = heston | gaussian`; the Gaussian triple is (u^2/2, l1 u, l2).
CGFExpansion resolved_cgf(Invocation& inv) {
  const std::string kind = inv.config.get_or("cgf", "heston");
  inv.record("cgf", kind);
  if (kind == "heston") return heston_cgf(resolved_heston(inv));
  if (kind == "gaussian") {
    const double l1 = inv.config.get_double_or("l1", 0.0);
    const double l2 = inv.config.get_double_or("l2", 0.0);
    inv.record("l1", l1);
    inv.record("l2", l2);
    return CGFExpansion::gaussian(l1, l2);
  }
  throw DomainError("config key 'cgf' must be heston or gaussian, got '" + kind + "'");
}

Grid grid_or(Invocation& inv, const std::optional<std::string>& flag, const std::string& name,
             const std::string& fallback) {
  const Grid g = parse_grid(flag.value_or(fallback));
  inv.record(name, g.text());
  return g;
}

std::vector<double> list_or(Invocation& inv, const std::optional<std::string>& flag,
                            const std::string& name, const std::vector<double>& fallback) {
  const std::vector<double> v = flag ? parse_list(*flag) : fallback;
  inv.record(name, join(v));
  return v;
}

std::vector<double> positive_eps(Invocation& inv, const std::vector<double>& fallback) {
  auto eps = list_or(inv, inv.eps, "eps", fallback);
  for (double e : eps) {
    if (!(e > 0)) throw UsageError("eps values must be positive");
  }
  return eps;
}

double number_flag(const std::optional<std::string>& flag, const std::string& what) {
  return parse_number(*flag, what);
}

SmoothScalarFn builtin_exponent(const std::string& name) {
  if (name == "cubic") {
    return SmoothScalarFn::from_generic([](auto z) { return z * z * 0.5 + z * z * z / 6.0; });
  }
  return SmoothScalarFn::from_generic([](auto z) { return z * z * 0.5; });
}

SmoothScalarFn builtin_integrand(const std::string& name) {
  if (name == "cosine") {
    return SmoothScalarFn::from_generic([](auto z) {
      using std::cos;
      return cos(z);
    });
  }
  return SmoothScalarFn::constant(1.0);
}

}  // namespace

CsvTable cmd_laplace(Invocation& inv) {
  const std::string name = inv.config.get_or("problem", "cubic");
  if (name != "gaussian" && name != "cosine" && name != "cubic") {
    throw DomainError("config key 'problem' must be gaussian, cosine or cubic");
  }
  inv.record("problem", name);
  const double a = inv.config.get_double_or("a", name == "cubic" ? -2.0 : -20.0);
  const double b = inv.config.get_double_or("b", name == "cubic" ? 6.0 : 20.0);
  const long order = inv.config.get_long_or("order", 1);
  inv.record("a", a);
  inv.record("b", b);
  inv.record("order", std::to_string(order));
  const auto eps = positive_eps(inv, dyadic_grid(1.0 / 16, 7));

  const LaplaceProblem problem = make_problem(builtin_integrand(name), builtin_exponent(name), a, b);
  const LaplaceCoefficients c = expand(problem, static_cast<int>(order));
  LaplaceCoefficients scaled = c;
  scaled.exponent_value = 0.0;

  CsvTable t({"eps", "z0", "exponent_value", "gauss_curvature", "order0", "order1",
              "expansion_scaled", "quadrature_scaled", "rel_residual"});
  for (double e : eps) {
    const double approx = evaluate(scaled, e);
    const double quad = quadrature_reference_scaled(problem, e);
    t.add({e, problem.z0, c.exponent_value, c.gauss_curvature, c.order0,
           c.order1 ? *c.order1 : std::nan(""), approx, quad, std::abs(approx - quad) / std::abs(quad)});
  }
  return t;
}

CsvTable cmd_rate(Invocation& inv) {
  const RateData rd(resolved_cgf(inv));
  const Grid g = grid_or(inv, inv.z_grid, "z_grid", "-1:1:101");
  CsvTable t({"z", "ustar", "rate", "distance"});
  for (double z : g.points()) t.add({z, rd.ustar(z), rd.rate(z), rd.distance(z)});
  return t;
}

CsvTable cmd_family(Invocation& inv) {
  const EquivalentFamily fam{RateData(resolved_cgf(inv))};
  if (inv.certify) {
    const double u = number_flag(inv.certify, "--certify");
    const double n = inv.window.value_or(4.0);
    inv.record("certify_u", u);
    inv.record("window", n);
    const auto eps = positive_eps(inv, dyadic_grid(1.0 / 16, 7));
    const CertificationReport rep = certify_equivalence(fam, n, u, eps);
    CsvTable t({"eps", "ratio_minus_one", "fitted_order", "exact", "passed"});
    for (std::size_t i = 0; i < rep.eps.size(); ++i) {
      t.add({rep.eps[i], rep.ratio_minus_one[i], rep.fit.slope, std::string(rep.fit.exact ? "true" : "false"),
             std::string(rep.passed ? "true" : "false")});
    }
    return t;
  }
  const Grid g = grid_or(inv, inv.z_grid, "z_grid", "-1:1:101");
  const auto eps = positive_eps(inv, {0.1});
  CsvTable t({"z", "eps", "c0", "c1", "f_eps"});
  for (double z : g.points()) {
    const double c0 = fam.c0(z);
    const double c1 = fam.c1(z);
    for (double e : eps) t.add({z, e, c0, c1, fam.f_eps(z, e)});
  }
  return t;
}

CsvTable cmd_bounds(Invocation& inv) {
  const RateData rd(resolved_cgf(inv));
  if (!inv.set) throw UsageError("bounds needs --set a:b");
  const auto [am, ap] = parse_set(*inv.set);
  inv.record("set", format_number(am) + ":" + format_number(ap));
  const double x = inv.x ? number_flag(inv.x, "--x") : (am + ap) / 2;
  inv.record("x", x);
  const auto eps = positive_eps(inv, {0.1, 0.05});

  const BoundReport reports[] = {upper_bound(rd, am, ap, x), lower_bound(rd, am, ap, x)};
  CsvTable t({"direction", "case", "eps", "x", "a_minus", "a_plus", "ustar", "rate", "exponent",
              "prefactor", "correction", "gap_gamma", "value", "log_value"});
  for (const auto& r : reports) {
    for (double e : eps) {
      t.add({to_string(r.direction), r.case_tag(), e, r.x, r.a_minus, r.a_plus, r.ustar, r.rate,
             r.exponent, r.prefactor, r.correction, r.gap_gamma, r.value(e), r.log_value(e)});
    }
  }
  return t;
}

CsvTable cmd_riccati(Invocation& inv) {
  const std::string model_kind = inv.config.get_or("model", "affine");
  inv.record("model", model_kind);
  AffineDiffusion model;
  if (model_kind == "heston") {
    model = heston_embedding(resolved_heston(inv));
  } else if (model_kind == "affine") {
    model = affine_from_config(inv.config);
    for (const auto& [k, v] : inv.config.entries()) {
      if (k != "model") inv.record(k, v);
    }
  } else {
    throw DomainError("config key 'model' must be affine or heston");
  }
  model.validate();

  if (!inv.u) throw UsageError("riccati needs --u with one entry per state coordinate");
  const auto uv = parse_list(*inv.u);
  if (static_cast<int>(uv.size()) != model.d) {
    throw UsageError("--u needs " + std::to_string(model.d) + " entries");
  }
  inv.record("u", join(uv));
  const Eigen::VectorXd u = Eigen::Map<const Eigen::VectorXd>(uv.data(), model.d);

  std::vector<std::string> psi_cols;
  for (int i = 1; i <= model.d; ++i) psi_cols.push_back("psi" + std::to_string(i));

  if (inv.series_order) {
    if (!inv.t) throw UsageError("--series needs --t");
    const long N = *inv.series_order;
    if (N < 1 || N > 6) throw UsageError("--series order must be in 1..6");
    inv.record("series", std::to_string(N));
    inv.record("t", *inv.t);
    std::optional<Eigen::VectorXd> state;
    if (inv.x) {
      const auto xv = parse_list(*inv.x);
      if (static_cast<int>(xv.size()) != model.d) {
        throw UsageError("--x needs " + std::to_string(model.d) + " entries");
      }
      inv.record("x", join(xv));
      state = Eigen::Map<const Eigen::VectorXd>(xv.data(), model.d);
    }
    const HomogenizationSeries s = series(model, u, *inv.t, static_cast<int>(N));
    std::vector<std::string> header{"n", "phi"};
    header.insert(header.end(), psi_cols.begin(), psi_cols.end());
    header.emplace_back("lambda_hat");
    CsvTable t(header);
    for (long n = 0; n <= N; ++n) {
      const auto k = static_cast<std::size_t>(n);
      std::vector<CsvTable::Cell> row{n, s.phi_coeffs[k]};
      for (int i = 0; i < model.d; ++i) row.emplace_back(s.psi_coeffs[k](i));
      row.emplace_back(state ? s.lambda_hat(static_cast<int>(n), *state) : std::nan(""));
      t.add(std::move(row));
    }
    return t;
  }

  const Grid g = grid_or(inv, inv.t_grid, "t_grid", "0:1:11");
  const double eps = inv.eps ? number_flag(inv.eps, "--eps") : 1.0;
  if (!(eps > 0)) throw UsageError("--eps must be positive");
  inv.record("eps", eps);
  std::vector<std::string> header{"t", "phi"};
  header.insert(header.end(), psi_cols.begin(), psi_cols.end());
  CsvTable t(header);
  for (double time : g.points()) {
    if (time < 0) throw UsageError("riccati times must be nonnegative");
    Eigen::VectorXd psi = u;
    double phi = 0.0;
    if (time > 0) {
      const Homogenized h = homogenized(model, u, eps, time);
      psi = h.psi;
      phi = h.phi;
    }
    std::vector<CsvTable::Cell> row{time, phi};
    for (int i = 0; i < model.d; ++i) row.emplace_back(psi(i));
    t.add(std::move(row));
  }
  return t;
}

CsvTable cmd_heston(Invocation& inv) {
  const HestonParams p = resolved_heston(inv);
  const DomainInfo dom = domain(p);
  const std::string fallback =
      format_number(0.8 * dom.u_min) + ":" + format_number(0.8 * dom.u_max) + ":101";
  const Grid g = grid_or(inv, inv.u_grid, "u_grid", fallback);
  const auto us = g.points();
  for (double u : us) {
    if (!dom.contains(u)) {
      throw DomainError("u = " + format_number(u) + " outside the domain (" +
                        format_number(dom.u_min) + ", " + format_number(dom.u_max) + ")");
    }
  }
  CsvTable t({"u", "lambda0", "dlambda0", "d2lambda0", "lambda1", "lambda2", "u_min", "u_max"});
  for (double u : us) {
    t.add({u, lambda0(p, u), dlambda0(p, u), d2lambda0(p, u), lambda1(p, u), lambda2(p, u),
           dom.u_min, dom.u_max});
  }
  return t;
}

namespace {

std::string pass_text(bool ok) { return ok ? "true" : "false"; }

/// N(mean, eps) draws from the same per-path streams as the Heston simulator.
std::vector<double> gaussian_samples(double mean, double eps, const MCConfig& cfg) {
  std::vector<double> out(static_cast<std::size_t>(cfg.n_paths));
  const double s = std::sqrt(eps);
  for (long i = 0; i < cfg.n_paths; ++i) {
    PathStream stream(cfg.seed, static_cast<std::uint64_t>(i));
    out[static_cast<std::size_t>(i)] = mean + s * stream.normal_pair()[0];
  }
  return out;
}

}  // namespace

CsvTable cmd_mc_validate(Invocation& inv) {
  const std::string kind = inv.config.get_or("cgf", "heston");
  if (kind != "heston" && kind != "gaussian") {
    throw DomainError("config key 'cgf' must be heston or gaussian, got '" + kind + "'");
  }
  MCConfig cfg;
  cfg.n_paths = inv.paths.value_or(inv.config.get_long_or("paths", 100000));
  cfg.n_steps = static_cast<int>(inv.steps.value_or(inv.config.get_long_or("steps", 200)));
  cfg.seed = static_cast<std::uint64_t>(
      inv.seed.value_or(inv.config.get_long_or("seed", static_cast<long>(cfg.seed))));
  cfg.antithetic = inv.config.get_or("antithetic", "true") != "false";
  cfg.threads = inv.threads;
  if (cfg.n_paths <= 0 || cfg.n_steps <= 0) throw UsageError("paths and steps must be positive");

  const CGFExpansion cgf = resolved_cgf(inv);
  HestonParams p;
  if (kind == "heston") p = heston_from_config(inv.config);
  const double l1 = inv.config.get_double_or("l1", 0.0);
  if (kind == "gaussian" && inv.config.get_double_or("l2", 0.0) != 0.0) {
    throw DomainError("mc-validate simulates only l2 = 0 Gaussian families");
  }
  inv.record("paths", std::to_string(cfg.n_paths));
  inv.record("steps", std::to_string(cfg.n_steps));
  inv.record("seed", std::to_string(cfg.seed));
  inv.record("antithetic", cfg.antithetic ? "true" : "false");

  const auto eps_list = positive_eps(inv, {0.1, 0.05});
  const auto mgf_u = list_or(inv, inv.mgf_u, "mgf_u", {0.5});
  std::optional<std::pair<double, double>> set;
  double x = 0.0;
  std::optional<RateData> rd;
  if (inv.set) {
    set = parse_set(*inv.set);
    inv.record("set", format_number(set->first) + ":" + format_number(set->second));
    x = inv.x ? number_flag(inv.x, "--x") : (set->first + set->second) / 2;
    inv.record("x", x);
    rd.emplace(cgf);
  }

  CsvTable t({"check", "expected", "observed", "std_error", "pass"});
  for (double e : eps_list) {
    // eps log E exp(-uX/eps) = -u mean + u^2/2 for N(mean, eps), so mean = -l1 eps.
    const std::vector<double> samples =
        kind == "heston" ? simulate_heston(p, e, cfg) : gaussian_samples(-l1 * e, e, cfg);
    const std::string tag = " eps=" + format_number(e);
    for (double u : mgf_u) {
      double expected = 0.0;
      if (kind == "heston") {
        const MgfComponents m = mgf_components(p, u, e);
        expected = std::exp(m.C + m.D * p.v0 + u * p.x0);
      } else {
        expected = std::exp(-u * l1 * e + u * u * e / 2);
      }
      const EmpiricalEstimate est = empirical_mgf(samples, u);
      t.add({"mgf u=" + format_number(u) + tag, expected, est.value, est.std_error,
             pass_text(std::abs(est.value - expected) <= 3 * est.std_error)});
    }
    if (set) {
      const EmpiricalEstimate est = empirical_probability(samples, set->first, set->second);
      const double lo = lower_bound(*rd, set->first, set->second, x).value(e);
      const double hi = upper_bound(*rd, set->first, set->second, x).value(e);
      t.add({"lower" + tag, lo, est.value, est.std_error, pass_text(lo - 3 * est.std_error <= est.value)});
      t.add({"upper" + tag, hi, est.value, est.std_error, pass_text(est.value - 3 * est.std_error <= hi)});
    }
  }
  return t;
}

}  // namespace ldx::cli
