#include "ldx/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>

#include "commands.hpp"
#include "ldx/errors.hpp"

namespace ldx::cli {

namespace {

// Options whose values may legitimately start with '-' (negative numbers).
const std::set<std::string> kValueOptions = {"--u-grid", "--z-grid", "--t-grid", "--set", "--x",
                                             "--u",      "--mgf-u",  "--eps",    "--certify",
                                             "--t"};

/// Rewrites `--opt -2:2:5` into `--opt=-2:2:5` so the parser does not take a
/// negative value for a flag.
std::vector<std::string> normalise(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (kValueOptions.count(a) && i + 1 < argc) {
      const std::string v = argv[i + 1];
      if (v.size() > 1 && v[0] == '-' && (std::isdigit(static_cast<unsigned char>(v[1])) || v[1] == '.')) {
        args.push_back(a + "=" + v);
        ++i;
        continue;
      }
    }
    args.push_back(std::move(a));
  }
  return args;
}

struct Parsed {
  std::string config_path;
  std::string out_path;
  Invocation inv;
};

using Command = std::function<CsvTable(Invocation&)>;

int exit_for(const Error& e) {
  return e.kind() == ErrorKind::Validation ? kValidation : kConvergence;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Large-deviation and small-time asymptotics toolkit", "ldx"};
  app.require_subcommand(1);
  Parsed parsed;
  Invocation& inv = parsed.inv;

  const std::map<std::string, Command> commands = {
      {"laplace", cmd_laplace}, {"rate", cmd_rate},       {"family", cmd_family},
      {"bounds", cmd_bounds},   {"riccati", cmd_riccati}, {"heston", cmd_heston},
      {"mc-validate", cmd_mc_validate}};

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", parsed.config_path, "key = value parameter file");
    sub->add_option("--out", parsed.out_path, "CSV output path (stdout when omitted)");
  };
  auto* laplace = app.add_subcommand("laplace", "Laplace expansion against quadrature");
  common(laplace);
  laplace->add_option("--eps", inv.eps, "comma-separated eps values");

  auto* rate = app.add_subcommand("rate", "critical point, rate and distance on a z-grid");
  common(rate);
  rate->add_option("--z-grid", inv.z_grid, "start:stop:count");

  auto* family = app.add_subcommand("family", "equivalent density family");
  common(family);
  family->add_option("--z-grid", inv.z_grid, "start:stop:count");
  family->add_option("--eps", inv.eps, "comma-separated eps values");
  family->add_option("--certify", inv.certify, "certify the family at this u");
  family->add_option("--window", inv.window, "half-width n of the certification window");

  auto* bounds = app.add_subcommand("bounds", "first-order upper and lower bounds");
  common(bounds);
  bounds->add_option("--set", inv.set, "interval a:b");
  bounds->add_option("--x", inv.x, "point of the set");
  bounds->add_option("--eps", inv.eps, "comma-separated eps values");

  auto* riccati = app.add_subcommand("riccati", "generalized Riccati solutions");
  common(riccati);
  riccati->add_option("--u", inv.u, "initial value, one entry per coordinate");
  riccati->add_option("--t-grid", inv.t_grid, "start:stop:count");
  riccati->add_option("--eps", inv.eps, "homogenization scale");
  riccati->add_option("--series", inv.series_order, "series order N");
  riccati->add_option("--t", inv.t, "horizon of the series");
  riccati->add_option("--x", inv.x, "state for lambda_hat, one entry per coordinate");

  auto* heston = app.add_subcommand("heston", "closed-form CGF coefficients on a u-grid");
  common(heston);
  heston->add_option("--u-grid", inv.u_grid, "start:stop:count");

  auto* mc = app.add_subcommand("mc-validate", "Monte Carlo checks of MGF and bounds");
  common(mc);
  mc->add_option("--eps", inv.eps, "comma-separated eps values");
  mc->add_option("--mgf-u", inv.mgf_u, "comma-separated u values for the MGF check");
  mc->add_option("--set", inv.set, "interval a:b for the bound check");
  mc->add_option("--x", inv.x, "point of the set");
  mc->add_option("--paths", inv.paths, "number of paths");
  mc->add_option("--steps", inv.steps, "time steps per path");
  mc->add_option("--seed", inv.seed, "random seed");
  mc->add_option("--threads", inv.threads, "worker threads (0: LDX_THREADS or hardware)");

  std::vector<std::string> args = normalise(argc, argv);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "ldx: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  inv.command = app.get_subcommands().front()->get_name();
  try {
    if (!parsed.config_path.empty()) {
      if (!std::filesystem::is_regular_file(parsed.config_path)) {
        throw UsageError("cannot read config file '" + parsed.config_path + "'");
      }
      inv.config = KeyValueConfig::from_file(parsed.config_path);
    }
    const CsvTable table = commands.at(inv.command)(inv);

    std::string comment = "ldx " + inv.command;
    for (const auto& [k, v] : inv.resolved) comment += " " + k + "=" + v;
    const std::string text = table.render(comment);
    if (parsed.out_path.empty()) {
      out << text;
    } else {
      std::ofstream f(parsed.out_path, std::ios::binary);
      if (!f) throw UsageError("cannot write '" + parsed.out_path + "'");
      f << text;
      if (!f) throw UsageError("failed writing '" + parsed.out_path + "'");
    }
    return kOk;
  } catch (const UsageError& e) {
    err << "ldx " << inv.command << ": " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "ldx " << inv.command << ": " << e.what() << "\n";
    return exit_for(e);
  } catch (const std::exception& e) {
    err << "ldx " << inv.command << ": " << e.what() << "\n";
    return kValidation;
  }
}

int run(int argc, const char* const* argv) { return run(argc, argv, std::cout, std::cerr); }

}  // namespace ldx::cli
