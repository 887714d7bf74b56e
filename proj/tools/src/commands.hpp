#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "csv.hpp"
#include "ldx/kv_config.hpp"

namespace ldx::cli {

/// Malformed command line; maps to exit 64.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Grid {
  double start = 0.0;
  double stop = 0.0;
  long count = 0;
  std::vector<double> points() const;
  std::string text() const;
};

/// `start:stop:count` with count >= 2 and start < stop.
Grid parse_grid(const std::string& text);
/// `a:b` with a < b.
std::pair<double, double> parse_set(const std::string& text);
/// Comma-separated numbers.
std::vector<double> parse_list(const std::string& text);

/// Everything a subcommand may read. Flags that were not given stay empty.
struct Invocation {
  std::string command;
  KeyValueConfig config;
  std::optional<std::string> u_grid, z_grid, t_grid, set, eps, x, u, mgf_u, certify;
  std::optional<double> t, window;
  std::optional<long> paths, steps, seed, series_order;
  int threads = 0;

  /// Resolved settings in the order they were recorded; goes into the CSV
  /// comment line.
  std::vector<std::pair<std::string, std::string>> resolved;
  void record(const std::string& key, const std::string& value);
  void record(const std::string& key, double value);
};

CsvTable cmd_laplace(Invocation& inv);
CsvTable cmd_rate(Invocation& inv);
CsvTable cmd_family(Invocation& inv);
CsvTable cmd_bounds(Invocation& inv);
CsvTable cmd_riccati(Invocation& inv);
CsvTable cmd_heston(Invocation& inv);
CsvTable cmd_mc_validate(Invocation& inv);

}  // namespace ldx::cli
