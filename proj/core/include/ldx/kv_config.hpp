#pragma once

#include <istream>
#include <map>
#include <string>
#include <vector>

#include "ldx/affine.hpp"
#include "ldx/heston.hpp"

namespace ldx {

/// Flat `key = value` file, one pair per line, `#` starts a comment.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(std::istream& in);
  static KeyValueConfig from_file(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const std::string& get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double_or(const std::string& key, double fallback) const;
  long get_long_or(const std::string& key, long fallback) const;
  /// Whitespace- or comma-separated numbers.
  std::vector<double> get_doubles(const std::string& key) const;
  void set(const std::string& key, const std::string& value) { values_[key] = value; }

  const std::map<std::string, std::string>& entries() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

/// Keys r, k, a, b, sigma, rho, x0, v0; missing keys keep the defaults of HestonParams.
HestonParams heston_from_config(const KeyValueConfig& cfg);

/// Keys dim, m, a (d*d row-major), b (d), c, and per coordinate i = 1..d:
/// alpha<i> (d*d), beta<i> (d), gamma<i>. Missing entries are zero.
AffineDiffusion affine_from_config(const KeyValueConfig& cfg);

}  // namespace ldx
