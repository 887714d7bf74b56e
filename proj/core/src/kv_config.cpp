#include "ldx/kv_config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ldx/errors.hpp"

namespace ldx {

namespace {

std::string trim(const std::string& s) {
  auto b = std::find_if_not(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
  auto e = std::find_if_not(s.rbegin(), s.rend(), [](unsigned char c) { return std::isspace(c); }).base();
  return b < e ? std::string(b, e) : std::string();
}

double to_double(const std::string& key, const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size())
    throw DomainError("config key '" + key + "': '" + text + "' is not a number");
  return v;
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::istream& in) {
  KeyValueConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw DomainError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw DomainError("config line " + std::to_string(lineno) + ": empty key");
    cfg.values_[key] = trim(line.substr(eq + 1));
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config file '" + path + "'");
  return parse(in);
}

const std::string& KeyValueConfig::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw DomainError("config key '" + key + "' is missing");
  return it->second;
}

std::string KeyValueConfig::get_or(const std::string& key, const std::string& fallback) const {
  return has(key) ? get(key) : fallback;
}

double KeyValueConfig::get_double(const std::string& key) const {
  return to_double(key, get(key));
}

double KeyValueConfig::get_double_or(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

long KeyValueConfig::get_long_or(const std::string& key, long fallback) const {
  if (!has(key)) return fallback;
  const double v = get_double(key);
  if (v != static_cast<double>(static_cast<long>(v)))
    throw DomainError("config key '" + key + "' must be an integer");
  return static_cast<long>(v);
}

std::vector<double> KeyValueConfig::get_doubles(const std::string& key) const {
  std::string text = get(key);
  std::replace(text.begin(), text.end(), ',', ' ');
  std::istringstream is(text);
  std::vector<double> out;
  std::string tok;
  while (is >> tok) out.push_back(to_double(key, tok));
  return out;
}

HestonParams heston_from_config(const KeyValueConfig& cfg) {
  HestonParams p;
  p.r = cfg.get_double_or("r", p.r);
  p.k = cfg.get_double_or("k", p.k);
  p.a = cfg.get_double_or("a", p.a);
  p.b = cfg.get_double_or("b", p.b);
  p.sigma = cfg.get_double_or("sigma", p.sigma);
  p.rho = cfg.get_double_or("rho", p.rho);
  p.x0 = cfg.get_double_or("x0", p.x0);
  p.v0 = cfg.get_double_or("v0", p.v0);
  p.validate();
  return p;
}

AffineDiffusion affine_from_config(const KeyValueConfig& cfg) {
  const long d = cfg.get_long_or("dim", 0);
  const long m = cfg.get_long_or("m", 0);
  if (d <= 0 || d > 64) throw DomainError("config key 'dim' must be in 1..64");
  AffineDiffusion md = AffineDiffusion::zeros(static_cast<int>(d), static_cast<int>(m));
  auto read_matrix = [&](const std::string& key, Eigen::MatrixXd& out) {
    if (!cfg.has(key)) return;
    const auto v = cfg.get_doubles(key);
    if (static_cast<long>(v.size()) != d * d)
      throw DomainError("config key '" + key + "' needs dim*dim numbers");
    for (long i = 0; i < d; ++i)
      for (long j = 0; j < d; ++j) out(i, j) = v[static_cast<std::size_t>(i * d + j)];
  };
  auto read_vector = [&](const std::string& key, Eigen::VectorXd& out) {
    if (!cfg.has(key)) return;
    const auto v = cfg.get_doubles(key);
    if (static_cast<long>(v.size()) != d) throw DomainError("config key '" + key + "' needs dim numbers");
    for (long i = 0; i < d; ++i) out(i) = v[static_cast<std::size_t>(i)];
  };
  read_matrix("a", md.a);
  read_vector("b", md.b);
  md.c = cfg.get_double_or("c", 0.0);
  for (long i = 0; i < d; ++i) {
    const std::string idx = std::to_string(i + 1);
    read_matrix("alpha" + idx, md.alpha[static_cast<std::size_t>(i)]);
    read_vector("beta" + idx, md.beta[static_cast<std::size_t>(i)]);
    md.gamma[static_cast<std::size_t>(i)] = cfg.get_double_or("gamma" + idx, 0.0);
  }
  md.validate();
  return md;
}

}  // namespace ldx
