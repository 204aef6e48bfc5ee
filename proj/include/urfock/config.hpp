// Copyright 2026 The urfock Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef URFOCK_CONFIG_HPP
#define URFOCK_CONFIG_HPP

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>

#include "urfock/common.hpp"
#include "urfock/fock.hpp"
#include "urfock/modeops.hpp"
#include "urfock/spatial.hpp"

namespace urfock {

inline constexpr const char* kConfigEnv = "URFOCK_CONFIG";

struct RunConfig {
  int n_max = 6;
  double grid_l = 8.0;
  double grid_h = 0.05;
  double tol = 1e-10;
  int dense_cap = kDenseEigenCap;
  int objects = 2;
  int n_max_cap = kDefaultNMaxCap;
  Index grid_cap = kGridPointCap;
  std::string out = "-";

  void validate() const {
    if (n_max_cap <= 0 || dense_cap <= 0 || grid_cap <= 0) throw ValidationError("caps must be positive");
    if (n_max < 0 || n_max > n_max_cap) throw ValidationError("n_max outside [0, n_max_cap]");
    if (!(tol > 0.0)) throw ValidationError("tolerance must be > 0");
    if (!(grid_l > 0.0) || !(grid_h > 0.0)) throw ValidationError("grid extent and step must be > 0");
    if (objects < 1) throw ValidationError("object count must be >= 1");
    Grid3 g(grid_l, grid_h, grid_cap);  // throws on a non-integral or oversized grid
    (void)g;
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_value(const std::string& key, const std::string& v) {
  std::istringstream is(v);
  T out{};
  if (!(is >> out) || !(is >> std::ws).eof()) throw ConfigError("bad value for '" + key + "': " + v);
  return out;
}

}  // namespace detail

/// Flat key=value lines; '#' starts a comment.
inline std::map<std::string, std::string> parse_key_values(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
    kv[detail::trim(line.substr(0, eq))] = detail::trim(line.substr(eq + 1));
  }
  return kv;
}

inline void apply_key_values(RunConfig& c, const std::map<std::string, std::string>& kv) {
  for (const auto& [k, v] : kv) {
    if (k == "n_max") c.n_max = detail::parse_value<int>(k, v);
    else if (k == "grid_l") c.grid_l = detail::parse_value<double>(k, v);
    else if (k == "grid_h") c.grid_h = detail::parse_value<double>(k, v);
    else if (k == "tol") c.tol = detail::parse_value<double>(k, v);
    else if (k == "dense_cap") c.dense_cap = detail::parse_value<int>(k, v);
    else if (k == "objects") c.objects = detail::parse_value<int>(k, v);
    else if (k == "n_max_cap") c.n_max_cap = detail::parse_value<int>(k, v);
    else if (k == "grid_cap") c.grid_cap = detail::parse_value<Index>(k, v);
    else if (k == "out") c.out = v;
    else throw ConfigError("unknown config key '" + k + "'");
  }
}

/// Loads `path`, or $URFOCK_CONFIG when `path` is empty. Neither set gives
/// the defaults.
inline RunConfig load_config(const std::string& path = {}) {
  RunConfig c;
  std::string p = path;
  if (p.empty())
    if (const char* env = std::getenv(kConfigEnv); env && *env) p = env;
  if (p.empty()) return c;
  std::ifstream in(p);
  if (!in) throw ConfigError("cannot open config file " + p);
  apply_key_values(c, parse_key_values(in));
  return c;
}

}  // namespace urfock

#endif  // URFOCK_CONFIG_HPP
