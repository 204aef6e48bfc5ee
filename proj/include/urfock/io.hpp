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

#ifndef URFOCK_IO_HPP
#define URFOCK_IO_HPP

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "urfock/config.hpp"
#include "urfock/fock.hpp"

namespace urfock {

// State file:
//   # urfock state v1 n_max=<n>
//   N_A N_B N_C N_D re im        (one line per nonzero amplitude)

inline void write_state(std::ostream& os, const StateVector& st) {
  os << "# urfock state v1 n_max=" << st.space->n_max() << '\n';
  char buf[128];
  for (Index i = 0; i < st.space->dim(); ++i) {
    if (st.amp[i] == cplx(0.0)) continue;
    const Occupation& n = st.space->unrank(i);
    std::snprintf(buf, sizeof buf, "%d %d %d %d %.17g %.17g\n", n[0], n[1], n[2], n[3], st.amp[i].real(),
                  st.amp[i].imag());
    os << buf;
  }
}

inline StateVector read_state(std::istream& in, int n_max_cap = kDefaultNMaxCap) {
  std::string header;
  if (!std::getline(in, header)) throw ConfigError("empty state file");
  const std::string prefix = "# urfock state v1 n_max=";
  if (header.rfind(prefix, 0) != 0) throw ConfigError("bad state file header");
  const int n_max = detail::parse_value<int>("n_max", detail::trim(header.substr(prefix.size())));
  StateVector st(std::make_shared<const FockSpace>(n_max, 4, n_max_cap));
  std::string line;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    line = detail::trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    Occupation n(4);
    double re = 0.0, im = 0.0;
    if (!(ls >> n[0] >> n[1] >> n[2] >> n[3] >> re >> im) || !(ls >> std::ws).eof())
      throw ConfigError("bad state line " + std::to_string(lineno));
    const Index r = st.space->rank(n);
    if (r < 0) throw ConfigError("state line " + std::to_string(lineno) + " lies outside the truncated space");
    st.amp[r] += cplx(re, im);
  }
  if (!st.finite()) throw ConfigError("state file has non-finite amplitudes");
  return st;
}

inline StateVector read_state_file(const std::string& path, int n_max_cap = kDefaultNMaxCap) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open state file " + path);
  return read_state(in, n_max_cap);
}

}  // namespace urfock

#endif  // URFOCK_IO_HPP
