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

// urfock command-line front end.
//
//   urfock check        invariant suite, JSON lines
//   urfock evolve       spectral evolution + wavefield export
//   urfock spectrum     eigenvalues of E
//   urfock tables       octonion tables and the associator report
//   urfock gravity-eval quantized Ricci residual norms, JSON lines
//
// Exit codes: 0 success, 1 check failure, 2 usage or configuration error.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "urfock/urfock.hpp"

namespace {

using namespace urfock;
using json = nlohmann::ordered_json;

struct Flags {
  std::string config;
  std::optional<int> n_max;
  std::optional<double> grid_l, grid_h, tol;
  std::optional<std::string> out;
};

RunConfig resolve(const Flags& f) {
  RunConfig c = load_config(f.config);
  if (f.n_max) c.n_max = *f.n_max;
  if (f.grid_l) c.grid_l = *f.grid_l;
  if (f.grid_h) c.grid_h = *f.grid_h;
  if (f.tol) c.tol = *f.tol;
  if (f.out) c.out = *f.out;
  c.validate();
  return c;
}

// Output sink: stdout for "-", else a file.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw ConfigError("cannot open output " + path);
    }
  }
  std::ostream& os() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

int cmd_check(const RunConfig& cfg) {
  const auto results = run_checks(cfg);
  Output out(cfg.out);
  bool failed = false;
  for (const auto& r : results) {
    json j;
    j["id"] = r.id;
    j["module"] = r.module;
    j["status"] = r.status();
    j["measured"] = r.measured;
    j["tolerance"] = r.tolerance ? json(*r.tolerance) : json(nullptr);
    j["paper_anchor"] = r.anchor;
    out.os() << j.dump() << '\n';
    failed = failed || r.failed();
  }
  return failed ? 1 : 0;
}

int cmd_evolve(const RunConfig& cfg, const std::string& state_path, const std::vector<double>& times) {
  const StateVector st0 = read_state_file(state_path, cfg.n_max_cap);
  const auto q = build_quadratures(st0.space, Labels::abcd, cfg.dense_cap);
  q.require_energy();
  const Grid3 grid(cfg.grid_l, cfg.grid_h, cfg.grid_cap);
  const double n0 = st0.norm();
  const double e0 = st0.amp.dot(q.E * st0.amp).real();
  const bool to_stdout = cfg.out == "-";
  std::ostream& log = to_stdout ? std::cerr : std::cout;
  for (size_t k = 0; k < times.size(); ++k) {
    const StateVector st = evolve_fock(q, st0, times[k]);
    const StateVector x = change_basis_xyzn(st, BasisDirection::abcd_to_xyzn);
    const WaveField f = state_to_wavefield(x, grid);
    if (to_stdout) {
      write_wavefield(std::cout, f);
    } else {
      const std::string path = cfg.out + "_t" + std::to_string(k) + ".dat";
      std::ofstream os(path);
      if (!os) throw ConfigError("cannot open output " + path);
      write_wavefield(os, f);
    }
    const double e = st.amp.dot(q.E * st.amp).real();
    json j;
    j["t"] = times[k];
    j["norm_drift"] = report_round(std::abs(st.norm() - n0));
    j["energy_drift"] = report_round(std::abs(e - e0));
    log << j.dump() << '\n';
  }
  return 0;
}

int cmd_spectrum(const RunConfig& cfg) {
  auto s = build_space(cfg.n_max, cfg.n_max_cap);
  const auto q = build_quadratures(s, Labels::abcd, cfg.dense_cap);
  q.require_energy();
  Output out(cfg.out);
  for (Index i = 0; i < q.spectrum->e.size(); ++i) out.os() << fmt("%.12e", q.spectrum->e[i]) << '\n';
  return 0;
}

int cmd_tables(const RunConfig& cfg) {
  Output out(cfg.out);
  std::ostream& os = out.os();
  os << "# octonion multiplication: e_i e_j = -delta_ij + eps3_ijk e_k\n";
  for (const auto& l : kFanoLines) os << "eps3 " << l[0] << ' ' << l[1] << ' ' << l[2] << " = +1\n";
  const auto rep = derive_eps4();
  os << "# associator: {e_i,e_j,e_k} = -2 eps4_ijkl e_l, derived, i<j<k<l nonzero entries\n";
  const auto& e4 = rep.table.eps4;
  for (int i = 1; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j)
      for (int k = j + 1; k < 8; ++k)
        for (int l = k + 1; l < 8; ++l)
          if (e4[i][j][k][l] != 0.0)
            os << "eps4 " << i << ' ' << j << ' ' << k << ' ' << l << " = " << (e4[i][j][k][l] > 0 ? "+1" : "-1")
               << '\n';
  os << "# discrepancies against the printed list: " << rep.discrepancies.size() << '\n';
  for (const auto& d : rep.discrepancies)
    os << "diff " << d.idx[0] << ' ' << d.idx[1] << ' ' << d.idx[2] << ' ' << d.idx[3] << " printed "
       << fmt("%+.0f", d.printed) << " derived " << fmt("%+.0f", d.computed) << '\n';
  return 0;
}

struct GravitonSpec {
  std::array<Spinor2, 4> spinors{};
  std::string state;
};

GravitonSpec read_graviton_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open graviton spec " + path);
  const auto kv = parse_key_values(in);
  GravitonSpec g;
  static const std::array<std::string, 4> names{"ug1", "ug2", "vg1", "vg2"};
  for (int k = 0; k < 4; ++k) {
    const auto it = kv.find(names[k]);
    if (it == kv.end()) throw ConfigError(path + ": missing " + names[k]);
    std::istringstream is(it->second);
    double a, b, c, d;
    if (!(is >> a >> b >> c >> d)) throw ConfigError(path + ": " + names[k] + " needs four numbers");
    g.spinors[k] = ur_spinor(a, b, c, d);
  }
  const auto st = kv.find("state");
  if (st == kv.end()) throw ConfigError(path + ": missing state");
  g.state = st->second;
  for (const auto& [key, v] : kv)
    if (key != "state" && std::find(names.begin(), names.end(), key) == names.end())
      throw ConfigError(path + ": unknown key '" + key + "'");
  // relative state paths resolve against the spec file's directory
  if (!g.state.empty() && g.state[0] != '/') {
    const auto slash = path.find_last_of('/');
    if (slash != std::string::npos) g.state = path.substr(0, slash + 1) + g.state;
  }
  return g;
}

int cmd_gravity_eval(const RunConfig& cfg, const std::vector<std::string>& specs) {
  if (specs.size() != 1 && specs.size() != 4) throw ConfigError("gravity-eval takes 1 or 4 --graviton specs");
  std::array<GravitonState, 4> g;
  for (int k = 0; k < 4; ++k) {
    const GravitonSpec sp = read_graviton_spec(specs[specs.size() == 1 ? 0 : k]);
    const StateVector st = read_state_file(sp.state, cfg.n_max_cap);
    g[k] = build_graviton(st, build_metric(sp.spinors[0], sp.spinors[1], sp.spinors[2], sp.spinors[3]), false);
  }
  for (int k = 1; k < 4; ++k)
    if (g[k].psi.space->n_max() != g[0].psi.space->n_max()) throw ConfigError("graviton states differ in n_max");
  auto space = g[0].psi.space;
  for (auto& gr : g) gr.psi = StateVector(space, gr.psi.amp);
  const auto q = build_quadratures(space, Labels::abcd, cfg.dense_cap);
  const auto terms = ricci_terms();
  Output out(cfg.out);
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      const auto r = evaluate_quantized_ricci(terms, g, mu, nu, q);
      json j;
      j["mu"] = mu;
      j["nu"] = nu;
      j["residual"] = report_round(r.norm);
      out.os() << j.dump() << '\n';
    }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"urfock: ur-alternative tensor-space simulator"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags flags;
  app.add_option("--config", flags.config, "key=value config file (default: $URFOCK_CONFIG)");
  app.add_option("--n-max", flags.n_max, "truncation: max total occupation");
  app.add_option("--grid-l", flags.grid_l, "grid half extent L");
  app.add_option("--grid-h", flags.grid_h, "grid step h");
  app.add_option("--tol", flags.tol, "tolerance");
  app.add_option("--out", flags.out, "output path, '-' for stdout");

  auto* check = app.add_subcommand("check", "run the invariant suite");
  auto* evolve = app.add_subcommand("evolve", "evolve a state and export wavefields");
  std::string state_path;
  std::vector<double> times{0.0};
  evolve->add_option("--state", state_path, "state file")->required();
  evolve->add_option("--times", times, "evolution times");
  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of E");
  auto* tables = app.add_subcommand("tables", "octonion tables and associator report");
  auto* gravity = app.add_subcommand("gravity-eval", "quantized Ricci residual norms");
  std::vector<std::string> gspecs;
  gravity->add_option("--graviton", gspecs, "graviton spec file (1 or 4)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    const RunConfig cfg = resolve(flags);
    if (*check) return cmd_check(cfg);
    if (*evolve) return cmd_evolve(cfg, state_path, times);
    if (*spectrum) return cmd_spectrum(cfg);
    if (*tables) return cmd_tables(cfg);
    if (*gravity) return cmd_gravity_eval(cfg, gspecs);
  } catch (const ConfigError& e) {
    std::cerr << "urfock: configuration error: " << e.what() << '\n';
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "urfock: validation error: " << e.what() << '\n';
    return 2;
  } catch (const CapabilityError& e) {
    std::cerr << "urfock: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "urfock: numerical error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
