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

#ifndef URFOCK_GRAVITY_HPP
#define URFOCK_GRAVITY_HPP

#include <array>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "urfock/dynamics.hpp"
#include "urfock/internal.hpp"
#include "urfock/manybody.hpp"

#ifndef URFOCK_DATA_DIR
#define URFOCK_DATA_DIR "data"
#endif

namespace urfock {

using Mat4 = Eigen::Matrix4d;

/// Data directory: $URFOCK_DATA_DIR when set, else the build-time location.
inline std::string data_path(const std::string& name) {
  const char* env = std::getenv("URFOCK_DATA_DIR");
  const std::string dir = env && *env ? env : URFOCK_DATA_DIR;
  return dir + "/" + name;
}

inline Mat4 eta4() { return Eigen::Vector4d(1, -1, -1, -1).asDiagonal(); }

// ---------------------------------------------------------------------------
// Spinor metric

struct SpinorMetric {
  Mat4 g = Mat4::Zero();  // g^{mu nu}
  std::array<Spinor2, 4> src{};  // u_g1, u_g2, v_g1, v_g2
  Vec4 vu = Vec4::Zero(), vv = Vec4::Zero();

  Mat4 lowered() const { return eta4() * g * eta4(); }
};

/// g = 1/2 (V_u (x) V_v + V_v (x) V_u), V_u = chibar_u gamma chi_u with
/// chi_u = (u_g1 ; i sigma^2 u_g2*).
inline SpinorMetric build_metric(const Spinor2& u1, const Spinor2& u2, const Spinor2& v1, const Spinor2& v2) {
  SpinorMetric m;
  m.src = {u1, u2, v1, v2};
  m.vu = spinor_to_vector(majorana_pair(u1, u2));
  m.vv = spinor_to_vector(majorana_pair(v1, v2));
  m.g = 0.5 * (m.vu * m.vv.transpose() + m.vv * m.vu.transpose());
  return m;
}

/// Numerical rank with singular values above tol (absolute).
inline int metric_rank(const Mat4& g, double tol = 1e-10) {
  Eigen::JacobiSVD<Mat4> svd(g);
  int r = 0;
  for (int k = 0; k < 4; ++k)
    if (svd.singularValues()[k] > tol) ++r;
  return r;
}

// Monomial table of the printed component expansion.
struct MetricMonomial {
  int mu = 0, nu = 0;
  double coef = 0.0;
  std::array<std::pair<int, int>, 4> factors{};  // (component a..d -> 0..3, spinor ug1..vg2 -> 0..3)
};

inline std::vector<MetricMonomial> load_metric_longform(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("metric long-form file missing: " + path);
  static const std::array<std::string, 4> spinors{"ug1", "ug2", "vg1", "vg2"};
  std::vector<MetricMonomial> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    MetricMonomial m;
    std::string coef;
    if (!(ls >> m.mu >> m.nu >> coef)) throw ValidationError("bad long-form line " + std::to_string(lineno));
    m.coef = std::stod(coef);
    for (auto& f : m.factors) {
      std::string tok;
      if (!(ls >> tok) || tok.size() != 5 || tok[1] != '_' || tok[0] < 'a' || tok[0] > 'd')
        throw ValidationError("bad factor on long-form line " + std::to_string(lineno));
      const auto it = std::find(spinors.begin(), spinors.end(), tok.substr(2));
      if (it == spinors.end()) throw ValidationError("bad spinor name on long-form line " + std::to_string(lineno));
      f = {tok[0] - 'a', static_cast<int>(it - spinors.begin())};
    }
    out.push_back(m);
  }
  return out;
}

/// Which table to use: verbatim, or with the g^{11}, g^{22} coefficients
/// doubled so the expansion matches the bilinear definition.
enum class LongForm { printed, corrected };

inline Mat4 metric_from_longform(const std::vector<MetricMonomial>& table, const SpinorMetric& m,
                                 LongForm which = LongForm::printed) {
  std::array<std::array<double, 4>, 4> comp{};
  for (int s = 0; s < 4; ++s) {
    comp[s] = {m.src[s][0].real(), m.src[s][0].imag(), m.src[s][1].real(), m.src[s][1].imag()};
  }
  Mat4 g = Mat4::Zero();
  for (const auto& t : table) {
    double c = t.coef;
    if (which == LongForm::corrected && t.mu == t.nu && (t.mu == 1 || t.mu == 2)) c *= 2.0;
    for (const auto& [k, s] : t.factors) c *= comp[s][k];
    g(t.mu, t.nu) += c;
  }
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < a; ++b) g(a, b) = g(b, a);
  return g;
}

// ---------------------------------------------------------------------------
// Graviton states

struct GravitonState {
  StateVector psi;  // ABCD labels
  SpinorMetric metric;
};

inline GravitonState build_graviton(const StateVector& st, const SpinorMetric& m, bool require_normalized = true) {
  if (!st.finite()) throw ValidationError("graviton state has non-finite amplitudes");
  if (require_normalized && std::abs(st.norm() - 1.0) > 1e-12) throw ValidationError("graviton state is not normalized");
  return GravitonState{st, m};
}

/// Component mu,nu of the spatial representation: scalar field times g^{mu nu}.
inline WaveField graviton_wavefield(const GravitonState& gr, int mu, int nu, const Grid3& grid) {
  StateVector x = change_basis_xyzn(gr.psi, BasisDirection::abcd_to_xyzn);
  x.amp *= gr.metric.g(mu, nu);
  return state_to_wavefield(x, grid);
}

inline KleinGordonResult graviton_klein_gordon(const QuadratureSet& q, const GravitonState& gr, int mu, int nu,
                                               double t, double dt, const Grid3& grid) {
  StateVector s = gr.psi;
  s.amp *= gr.metric.g(mu, nu);
  return klein_gordon_residual(q, s, t, dt, grid);
}

// ---------------------------------------------------------------------------
// Ricci term list

struct RicciFactor {
  bool upper = false;
  char i = 'm', j = 'n';
  std::string derivs;  // lower derivative letters
};

struct RicciTerm {
  double coef = 0.0;
  std::vector<RicciFactor> factors;
};

inline bool ricci_letter(char c) { return c == 'm' || c == 'n' || c == 'r' || c == 's' || c == 'k' || c == 'l'; }

inline RicciFactor parse_ricci_factor(const std::string& tok) {
  RicciFactor f;
  if (tok.size() < 4 || tok[1] != ':' || (tok[0] != 'U' && tok[0] != 'L'))
    throw ValidationError("bad Ricci factor '" + tok + "'");
  f.upper = tok[0] == 'U';
  f.i = tok[2];
  f.j = tok[3];
  if (tok.size() > 4) {
    if (tok[4] != '@' || tok.size() == 5) throw ValidationError("bad Ricci factor '" + tok + "'");
    f.derivs = tok.substr(5);
  }
  if (!ricci_letter(f.i) || !ricci_letter(f.j)) throw ValidationError("bad index letter in '" + tok + "'");
  for (char c : f.derivs)
    if (!ricci_letter(c)) throw ValidationError("bad derivative letter in '" + tok + "'");
  if (f.derivs.size() > 2) throw ValidationError("derivative order above 2 in '" + tok + "'");
  return f;
}

inline std::vector<RicciTerm> parse_ricci_terms(std::istream& in) {
  std::vector<RicciTerm> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    RicciTerm t;
    std::string coef, tok;
    if (!(ls >> coef)) continue;
    try {
      t.coef = std::stod(coef);
    } catch (const std::exception&) {
      throw ValidationError("bad coefficient on Ricci line " + std::to_string(lineno));
    }
    while (ls >> tok) t.factors.push_back(parse_ricci_factor(tok));
    if (t.factors.size() != 2 && t.factors.size() != 4)
      throw ValidationError("Ricci line " + std::to_string(lineno) + " must have 2 or 4 factors");
    out.push_back(t);
  }
  return out;
}

inline std::vector<RicciTerm> load_ricci_terms(const std::string& path = data_path("ricci_terms_v1.txt")) {
  std::ifstream in(path);
  if (!in) throw ConfigError("index-wiring file missing: " + path);
  return parse_ricci_terms(in);
}

inline std::vector<RicciTerm> ricci_terms() { return load_ricci_terms(); }

inline std::string serialize_ricci_terms(const std::vector<RicciTerm>& terms) {
  std::ostringstream os;
  os << "# urfock ricci terms v1\n";
  for (const auto& t : terms) {
    os << std::setprecision(17) << t.coef;
    for (const auto& f : t.factors) {
      os << ' ' << (f.upper ? 'U' : 'L') << ':' << f.i << f.j;
      if (!f.derivs.empty()) os << '@' << f.derivs;
    }
    os << '\n';
  }
  return os.str();
}

inline bool operator==(const RicciFactor& a, const RicciFactor& b) {
  return a.upper == b.upper && a.i == b.i && a.j == b.j && a.derivs == b.derivs;
}
inline bool operator==(const RicciTerm& a, const RicciTerm& b) { return a.coef == b.coef && a.factors == b.factors; }

namespace detail {

/// Summed letters of a term (everything except m and n), in first-seen order.
inline std::string dummy_letters(const RicciTerm& t) {
  std::string d;
  auto add = [&](char c) {
    if (c != 'm' && c != 'n' && d.find(c) == std::string::npos) d.push_back(c);
  };
  for (const auto& f : t.factors) {
    add(f.i);
    add(f.j);
    for (char c : f.derivs) add(c);
  }
  return d;
}

/// Calls fn(letter -> index table) for every assignment of the dummies.
inline void for_each_assignment(const RicciTerm& t, int mu, int nu, const std::function<void(const std::array<int, 128>&)>& fn) {
  const std::string d = dummy_letters(t);
  std::array<int, 128> idx{};
  idx['m'] = mu;
  idx['n'] = nu;
  int total = 1;
  for (size_t k = 0; k < d.size(); ++k) total *= 4;
  for (int code = 0; code < total; ++code) {
    int c = code;
    for (char letter : d) {
      idx[static_cast<unsigned char>(letter)] = c % 4;
      c /= 4;
    }
    fn(idx);
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Classical evaluation on a metric jet (value, first and second derivatives).

struct MetricJet {
  Mat4 g = Mat4::Zero();                       // g_{ab}
  std::array<Mat4, 4> dg{};                    // d_c g_{ab}
  std::array<std::array<Mat4, 4>, 4> ddg{};    // d_c d_e g_{ab}
};

struct InverseJet {
  Mat4 gi;
  std::array<Mat4, 4> dgi;
  std::array<std::array<Mat4, 4>, 4> ddgi;
};

inline InverseJet invert_jet(const MetricJet& j) {
  Eigen::FullPivLU<Mat4> lu(j.g);
  if (!lu.isInvertible()) throw ValidationError("singular metric");
  InverseJet r;
  r.gi = lu.inverse();
  for (int a = 0; a < 4; ++a) r.dgi[a] = -r.gi * j.dg[a] * r.gi;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      r.ddgi[a][b] = -(r.dgi[b] * j.dg[a] * r.gi + r.gi * j.ddg[a][b] * r.gi + r.gi * j.dg[a] * r.dgi[b]);
  return r;
}

inline double jet_factor(const MetricJet& j, const InverseJet& ij, const RicciFactor& f, const std::array<int, 128>& idx) {
  const int a = idx[static_cast<unsigned char>(f.i)], b = idx[static_cast<unsigned char>(f.j)];
  if (f.derivs.empty()) return f.upper ? ij.gi(a, b) : j.g(a, b);
  const int c = idx[static_cast<unsigned char>(f.derivs[0])];
  if (f.derivs.size() == 1) return f.upper ? ij.dgi[c](a, b) : j.dg[c](a, b);
  const int e = idx[static_cast<unsigned char>(f.derivs[1])];
  return f.upper ? ij.ddgi[c][e](a, b) : j.ddg[c][e](a, b);
}

/// R_{mn} from the term list with commuting classical fields.
inline Mat4 ricci_from_terms(const std::vector<RicciTerm>& terms, const MetricJet& jet) {
  const InverseJet ij = invert_jet(jet);
  Mat4 r = Mat4::Zero();
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      for (const auto& t : terms) {
        double acc = 0.0;
        detail::for_each_assignment(t, mu, nu, [&](const std::array<int, 128>& idx) {
          double p = 1.0;
          for (const auto& f : t.factors) p *= jet_factor(jet, ij, f, idx);
          acc += p;
        });
        r(mu, nu) += t.coef * acc;
      }
  return r;
}

/// Linearization about flat space of the same curvature convention:
/// 1/2 eta^{rl} (d_m d_n h_rl - d_r d_m h_nl - d_r d_n h_ml + d_r d_l h_mn).
inline Mat4 linearized_ricci(const MetricJet& jet) {
  const Mat4 e = eta4();
  Mat4 r = Mat4::Zero();
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n)
      for (int a = 0; a < 4; ++a) {
        const double w = 0.5 * e(a, a);
        r(m, n) += w * (jet.ddg[m][n](a, a) - jet.ddg[a][m](n, a) - jet.ddg[a][n](m, a) + jet.ddg[a][a](m, n));
      }
  return r;
}

/// Test fixture: g = eta + eps * diag(c_a exp(-|x - x0_a|^2 / (2 w^2))).
struct BumpMetric {
  double eps = 1e-3;
  double width = 1.0;
  std::array<double, 4> amp{{1.0, 0.7, -0.5, 0.9}};
  std::array<Eigen::Vector4d, 4> centers{{Eigen::Vector4d(0.1, 0.2, -0.1, 0.0), Eigen::Vector4d(-0.2, 0.1, 0.3, 0.1),
                                          Eigen::Vector4d(0.0, -0.3, 0.1, 0.2), Eigen::Vector4d(0.2, 0.0, 0.0, -0.2)}};

  Mat4 at(const Eigen::Vector4d& x) const {
    Mat4 g = eta4();
    for (int a = 0; a < 4; ++a) g(a, a) += eps * amp[a] * std::exp(-(x - centers[a]).squaredNorm() / (2 * width * width));
    return g;
  }

  MetricJet jet(const Eigen::Vector4d& x) const {
    MetricJet j;
    j.g = at(x);
    for (auto& m : j.dg) m.setZero();
    for (auto& row : j.ddg)
      for (auto& m : row) m.setZero();
    const double w2 = width * width;
    for (int a = 0; a < 4; ++a) {
      const Eigen::Vector4d y = x - centers[a];
      const double f = eps * amp[a] * std::exp(-y.squaredNorm() / (2 * w2));
      for (int c = 0; c < 4; ++c) {
        j.dg[c](a, a) = -y[c] / w2 * f;
        for (int e = 0; e < 4; ++e) j.ddg[c][e](a, a) = (y[c] * y[e] / (w2 * w2) - (c == e ? 1.0 / w2 : 0.0)) * f;
      }
    }
    return j;
  }
};

/// Finite-difference Ricci tensor from metric values only:
/// R_{mn} = d_m G^r_{rn} - d_r G^r_{mn} + G^l_{mn} G^r_{rl} - G^l_{rn} G^r_{ml}.
inline Mat4 ricci_finite_difference(const std::function<Mat4(const Eigen::Vector4d&)>& metric,
                                    const Eigen::Vector4d& x, double h) {
  using Gamma = std::array<Mat4, 4>;  // Gamma[r](m, n)
  auto christoffel = [&](const Eigen::Vector4d& y) {
    std::array<Mat4, 4> dg;
    for (int c = 0; c < 4; ++c) {
      Eigen::Vector4d e = Eigen::Vector4d::Zero();
      e[c] = h;
      dg[c] = (metric(y + e) - metric(y - e)) / (2 * h);
    }
    Eigen::FullPivLU<Mat4> lu(metric(y));
    if (!lu.isInvertible()) throw ValidationError("singular metric");
    const Mat4 gi = lu.inverse();
    Gamma G;
    for (int r = 0; r < 4; ++r) {
      G[r].setZero();
      for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n)
          for (int l = 0; l < 4; ++l) G[r](m, n) += 0.5 * gi(r, l) * (dg[m](n, l) + dg[n](m, l) - dg[l](m, n));
    }
    return G;
  };
  const Gamma G = christoffel(x);
  std::array<Gamma, 4> dG;  // dG[a][r](m, n)
  for (int a = 0; a < 4; ++a) {
    Eigen::Vector4d e = Eigen::Vector4d::Zero();
    e[a] = h;
    const Gamma p = christoffel(x + e), q = christoffel(x - e);
    for (int r = 0; r < 4; ++r) dG[a][r] = (p[r] - q[r]) / (2 * h);
  }
  Mat4 R = Mat4::Zero();
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n)
      for (int r = 0; r < 4; ++r) {
        R(m, n) += dG[m][r](r, n) - dG[r][r](m, n);
        for (int l = 0; l < 4; ++l) R(m, n) += G[l](m, n) * G[r](r, l) - G[l](r, n) * G[r](m, l);
      }
  return R;
}

// ---------------------------------------------------------------------------
// Quantized evaluation: factor k of a term is graviton k; d_a -> i P_a with
// P_a = eta_ab P^b; metric factors are raised and lowered with eta.

struct QuantizedRicci {
  Vec diag;                    // equal-label amplitudes over N
  std::vector<Vec> per_term;   // contribution of each term
  double norm = 0.0;
};

namespace detail {

struct GravitonDerivs {
  Vec d0;
  std::array<Vec, 4> d1;                 // i P_a psi
  std::array<std::array<Vec, 4>, 4> d2;  // i P_a i P_b psi
  Mat4 upper, lower;
};

inline GravitonDerivs graviton_derivs(const QuadratureSet& q, const GravitonState& g) {
  GravitonDerivs d;
  const Mat4 e = eta4();
  d.d0 = g.psi.amp;
  auto lowered_p = [&](int a, const Vec& v) {
    const StateVector s = apply_four_momentum(q, StateVector(g.psi.space, v), a);
    return Vec(I1 * e(a, a) * s.amp);
  };
  for (int a = 0; a < 4; ++a) d.d1[a] = lowered_p(a, d.d0);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) d.d2[a][b] = lowered_p(a, d.d1[b]);
  d.upper = g.metric.g;
  d.lower = g.metric.lowered();
  return d;
}

}  // namespace detail

inline QuantizedRicci evaluate_quantized_ricci(const std::vector<RicciTerm>& terms,
                                               const std::array<GravitonState, 4>& gravitons, int mu, int nu,
                                               const QuadratureSet& q) {
  if (mu < 0 || mu > 3 || nu < 0 || nu > 3) throw ValidationError("mu, nu must be in 0..3");
  for (const auto& g : gravitons)
    if (g.psi.space->dim() != q.space->dim()) throw ValidationError("gravitons must share the quadrature space");
  q.require_energy();
  std::array<detail::GravitonDerivs, 4> d;
  for (int k = 0; k < 4; ++k) d[k] = detail::graviton_derivs(q, gravitons[k]);
  const Index n = q.space->dim();
  QuantizedRicci out;
  out.diag = Vec::Zero(n);
  for (const auto& t : terms) {
    Vec acc = Vec::Zero(n);
    detail::for_each_assignment(t, mu, nu, [&](const std::array<int, 128>& idx) {
      cplx scal = t.coef;
      Vec prod = Vec::Ones(n);
      for (size_t k = 0; k < t.factors.size(); ++k) {
        const auto& f = t.factors[k];
        const auto& gd = d[k];
        const int a = idx[static_cast<unsigned char>(f.i)], b = idx[static_cast<unsigned char>(f.j)];
        scal *= f.upper ? gd.upper(a, b) : gd.lower(a, b);
        if (scal == cplx(0.0)) return;
        if (f.derivs.empty())
          prod = prod.cwiseProduct(gd.d0);
        else if (f.derivs.size() == 1)
          prod = prod.cwiseProduct(gd.d1[idx[static_cast<unsigned char>(f.derivs[0])]]);
        else
          prod = prod.cwiseProduct(
              gd.d2[idx[static_cast<unsigned char>(f.derivs[0])]][idx[static_cast<unsigned char>(f.derivs[1])]]);
      }
      acc += scal * prod;
    });
    out.per_term.push_back(acc);
    out.diag += acc;
  }
  out.norm = out.diag.norm();
  return out;
}

struct RicciAsymmetry {
  double max_asymmetry = 0.0;  // max_{mu,nu} |R_mn - R_nm|
  double max_value = 0.0;      // max_{mu,nu} |R_mn|
  double relative() const { return max_value > 0.0 ? max_asymmetry / max_value : 0.0; }
};

inline RicciAsymmetry quantized_ricci_asymmetry(const std::vector<RicciTerm>& terms,
                                                const std::array<GravitonState, 4>& gravitons,
                                                const QuadratureSet& q) {
  std::array<std::array<Vec, 4>, 4> r;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) r[m][n] = evaluate_quantized_ricci(terms, gravitons, m, n, q).diag;
  RicciAsymmetry a;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) {
      a.max_value = std::max(a.max_value, max_abs(r[m][n]));
      a.max_asymmetry = std::max(a.max_asymmetry, max_abs(Vec(r[m][n] - r[n][m])));
    }
  return a;
}

}  // namespace urfock

#endif  // URFOCK_GRAVITY_HPP
