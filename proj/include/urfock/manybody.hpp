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

#ifndef URFOCK_MANYBODY_HPP
#define URFOCK_MANYBODY_HPP

#include <array>
#include <functional>
#include <variant>
#include <vector>

#include "urfock/dynamics.hpp"
#include "urfock/internal.hpp"

namespace urfock {

inline constexpr Index kProductDimCap = 4096;

// ---------------------------------------------------------------------------
// M objects sharing one truncated space. Product index: the first object is
// the most significant digit, matching kron(A, B).

struct ObjectRegistry {
  int M = 1;
  SpacePtr space;

  ObjectRegistry(int objects, SpacePtr s, Index cap = kProductDimCap) : M(objects), space(std::move(s)) {
    if (M < 1) throw ConfigError("object count must be >= 1");
    if (product_dim() > cap) throw ConfigError("M-fold product exceeds the dimension cap");
  }
  Index product_dim() const {
    Index d = 1;
    for (int m = 0; m < M; ++m) d *= space->dim();
    return d;
  }
};

struct MultiObjectState {
  SpacePtr space;
  int M = 1;
  Vec amp;

  Index diag_index(Index n) const {
    Index idx = 0;
    for (int m = 0; m < M; ++m) idx = idx * space->dim() + n;
    return idx;
  }
  double norm() const { return amp.norm(); }
};

inline MultiObjectState product_state(const std::vector<StateVector>& states) {
  if (states.empty()) throw ValidationError("need at least one state");
  MultiObjectState out;
  out.space = states[0].space;
  out.M = static_cast<int>(states.size());
  Vec acc = states[0].amp;
  for (size_t m = 1; m < states.size(); ++m) {
    if (states[m].space->dim() != out.space->dim()) throw ValidationError("states must share one space");
    Vec next(acc.size() * states[m].amp.size());
    for (Index i = 0; i < acc.size(); ++i) next.segment(i * states[m].amp.size(), states[m].amp.size()) = acc[i] * states[m].amp;
    acc = std::move(next);
  }
  out.amp = std::move(acc);
  return out;
}

/// Embeds a one-object operator at slot m of the M-fold product.
inline SpMat embed(const SpMat& op, int slot, int M, Index dim) {
  SpMat acc = slot == 0 ? op : sparse_identity(dim);
  for (int k = 1; k < M; ++k) acc = kron(acc, k == slot ? op : sparse_identity(dim));
  return acc;
}

// ---------------------------------------------------------------------------
// Green components b_r^alpha = (prod_{beta<alpha} (-1)^{N_beta}) a_r^(alpha).

struct GreenComponents {
  ObjectRegistry reg;
  // b[alpha][r], annihilators
  std::vector<std::array<SpMat, 4>> b;

  SpMat a(int r) const {
    SpMat s(b[0][r].rows(), b[0][r].cols());
    for (const auto& ba : b) s += ba[r];
    return s;
  }
  /// Product indices whose every object has total occupation <= max_total.
  std::vector<Index> interior(int max_total) const {
    std::vector<Index> out;
    const Index d = reg.space->dim();
    for (Index i = 0; i < reg.product_dim(); ++i) {
      Index rest = i;
      bool ok = true;
      for (int m = 0; m < reg.M; ++m) {
        if (reg.space->total(rest % d) > max_total) ok = false;
        rest /= d;
      }
      if (ok) out.push_back(i);
    }
    return out;
  }
};

inline SpMat parity_operator(const FockSpace& s) {
  std::vector<Triplet> t;
  for (Index i = 0; i < s.dim(); ++i) t.emplace_back(i, i, s.total(i) % 2 == 0 ? 1.0 : -1.0);
  SpMat p(s.dim(), s.dim());
  p.setFromTriplets(t.begin(), t.end());
  return p;
}

inline GreenComponents build_green_components(const ObjectRegistry& reg) {
  GreenComponents g{reg, {}};
  const FockSpace& s = *reg.space;
  const SpMat par = parity_operator(s);
  const SpMat id = sparse_identity(s.dim());
  g.b.resize(reg.M);
  for (int alpha = 0; alpha < reg.M; ++alpha)
    for (int r = 0; r < 4; ++r) {
      const SpMat lad = ladder(s, r, Kind::annihilate);
      SpMat acc = alpha == 0 ? lad : par;
      for (int k = 1; k < reg.M; ++k) acc = kron(acc, k < alpha ? par : k == alpha ? lad : id);
      g.b[alpha][r] = acc;
    }
  return g;
}

/// Columns restricted to `cols`, all rows kept: max entry.
inline double max_abs_columns(const SpMat& m, const std::vector<Index>& cols) {
  std::vector<char> keep(m.cols(), 0);
  for (Index c : cols) keep[c] = 1;
  double r = 0.0;
  for (Index k = 0; k < m.outerSize(); ++k)
    for (SpMat::InnerIterator it(m, k); it; ++it)
      if (keep[it.col()]) r = std::max(r, std::abs(it.value()));
  return r;
}

struct ParaboseReport {
  double trilinear = 0.0;        // [1/2 {a_r, a_s^dag}, a_t] + delta_st a_r
  double pair_annihilators = 0.0;  // [{a_r, a_s}, a_t]
  double pair_creators = 0.0;    // [{a_r^dag, a_s^dag}, a_t^dag]
  double same_object = 0.0;      // [b_r^a, b_s^a dag] - delta_rs
  double mixed = 0.0;            // {b^a, b^b dag} and {b^a, b^b}, a != b
  double sign_same = 0.0;        // b_r^a dag b_s^a dag |0> symmetric in r,s
  double sign_mixed = 0.0;       // b_r^a dag b_s^b dag |0> antisymmetric under exchange
};

inline ParaboseReport parabose_report(const GreenComponents& g) {
  ParaboseReport rep;
  const int M = g.reg.M;
  const auto cols = g.interior(g.reg.space->n_max() - 1);
  std::array<SpMat, 4> a, ad;
  for (int r = 0; r < 4; ++r) {
    a[r] = g.a(r);
    ad[r] = adjoint(a[r]);
  }
  for (int r = 0; r < 4; ++r)
    for (int s = 0; s < 4; ++s) {
      const SpMat half = SpMat(0.5 * anticommutator(a[r], ad[s]));
      const SpMat aa = anticommutator(a[r], a[s]);
      const SpMat cc = anticommutator(ad[r], ad[s]);
      for (int t = 0; t < 4; ++t) {
        SpMat tri = commutator(half, a[t]);
        if (s == t) tri += a[r];
        rep.trilinear = std::max(rep.trilinear, max_abs_columns(tri, cols));
        rep.pair_annihilators = std::max(rep.pair_annihilators, max_abs_columns(commutator(aa, a[t]), cols));
        rep.pair_creators = std::max(rep.pair_creators, max_abs_columns(commutator(cc, ad[t]), cols));
      }
    }
  const Index d = g.reg.product_dim();
  for (int al = 0; al < M; ++al)
    for (int be = 0; be < M; ++be)
      for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s) {
          const SpMat bsd = adjoint(g.b[be][s]);
          if (al == be) {
            SpMat c = commutator(g.b[al][r], bsd);
            if (r == s) c -= sparse_identity(d);
            rep.same_object = std::max(rep.same_object, max_abs_columns(c, cols));
          } else {
            rep.mixed = std::max(rep.mixed, max_abs(anticommutator(g.b[al][r], bsd)));
            rep.mixed = std::max(rep.mixed, max_abs(anticommutator(g.b[al][r], g.b[be][s])));
          }
        }
  Vec vac = Vec::Zero(d);
  vac[0] = 1.0;
  for (int al = 0; al < M; ++al)
    for (int be = 0; be < M; ++be)
      for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s) {
          const Vec x = adjoint(g.b[al][r]) * (adjoint(g.b[be][s]) * vac);
          const Vec y = adjoint(g.b[be][s]) * (adjoint(g.b[al][r]) * vac);
          if (al == be)
            rep.sign_same = std::max(rep.sign_same, max_abs(Vec(x - y)));
          else
            rep.sign_mixed = std::max(rep.sign_mixed, max_abs(Vec(x + y)));
        }
  return rep;
}

// ---------------------------------------------------------------------------
// Diagonal-matching interaction.

/// Weight h_W(N): either a constant or one real value per basis label.
using InteractionWeight = std::variant<double, RVec>;

inline double weight_at(const InteractionWeight& w, Index n) {
  if (const double* c = std::get_if<double>(&w)) return *c;
  return std::get<RVec>(w)[n];
}

inline MultiObjectState interaction_apply(const InteractionWeight& h, const std::vector<StateVector>& states) {
  if (states.empty()) throw ValidationError("need at least one state");
  MultiObjectState out;
  out.space = states[0].space;
  out.M = static_cast<int>(states.size());
  Index total = 1;
  for (const auto& s : states) {
    if (s.space->dim() != out.space->dim()) throw ValidationError("states must share one space");
    total *= s.space->dim();
  }
  if (const RVec* v = std::get_if<RVec>(&h); v && v->size() != out.space->dim())
    throw ValidationError("weight length does not match the space");
  out.amp = Vec::Zero(total);
  for (Index n = 0; n < out.space->dim(); ++n) {
    cplx p = weight_at(h, n);
    for (const auto& s : states) p *= s.amp[n];
    out.amp[out.diag_index(n)] = p;
  }
  return out;
}

/// H_G = sum_m E_m + H_W on the M-fold product (dense).
inline Mat interacting_hamiltonian(const QuadratureSet& q, const InteractionWeight& h, int M) {
  q.require_energy();
  ObjectRegistry reg(M, q.space);
  const Index d = q.space->dim();
  const SpMat e = to_sparse(q.E);
  SpMat acc(reg.product_dim(), reg.product_dim());
  for (int m = 0; m < M; ++m) acc += embed(e, m, M, d);
  Mat hg = Mat(acc);
  MultiObjectState probe{q.space, M, Vec()};
  for (Index n = 0; n < d; ++n) hg(probe.diag_index(n), probe.diag_index(n)) += weight_at(h, n);
  return hg;
}

inline MultiObjectState evolve_interacting(const QuadratureSet& q, const InteractionWeight& h,
                                           const MultiObjectState& st, double t) {
  if (const RVec* v = std::get_if<RVec>(&h); v && !v->allFinite())
    throw ValidationError("interaction weight must be finite and real");
  Mat hg = interacting_hamiltonian(q, h, st.M);
  hg = 0.5 * (hg + hg.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Mat> es(hg);
  if (es.info() != Eigen::Success) throw NumericalError("H_G eigendecomposition failed");
  Vec c = es.eigenvectors().adjoint() * st.amp;
  for (Index k = 0; k < c.size(); ++k) c[k] *= std::exp(-I1 * es.eigenvalues()[k] * t);
  MultiObjectState out = st;
  out.amp = es.eigenvectors() * c;
  return out;
}

/// Von Neumann entropy of the first object versus the rest.
inline double schmidt_entropy(const MultiObjectState& st) {
  const Index d = st.space->dim();
  const Index rest = st.amp.size() / d;
  const Mat m = Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      st.amp.data(), d, rest);
  Eigen::JacobiSVD<Mat> svd(m);
  const RVec s = svd.singularValues();
  const double tot = s.squaredNorm();
  double h = 0.0;
  for (Index k = 0; k < s.size(); ++k) {
    const double p = s[k] * s[k] / tot;
    if (p > 1e-300) h -= p * std::log(p);
  }
  return h;
}

/// Norm of sum_m (E_m^2 - Px_m^2 - Py_m^2 - Pz_m^2) |Psi>.
inline double free_multibody_check(const QuadratureSet& q, const MultiObjectState& st) {
  q.require_energy();
  const Index d = q.space->dim();
  const SpMat k = to_sparse(Mat(q.E * q.E - Mat(q.E2)));
  Vec acc = Vec::Zero(st.amp.size());
  for (int m = 0; m < st.M; ++m) acc += embed(k, m, st.M, d) * st.amp;
  return acc.norm();
}

// ---------------------------------------------------------------------------
// Layer two: occupation numbers over layer-one labels.

inline constexpr int kLayerTwoObjectCap = 3;
inline constexpr int kLayerTwoNMax = 2;

struct LayerTwoSpace {
  SpacePtr layer_one;
  std::shared_ptr<const FockSpace> space;  // modes = layer-one labels

  SpMat field(Index label, Kind kind) const { return ladder(*space, static_cast<int>(label), kind); }
};

inline LayerTwoSpace build_layer_two(int n_max_one = kLayerTwoNMax, int objects = kLayerTwoObjectCap) {
  if (n_max_one > kLayerTwoNMax) throw ConfigError("layer-one n_max above the layer-two cap");
  if (objects > kLayerTwoObjectCap) throw ConfigError("object count above the layer-two cap");
  LayerTwoSpace l;
  l.layer_one = build_space(n_max_one);
  l.space = std::make_shared<const FockSpace>(objects, static_cast<int>(l.layer_one->dim()), objects);
  return l;
}

/// Second-quantized sum_{N,N'} op(N,N') psi^dag(N) psi(N').
inline SpMat second_quantize(const LayerTwoSpace& l, const Mat& op) {
  const Index d = l.layer_one->dim();
  std::vector<SpMat> ann(d);
  for (Index n = 0; n < d; ++n) ann[n] = l.field(n, Kind::annihilate);
  SpMat acc(l.space->dim(), l.space->dim());
  for (Index a = 0; a < d; ++a)
    for (Index b = 0; b < d; ++b)
      if (std::abs(op(a, b)) > 0.0) acc += op(a, b) * SpMat(adjoint(ann[a]) * ann[b]);
  return acc;
}

// ---------------------------------------------------------------------------
// Propagator. Labels are xyzn; the sum is restricted to one N_n sector, which
// E leaves invariant, so the equal-time kernel is a projector.

struct PropagatorKernel {
  SpacePtr space;
  std::vector<Index> labels;  // basis indices in the chosen N_n sector
  EnergySpectrum spectrum;    // of E^2 restricted to the sector
};

inline PropagatorKernel build_propagator(const QuadratureSet& q_xyzn, int nn_sector = 0) {
  if (q_xyzn.labels != Labels::xyzn) throw ValidationError("propagator expects xyzn labels");
  PropagatorKernel k;
  k.space = q_xyzn.space;
  for (Index i = 0; i < k.space->dim(); ++i)
    if (k.space->unrank(i)[3] == nn_sector) k.labels.push_back(i);
  if (k.labels.empty()) throw ValidationError("empty N_n sector");
  k.spectrum = energy_spectrum(to_sparse(restrict_to(q_xyzn.E2, k.labels)));
  return k;
}

/// Delta(x', x, t', t) with theta(0) = 1.
inline cplx propagator(const PropagatorKernel& k, const std::array<double, 3>& xp,
                       const std::array<double, 3>& x, double tp, double t) {
  if (tp < t) return 0.0;
  const FockSpace& s = *k.space;
  const Index n = static_cast<Index>(k.labels.size());
  Vec fp(n), f(n);
  for (Index i = 0; i < n; ++i) {
    const Occupation& o = s.unrank(k.labels[i]);
    fp[i] = hermite_fn(o[0], xp[0]) * hermite_fn(o[1], xp[1]) * hermite_fn(o[2], xp[2]);
    f[i] = hermite_fn(o[0], x[0]) * hermite_fn(o[1], x[1]) * hermite_fn(o[2], x[2]);
  }
  const Mat v = k.spectrum.vectors.cast<cplx>();
  Vec c = v.transpose() * f;
  for (Index j = 0; j < c.size(); ++j) c[j] *= std::exp(-I1 * k.spectrum.e[j] * (tp - t));
  return fp.dot(v * c);  // dot conjugates fp, which is real
}

/// int Delta(x', x, t', t) g(x) d^3x for a separable wavefield g, evaluated
/// at grid point x' = (ix, iy, iz). The 3-D trapezoid sum factorizes.
inline cplx propagator_apply(const PropagatorKernel& k, const WaveField& g, double tp, double t,
                             Index ix, Index iy, Index iz) {
  if (tp < t) return 0.0;
  const FockSpace& s = *k.space;
  const RVec w = g.grid.weights();
  const RMat gram = g.table * w.asDiagonal() * g.table.transpose();
  const Index n = static_cast<Index>(k.labels.size());
  Vec proj(n);
  Vec fp(n);
  for (Index i = 0; i < n; ++i) {
    const Occupation& o = s.unrank(k.labels[i]);
    cplx acc = 0.0;
    for (const auto& [key, c] : g.coeffs) {
      const auto [a, b, d] = key;
      acc += c * gram(o[0], a) * gram(o[1], b) * gram(o[2], d);
    }
    proj[i] = acc;
    fp[i] = g.table(o[0], ix) * g.table(o[1], iy) * g.table(o[2], iz);
  }
  const Mat v = k.spectrum.vectors.cast<cplx>();
  Vec c = v.transpose() * proj;
  for (Index j = 0; j < c.size(); ++j) c[j] *= std::exp(-I1 * k.spectrum.e[j] * (tp - t));
  return (fp.transpose() * (v * c))(0);
}

// ---------------------------------------------------------------------------
// Correspondence quantizer: field -> state, d^mu -> i P^mu, pointwise
// product -> equal-label product.

struct FieldFactor {
  int field = 0;             // which input state
  std::vector<int> derivs;   // contravariant indices mu of d^mu, at most two
};

struct FieldTerm {
  cplx coef = 1.0;
  std::vector<FieldFactor> factors;
};

struct FieldExpression {
  std::vector<FieldTerm> terms;
};

/// i^k P^{mu_1} ... P^{mu_k} applied to one state.
inline StateVector apply_derivatives(const QuadratureSet& q, const StateVector& st, const std::vector<int>& derivs) {
  if (derivs.size() > 2) throw ValidationError("unsupported expression shape: derivative order above 2");
  StateVector out = st;
  for (auto it = derivs.rbegin(); it != derivs.rend(); ++it) {
    out = apply_four_momentum(q, out, *it);
    out.amp *= I1;
  }
  return out;
}

/// Evaluates the expression; result holds the equal-label amplitudes over N.
inline Vec quantize_expression(const QuadratureSet& q, const FieldExpression& expr,
                               const std::vector<StateVector>& fields) {
  Vec out = Vec::Zero(q.space->dim());
  for (const auto& term : expr.terms) {
    if (term.factors.empty()) throw ValidationError("unsupported expression shape: empty term");
    Vec prod = Vec::Constant(q.space->dim(), term.coef);
    for (const auto& f : term.factors) {
      if (f.field < 0 || f.field >= static_cast<int>(fields.size())) throw ValidationError("field index out of range");
      prod = prod.cwiseProduct(apply_derivatives(q, fields[f.field], f.derivs).amp);
    }
    out += prod;
  }
  return out;
}

/// Lifts equal-label amplitudes over N to the M-fold product state.
inline MultiObjectState diagonal_state(SpacePtr space, int M, const Vec& diag) {
  MultiObjectState s{space, M, Vec()};
  Index total = 1;
  for (int m = 0; m < M; ++m) total *= space->dim();
  s.amp = Vec::Zero(total);
  for (Index n = 0; n < diag.size(); ++n) s.amp[s.diag_index(n)] = diag[n];
  return s;
}

// ---------------------------------------------------------------------------
// Electromagnetic coupling demo.

struct EmDemoResult {
  Mat free;      // -Lambda psi_D, rows = Fock labels, cols = Dirac index
  Mat coupling;  // psi_A(N) (-gamma^mu A_mu) psi_D(N)
  Vec4 photon_vector;  // A^mu
};

/// The fermion is a Fock (x) Dirac-4 vector (Fock index major).
inline EmDemoResult em_demo(const QuadratureSet& q, const StateVector& photon, const Spinor4& chi, const Vec& fermion) {
  const Index d = q.space->dim();
  if (fermion.size() != 4 * d) throw ValidationError("fermion vector must be dim*4 long");
  if (photon.space->dim() != d) throw ValidationError("photon and fermion must share a space");
  const DiracMatrices g = build_dirac();
  EmDemoResult r;
  r.photon_vector = spinor_to_vector(chi);
  const Vec lam = dirac_lambda(q) * fermion;
  r.free = Mat(d, 4);
  r.coupling = Mat(d, 4);
  Eigen::Matrix4cd slash = Eigen::Matrix4cd::Zero();
  for (int mu = 0; mu < 4; ++mu) slash -= (g.eta(mu, mu) * r.photon_vector[mu]) * g.gamma[mu];
  for (Index n = 0; n < d; ++n) {
    const Spinor4 psi = fermion.segment<4>(4 * n);
    r.free.row(n) = -lam.segment<4>(4 * n).transpose();
    r.coupling.row(n) = (photon.amp[n] * (slash * psi)).transpose();
  }
  return r;
}

}  // namespace urfock

#endif  // URFOCK_MANYBODY_HPP
