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

#ifndef URFOCK_CHECKS_HPP
#define URFOCK_CHECKS_HPP

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "urfock/config.hpp"
#include "urfock/gravity.hpp"

namespace urfock {

// One line of the invariant report. Informational checks record a measured
// value (and possibly a reference bound) but never fail a run. `gate` marks
// checks that decide the matching acceptance criterion.
struct CheckResult {
  std::string id;
  std::string module;
  double measured = 0.0;
  std::optional<double> tolerance;
  std::string anchor;
  bool informational = false;
  bool lower_bound = false;  // pass when measured >= tolerance
  int criterion = 0;         // 0: module invariant outside the numbered criteria
  bool gate = true;

  bool within() const {
    if (!tolerance) return true;
    return lower_bound ? measured >= *tolerance : measured <= *tolerance;
  }
  bool failed() const { return !informational && !within(); }
  std::string status() const { return informational ? "info" : within() ? "pass" : "fail"; }
};

/// Rounds to 6 significant digits so reports are stable text.
inline double report_round(double v) {
  if (!std::isfinite(v)) return v;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.5e", v);
  return std::strtod(buf, nullptr);
}

namespace checks {

struct Sink {
  std::vector<CheckResult>* out;
  int criterion;

  void bound(std::string id, std::string module, double measured, double tol, std::string anchor) {
    out->push_back({std::move(id), std::move(module), measured, tol, std::move(anchor), false, false, criterion, true});
  }
  void at_least(std::string id, std::string module, double measured, double tol, std::string anchor) {
    out->push_back({std::move(id), std::move(module), measured, tol, std::move(anchor), false, true, criterion, true});
  }
  void info(std::string id, std::string module, double measured, std::string anchor,
            std::optional<double> ref = std::nullopt, bool gate = false) {
    out->push_back({std::move(id), std::move(module), measured, ref, std::move(anchor), true, false, criterion, gate});
  }
};

inline StateVector random_state(SpacePtr s, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  StateVector v(s);
  for (Index i = 0; i < v.amp.size(); ++i) v.amp[i] = cplx(nd(rng), nd(rng));
  v.amp.normalize();
  return v;
}

inline Spinor2 random_spinor(std::mt19937_64& rng, bool normalize = false) {
  std::normal_distribution<double> nd;
  Spinor2 s(cplx(nd(rng), nd(rng)), cplx(nd(rng), nd(rng)));
  if (normalize) s.normalize();
  return s;
}

inline double interior_dev(const SpMat& m, const FockSpace& s, int max_total) {
  return max_abs(restrict_to(m, s.interior(max_total)));
}

/// Permanent by expansion over permutations (small matrices only).
inline cplx permanent(const Mat& a) {
  const Index n = a.rows();
  if (n == 0) return 1.0;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  cplx acc = 0.0;
  do {
    cplx prod = 1.0;
    for (Index i = 0; i < n; ++i) prod *= a(i, p[i]);
    acc += prod;
  } while (std::next_permutation(p.begin(), p.end()));
  return acc;
}

/// <m| U_F |n> for a passive transformation with c -> u c.
inline cplx permanent_amplitude(const Mat& u, const Occupation& m, const Occupation& n) {
  std::vector<int> rows, cols;
  double norm = 1.0;
  for (size_t i = 0; i < m.size(); ++i) {
    for (int k = 0; k < m[i]; ++k) rows.push_back(static_cast<int>(i));
    norm *= std::tgamma(m[i] + 1.0);
  }
  for (size_t j = 0; j < n.size(); ++j) {
    for (int k = 0; k < n[j]; ++k) cols.push_back(static_cast<int>(j));
    norm *= std::tgamma(n[j] + 1.0);
  }
  if (rows.size() != cols.size()) return 0.0;
  Mat sub(rows.size(), cols.size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) sub(i, j) = u(rows[i], cols[j]);
  return permanent(sub) / std::sqrt(norm);
}

// ---------------------------------------------------------------------------

inline void criterion_1(Sink k) {
  auto s = build_space(6);
  const auto q = build_quadratures(s, Labels::abcd, -1);
  const int top = s->n_max() - 1;
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    SpMat c = commutator(q.Q(i), q.P(i));
    c -= I1 * sparse_identity(s->dim());
    worst = std::max(worst, interior_dev(c, *s, top));
  }
  k.bound("modeops.canonical_xp", "modeops", worst, 1e-12, "[X,P_x]=[Y,P_y]=[Z,P_z]=i");
  double lad = 0.0;
  for (int i = 0; i < 4; ++i) {
    SpMat c = commutator(q.Ai[i], adjoint(q.Ai[i]));
    c -= sparse_identity(s->dim());
    lad = std::max(lad, interior_dev(c, *s, top));
  }
  k.bound("modeops.canonical_axyzn", "modeops", lad, 1e-12, "[A_x,A_x^dag]=...=1");
  double raw = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      SpMat c = commutator(ladder_ABCD(*s, i, Kind::annihilate), ladder_ABCD(*s, j, Kind::create));
      if (i == j) c -= sparse_identity(s->dim());
      raw = std::max(raw, interior_dev(c, *s, top));
    }
  k.bound("fock.canonical_abcd", "fock", raw, 1e-12, "[A,A^dag]=[B,B^dag]=...=1");
}

inline void criterion_2(Sink k) {
  auto s = build_space(8);
  const auto q = build_quadratures(s);
  const Mat e2 = Mat(q.E2);
  k.bound("modeops.energy_square", "modeops", max_abs(Mat(q.E * q.E - e2)), 1e-9, "E=+sqrt(P_x^2+P_y^2+P_z^2)");
  const Mat p2 = Mat(SpMat(q.Px * q.Px)) + Mat(SpMat(q.Py * q.Py)) + Mat(SpMat(q.Pz * q.Pz));
  k.bound("modeops.e2_sum", "modeops", max_abs(Mat(e2 - p2)), 1e-12, "E^2=P_x^2+P_y^2+P_z^2");
  Eigen::SelfAdjointEigenSolver<RMat> es(RMat(e2.real()));
  k.at_least("modeops.e2_min_eigenvalue", "modeops", es.eigenvalues().minCoeff(), -1e-10, "E^2>=0");
  double herm = 0.0;
  for (int i = 0; i < 3; ++i) {
    herm = std::max(herm, max_abs(SpMat(q.Q(i) - adjoint(q.Q(i)))));
    herm = std::max(herm, max_abs(SpMat(q.P(i) - adjoint(q.P(i)))));
  }
  herm = std::max(herm, max_abs(Mat(q.E - q.E.adjoint())));
  k.bound("modeops.hermitian", "modeops", herm, 1e-12, "X=1/sqrt2(A_x+A_x^dag), P_x=-i/sqrt2(A_x-A_x^dag)");
  // E^2 vac = 1/2 (3 vac - sqrt2 (|2x> + |2y> + |2z>)) in xyzn labels
  {
    auto sx = build_space(4);
    const auto qx = build_quadratures(sx, Labels::xyzn, -1);
    const Vec got = qx.E2 * StateVector::vacuum(sx).amp;
    Vec want = Vec::Zero(sx->dim());
    want[0] = 1.5;
    for (int a = 0; a < 3; ++a) {
      Occupation o(4, 0);
      o[a] = 2;
      want[sx->rank(o)] = -std::sqrt(2.0) / 2.0;
    }
    k.bound("modeops.e2_vacuum", "modeops", max_abs(Vec(got - want)), 1e-14,
            "-A_xA_x+2A_x^dag A_x-A_x^dag A_x^dag...+3");
  }
  {
    auto sa = build_space(4);
    const auto qa = build_quadratures(sa);
    const StateVector vac = StateVector::vacuum(sa);
    const StateVector px = apply_four_momentum(qa, vac, 1);
    Vec want = Vec::Zero(sa->dim());
    const double sg[4] = {-1, -1, 1, 1};
    for (int j = 0; j < 4; ++j) {
      Occupation o(4, 0);
      o[j] = 1;
      want[sa->rank(o)] = -I1 / (2.0 * std::sqrt(2.0)) * sg[j];
    }
    k.bound("modeops.px_vacuum", "modeops", max_abs(Vec(px.amp - want)), 1e-14, "P^x_ABCD|Psi>=|P^x Psi>");
    const StateVector pc = momentum_coefficients(vac, 0);
    k.bound("modeops.px_coefficient_map", "modeops", max_abs(Vec(pc.amp - px.amp)), 1e-14,
            "psi(N_A+1,...)sqrt(N_A+1)...");
    const StateVector e0 = apply_four_momentum(qa, vac, 0);
    k.bound("modeops.e_vacuum_norm", "modeops", std::abs(e0.amp.squaredNorm() - 1.5), 1e-12, "<vac|E^2|vac>=3/2");
  }
  const SpMat n1 = total_number(*s), n2 = total_number_xyzn(q);
  k.bound("modeops.number_two_forms", "modeops", max_abs(SpMat(n1 - n2)), 1e-12,
          "N=A_x^dag A_x+...+A_n^dag A_n=A^dag A+B^dag B+C^dag C+D^dag D");
  k.info("modeops.number_e2_commutator", "modeops", max_abs(commutator(n1, q.E2)), "[N,E^2]");
}

inline void criterion_3(Sink k) {
  auto s = build_space(6);
  const auto q = build_quadratures(s, Labels::abcd, -1);
  const SpMat hd = dirac_hamiltonian(q);
  const SpMat hd2 = SpMat(hd * hd);
  const SpMat want = kron(q.E2, sparse_identity(4));
  const SpMat diff = SpMat(hd2 - want);
  const auto inner = extended_interior(*s, s->n_max() - 1);
  k.bound("internal.dirac_square_interior", "internal", max_abs(restrict_to(diff, inner)), 1e-10,
          "H_D=-gamma^0(gamma^1P_x+gamma^2P_y+gamma^3P_z)");
  k.info("internal.dirac_square_full", "internal", max_abs(diff), "H_D^2=E^2 (boundary shell included)");
  k.bound("internal.dirac_hermitian", "internal", max_abs(SpMat(hd - adjoint(hd))), 1e-12, "H_D hermitian");
  k.bound("algebra.clifford", "algebra", clifford_defect(build_dirac()), 1e-14,
          "gamma^mu gamma^nu+gamma^nu gamma^mu=2eta^{mu nu}");
}

inline void criterion_4(Sink k, const RunConfig& cfg) {
  {
    Grid3 g(8.0, 0.01, 1u << 20);
    const RMat t = hermite_table(12, g.axis());
    const RMat gram = t * g.weights().asDiagonal() * t.transpose();
    k.bound("spatial.hermite_orthonormal", "spatial", max_abs(RMat(gram - RMat::Identity(13, 13))), 1e-8,
            "int f_n f_m dx=delta_nm");
  }
  const Grid3 grid(cfg.grid_l, cfg.grid_h, cfg.grid_cap);
  {
    auto s = build_space(6);
    std::mt19937_64 rng(20260401);
    StateVector st = random_state(s, rng);
    for (Index i = 0; i < s->dim(); ++i)
      if (s->unrank(i)[3] != 0) st.amp[i] = 0.0;  // one representative per spatial label
    st.amp.normalize();
    const WaveField f = state_to_wavefield(st, grid);
    k.bound("spatial.parseval", "spatial", std::abs(f.quadrature_norm() - 1.0), 1e-5,
            "sum psi(N_xyzn) f_N(x)=Psi(x)");
    const WaveField v = state_to_wavefield(StateVector::vacuum(s), grid);
    k.bound("spatial.vacuum_norm", "spatial", std::abs(v.quadrature_norm() - 1.0), 1e-6, "f_0 Gaussian");
  }
  auto s = build_space(6);
  const auto q = build_quadratures(s);
  const StateVector vac = StateVector::vacuum(s);
  const double dt = 1e-3;
  const auto r1 = klein_gordon_residual(q, vac, 0.0, dt, grid);
  const Grid3 fine(cfg.grid_l, cfg.grid_h / 2, cfg.grid_cap);
  const auto r2 = klein_gordon_residual(q, vac, 0.0, dt / 2, fine);
  k.bound("dynamics.klein_gordon_vacuum", "dynamics", r1.residual, 5e-3, "(d_t^2-d_x^2-d_y^2-d_z^2)Psi=0");
  k.at_least("dynamics.klein_gordon_refinement", "dynamics", r1.residual / r2.residual, 3.0,
             "(d_t^2-d_x^2-d_y^2-d_z^2)Psi=0");
  StateVector mix(s);
  mix.amp[0] = 0.8;
  mix.amp[s->rank({1, 0, 0, 0})] = 0.6 * I1;
  const auto r3 = klein_gordon_residual(q, mix, 0.0, dt, grid);
  k.bound("dynamics.klein_gordon_combination", "dynamics", r3.residual, 5e-3, "(d_t^2-d_x^2-d_y^2-d_z^2)Psi=0");
  const auto r4 = klein_gordon_residual(q, vac, 0.3, dt, grid);
  k.info("dynamics.klein_gordon_t0.3", "dynamics", r4.residual,
         "(d_t^2-d_x^2-d_y^2-d_z^2)Psi=0 (t>0, boundary shell populated)");
}

inline void criterion_5(Sink k) {
  auto s = build_space(4);
  const Mat u = xyzn_matrix().cast<cplx>();
  const SpMat uf = mode_transform(*s, u);
  double perm = 0.0;
  for (Index j : s->sector(2))
    for (Index i : s->sector(2))
      perm = std::max(perm, std::abs(Mat(uf)(i, j) - permanent_amplitude(u, s->unrank(i), s->unrank(j))));
  k.bound("fock.permanent_two_particle", "fock", perm, 1e-12, "|N_A,N_B,N_C,N_D> <-> |N_x,N_y,N_z,N_n>");
  std::mt19937_64 rng(7);
  const StateVector st = random_state(s, rng);
  const StateVector back =
      change_basis_xyzn(change_basis_xyzn(st, BasisDirection::abcd_to_xyzn), BasisDirection::xyzn_to_abcd);
  k.bound("fock.round_trip", "fock", max_abs(Vec(back.amp - st.amp)), 1e-12, "A_x=1/2(A+B-C-D)");
  // sector leakage: amplitude moved between different total occupations
  double leak = 0.0;
  const Mat d = Mat(uf);
  for (Index i = 0; i < s->dim(); ++i)
    for (Index j = 0; j < s->dim(); ++j)
      if (s->total(i) != s->total(j)) leak = std::max(leak, std::abs(d(i, j)));
  k.bound("fock.number_conservation", "fock", leak, 0.0, "N=A_x^dag A_x+...=A^dag A+...");
  k.bound("fock.number_commutes", "fock", max_abs(commutator(number_operator(*s), uf)), 1e-10,
          "N=A_x^dag A_x+...=A^dag A+...");
  const SpMat ufd = adjoint(uf);
  k.bound("fock.transform_unitary", "fock", max_abs(SpMat(SpMat(ufd * uf) - sparse_identity(s->dim()))), 1e-12,
          "A_x=1/2(A+B-C-D)");
}

inline void criterion_6(Sink k) {
  const auto& e = eps3_table();
  int bad_pairs = 0;
  for (int i = 1; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j) {
      int lines = 0;
      for (const auto& l : kFanoLines)
        if (std::count(l.begin(), l.end(), i) && std::count(l.begin(), l.end(), j)) ++lines;
      if (lines != 1) ++bad_pairs;
    }
  k.bound("algebra.fano_pairs", "algebra", bad_pairs, 0.0, "e_i e_j=-delta_ij+eps_ijk e_k");
  int lines_ok = 0;
  for (const auto& l : kFanoLines) lines_ok += e[l[0]][l[1]][l[2]] == 1;
  k.bound("algebra.fano_lines", "algebra", 7 - lines_ok, 0.0, "eps_123=eps_246=eps_435=eps_367=eps_651=eps_572=eps_471=1");
  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd;
  double comp = 0.0, conj = 0.0;
  for (int n = 0; n < 1000; ++n) {
    Octonion x, y;
    for (int i = 0; i < 8; ++i) {
      x.r[i] = nd(rng);
      y.r[i] = nd(rng);
    }
    const Octonion xy = oct_mul(x, y);
    comp = std::max(comp, std::abs(xy.norm() - x.norm() * y.norm()) / (x.norm() * y.norm()));
    conj = std::max(conj, (xy.conj() - oct_mul(y.conj(), x.conj())).norm());
  }
  k.bound("algebra.composition", "algebra", comp, 1e-12, "|xy|=|x||y|");
  k.bound("algebra.conjugation", "algebra", conj, 1e-12, "(xy)*=y*x*");
  double alt = 0.0, asym = 0.0;
  for (int i = 1; i < 8; ++i)
    for (int j = 1; j < 8; ++j) {
      alt = std::max(alt, associator(Octonion::unit(i), Octonion::unit(i), Octonion::unit(j)).norm());
      alt = std::max(alt, associator(Octonion::unit(j), Octonion::unit(i), Octonion::unit(i)).norm());
      for (int l = 1; l < 8; ++l) {
        const Octonion a = associator(Octonion::unit(i), Octonion::unit(j), Octonion::unit(l));
        asym = std::max(asym, (a + associator(Octonion::unit(j), Octonion::unit(i), Octonion::unit(l))).norm());
        asym = std::max(asym, (a + associator(Octonion::unit(i), Octonion::unit(l), Octonion::unit(j))).norm());
      }
    }
  k.bound("algebra.alternative", "algebra", alt, 0.0, "{e_i,e_i,e_j}=0");
  k.bound("algebra.associator_antisymmetric", "algebra", asym, 0.0,
          "{e_i,e_j,e_k}=(e_i e_j)e_k-e_i(e_j e_k)=-2eps_ijkl e_l");
  const auto rep = derive_eps4();
  k.bound("algebra.eps4_antisymmetric", "algebra", rep.totally_antisymmetric ? 0.0 : 1.0, 0.0,
          "{e_i,e_j,e_k}=-2eps_ijkl e_l");
  k.info("algebra.eps4_discrepancies", "algebra", static_cast<double>(rep.discrepancies.size()),
         "eps_1247=eps_1265=eps_2345=eps_2376=eps_3146=eps_3157=eps_4576=1");
}

inline void criterion_7(Sink k) {
  const auto gens = printed_g2();
  const auto rep = g2_closure_report(gens);
  k.bound("algebra.g2_antisymmetric", "algebra", rep.max_antisymmetry, 1e-14, "g2 generators: 14 real antisymmetric 8x8");
  k.bound("algebra.g2_rank_deficit", "algebra", 14 - rep.rank_of_span, 0.0, "g2 generators: span rank 14");
  k.info("algebra.g2_closure_defect", "algebra", rep.closure_defect, "[L_i,L_j] in span; L(xy)=L(x)y+xL(y)", 1e-10);
  double worst = 0.0;
  for (double d : rep.derivation_defect) worst = std::max(worst, d);
  k.info("algebra.g2_derivation_defect", "algebra", worst, "[L_i,L_j] in span; L(xy)=L(x)y+xL(y)");
  const auto jac = jacobi_check(printed_structure_constants());
  k.bound("algebra.bracket_antisymmetric", "algebra", jac.antisymmetry, 0.0, "[x,y]=-[y,x]");
  k.bound("algebra.jacobi_gl3", "algebra", jac.gl3_residual, 1e-14, "[g_k^l,g_m^n]=delta_m^l g_k^n-delta_k^n g_m^l");
  k.info("algebra.jacobi_full", "algebra", jac.max_residual, "[a_m,b^n]=g_m^n, [a_m,a_n]=-2/sqrt3 eps_mnl b^l");
  k.info("algebra.jacobi_mod_trace", "algebra", jac.max_residual_mod_trace,
         "[a_m,b^n]=g_m^n, [a_m,a_n]=-2/sqrt3 eps_mnl b^l (sum g_k^k=0)");
}

inline void criterion_8(Sink k) {
  ObjectRegistry reg(2, build_space(2));
  const auto rep = parabose_report(build_green_components(reg));
  k.bound("manybody.parabose_trilinear", "manybody", rep.trilinear, 1e-10, "[1/2{a_r,a_s^dag},a_t]=-delta_st a_r");
  k.bound("manybody.parabose_pair_annihilators", "manybody", rep.pair_annihilators, 1e-10, "[{a_r,a_s},a_t]=0");
  k.bound("manybody.parabose_pair_creators", "manybody", rep.pair_creators, 1e-10,
          "[{a_r^dag,a_s^dag},a_t^dag]=0");
  k.bound("manybody.green_same_object", "manybody", rep.same_object, 1e-10, "[b_r^a,b_s^a dag]=delta_rs");
  k.bound("manybody.green_mixed", "manybody", rep.mixed, 1e-12, "{b_r^a,b_s^b dag}=0 for a!=b");
  k.bound("manybody.sign_same_object", "manybody", rep.sign_same, 1e-12, "b_r^a dag b_s^a dag|0> symmetric in r,s");
  k.bound("manybody.sign_different_objects", "manybody", rep.sign_mixed, 1e-12,
          "b_r^a dag b_s^b dag|0>=-b_s^b dag b_r^a dag|0>, a!=b");
}

inline void criterion_9(Sink k) {
  auto s = build_space(2);
  const cplx al(0.6, 0.0), be(0.0, 0.8), ga(0.28, 0.96), de(0.96, -0.28);
  StateVector p1(s), p2(s);
  p1.amp[s->rank({1, 0, 0, 0})] = al;
  p1.amp[s->rank({0, 1, 0, 0})] = be;
  p2.amp[s->rank({1, 0, 0, 0})] = ga;
  p2.amp[s->rank({0, 0, 1, 0})] = de;
  const MultiObjectState out = interaction_apply(1.0, {p1, p2});
  Vec want = Vec::Zero(out.amp.size());
  want[out.diag_index(s->rank({1, 0, 0, 0}))] = al * ga;
  k.bound("manybody.diagonal_matching", "manybody", max_abs(Vec(out.amp - want)), 0.0,
          "h_W psi^1(N)...psi^M(N), equal labels only");
  const auto q = build_quadratures(s);
  std::mt19937_64 rng(5);
  const MultiObjectState ps = product_state({random_state(s, rng), random_state(s, rng)});
  const MultiObjectState ev = evolve_interacting(q, 1.0, ps, 1.0);
  k.bound("manybody.interacting_unitary", "manybody", std::abs(ev.norm() - 1.0), 1e-10, "e^{-iH_G t}");
  k.at_least("manybody.schmidt_entropy", "manybody", schmidt_entropy(ev), 0.01, "f_W^M(N^1,...,N^M,t)");
  const MultiObjectState free = evolve_interacting(q, 0.0, ps, 1.0);
  k.info("manybody.schmidt_entropy_free", "manybody", schmidt_entropy(free), "h_W=0");
  k.bound("manybody.free_multibody", "manybody", free_multibody_check(q, ev), 1e-10,
          "sum_m (E_m^2-P_xm^2-P_ym^2-P_zm^2)|Psi>=0");
}

inline void criterion_10(Sink k) {
  std::mt19937_64 rng(13);
  double null_dev = 0.0, v0_min = 1.0, two_min = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const Vec4 v = spinor_to_vector(majorana_single(random_spinor(rng, true)));
    null_dev = std::max(null_dev, std::abs(minkowski_dot(v, v)));
    v0_min = std::min(v0_min, v[0]);
    const Vec4 w = spinor_to_vector(majorana_pair(random_spinor(rng), random_spinor(rng)));
    two_min = std::min(two_min, std::min(minkowski_dot(w, w), w[0]));
  }
  k.bound("internal.null_vector", "internal", null_dev, 1e-12, "chi=1/sqrt2(phi; i sigma^2 phi*)");
  k.at_least("internal.future_directed", "internal", std::min(v0_min, two_min), 0.0, "A^mu_chi=chibar gamma^mu chi");
  const auto table = load_metric_longform(data_path("metric_longform_v1.txt"));
  double printed = 0.0, corrected = 0.0;
  int max_rank = 0;
  for (int n = 0; n < 1000; ++n) {
    const SpinorMetric m =
        build_metric(random_spinor(rng), random_spinor(rng), random_spinor(rng), random_spinor(rng));
    const double scale = std::max(1.0, max_abs(m.g));
    printed = std::max(printed, max_abs(Mat4(metric_from_longform(table, m, LongForm::printed) - m.g)) / scale);
    corrected = std::max(corrected, max_abs(Mat4(metric_from_longform(table, m, LongForm::corrected) - m.g)) / scale);
    max_rank = std::max(max_rank, metric_rank(m.g, 1e-10 * scale));
  }
  k.info("gravity.longform_printed", "gravity", printed, "g^{00}_chi=a_ug1^2 a_vg1^2+...", 1e-12, true);
  k.bound("gravity.longform_corrected", "gravity", corrected, 1e-12,
          "g^{mu nu}_chi=1/2(chibar_u gamma^mu chi_u chibar_v gamma^nu chi_v+...)");
  k.bound("gravity.metric_rank", "gravity", max_rank, 2.0, "g^{mu nu}_chi symmetrized product");
  const Spinor2 e1(1.0, 0.0);
  const SpinorMetric unit = build_metric(e1, e1, e1, e1);
  Mat4 want = Mat4::Zero();
  want(0, 0) = want(0, 3) = want(3, 0) = want(3, 3) = 4.0;
  k.info("gravity.unit_metric_pair", "gravity", max_abs(Mat4(unit.g - want)), "u_g1=u_g2=v_g1=v_g2=(1,0)");
  const Spinor2 z(0.0, 0.0);
  const SpinorMetric single = build_metric(e1, z, e1, z);
  Mat4 want1 = Mat4::Zero();
  want1(0, 0) = want1(0, 3) = want1(3, 0) = want1(3, 3) = 1.0;
  k.bound("gravity.unit_metric", "gravity", max_abs(Mat4(single.g - want1)), 1e-15,
          "g^{00}=g^{03}=g^{30}=g^{33}=1");
}

inline void criterion_11(Sink k) {
  const auto terms = ricci_terms();
  const Eigen::Vector4d x(0.1, -0.3, 0.25, 0.05);
  {
    MetricJet flat;
    flat.g = eta4();
    for (auto& m : flat.dg) m.setZero();
    for (auto& r : flat.ddg)
      for (auto& m : r) m.setZero();
    const Mat4 rt = ricci_from_terms(terms, flat);
    const Mat4 rf = ricci_finite_difference([](const Eigen::Vector4d&) { return eta4(); }, x, 0.05);
    k.bound("gravity.flat_ricci", "gravity", std::max(max_abs(rt), max_abs(rf)), 0.0, "R_{mu nu}[eta]=0");
  }
  BumpMetric bm;
  bm.eps = 1e-3;
  const Mat4 rt = ricci_from_terms(terms, bm.jet(x));
  const Mat4 rf = ricci_finite_difference([&](const Eigen::Vector4d& y) { return bm.at(y); }, x, 0.05);
  k.bound("gravity.ricci_vs_finite_difference", "gravity", max_abs(Mat4(rt - rf)) / max_abs(rf), 0.05,
          "R_{mu nu}=d_mu Gamma^rho_{rho nu}-d_rho Gamma^rho_{mu nu}+...");
  const Mat4 rl = linearized_ricci(bm.jet(x));
  k.info("gravity.ricci_linearized", "gravity", max_abs(Mat4(rt - rl)) / max_abs(rl), "linearized wave-operator form");
  BumpMetric strong = bm;
  strong.eps = 0.3;
  const Mat4 st = ricci_from_terms(terms, strong.jet(x));
  const Mat4 sf = ricci_finite_difference([&](const Eigen::Vector4d& y) { return strong.at(y); }, x, 0.01);
  k.info("gravity.ricci_nonlinear_eps0.3", "gravity", max_abs(Mat4(st - sf)) / max_abs(sf),
         "R_{mu nu} final expanded form at eps=0.3");
  k.info("gravity.ricci_classical_asymmetry", "gravity", max_abs(Mat4(st - st.transpose())) / max_abs(st),
         "R_{mu nu}=R_{nu mu}");

  // quantized evaluator
  auto s = build_space(3);
  const auto q = build_quadratures(s);
  std::mt19937_64 rng(17);
  std::array<GravitonState, 4> g;
  for (auto& gr : g)
    gr = build_graviton(random_state(s, rng), build_metric(random_spinor(rng, true), random_spinor(rng, true),
                                                           random_spinor(rng, true), random_spinor(rng, true)));
  const cplx lam(1.7, -0.4);
  double lin = 0.0;
  for (int f = 0; f < 4; ++f) {
    auto h = g;
    h[f].psi.amp *= lam;
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) {
        const auto a = evaluate_quantized_ricci(terms, g, mu, nu, q);
        const auto b = evaluate_quantized_ricci(terms, h, mu, nu, q);
        for (size_t t = 0; t < terms.size(); ++t) {
          const cplx scale = f < static_cast<int>(terms[t].factors.size()) ? lam : cplx(1.0);
          const double ref = std::max(1.0, max_abs(a.per_term[t]));
          lin = std::max(lin, max_abs(Vec(b.per_term[t] - scale * a.per_term[t])) / ref);
        }
      }
  }
  k.bound("gravity.quantized_multilinear", "gravity", lin, 1e-13, "R^psi_{mu nu}(t)=1/2[sum_N P_1mu g^{rho lambda}...]");
  std::array<GravitonState, 4> zero = g;
  for (auto& gr : zero) gr.psi.amp.setZero();
  double zn = 0.0;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) zn = std::max(zn, evaluate_quantized_ricci(terms, zero, mu, nu, q).norm);
  k.bound("gravity.quantized_zero", "gravity", zn, 0.0, "g^{mu nu}(x,t) -> |Psi_g(t)>");
  std::array<GravitonState, 4> same{g[0], g[0], g[0], g[0]};
  k.info("gravity.quantized_asymmetry", "gravity", quantized_ricci_asymmetry(terms, same, q).relative(),
         "R^psi_{mu nu}=R^psi_{nu mu}");
}

/// Module invariants that sit outside the numbered criteria.
inline void module_invariants(Sink k, const RunConfig& cfg) {
  auto s = build_space(cfg.n_max, cfg.n_max_cap);
  long bad = 0;
  for (Index i = 0; i < s->dim(); ++i) bad += s->rank(s->unrank(i)) != i;
  k.bound("fock.rank_bijection", "fock", static_cast<double>(bad), 0.0, "|N_A,N_B,N_C,N_D>");
  k.bound("fock.dimension", "fock",
          std::abs(static_cast<double>(s->dim()) - static_cast<double>(s->binomial(cfg.n_max + 4, 4))), 0.0,
          "dim=C(n_max+4,4)");
  const bool dense = cfg.n_max <= cfg.dense_cap;
  const auto q = build_quadratures(s, Labels::abcd, cfg.dense_cap);
  {
    const Mat w = abcd_from_raw();
    double d = 0.0;
    for (int i = 0; i < 4; ++i) {
      SpMat acc(s->dim(), s->dim());
      for (int j = 0; j < 4; ++j) acc += w(i, j) * ladder(*s, j, Kind::annihilate);
      d = std::max(d, max_abs(SpMat(acc - ladder_ABCD(*s, i, Kind::annihilate))));
    }
    k.bound("fock.abcd_combination", "fock", d, 1e-14, "A=1/sqrt2(a+ib)");
  }
  if (!dense) {
    k.info("dynamics.skipped_dense", "dynamics", cfg.n_max, "n_max above the dense eigen cap");
    return;
  }
  std::mt19937_64 rng(19);
  const StateVector st = random_state(s, rng);
  double norm_dev = 0.0, e_dev = 0.0, e2_dev = 0.0;
  const cplx e0 = st.amp.dot(q.E * st.amp), e20 = st.amp.dot(q.E2 * st.amp);
  for (double t : {0.1, 1.0, 10.0}) {
    const StateVector o = evolve_fock(q, st, t);
    norm_dev = std::max(norm_dev, std::abs(o.norm() - 1.0));
    e_dev = std::max(e_dev, std::abs(o.amp.dot(q.E * o.amp) - e0));
    e2_dev = std::max(e2_dev, std::abs(o.amp.dot(q.E2 * o.amp) - e20));
  }
  k.bound("dynamics.evolve_unitary", "dynamics", norm_dev, 1e-10, "e^{-i sqrt(P_x^2+P_y^2+P_z^2) t}");
  k.bound("dynamics.energy_conserved", "dynamics", std::max(e_dev, e2_dev), 1e-9, "e^{-iEt}");
  const StateVector a = evolve_fock(q, evolve_fock(q, st, 0.4), 0.7), b = evolve_fock(q, st, 1.1);
  k.bound("dynamics.composition", "dynamics", max_abs(Vec(a.amp - b.amp)), 1e-9, "e^{-iEt}");
  {
    auto s4 = build_space(std::min(cfg.n_max, 4));
    const auto q4 = build_quadratures(s4);
    const StateVector v = StateVector::vacuum(s4);
    const StateVector ser = evolve_series(q4, v, 0.5, 8), ex = evolve_fock(q4, v, 0.5);
    k.info("dynamics.series_order8", "dynamics", max_abs(Vec(ser.amp - ex.amp)),
           "sum_k (-iEt)^k/k! |Psi>", 1e-6);
  }
  {
    // generic alternatives: real blocks against complex phases
    BlockRotationGenerator g{RVec::LinSpaced(3, 0.5, 2.0)};
    std::normal_distribution<double> nd;
    RVec phi(6);
    for (Index i = 0; i < 6; ++i) phi[i] = nd(rng);
    const RVec r = evolve_generic_real(g, phi, 0.9);
    const RVec c = evolve_generic(g, GenericAlternativeState::from_real(phi), 0.9).to_real();
    k.bound("dynamics.generic_pairing", "dynamics", max_abs(RVec(r - c)), 1e-14, "phi_j=phi_{2j-1}+i phi_{2j}");
    GenericAlternativeState one;
    one.phi = Vec::Ones(1);
    const auto half = evolve_generic(BlockRotationGenerator{RVec::Ones(1)}, one, std::numbers::pi);
    k.bound("dynamics.generic_half_turn", "dynamics", std::abs(half.phi[0] + 1.0), 1e-15,
            "phi(t)=e^{-iHt}phi(t_0)");
  }
  {
    auto s2 = build_space(std::min(cfg.n_max, 3));
    const auto q2 = build_quadratures(s2);
    const auto ker = dirac_kernel(q2, 1e-8);
    double res = 0.0;
    const Mat lam = dirac_lambda(q2);
    for (const auto& v : ker.states) res = std::max(res, (lam * v).norm());
    k.bound("internal.dirac_kernel_residual", "internal", res, 1e-8 * std::max(1.0, ker.largest),
            "Lambda|Psi_Gamma(t)>=0");
    k.info("internal.dirac_kernel_dimension", "internal", static_cast<double>(ker.states.size()), "Lambda|Psi_Gamma(t)>=0");
    k.info("internal.dirac_smallest_singular", "internal", ker.smallest, "Lambda^dag Lambda");
  }
  {
    auto s2 = build_space(std::min(cfg.n_max, 2));
    const auto qx = build_quadratures(s2, Labels::xyzn);
    const auto prop = build_propagator(qx);
    const std::array<double, 3> p{0.3, -0.2, 0.5}, r{-0.4, 0.1, 0.2};
    k.bound("manybody.propagator_causal", "manybody", std::abs(propagator(prop, p, r, 0.0, 0.5)), 0.0,
            "theta(t_1-t_2)=1 for t_1>=t_2");
    const cplx dd = propagator(prop, p, p, 0.2, 0.2);
    k.at_least("manybody.propagator_diagonal", "manybody", dd.real() - std::abs(dd.imag()), 0.0,
               "Delta(x,x,t,t)>=0");
    const Grid3 grid(cfg.grid_l, cfg.grid_h, cfg.grid_cap);
    double worst = 0.0;
    for (Index idx : prop.labels) {
      const StateVector b = StateVector::basis(s2, s2->unrank(idx));
      const WaveField f = state_to_wavefield(b, grid);
      for (Index c : {grid.n / 2, grid.n / 2 + 7, grid.n / 3})
        worst = std::max(worst, std::abs(propagator_apply(prop, f, 0.0, 0.0, c, grid.n / 2 - 3, c) -
                                         f.at(c, grid.n / 2 - 3, c)));
    }
    k.bound("manybody.propagator_kernel", "manybody", worst, 2e-3, "Delta(x',x,t',t)=<0|T{Psi(x',t')Psi^dag(x,t)}|0>");
  }
}

}  // namespace checks

inline std::vector<CheckResult> run_criterion(int c, const RunConfig& cfg) {
  std::vector<CheckResult> out;
  checks::Sink k{&out, c};
  switch (c) {
    case 0: checks::module_invariants(k, cfg); break;
    case 1: checks::criterion_1(k); break;
    case 2: checks::criterion_2(k); break;
    case 3: checks::criterion_3(k); break;
    case 4: checks::criterion_4(k, cfg); break;
    case 5: checks::criterion_5(k); break;
    case 6: checks::criterion_6(k); break;
    case 7: checks::criterion_7(k); break;
    case 8: checks::criterion_8(k); break;
    case 9: checks::criterion_9(k); break;
    case 10: checks::criterion_10(k); break;
    case 11: checks::criterion_11(k); break;
    default: throw ValidationError("unknown criterion " + std::to_string(c));
  }
  for (auto& r : out) {
    r.measured = report_round(r.measured);
    if (r.tolerance) r.tolerance = report_round(*r.tolerance);
  }
  return out;
}

inline constexpr int kCriterionCount = 11;

inline std::vector<CheckResult> run_checks(const RunConfig& cfg) {
  cfg.validate();
  std::vector<CheckResult> all;
  for (int c = 0; c <= kCriterionCount; ++c) {
    auto part = run_criterion(c, cfg);
    all.insert(all.end(), part.begin(), part.end());
  }
  return all;
}

}  // namespace urfock

#endif  // URFOCK_CHECKS_HPP
