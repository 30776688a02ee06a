// Copyright 2026 The Grasslab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "grasslab/jets.hpp"

#include "grasslab/pairs.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace grasslab {

namespace {

double spectral_norm_on(const RMat& op, const Subspace& v) {
  if (v.dim() == 0) return 0.0;
  Eigen::JacobiSVD<RMat> svd(RMat(op * v.basis()));
  return svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
}

std::vector<RMat> bold_basis_ops(const TwoJet& jet) {
  std::vector<RMat> ops;
  ops.reserve(static_cast<std::size_t>(jet.dim()));
  for (int i = 0; i < jet.dim(); ++i) ops.push_back(bold_h(jet, jet.w.vec(i)));
  return ops;
}

}  // namespace

TwoJet make_jet(const CurvatureModel& model, const Subspace& w,
                std::vector<std::vector<CVec>> h) {
  const int d = w.dim();
  if (static_cast<int>(h.size()) != d)
    throw std::invalid_argument("make_jet: h has wrong shape");
  for (int i = 0; i < d; ++i) {
    if (static_cast<int>(h[i].size()) != d)
      throw std::invalid_argument("make_jet: h has wrong shape");
    for (int j = 0; j < d; ++j) {
      if (h[i][j].size() != w.n()) throw std::invalid_argument("make_jet: entry size");
      if ((h[i][j] - h[j][i]).norm() != 0.0)
        throw std::invalid_argument("make_jet: h not symmetric");
      if (w.project(h[i][j]).norm() > 1e-10 * std::max(1.0, h[i][j].norm()))
        throw std::invalid_argument("make_jet: h not normal to W");
    }
  }
  return TwoJet{model, w, std::move(h)};
}

TwoJet zero_jet(const CurvatureModel& model, const Subspace& w) {
  std::vector<std::vector<CVec>> h(
      static_cast<std::size_t>(w.dim()),
      std::vector<CVec>(static_cast<std::size_t>(w.dim()), CVec::Zero(w.n())));
  return TwoJet{model, w, std::move(h)};
}

TwoJet rebase(const TwoJet& jet, const Subspace& new_w) {
  if (!same_subspace(jet.w, new_w, 1e-8))
    throw std::invalid_argument("rebase: subspaces differ");
  const int d = jet.dim();
  const RMat c = jet.w.basis().transpose() * new_w.basis();  // old coords of new basis
  std::vector<std::vector<CVec>> h(static_cast<std::size_t>(d),
                                   std::vector<CVec>(static_cast<std::size_t>(d)));
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      CVec acc = CVec::Zero(jet.w.n());
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) acc += c(i, a) * c(j, b) * jet.h[i][j];
      h[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = acc;
    }
  }
  // Exact symmetry after round-off.
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b)
      h[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] =
          h[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  return TwoJet{jet.model, new_w, std::move(h)};
}

Subspace first_normal_space(const TwoJet& jet) {
  std::vector<CVec> vs;
  for (int i = 0; i < jet.dim(); ++i)
    for (int j = i; j < jet.dim(); ++j) vs.push_back(jet.h[i][j]);
  return Subspace::span(jet.w.n(), vs);
}

RMat bold_h(const TwoJet& jet, const CVec& x) {
  const int d = jet.dim();
  const RVec rx = realify(x);
  const RVec coords = jet.w.basis().transpose() * rx;
  if ((rx - jet.w.basis() * coords).norm() > kRankTol * std::max(1.0, x.norm()))
    throw std::invalid_argument("bold_h: x not in W");
  RMat m = RMat::Zero(2 * jet.w.n(), 2 * jet.w.n());
  for (int j = 0; j < d; ++j) {
    CVec hxj = CVec::Zero(jet.w.n());
    for (int i = 0; i < d; ++i) hxj += coords(i) * jet.h[i][j];
    m += wedge(jet.w.vec(j), hxj);
  }
  return m;
}

Subspace kernel_of_h(const TwoJet& jet) {
  const int d = jet.dim();
  const int n = jet.w.n();
  if (d == 0) return Subspace::zero(n);
  // Joint kernel of x -> bold_h_x.
  RMat cols(4 * n * n, d);
  const std::vector<RMat> ops = bold_basis_ops(jet);
  for (int i = 0; i < d; ++i)
    cols.col(i) = Eigen::Map<const RVec>(ops[static_cast<std::size_t>(i)].data(), 4 * n * n);
  const RMat null_bold = nullspace(cols, 1e-8);
  // Kernel through h directly.
  RMat hstack(2 * n * d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      hstack.block(2 * n * j, i, 2 * n, 1) = realify(jet.h[i][j]);
  const RMat null_h = nullspace(hstack, 1e-8);
  const Subspace via_bold = Subspace::span_real_cols(n, RMat(jet.w.basis() * null_bold));
  const Subspace via_h = Subspace::span_real_cols(n, RMat(jet.w.basis() * null_h));
  if (!same_subspace(via_bold, via_h, 1e-7))
    throw std::runtime_error("kernel_of_h: characterizations disagree");
  return via_bold;
}

SemiParallelVerdict is_semi_parallel(const TwoJet& jet, bool test_on_full_space) {
  const auto civ = is_curvature_invariant(jet.model, jet.w);
  if (!civ.ok) throw std::invalid_argument("is_semi_parallel: W not curvature invariant");
  const int d = jet.dim();
  SemiParallelVerdict verdict{true, 0.0, 0.0};
  if (d == 0) return verdict;
  const std::vector<RMat> hops = bold_basis_ops(jet);
  const Subspace v = jet.w.direct_sum(first_normal_space(jet));
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const RMat r = curvature_endomorphism(jet.model, jet.w.vec(i), jet.w.vec(j));
      const RMat lhs_core =
          r - (hops[static_cast<std::size_t>(i)] * hops[static_cast<std::size_t>(j)] -
               hops[static_cast<std::size_t>(j)] * hops[static_cast<std::size_t>(i)]);
      for (int k = 0; k < d; ++k) {
        const RVec wv = lhs_core * jet.w.basis().col(k);
        const RVec coords = jet.w.basis().transpose() * wv;
        verdict.gauss_projection_error = std::max(
            verdict.gauss_projection_error, (wv - jet.w.basis() * coords).norm());
        RMat lhs = RMat::Zero(lhs_core.rows(), lhs_core.cols());
        for (int m = 0; m < d; ++m) lhs += coords(m) * hops[static_cast<std::size_t>(m)];
        const RMat rhs = lhs_core * hops[static_cast<std::size_t>(k)] -
                         hops[static_cast<std::size_t>(k)] * lhs_core;
        const RMat diff = lhs - rhs;
        const double res = test_on_full_space
                               ? Eigen::JacobiSVD<RMat>(diff).singularValues()(0)
                               : spectral_norm_on(diff, v);
        verdict.residual = std::max(verdict.residual, res);
      }
    }
  }
  verdict.ok = verdict.residual <= kResidualTol;
  return verdict;
}

namespace {

struct WedgeTerm {
  double coef;
  RVec u;
  RVec v;
};

RMat curvature_of_terms(const CurvatureModel& model, const std::vector<WedgeTerm>& terms) {
  const int n = model.n;
  RMat acc = RMat::Zero(2 * n, 2 * n);
  for (const auto& t : terms)
    acc += t.coef * curvature_endomorphism(model, complexify(t.u), complexify(t.v));
  return acc;
}

std::vector<WedgeTerm> apply_derivation(const RMat& a, const std::vector<WedgeTerm>& terms) {
  std::vector<WedgeTerm> out;
  out.reserve(terms.size() * 2);
  for (const auto& t : terms) {
    out.push_back({t.coef, a * t.u, t.v});
    out.push_back({t.coef, t.u, a * t.v});
  }
  return out;
}

}  // namespace

HigherVerdict check_higher_conditions(const TwoJet& jet, int kmax, bool mixed,
                                      std::uint64_t seed) {
  if (kmax < 1 || kmax > 6)
    throw std::invalid_argument("check_higher_conditions: kmax must be in 1..6");
  const auto civ = is_curvature_invariant(jet.model, jet.w);
  if (!civ.ok)
    throw std::invalid_argument("check_higher_conditions: W not curvature invariant");
  const int d = jet.dim();
  HigherVerdict verdict;
  verdict.residuals.assign(static_cast<std::size_t>(kmax), 0.0);
  verdict.ok = true;
  if (d == 0) return verdict;

  const std::vector<RMat> hops = bold_basis_ops(jet);
  const Subspace v = jet.w.direct_sum(first_normal_space(jet));

  for (int a = 0; a < d; ++a) {
    const RMat& ha = hops[static_cast<std::size_t>(a)];
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) {
        RMat lhs = curvature_endomorphism(jet.model, jet.w.vec(i), jet.w.vec(j));
        // Powers of the derivation on y^z via the binomial expansion.
        std::vector<RVec> yk(static_cast<std::size_t>(kmax) + 1),
            zk(static_cast<std::size_t>(kmax) + 1);
        yk[0] = jet.w.basis().col(i);
        zk[0] = jet.w.basis().col(j);
        for (int k = 1; k <= kmax; ++k) {
          yk[static_cast<std::size_t>(k)] = ha * yk[static_cast<std::size_t>(k - 1)];
          zk[static_cast<std::size_t>(k)] = ha * zk[static_cast<std::size_t>(k - 1)];
        }
        for (int k = 1; k <= kmax; ++k) {
          lhs = ha * lhs - lhs * ha;
          std::vector<WedgeTerm> terms;
          double binom = 1.0;
          for (int m = 0; m <= k; ++m) {
            terms.push_back({binom, yk[static_cast<std::size_t>(m)],
                             zk[static_cast<std::size_t>(k - m)]});
            binom = binom * (k - m) / (m + 1);
          }
          const RMat rhs = curvature_of_terms(jet.model, terms);
          const double res = spectral_norm_on(RMat(lhs - rhs), v);
          auto& slot = verdict.residuals[static_cast<std::size_t>(k - 1)];
          slot = std::max(slot, res);
        }
      }
    }
  }
  for (int k = 1; k <= kmax; ++k) {
    if (verdict.residuals[static_cast<std::size_t>(k - 1)] > kResidualTol) {
      verdict.ok = false;
      verdict.first_fail_k = k;
      break;
    }
  }

  if (mixed && d >= 1) {
    Rng rng(seed);
    for (int t = 0; t < 10; ++t) {
      const int k = 2 + (t % 2);
      std::vector<RMat> chain;
      for (int s = 0; s < k; ++s) {
        RVec coords = rng.normal_rvec(d);
        coords /= coords.norm();
        chain.push_back(bold_h(jet, complexify(RVec(jet.w.basis() * coords))));
      }
      const int i = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(d));
      int j = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(d));
      RMat lhs = curvature_endomorphism(jet.model, jet.w.vec(i), jet.w.vec(j));
      std::vector<WedgeTerm> terms{{1.0, jet.w.basis().col(i), jet.w.basis().col(j)}};
      for (int s = k - 1; s >= 0; --s) {
        const RMat& hx = chain[static_cast<std::size_t>(s)];
        lhs = hx * lhs - lhs * hx;
        terms = apply_derivation(hx, terms);
      }
      const RMat rhs = curvature_of_terms(jet.model, terms);
      verdict.mixed_residual =
          std::max(verdict.mixed_residual, spectral_norm_on(RMat(lhs - rhs), v));
    }
    if (verdict.mixed_residual > kResidualTol && verdict.ok) {
      verdict.ok = false;
      verdict.first_fail_k = -1;  // mixed variant
    }
  }
  return verdict;
}

IntegrabilityVerdict is_integrable_jet(const TwoJet& jet) {
  IntegrabilityVerdict out;
  const auto civ = is_curvature_invariant(jet.model, jet.w);
  if (!civ.ok) {
    out.failing_clause = "curvature-invariance";
    out.residual = civ.residual;
    return out;
  }
  const auto sp = is_semi_parallel(jet);
  if (!sp.ok) {
    out.failing_clause = "semi-parallel";
    out.residual = sp.residual;
    return out;
  }
  const auto hc = check_higher_conditions(jet, 4, /*mixed=*/false);
  if (!hc.ok) {
    out.failing_clause = "cond2:k=" + std::to_string(hc.first_fail_k);
    out.residual = hc.first_fail_k >= 1
                       ? hc.residuals[static_cast<std::size_t>(hc.first_fail_k - 1)]
                       : hc.mixed_residual;
    return out;
  }
  out.ok = true;
  return out;
}

DerivedPair derived_pair(const TwoJet& jet) {
  const auto verdict = is_integrable_jet(jet);
  if (!verdict.ok)
    throw std::invalid_argument("derived_pair: jet is not integrable (" +
                                verdict.failing_clause + ")");
  DerivedPair out{jet.w, first_normal_space(jet)};
  const auto pv = is_ci_pair(jet.model, out.w, out.u);
  if (!pv.ok)
    throw std::runtime_error(
        "derived_pair: integrable jet produced a non-invariant pair (implementation fault)");
  return out;
}

ObstructionReport dec_obstruction(const CurvatureModel& m, const Subspace& w,
                                  const Subspace& u) {
  const auto pv = is_ci_pair(m, w, u);
  if (!pv.ok)
    throw std::invalid_argument("dec_obstruction: (W,U) is not an orthogonal CI pair");
  ObstructionReport rep;
  const GradedStabilizer stab = graded_stabilizer(m, w, u);
  rep.minus_dim = static_cast<int>(stab.minus.size());

  const Subspace v = w.direct_sum(u);
  std::vector<RMat> gens;
  auto add_restricted = [&](const Subspace& s) {
    const RMat pv_mat = v.basis() * v.basis().transpose();
    for (int i = 0; i < s.dim(); ++i)
      for (int j = i + 1; j < s.dim(); ++j) {
        const RMat r = curvature_endomorphism(m, s.vec(i), s.vec(j));
        if (invariance_residual(r, v) > 1e-6)
          throw std::runtime_error("dec_obstruction: V not invariant under h_W, h_U");
        gens.push_back(pv_mat * r * pv_mat);
      }
  };
  add_restricted(w);
  add_restricted(u);
  const OperatorAlgebra h = OperatorAlgebra::closure(m.n, gens);
  rep.hom_dim = static_cast<int>(intertwiner_space(h, w, u).size());
  rep.verdict = (rep.minus_dim == 0 && rep.hom_dim == 0) ? Obstruction::Blocked
                                                         : Obstruction::Inconclusive;
  return rep;
}

CurvedFlatReport curved_flat_normal_form(const TwoJet& jet, std::uint64_t seed) {
  if (jet.dim() != 2)
    throw std::invalid_argument("curved_flat_normal_form: dim W must equal the rank (2)");
  const auto iso = is_curvature_isotropic(jet.model, jet.w);
  if (!iso.ok)
    throw std::invalid_argument("curved_flat_normal_form: W not curvature isotropic");
  const auto sp = is_semi_parallel(jet);
  if (!sp.ok) throw std::invalid_argument("curved_flat_normal_form: jet not semi-parallel");

  CurvedFlatReport rep;
  const std::vector<RMat> hops = bold_basis_ops(jet);
  const RMat comm = hops[0] * hops[1] - hops[1] * hops[0];
  if (comm.norm() > 1e-8 * std::max(1.0, hops[0].norm() * hops[1].norm())) {
    rep.failing_clause = "commutation";
    return rep;
  }

  // Candidate bases: eigenframes of (bold_h_g)^2 restricted to W for generic g.
  std::vector<Subspace> candidates;
  candidates.push_back(jet.w);
  Rng rng(seed);
  for (int attempt = 0; attempt < 8; ++attempt) {
    double t;
    if (attempt == 0) t = 0.9;  // deterministic first probes
    else if (attempt == 1) t = 0.37;
    else t = rng.uniform(0.0, M_PI);
    const RMat m = std::cos(t) * hops[0] + std::sin(t) * hops[1];
    const RMat s = jet.w.basis().transpose() * (m * m) * jet.w.basis();
    Eigen::SelfAdjointEigenSolver<RMat> eig(RMat(0.5 * (s + s.transpose())));
    const double gap = std::abs(eig.eigenvalues()(1) - eig.eigenvalues()(0));
    if (gap > 1e-10 * (1.0 + eig.eigenvalues().cwiseAbs().maxCoeff())) {
      candidates.insert(candidates.begin(),
                        Subspace::from_orthonormal(
                            jet.w.n(), RMat(jet.w.basis() * eig.eigenvectors())));
      break;
    }
  }

  const TwoJet adapted = rebase(jet, candidates.front());
  rep.x = {adapted.w.vec(0), adapted.w.vec(1)};
  rep.eta = {adapted.h[0][0], adapted.h[1][1]};
  rep.residual_cfl0 = adapted.h[0][1].norm();
  rep.residual_cfl1 = std::abs(inner(rep.eta[0], rep.eta[1]));
  auto rnorm = [&](const CVec& a, const CVec& b) {
    return curvature_endomorphism(jet.model, a, b).norm();
  };
  for (int i = 0; i < 2; ++i) {
    const int j = 1 - i;
    rep.residual_cfl2 = std::max(rep.residual_cfl2, rnorm(rep.x[static_cast<std::size_t>(i)],
                                                          rep.x[static_cast<std::size_t>(j)]));
    if (rep.eta[static_cast<std::size_t>(i)].norm() > 0)
      rep.residual_cfl2 =
          std::max(rep.residual_cfl2, rnorm(rep.x[static_cast<std::size_t>(j)],
                                            rep.eta[static_cast<std::size_t>(i)]));
    if (rep.eta[static_cast<std::size_t>(i)].norm() > 0 &&
        rep.eta[static_cast<std::size_t>(j)].norm() > 0)
      rep.residual_cfl2 =
          std::max(rep.residual_cfl2, rnorm(rep.eta[static_cast<std::size_t>(i)],
                                            rep.eta[static_cast<std::size_t>(j)]));
  }
  if (rep.residual_cfl0 > 1e-9) rep.failing_clause = "cfl0";
  else if (rep.residual_cfl1 > 1e-9) rep.failing_clause = "cfl1";
  else if (rep.residual_cfl2 > 1e-9) rep.failing_clause = "cfl2";
  rep.ok = rep.failing_clause.empty();
  return rep;
}

SphereReport sphere_criterion(const TwoJet& jet) {
  const Subspace u = first_normal_space(jet);
  if (u.dim() != 1)
    throw std::invalid_argument("sphere_criterion: first normal space must be a line");
  if (jet.dim() < 2) throw std::invalid_argument("sphere_criterion: dim W must be >= 2");
  const OperatorAlgebra hw = curvature_algebra(jet.model, jet.w);
  const auto comps = isotypic_decomposition(hw, jet.w);
  const bool irreducible = comps.size() == 1 && comps[0].multiplicity == 1 &&
                           comps[0].kind != ComponentKind::Trivial;
  if (!irreducible)
    throw std::invalid_argument("sphere_criterion: h_W does not act irreducibly on W");
  const auto civ = is_curvature_invariant(jet.model, jet.w.direct_sum(u));
  return SphereReport{civ.ok, civ.residual};
}

CiIdentityReport ci_identity_report(const TwoJet& jet) {
  CiIdentityReport rep;
  const int d = jet.dim();
  const std::vector<RMat> hops = bold_basis_ops(jet);
  const Subspace v = jet.w.direct_sum(first_normal_space(jet));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const CVec x = jet.w.vec(i), y = jet.w.vec(j);
      const RMat rij = curvature_endomorphism(jet.model, x, y);
      const RMat nested =
          hops[static_cast<std::size_t>(i)] *
              (hops[static_cast<std::size_t>(j)] * rij - rij * hops[static_cast<std::size_t>(j)]) -
          (hops[static_cast<std::size_t>(j)] * rij - rij * hops[static_cast<std::size_t>(j)]) *
              hops[static_cast<std::size_t>(i)];

      // Printed identity.
      const RMat lhs = curvature_endomorphism(jet.model, jet.h[i][i], jet.h[j][j]);
      const CVec s_hij_x =
          -complexify(RVec(hops[static_cast<std::size_t>(i)] * realify(jet.h[i][j])));
      const CVec s_hjj_x =
          -complexify(RVec(hops[static_cast<std::size_t>(i)] * realify(jet.h[j][j])));
      const RMat printed = nested + curvature_endomorphism(jet.model, s_hij_x, y) +
                           curvature_endomorphism(jet.model, x, s_hjj_x);
      rep.printed_residual =
          std::max(rep.printed_residual, spectral_norm_on(RMat(lhs - printed), v));

      // Nested k = 2 identity against the wedge-derivation expansion.
      std::vector<WedgeTerm> terms{{1.0, realify(x), realify(y)}};
      terms = apply_derivation(hops[static_cast<std::size_t>(j)], terms);
      terms = apply_derivation(hops[static_cast<std::size_t>(i)], terms);
      const RMat rhs = curvature_of_terms(jet.model, terms);
      rep.nested_residual =
          std::max(rep.nested_residual, spectral_norm_on(RMat(nested - rhs), v));
    }
  }
  return rep;
}

TwoJet circle_jet(const CurvatureModel& model, const CVec& x, const CVec& eta) {
  CVec xe = x / x.norm();
  CVec normal = eta - inner(eta, xe) * xe;
  const Subspace w = Subspace::span(model.n, {xe});
  std::vector<std::vector<CVec>> h{{normal / (x.norm() * x.norm())}};
  return make_jet(model, w, std::move(h));
}

TwoJet random_dense_jet(const CurvatureModel& model, const Subspace& w, Rng& rng) {
  const int d = w.dim();
  std::vector<std::vector<CVec>> h(static_cast<std::size_t>(d),
                                   std::vector<CVec>(static_cast<std::size_t>(d)));
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      CVec raw = rng.normal_cvec(model.n);
      raw -= w.project(raw);
      h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = raw;
      h[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = raw;
    }
  }
  return make_jet(model, w, std::move(h));
}

}  // namespace grasslab
