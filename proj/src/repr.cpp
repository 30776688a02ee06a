// Copyright 2026 The Grasslab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "grasslab/repr.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace grasslab {

RMat nullspace(const RMat& constraint, double rel_tol) {
  const Eigen::Index cols = constraint.cols();
  if (constraint.rows() == 0) return RMat::Identity(cols, cols);
  Eigen::JacobiSVD<RMat> svd(constraint, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double top = sv.size() > 0 ? sv(0) : 0.0;
  const double cut = rel_tol * std::max(1.0, top);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++rank;
  return svd.matrixV().rightCols(cols - rank);
}

namespace {

RMat kron(const RMat& a, const RMat& b) {
  RMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

std::vector<RMat> restricted_ops(const OperatorAlgebra& alg, const Subspace& s,
                                 double tol = 1e-6) {
  for (const RMat& a : alg.ops())
    if (invariance_residual(a, s) > tol)
      throw std::invalid_argument("representation: subspace not invariant");
  return alg.coordinate_ops(s);
}

// Hom_A(a, b) for coordinate op lists; returns u x w matrices.
std::vector<RMat> hom_space(const std::vector<RMat>& opsW, const std::vector<RMat>& opsU,
                            int w, int u) {
  if (w == 0 || u == 0) return {};
  RMat constraint(static_cast<Eigen::Index>(opsW.size()) * u * w, u * w);
  const RMat iw = RMat::Identity(w, w), iu = RMat::Identity(u, u);
  for (std::size_t i = 0; i < opsW.size(); ++i) {
    RMat block = kron(opsW[i].transpose(), iu) - kron(iw, opsU[i]);
    constraint.middleRows(static_cast<Eigen::Index>(i) * u * w, u * w) = block;
  }
  const RMat ns = nullspace(constraint);
  std::vector<RMat> out;
  for (Eigen::Index j = 0; j < ns.cols(); ++j)
    out.push_back(Eigen::Map<const RMat>(ns.col(j).data(), u, w));
  return out;
}

// Subspace of sub-coordinates -> ambient Subspace.
Subspace lift(const Subspace& s, const RMat& coord_cols) {
  return Subspace::span_real_cols(s.n(), RMat(s.basis() * coord_cols));
}

struct SplitContext {
  const std::vector<RMat>* ambient_ops;  // coordinate ops on the root S
  Rng* rng;
};

std::vector<RMat> ops_on(const SplitContext& ctx, const RMat& cols) {
  std::vector<RMat> out;
  out.reserve(ctx.ambient_ops->size());
  for (const RMat& m : *ctx.ambient_ops) out.push_back(cols.transpose() * m * cols);
  return out;
}

// Basis of the symmetric part of the commutant of ops on R^d.
std::vector<RMat> symmetric_commutant(const std::vector<RMat>& ops, int d) {
  std::vector<RMat> z = hom_space(ops, ops, d, d);
  std::vector<RMat> sym_cols;
  for (const RMat& x : z) {
    RMat s = 0.5 * (x + x.transpose());
    if (s.norm() > 1e-10) sym_cols.push_back(s);
  }
  if (sym_cols.empty()) return {};
  RMat stacked(d * d, static_cast<Eigen::Index>(sym_cols.size()));
  for (std::size_t i = 0; i < sym_cols.size(); ++i)
    stacked.col(static_cast<Eigen::Index>(i)) =
        Eigen::Map<const RVec>(sym_cols[i].data(), d * d);
  const RMat q = orthonormal_columns(stacked);
  std::vector<RMat> out;
  for (Eigen::Index j = 0; j < q.cols(); ++j)
    out.push_back(Eigen::Map<const RMat>(q.col(j).data(), d, d));
  return out;
}

// Recursively split cols (coordinate columns inside root S) into irreducibles.
void split_irreducible(const SplitContext& ctx, const RMat& cols, std::vector<RMat>* out,
                       int depth = 0) {
  const int d = static_cast<int>(cols.cols());
  if (d == 0) return;
  const std::vector<RMat> ops = ops_on(ctx, cols);
  const std::vector<RMat> sym = symmetric_commutant(ops, d);
  if (sym.size() <= 1) {  // symmetric commutant = R Id: irreducible
    out->push_back(cols);
    return;
  }
  if (depth > 16) throw std::runtime_error("isotypic split: recursion depth exceeded");
  for (int attempt = 0; attempt < 8; ++attempt) {
    RMat c = RMat::Zero(d, d);
    for (const RMat& s : sym) c += ctx.rng->normal() * s;
    Eigen::SelfAdjointEigenSolver<RMat> eig(c);
    const RVec vals = eig.eigenvalues();
    const double scale = 1.0 + vals.cwiseAbs().maxCoeff();
    std::vector<std::pair<int, int>> clusters;  // [begin, end)
    int begin = 0;
    for (int i = 1; i <= d; ++i) {
      if (i == d || vals(i) - vals(i - 1) > 1e-6 * scale) {
        clusters.emplace_back(begin, i);
        begin = i;
      }
    }
    if (clusters.size() <= 1) continue;  // degenerate draw, retry
    for (const auto& [b, e] : clusters) {
      const RMat sub = cols * eig.eigenvectors().middleCols(b, e - b);
      split_irreducible(ctx, sub, out, depth + 1);
    }
    return;
  }
  throw std::runtime_error("isotypic split: could not separate commutant eigenvalues");
}

}  // namespace

std::vector<IsotypicComponent> isotypic_decomposition(const OperatorAlgebra& alg,
                                                      const Subspace& s,
                                                      std::uint64_t seed) {
  std::vector<IsotypicComponent> result;
  const int m = s.dim();
  if (m == 0) return result;
  const std::vector<RMat> ops = restricted_ops(alg, s);

  // Trivial part: joint kernel of the restrictions.
  RMat stacked(static_cast<Eigen::Index>(ops.size()) * m, m);
  for (std::size_t i = 0; i < ops.size(); ++i)
    stacked.middleRows(static_cast<Eigen::Index>(i) * m, m) = ops[i];
  RMat triv = ops.empty() ? RMat::Identity(m, m) : nullspace(stacked, 1e-8);
  RMat rest;  // orthocomplement of the trivial part within S (coordinates)
  if (triv.cols() == m) {
    rest = RMat::Zero(m, 0);
  } else if (triv.cols() == 0) {
    rest = RMat::Identity(m, m);
  } else {
    RMat p = RMat::Identity(m, m) - triv * triv.transpose();
    rest = orthonormal_columns(p);
  }

  Rng rng(seed);
  SplitContext ctx{&ops, &rng};
  std::vector<RMat> irreducibles;
  split_irreducible(ctx, rest, &irreducibles);

  // Group mutually isomorphic irreducibles.
  std::vector<bool> used(irreducibles.size(), false);
  for (std::size_t i = 0; i < irreducibles.size(); ++i) {
    if (used[i]) continue;
    const RMat& base_cols = irreducibles[i];
    const int db = static_cast<int>(base_cols.cols());
    const std::vector<RMat> base_ops = ops_on(ctx, base_cols);

    IsotypicComponent comp;
    // Keep the exact frame: maps[j] and div_basis share base_cols coordinates.
    comp.base = Subspace::from_orthonormal(s.n(), RMat(s.basis() * base_cols));
    comp.maps.push_back(comp.base.basis());
    RMat total_cols = base_cols;
    used[i] = true;
    for (std::size_t j = i + 1; j < irreducibles.size(); ++j) {
      if (used[j]) continue;
      const RMat& cand = irreducibles[j];
      if (cand.cols() != db) continue;
      std::vector<RMat> lam = hom_space(base_ops, ops_on(ctx, cand),
                                        db, static_cast<int>(cand.cols()));
      if (lam.empty()) continue;
      used[j] = true;
      // Normalize the intertwiner to an isometric embedding.
      RMat x = lam[0];
      const double c = std::sqrt((x.transpose() * x).trace() / db);
      x /= c;
      comp.maps.push_back(s.basis() * (cand * x));
      RMat grown(m, total_cols.cols() + cand.cols());
      grown << total_cols, cand;
      total_cols = grown;
    }
    comp.multiplicity = static_cast<int>(comp.maps.size());
    comp.total = lift(s, orthonormal_columns(total_cols));

    std::vector<RMat> self = hom_space(base_ops, base_ops, db, db);
    switch (self.size()) {
      case 1: comp.kind = ComponentKind::Real; break;
      case 2: comp.kind = ComponentKind::Complex; break;
      case 4: comp.kind = ComponentKind::Quaternionic; break;
      default:
        throw std::runtime_error("isotypic_decomposition: unexpected commutant dimension");
    }
    // Division-algebra basis with the identity first.
    comp.div_basis.push_back(RMat::Identity(db, db));
    for (const RMat& x : self) {
      RMat r = x;
      for (const RMat& d0 : comp.div_basis) r -= (d0.cwiseProduct(r)).sum() / d0.squaredNorm() * d0;
      if (r.norm() > 1e-8) comp.div_basis.push_back(RMat(r * std::sqrt(db) / r.norm()));
    }
    result.push_back(std::move(comp));
  }

  if (triv.cols() > 0) {
    IsotypicComponent comp;
    comp.kind = ComponentKind::Trivial;
    comp.total = lift(s, triv);
    comp.base = Subspace::from_orthonormal(s.n(), RMat(s.basis() * triv.col(0)));
    for (Eigen::Index j = 0; j < triv.cols(); ++j)
      comp.maps.push_back(s.basis() * triv.col(j));
    comp.multiplicity = static_cast<int>(triv.cols());
    comp.div_basis.push_back(RMat::Identity(1, 1));
    result.push_back(std::move(comp));
  }

  int total = 0;
  for (const auto& c : result) total += c.total.dim();
  if (total != m) throw std::runtime_error("isotypic_decomposition: dimensions do not sum");
  return result;
}

Subspace isotypic_family_member(const IsotypicComponent& comp, const RVec& coeffs) {
  const int dimf = static_cast<int>(comp.div_basis.size());
  const int mult = comp.multiplicity;
  if (coeffs.size() != static_cast<Eigen::Index>(mult) * dimf)
    throw std::invalid_argument("isotypic_family_member: coefficient length mismatch");
  if (coeffs.norm() == 0.0)
    throw std::invalid_argument("isotypic_family_member: zero coefficient vector");
  const int db = comp.base.dim();
  RMat lam = RMat::Zero(comp.maps[0].rows(), db);
  for (int j = 0; j < mult; ++j) {
    RMat scalar = RMat::Zero(db, db);
    for (int t = 0; t < dimf; ++t) scalar += coeffs(j * dimf + t) * comp.div_basis[t];
    lam += comp.maps[static_cast<std::size_t>(j)] * scalar;
  }
  Subspace out = Subspace::span_real_cols(comp.base.n(), lam);
  if (out.dim() != db)
    throw std::runtime_error("isotypic_family_member: degenerate member");
  return out;
}

std::vector<RMat> intertwiner_space(const OperatorAlgebra& alg, const Subspace& w,
                                    const Subspace& u) {
  const std::vector<RMat> opsW = restricted_ops(alg, w);
  const std::vector<RMat> opsU = restricted_ops(alg, u);
  if (alg.dim() == 0) {
    // Full Hom(W,U).
    std::vector<RMat> out;
    for (int i = 0; i < u.dim(); ++i)
      for (int j = 0; j < w.dim(); ++j) {
        RMat e = RMat::Zero(u.dim(), w.dim());
        e(i, j) = 1.0;
        out.push_back(e);
      }
    return out;
  }
  return hom_space(opsW, opsU, w.dim(), u.dim());
}

std::vector<RMat> centralizer_in_so(const OperatorAlgebra& alg, const Subspace& v,
                                    std::optional<std::pair<Subspace, Subspace>> grading) {
  int d = v.dim();
  RMat bv = v.basis();
  if (grading) {
    const auto& [w, u] = *grading;
    if (w.dim() + u.dim() != d)
      throw std::invalid_argument("centralizer_in_so: grading does not span V");
    RMat cat(bv.rows(), d);
    cat << w.basis(), u.basis();
    RMat g = cat.transpose() * cat - RMat::Identity(d, d);
    if (g.cwiseAbs().maxCoeff() > 1e-9)
      throw std::invalid_argument("centralizer_in_so: grading not orthogonal");
    if (max_principal_sine(v, w) > 1e-8 || max_principal_sine(v, u) > 1e-8)
      throw std::invalid_argument("centralizer_in_so: grading not inside V");
    bv = cat;
  }
  std::vector<RMat> ops;
  for (const RMat& a : alg.ops()) {
    if (invariance_residual(a, v) > 1e-6)
      throw std::invalid_argument("centralizer_in_so: V not invariant");
    ops.push_back(bv.transpose() * a * bv);
  }

  // Parameterize the admissible skew matrices on V.
  std::vector<std::pair<int, int>> coords;
  const int wd = grading ? grading->first.dim() : 0;
  for (int p = 0; p < d; ++p)
    for (int q = p + 1; q < d; ++q) {
      if (grading) {
        const bool cross = (p < wd) != (q < wd);
        if (!cross) continue;  // so(V)_- only
      }
      coords.emplace_back(p, q);
    }
  const int np = static_cast<int>(coords.size());
  if (np == 0) return {};
  RMat constraint(static_cast<Eigen::Index>(ops.size()) * d * d, np);
  for (int k = 0; k < np; ++k) {
    RMat s = RMat::Zero(d, d);
    s(coords[k].first, coords[k].second) = 1.0;
    s(coords[k].second, coords[k].first) = -1.0;
    for (std::size_t i = 0; i < ops.size(); ++i) {
      const RMat comm = s * ops[i] - ops[i] * s;
      constraint.block(static_cast<Eigen::Index>(i) * d * d, k, d * d, 1) =
          Eigen::Map<const RVec>(comm.data(), d * d);
    }
  }
  const RMat ns = nullspace(constraint);
  std::vector<RMat> out;
  for (Eigen::Index j = 0; j < ns.cols(); ++j) {
    RMat x = RMat::Zero(d, d);
    for (int k = 0; k < np; ++k) {
      x(coords[k].first, coords[k].second) += ns(k, j);
      x(coords[k].second, coords[k].first) -= ns(k, j);
    }
    out.push_back(bv * x * bv.transpose());
  }
  return out;
}

}  // namespace grasslab
