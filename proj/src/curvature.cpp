// Copyright 2026 The Grasslab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "grasslab/curvature.hpp"

namespace grasslab {

RMat curvature_endomorphism_at_form(const CurvatureModel& m, const CVec& u, const CVec& v,
                                    double phi) {
  if (u.size() != m.n || v.size() != m.n)
    throw std::invalid_argument("curvature_endomorphism: dimension mismatch");
  const int n = m.n;
  if (m.kind == ModelKind::Grassmannian2) {
    const FormSplit su = split_real_imag(u, phi);
    const FormSplit sv = split_real_imag(v, phi);
    const double coef = sv.a.dot(su.b) - su.a.dot(sv.b);
    RMat r = coef * jmat(n);
    r -= complex_linear_ext(RMat(sv.a * su.a.transpose() - su.a * sv.a.transpose()));
    r -= complex_linear_ext(RMat(sv.b * su.b.transpose() - su.b * sv.b.transpose()));
    return m.sign * r;
  }
  // CP^n: R_{u,v} = -(u ^ v) - (Ju ^ Jv) - 2 omega(u,v) J with the realified
  // wedge and omega(u,v) = <Ju, v>.
  const CVec ju = u * Complex(0, 1), jv = v * Complex(0, 1);
  const double omega = inner(ju, v);
  RMat r = -wedge(u, v) - wedge(ju, jv) - 2.0 * omega * jmat(n);
  return m.sign * r;
}

RMat curvature_endomorphism(const CurvatureModel& m, const CVec& u, const CVec& v) {
  return curvature_endomorphism_at_form(m, u, v, 0.0);
}

double sectional_curvature(const CurvatureModel& m, const CVec& u, const CVec& v) {
  const double gram = inner(u, u) * inner(v, v) - inner(u, v) * inner(u, v);
  if (gram <= 1e-12) throw std::invalid_argument("sectional_curvature: dependent inputs");
  const RMat r = curvature_endomorphism(m, u, v);
  const CVec rv = complexify(RVec(r * realify(v)));
  return inner(rv, u) / gram;
}

InvarianceVerdict is_curvature_invariant(const CurvatureModel& m, const Subspace& w) {
  const int d = w.dim();
  InvarianceVerdict verdict{true, 0.0};
  if (d <= 1) return verdict;
  const RMat pperp = RMat::Identity(2 * m.n, 2 * m.n) - w.basis() * w.basis().transpose();
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const RMat r = curvature_endomorphism(m, w.vec(i), w.vec(j));
      const RMat out = pperp * (r * w.basis());
      for (Eigen::Index k = 0; k < out.cols(); ++k)
        verdict.residual = std::max(verdict.residual, out.col(k).norm());
    }
  }
  verdict.ok = verdict.residual <= kResidualTol;
  return verdict;
}

InvarianceVerdict is_curvature_isotropic(const CurvatureModel& m, const Subspace& w) {
  const int d = w.dim();
  InvarianceVerdict verdict{true, 0.0};
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const RMat r = curvature_endomorphism(m, w.vec(i), w.vec(j));
      verdict.residual = std::max(verdict.residual, r.norm());
      // Lemma equivalence: the endomorphism vanishes iff the sectional
      // curvature of the pair does.
      const double sec = sectional_curvature(m, w.vec(i), w.vec(j));
      const bool flat_op = r.norm() <= kResidualTol;
      const bool flat_sec = std::abs(sec) <= kResidualTol;
      if (flat_op != flat_sec)
        throw std::runtime_error("is_curvature_isotropic: operator/sectional disagreement");
    }
  }
  verdict.ok = verdict.residual <= kResidualTol;
  return verdict;
}

OperatorAlgebra isotropy_algebra(const CurvatureModel& m) {
  const int n = m.n;
  std::vector<RMat> ops;
  if (m.kind == ModelKind::Grassmannian2) {
    ops.push_back(jmat(n));
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        ops.push_back(componentwise_wedge(unit_vec(n, a), unit_vec(n, b)));
    return OperatorAlgebra::span(n, ops);
  }
  // u(n) on the realification.
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      ops.push_back(componentwise_wedge(unit_vec(n, a), unit_vec(n, b)));
      RMat s = RMat::Zero(n, n);
      s(a, b) = s(b, a) = 1.0;
      RMat op = RMat::Zero(2 * n, 2 * n);
      op.topRightCorner(n, n) = -s;
      op.bottomLeftCorner(n, n) = s;
      ops.push_back(op);
    }
    RMat d = RMat::Zero(n, n);
    d(a, a) = 1.0;
    RMat op = RMat::Zero(2 * n, 2 * n);
    op.topRightCorner(n, n) = -d;
    op.bottomLeftCorner(n, n) = d;
    ops.push_back(op);
  }
  return OperatorAlgebra::span(n, ops);
}

namespace {

// Solve for coefficient combinations of the isotropy basis satisfying a set
// of homogeneous block-mapping constraints, and return the restrictions to V.
std::vector<RMat> stabilizer_part(const OperatorAlgebra& iso, const Subspace& v,
                                  const std::vector<std::pair<Subspace, Subspace>>& must_map) {
  const int g = iso.dim();
  if (g == 0) return {};
  const int amb = 2 * iso.n();
  std::vector<RMat> rows;  // each constraint block contributes rows x g
  long total_rows = 0;
  for (const auto& [from, into] : must_map) {
    if (from.dim() == 0) continue;
    const RMat pperp = RMat::Identity(amb, amb) - into.basis() * into.basis().transpose();
    RMat block(static_cast<Eigen::Index>(pperp.rows() * from.dim()), g);
    for (int i = 0; i < g; ++i) {
      const RMat img = pperp * (iso.op(i) * from.basis());
      block.col(i) = Eigen::Map<const RVec>(img.data(), img.size());
    }
    rows.push_back(block);
    total_rows += block.rows();
  }
  RMat constraint(total_rows, g);
  long at = 0;
  for (const RMat& b : rows) {
    constraint.middleRows(at, b.rows()) = b;
    at += b.rows();
  }
  Eigen::JacobiSVD<RMat> svd(constraint, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = 1e-9 * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  std::vector<RMat> out;
  const RMat pv = v.basis() * v.basis().transpose();
  for (int idx = 0; idx < g; ++idx) {
    const double s = idx < sv.size() ? sv(idx) : 0.0;
    if (s > cutoff) continue;
    RMat a = RMat::Zero(amb, amb);
    for (int i = 0; i < g; ++i) a += svd.matrixV()(i, idx) * iso.op(i);
    out.push_back(pv * a * pv);
  }
  // Restrictions of distinct isotropy elements may coincide; orthonormalize.
  if (out.empty()) return {};
  OperatorAlgebra cleaned = OperatorAlgebra::span(iso.n(), out);
  return cleaned.ops();
}

}  // namespace

GradedStabilizer graded_stabilizer(const CurvatureModel& m, const Subspace& w,
                                   const Subspace& u) {
  if (w.dim() > 0 && u.dim() > 0) {
    const RMat g = w.basis().transpose() * u.basis();
    if (g.cwiseAbs().maxCoeff() > 1e-9)
      throw std::invalid_argument("graded_stabilizer: W and U not orthogonal");
  }
  const Subspace v = w.direct_sum(u);
  const OperatorAlgebra iso = isotropy_algebra(m);
  GradedStabilizer out;
  out.plus = stabilizer_part(iso, v, {{w, w}, {u, u}});
  out.minus = stabilizer_part(iso, v, {{w, u}, {u, w}});
  return out;
}

}  // namespace grasslab
