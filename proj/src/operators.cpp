// Copyright 2026 The Grasslab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "grasslab/operators.hpp"

#include <Eigen/SVD>

namespace grasslab {

RMat wedge(const CVec& x, const CVec& y) {
  if (x.size() != y.size()) throw std::invalid_argument("wedge: dimension mismatch");
  const RVec rx = realify(x), ry = realify(y);
  return ry * rx.transpose() - rx * ry.transpose();
}

RMat complex_linear_ext(const RMat& m) {
  const Eigen::Index n = m.rows();
  RMat out = RMat::Zero(2 * n, 2 * n);
  out.topLeftCorner(n, n) = m;
  out.bottomRightCorner(n, n) = m;
  return out;
}

RMat componentwise_wedge(const CVec& x, const CVec& y, double phi) {
  if (x.size() != y.size())
    throw std::invalid_argument("componentwise_wedge: dimension mismatch");
  const CVec xc = rot(x, -phi), yc = rot(y, -phi);
  if (xc.imag().cwiseAbs().maxCoeff() > 1e-9 || yc.imag().cwiseAbs().maxCoeff() > 1e-9)
    throw std::invalid_argument("componentwise_wedge: arguments not in R(phi)");
  const RVec a = xc.real(), b = yc.real();
  const RMat m = b * a.transpose() - a * b.transpose();
  return complex_linear_ext(m);
}

double skew_residual(const RMat& a) {
  return (a + a.transpose()).cwiseAbs().maxCoeff();
}

namespace {

RMat vec_of(const RMat& a) {
  return Eigen::Map<const RMat>(a.data(), a.size(), 1);
}

std::vector<RMat> unstack(int side, const RMat& vcols) {
  std::vector<RMat> out;
  out.reserve(static_cast<std::size_t>(vcols.cols()));
  for (Eigen::Index j = 0; j < vcols.cols(); ++j)
    out.push_back(Eigen::Map<const RMat>(vcols.col(j).data(), side, side));
  return out;
}

}  // namespace

OperatorAlgebra OperatorAlgebra::span(int n, const std::vector<RMat>& ops) {
  const int side = 2 * n;
  RMat cols(side * side, static_cast<Eigen::Index>(ops.size()));
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (ops[i].rows() != side || ops[i].cols() != side)
      throw std::invalid_argument("OperatorAlgebra: bad operator shape");
    cols.col(static_cast<Eigen::Index>(i)) = vec_of(ops[i]);
  }
  // Operator data is O(1) in the trace form; an absolute floor keeps
  // round-off from promoting a vanishing span to a basis direction.
  RMat q = orthonormal_columns(cols, kRankTol, 1e-10);
  return OperatorAlgebra(n, unstack(side, q));
}

OperatorAlgebra OperatorAlgebra::closure(int n, const std::vector<RMat>& generators,
                                         int max_rounds) {
  OperatorAlgebra alg = OperatorAlgebra::span(n, generators);
  for (int round = 0; round < max_rounds; ++round) {
    std::vector<RMat> extra;
    for (int i = 0; i < alg.dim(); ++i) {
      for (int j = i + 1; j < alg.dim(); ++j) {
        const RMat br = alg.op(i) * alg.op(j) - alg.op(j) * alg.op(i);
        const RMat res = alg.project_out(br);
        if (res.norm() > kRankTol * std::max(1.0, br.norm())) extra.push_back(res);
      }
    }
    if (extra.empty()) return alg;
    std::vector<RMat> all = alg.ops_;
    all.insert(all.end(), extra.begin(), extra.end());
    OperatorAlgebra bigger = OperatorAlgebra::span(n, all);
    if (bigger.dim() == alg.dim()) return bigger;  // residuals were spurious
    alg = std::move(bigger);
  }
  throw std::runtime_error("OperatorAlgebra::closure: generating set did not close");
}

RMat OperatorAlgebra::project_out(const RMat& a) const {
  RMat res = a;
  for (const RMat& b : ops_) res -= op_inner(b, a) / op_inner(b, b) * b;
  return res;
}

double OperatorAlgebra::membership_residual(const RMat& a) const {
  return project_out(a).norm();
}

double OperatorAlgebra::closure_residual() const {
  double worst = 0.0;
  for (int i = 0; i < dim(); ++i) {
    for (int j = i + 1; j < dim(); ++j) {
      const RMat br = op(i) * op(j) - op(j) * op(i);
      worst = std::max(worst, project_out(br).norm() / std::max(1.0, br.norm()));
    }
  }
  return worst;
}

bool OperatorAlgebra::same_span(const OperatorAlgebra& other, double tol) const {
  if (dim() != other.dim()) return false;
  for (const RMat& b : other.ops_)
    if (membership_residual(b) > tol) return false;
  return true;
}

OperatorAlgebra OperatorAlgebra::restricted_to(const Subspace& v, double tol) const {
  std::vector<RMat> restricted;
  const RMat p = v.basis() * v.basis().transpose();
  for (const RMat& a : ops_) {
    if (invariance_residual(a, v) > tol)
      throw std::invalid_argument("restricted_to: subspace not invariant");
    restricted.push_back(p * a * p);
  }
  return OperatorAlgebra::span(n_, restricted);
}

std::vector<RMat> OperatorAlgebra::coordinate_ops(const Subspace& v) const {
  std::vector<RMat> out;
  out.reserve(ops_.size());
  for (const RMat& a : ops_) out.push_back(v.basis().transpose() * a * v.basis());
  return out;
}

double invariance_residual(const RMat& a, const Subspace& s) {
  if (s.dim() == 0) return 0.0;
  const RMat image = a * s.basis();
  const RMat res = image - s.basis() * (s.basis().transpose() * image);
  return res.cwiseAbs().maxCoeff();
}

}  // namespace grasslab
