// Copyright 2026 The Grasslab Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "grasslab/core.hpp"
#include "grasslab/subspace.hpp"

namespace grasslab {

/// Realified wedge (x ^ y) z := <x,z> y - <y,z> x, as a 2n x 2n matrix.
RMat wedge(const CVec& x, const CVec& y);

/// Wedge of two vectors of the real form R(phi), extended componentwise
/// (A v = A Re(v) + i A Im(v)); this is the complex-linear extension of the
/// R^n wedge of the coordinate vectors and so commutes with J^N.
RMat componentwise_wedge(const CVec& x, const CVec& y, double phi = 0.0);

/// Complex-linear extension of a real n x n matrix: blkdiag(M, M).
RMat complex_linear_ext(const RMat& m);

double skew_residual(const RMat& a);

/// A real-linear skew-symmetric endomorphism of T_pN.
struct SkewOperator {
  int n = 0;
  RMat mat;  // 2n x 2n

  static SkewOperator make(int n, RMat m) {
    if (m.rows() != 2 * n || m.cols() != 2 * n)
      throw std::invalid_argument("SkewOperator: bad shape");
    if (skew_residual(m) > kSkewTol) throw std::invalid_argument("SkewOperator: not skew");
    return SkewOperator{n, std::move(m)};
  }
  CVec apply(const CVec& v) const { return complexify(RVec(mat * realify(v))); }
};

/// Trace-form inner product -trace(A o B); positive definite on skews,
/// where it coincides with the Frobenius product.
inline double op_inner(const RMat& a, const RMat& b) { return -(a * b).trace(); }

/// A span of skew operators, orthonormalized with respect to the trace form
/// and (for closures) closed under the commutator bracket.
class OperatorAlgebra {
 public:
  OperatorAlgebra() = default;

  /// Orthonormalized span, no bracket processing.
  static OperatorAlgebra span(int n, const std::vector<RMat>& ops);

  /// Iterated span-enlargement by brackets until stable; throws after
  /// max_rounds rounds without stabilizing.
  static OperatorAlgebra closure(int n, const std::vector<RMat>& generators,
                                 int max_rounds = 10);

  int n() const { return n_; }
  int dim() const { return static_cast<int>(ops_.size()); }
  const std::vector<RMat>& ops() const { return ops_; }
  const RMat& op(int i) const { return ops_[static_cast<std::size_t>(i)]; }

  /// ||A - proj A||_F with respect to the stored basis.
  double membership_residual(const RMat& a) const;

  /// max over basis pairs of the unspanned part of [B_i, B_j], relative to
  /// the bracket's norm.
  double closure_residual() const;

  bool same_span(const OperatorAlgebra& other, double tol = kRankTol) const;

  /// Restriction to an invariant subspace, embedded back into R^{2n}
  /// (operators are zero off V). Throws if V is not invariant.
  OperatorAlgebra restricted_to(const Subspace& v, double tol = 1e-6) const;

  /// Coordinate matrices B_V^T A B_V (d x d) of the basis operators.
  std::vector<RMat> coordinate_ops(const Subspace& v) const;

 private:
  OperatorAlgebra(int n, std::vector<RMat> ops) : n_(n), ops_(std::move(ops)) {}

  RMat project_out(const RMat& a) const;  // component orthogonal to the span

  int n_ = 0;
  std::vector<RMat> ops_;  // trace-form orthonormal
};

/// Residual of A mapping S into itself: ||P_perp A B_S||.
double invariance_residual(const RMat& a, const Subspace& s);

}  // namespace grasslab
