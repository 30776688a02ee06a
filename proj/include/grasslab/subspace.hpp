// Copyright 2026 The Grasslab Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "grasslab/core.hpp"

#include <optional>

namespace grasslab {

/// A real-linear subspace of T_pN ~ C^n, stored through a real-orthonormal
/// basis of its realification (2n x d matrix with orthonormal columns).
/// Bases are canonicalized by column-pivoted orthogonalization so that
/// equality reduces to principal angles.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(int n) { return Subspace(n, RMat::Zero(2 * n, 0)); }

  /// Orthonormal basis of the real span; rank by relative singular-value
  /// cutoff 1e-8. An empty list yields the zero subspace.
  static Subspace span(int n, const std::vector<CVec>& vectors);

  /// Same, from realified columns (2n x m).
  static Subspace span_real_cols(int n, const RMat& cols);

  /// Wraps a matrix whose columns are already orthonormal.
  static Subspace from_orthonormal(int n, RMat basis);

  /// The real form R(phi) as a subspace (dimension n).
  static Subspace real_form(int n, double phi = 0.0);

  static Subspace full(int n) { return Subspace(n, RMat::Identity(2 * n, 2 * n)); }

  int n() const { return n_; }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const RMat& basis() const { return basis_; }
  CVec vec(int i) const { return complexify(basis_.col(i)); }

  RVec project(const RVec& r) const { return basis_ * (basis_.transpose() * r); }
  CVec project(const CVec& v) const { return complexify(project(realify(v))); }

  /// ||v - proj v||; membership uses <= 1e-8 * max(1, ||v||).
  double containment_residual(const CVec& v) const;
  bool contains(const CVec& v) const {
    return containment_residual(v) <= kRankTol * std::max(1.0, v.norm());
  }

  /// Real intersection via principal-angle thresholding (cos > 1 - 1e-9).
  Subspace intersect(const Subspace& other) const;

  /// Real-orthogonal complement in R^{2n}.
  Subspace complement() const;

  /// Orthogonal complement of `this` inside `ambient` (this must lie in it).
  Subspace complement_in(const Subspace& ambient) const;

  Subspace rotated(double phi) const;       // e^{i phi} W
  Subspace applyJ() const;                  // i W
  Subspace conjugated(double phi = 0.0) const;
  Subspace apply(const RMat& op) const;     // span of op * basis

  Subspace direct_sum(const Subspace& other) const;

 private:
  Subspace(int n, RMat basis) : n_(n), basis_(std::move(basis)) {}

  int n_ = 0;
  RMat basis_;
};

/// Largest sine of a principal angle from `sub` into `container`; zero iff
/// sub is contained in container.
double max_principal_sine(const Subspace& container, const Subspace& sub);

/// Symmetric distance; equal dimensions assumed by callers testing equality.
double subspace_distance(const Subspace& a, const Subspace& b);

bool same_subspace(const Subspace& a, const Subspace& b, double sin_tol = 1e-7);

bool is_complex_subspace(const Subspace& w, double tol = kRankTol);
bool is_totally_real_subspace(const Subspace& w, double tol = kRankTol);

/// Orthonormalize columns with column-pivoted QR; rank by relative SVD cutoff
/// with an optional absolute floor (for O(1)-normalized operator data).
RMat orthonormal_columns(const RMat& cols, double rel_tol = kRankTol,
                         double abs_floor = 0.0);

/// Column-space utilities for plain real matrices (payload spaces in R^n).
double colspace_distance(const RMat& a, const RMat& b);
RMat colspace_intersect(const RMat& a, const RMat& b);

}  // namespace grasslab
