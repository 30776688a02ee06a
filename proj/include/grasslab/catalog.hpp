// Copyright 2026 The Grasslab Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "grasslab/curvature.hpp"

namespace grasslab {

enum class Variant { CK, TRKL, CKPrime, TRKPrime, EX3, EX2, TR1 };

std::string variant_name(Variant v);
Variant variant_from_name(const std::string& s);

/// Construction data for one curvature-invariant subspace. Payload vectors
/// live in R^n coordinates of the phi = 0 real form; the built subspace is
/// rotated by e^{i phi}. Only the fields of the active variant are used.
struct TypeTag {
  Variant variant = Variant::TR1;
  double phi = 0.0;

  RMat w0;        // n x k   (c_k)
  RMat w1, w2;    // n x k, n x l   (tr_{k,l}); either factor may be empty
  RMat wp;        // n x 2k  (c_k', tr_k')
  RMat ip;        // n x n   Hermitian structure on W', zero off W'
  RMat w0p;       // n x k   (tr_k') real form of (W', I')
  RVec e1, e2, e3;  // ex3 uses e1,e2; ex2 uses e1,e2,e3
  CVec u;         // tr1

  int k() const;
  int l() const;
};

/// Checks the structural invariants (orthonormal payloads, I'^2 = -Id, real
/// form condition, dimension constraints); throws std::invalid_argument.
void validate_tag(const TypeTag& tag, int n);

/// The subspace prescribed by the classification theorem for this tag.
Subspace construct_type(const TypeTag& tag, int n);

/// Inverts construct_type for curvature-invariant subspaces of the
/// Grassmannian: a feature-table decision on (dim, complex intersection,
/// totally-real flag, vanishing of the restricted bilinear form).
TypeTag classify(const CurvatureModel& m, const Subspace& w);

/// h_W = span{R_{x,y} : x,y in W}; bracket closure is a checked no-op.
OperatorAlgebra curvature_algebra(const CurvatureModel& m, const Subspace& w);

/// Hermitian-structure report for W of type tr_k' against U = e^{-i theta}
/// conj(W): the operator J_theta, the graded stabilizer dimensions, and the
/// commutation pattern of the stabilizer with J_theta.
struct JthetaReport {
  int k = 0;
  double theta = 0.0;
  int dim_plus = 0;
  int dim_minus = 0;
  double residual_jsq = 0.0;        // J_theta^2 + Id on C W'
  double residual_swap = 0.0;       // J_theta(W) vs U and J_theta(U) vs W
  double residual_commute = 0.0;    // [plus, J_theta|_V]
  double residual_anticommute = 0.0;  // {minus, J_theta|_V}
  bool ok = false;
  double max_residual() const {
    return std::max(std::max(residual_jsq, residual_swap),
                    std::max(residual_commute, residual_anticommute));
  }
};

JthetaReport jtheta_structure(const TypeTag& tag, double theta, int n);

/// The operator J_theta itself (complex-linear on C W', zero off it).
RMat jtheta_operator(const TypeTag& tag, double theta, int n);

/// Random payload generator for one variant (orthonormalized); used by the
/// randomized suites. k/l select the parameters where applicable.
TypeTag random_tag(Variant v, int n, int k, int l, Rng& rng);

/// Expected dim h_W for a tag (the lemma-derived dimension table).
int expected_hw_dimension(const TypeTag& tag);

}  // namespace grasslab
