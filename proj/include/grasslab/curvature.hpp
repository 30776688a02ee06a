// Copyright 2026 The Grasslab Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "grasslab/operators.hpp"
#include "grasslab/subspace.hpp"

namespace grasslab {

enum class ModelKind { Grassmannian2, ComplexProjective };

/// Ambient curvature rule: the oriented real 2-plane Grassmannian at its
/// base point, or CP^n; sign -1 selects the non-compact dual (pure sign
/// flip of the curvature tensor).
struct CurvatureModel {
  ModelKind kind = ModelKind::Grassmannian2;
  int n = 2;
  int sign = +1;

  static CurvatureModel grassmannian(int n, int sign = +1) {
    if (n < 2) throw std::invalid_argument("grassmannian2 requires n >= 2");
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +-1");
    return CurvatureModel{ModelKind::Grassmannian2, n, sign};
  }
  static CurvatureModel cpn(int n, int sign = +1) {
    if (n < 1) throw std::invalid_argument("cpn requires n >= 1");
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +-1");
    return CurvatureModel{ModelKind::ComplexProjective, n, sign};
  }
};

/// R_{u,v} as a skew matrix on R^{2n}. For the Grassmannian the formula is
/// evaluated with respect to the real form R(phi); the result is independent
/// of phi (verified as an invariant in the tests).
RMat curvature_endomorphism_at_form(const CurvatureModel& m, const CVec& u, const CVec& v,
                                    double phi);
RMat curvature_endomorphism(const CurvatureModel& m, const CVec& u, const CVec& v);

double sectional_curvature(const CurvatureModel& m, const CVec& u, const CVec& v);

struct InvarianceVerdict {
  bool ok = false;
  double residual = 0.0;
};

/// R(W x W x W) subset W up to residual 1e-8; verdict independent of sign.
InvarianceVerdict is_curvature_invariant(const CurvatureModel& m, const Subspace& w);

/// All curvature endomorphisms on W vanish; cross-checked against vanishing
/// sectional curvature on the same pairs.
InvarianceVerdict is_curvature_isotropic(const CurvatureModel& m, const Subspace& w);

/// rho(k): for the Grassmannian R J^N + so(R); for CP^n the unitary algebra.
OperatorAlgebra isotropy_algebra(const CurvatureModel& m);

struct GradedStabilizer {
  std::vector<RMat> plus;   // restrictions preserving W and U
  std::vector<RMat> minus;  // restrictions swapping W and U
};

/// {A|_V : A in rho(k), A(V) in V} intersected with so(V)_+ and so(V)_-.
GradedStabilizer graded_stabilizer(const CurvatureModel& m, const Subspace& w,
                                   const Subspace& u);

}  // namespace grasslab
