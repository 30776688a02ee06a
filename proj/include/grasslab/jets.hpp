// Copyright 2026 The Grasslab Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "grasslab/catalog.hpp"
#include "grasslab/repr.hpp"

namespace grasslab {

/// A candidate 2-jet (W, h): a tangent-space candidate plus a symmetric
/// bilinear map h : W x W -> W^perp stored entrywise in the basis of W.
struct TwoJet {
  CurvatureModel model;
  Subspace w;
  std::vector<std::vector<CVec>> h;  // h[i][j] = h(b_i, b_j)

  int dim() const { return w.dim(); }
};

/// Validates symmetry (exact) and normality (1e-10) of the entries.
TwoJet make_jet(const CurvatureModel& model, const Subspace& w,
                std::vector<std::vector<CVec>> h);

TwoJet zero_jet(const CurvatureModel& model, const Subspace& w);

/// Re-expresses h in a different orthonormal basis of the same subspace.
TwoJet rebase(const TwoJet& jet, const Subspace& new_w);

Subspace first_normal_space(const TwoJet& jet);

/// The operator bold-h_x (y + xi) = -S_xi x + h(x, y), an element of
/// so(V)_- embedded in R^{2n}; x must lie in W.
RMat bold_h(const TwoJet& jet, const CVec& x);

/// {x in W : bold-h_x = 0}; the two characterizations (through h and through
/// bold-h) are cross-asserted.
Subspace kernel_of_h(const TwoJet& jet);

struct SemiParallelVerdict {
  bool ok = false;
  double residual = 0.0;
  double gauss_projection_error = 0.0;  // distance of R_{x,y}z - [h_x,h_y]z from W
};

SemiParallelVerdict is_semi_parallel(const TwoJet& jet, bool test_on_full_space = false);

struct HigherVerdict {
  bool ok = false;
  std::vector<double> residuals;  // residual per k = 1..kmax
  int first_fail_k = 0;           // 0 when ok
  double mixed_residual = 0.0;    // mixed-argument variant on random tuples
};

HigherVerdict check_higher_conditions(const TwoJet& jet, int kmax, bool mixed = true,
                                      std::uint64_t seed = kDefaultSeed);

struct IntegrabilityVerdict {
  bool ok = false;
  std::string failing_clause;  // "", "curvature-invariance", "semi-parallel", "cond2:k=<i>"
  double residual = 0.0;
};

IntegrabilityVerdict is_integrable_jet(const TwoJet& jet);

struct DerivedPair {
  Subspace w;
  Subspace u;
};

/// (W, first normal space); asserts the curvature-invariant-pair property,
/// which must hold for every integrable jet.
DerivedPair derived_pair(const TwoJet& jet);

enum class Obstruction { Blocked, Inconclusive };

struct ObstructionReport {
  Obstruction verdict = Obstruction::Inconclusive;
  int minus_dim = 0;  // dim rho(k_V)|_V cap so(V)_-
  int hom_dim = 0;    // dim Hom_h(W, U)
};

/// Representation-theoretic obstruction: blocked iff the graded stabilizer
/// minus-part vanishes and Hom_h(W,U) = {0}.
ObstructionReport dec_obstruction(const CurvatureModel& m, const Subspace& w,
                                  const Subspace& u);

struct CurvedFlatReport {
  bool ok = false;
  std::string failing_clause;  // "", "commutation", "cfl0", "cfl1", "cfl2"
  std::vector<CVec> x;         // adapted orthonormal basis of W
  std::vector<CVec> eta;       // eta_i = h(x_i, x_i)
  double residual_cfl0 = 0.0;
  double residual_cfl1 = 0.0;
  double residual_cfl2 = 0.0;
};

/// Adapted basis for a rank-dimensional curvature-isotropic semi-parallel
/// jet, or the violated clause.
CurvedFlatReport curved_flat_normal_form(const TwoJet& jet,
                                         std::uint64_t seed = kDefaultSeed);

struct SphereReport {
  bool v_curvature_invariant = false;
  double residual = 0.0;
};

/// For dim(U) = 1, dim(W) >= 2 and h_W irreducible on W: reports whether
/// W + U is curvature invariant (necessary for integrability).
SphereReport sphere_criterion(const TwoJet& jet);

struct CiIdentityReport {
  double printed_residual = 0.0;  // the identity as printed
  double nested_residual = 0.0;   // the k = 2 nested-commutator identity
};

/// Consistency check of the first-normal-space curvature identity; reported,
/// never gated (see README on the index-placement question).
CiIdentityReport ci_identity_report(const TwoJet& jet);

/// Deterministic jet families used by the suites.
TwoJet circle_jet(const CurvatureModel& model, const CVec& x, const CVec& eta);
TwoJet random_dense_jet(const CurvatureModel& model, const Subspace& w, Rng& rng);

}  // namespace grasslab
