// Copyright 2026 The Grasslab Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "grasslab/operators.hpp"

#include <optional>

namespace grasslab {

/// Commutant division type of an isotypic component, detected through the
/// dimension of the self-intertwiner space of one irreducible (1 real,
/// 2 complex, 4 quaternionic); Trivial marks the annihilated part.
enum class ComponentKind { Real, Complex, Quaternionic, Trivial };

struct IsotypicComponent {
  Subspace total;             // sum of the mutually isomorphic irreducibles
  Subspace base;              // one irreducible copy
  std::vector<RMat> maps;     // 2n x dim(base); maps[0] embeds base itself
  std::vector<RMat> div_basis;  // self-intertwiners of base, div_basis[0] = Id
  ComponentKind kind = ComponentKind::Real;
  int multiplicity = 0;
};

/// Decomposition of an invariant subspace S into isotypic components:
/// pairwise orthogonal, invariant, dimensions summing to dim S. The
/// annihilated part, if any, is reported as one Trivial component (last).
std::vector<IsotypicComponent> isotypic_decomposition(const OperatorAlgebra& alg,
                                                      const Subspace& s,
                                                      std::uint64_t seed = kDefaultSeed);

/// The irreducible invariant subspace lambda_c(base) for a coefficient
/// vector over the commutant field, flattened to multiplicity x dim(field)
/// reals. Projectively equal inputs give equal subspaces.
Subspace isotypic_family_member(const IsotypicComponent& comp, const RVec& coeffs);

/// Basis of {lambda : W -> U | lambda A|_W = A|_U lambda for all A}, as
/// dim(U) x dim(W) matrices in the stored bases of W and U.
std::vector<RMat> intertwiner_space(const OperatorAlgebra& alg, const Subspace& w,
                                    const Subspace& u);

/// Basis of Z(alg) inside so(V); with a grading (W,U), additionally
/// intersected with so(V)_-. Operators are returned embedded in R^{2n}.
std::vector<RMat> centralizer_in_so(const OperatorAlgebra& alg, const Subspace& v,
                                    std::optional<std::pair<Subspace, Subspace>> grading =
                                        std::nullopt);

/// Nullspace of a constraint matrix (columns = unknowns), relative tolerance.
RMat nullspace(const RMat& constraint, double rel_tol = 1e-9);

}  // namespace grasslab
