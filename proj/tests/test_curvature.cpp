// Copyright 2026 The Grasslab Authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "grasslab/curvature.hpp"

using namespace grasslab;

namespace {
const Complex I1(0.0, 1.0);
}  // namespace

TEST_CASE("curvature endomorphism at distinguished pairs") {
  const CurvatureModel m = CurvatureModel::grassmannian(3);
  const CVec e1 = unit_vec(3, 0), e2 = unit_vec(3, 1);

  SUBCASE("R_{i e1, e1} = J") {
    const RMat r = curvature_endomorphism(m, I1 * e1, e1);
    CHECK((r - jmat(3)).norm() <= 1e-14);
  }
  SUBCASE("R_{e1,e2} = -(e1 ^ e2) componentwise") {
    const RMat r = curvature_endomorphism(m, e1, e2);
    CHECK((r + componentwise_wedge(e1, e2)).norm() <= 1e-14);
  }
  SUBCASE("R_{e1, i e2} = 0 for orthogonal real directions") {
    CHECK(curvature_endomorphism(m, e1, I1 * e2).norm() <= 1e-14);
  }
}

TEST_CASE("complex projective space holomorphic curvature") {
  Rng rng(kDefaultSeed);
  for (int sign : {+1, -1}) {
    const CurvatureModel m = CurvatureModel::cpn(3, sign);
    for (int t = 0; t < 16; ++t) {
      const CVec u = rng.unit_cvec(3);
      const CVec ju = I1 * u;
      const RMat r = curvature_endomorphism(m, u, ju);
      const double holo = inner(complexify(RVec(r * realify(ju))), u);
      CHECK(holo == doctest::Approx(4.0 * sign).epsilon(1e-10));
    }
  }
}

TEST_CASE("sectional curvature") {
  const CVec e1 = unit_vec(2, 0), e2 = unit_vec(2, 1);
  CHECK(sectional_curvature(CurvatureModel::grassmannian(2, +1), e1, e2) ==
        doctest::Approx(1.0));
  CHECK(std::abs(sectional_curvature(CurvatureModel::grassmannian(2, +1), e1, I1 * e2)) <=
        1e-14);
  CHECK(sectional_curvature(CurvatureModel::grassmannian(2, -1), e1, e2) ==
        doctest::Approx(-1.0));
  CHECK_THROWS_AS(
      sectional_curvature(CurvatureModel::grassmannian(2), e1, 2.0 * e1),
      std::invalid_argument);
}

TEST_CASE("curvature invariance predicate") {
  const CurvatureModel m = CurvatureModel::grassmannian(3);
  const CVec e1 = unit_vec(3, 0), e2 = unit_vec(3, 1);
  CHECK(is_curvature_invariant(m, Subspace::span(3, {e1, I1 * e1})).ok);
  // R(x, y, y) for y = e2 + i e1 leaves the span.
  const Subspace bad = Subspace::span(3, {e1, e2 + I1 * e1});
  const auto verdict = is_curvature_invariant(m, bad);
  CHECK_FALSE(verdict.ok);
  CHECK(verdict.residual > 0.1);
  CHECK(is_curvature_invariant(m, Subspace::zero(3)).ok);
  CHECK(is_curvature_invariant(m, Subspace::span(3, {e1 + I1 * e2})).ok);
}

TEST_CASE("curvature isotropy predicate") {
  const CurvatureModel m = CurvatureModel::grassmannian(3);
  const CVec e1 = unit_vec(3, 0), e2 = unit_vec(3, 1);
  CHECK(is_curvature_isotropic(m, Subspace::span(3, {e1, I1 * e2})).ok);
  CHECK_FALSE(is_curvature_isotropic(m, Subspace::span(3, {e1, e2})).ok);
  CHECK(is_curvature_isotropic(m, Subspace::span(3, {e1 + 2.0 * I1 * e2})).ok);
}

TEST_CASE("isotropy algebra dimensions and membership") {
  CHECK(isotropy_algebra(CurvatureModel::grassmannian(2)).dim() == 2);
  CHECK(isotropy_algebra(CurvatureModel::grassmannian(3)).dim() == 4);
  CHECK(isotropy_algebra(CurvatureModel::cpn(2)).dim() == 4);
  CHECK(isotropy_algebra(CurvatureModel::cpn(3)).dim() == 9);

  Rng rng(kDefaultSeed);
  for (const auto kind : {ModelKind::Grassmannian2, ModelKind::ComplexProjective}) {
    const CurvatureModel m = kind == ModelKind::Grassmannian2
                                 ? CurvatureModel::grassmannian(4)
                                 : CurvatureModel::cpn(4);
    const OperatorAlgebra iso = isotropy_algebra(m);
    CHECK(iso.closure_residual() <= 1e-8);
    for (int t = 0; t < 64; ++t) {
      const RMat r = curvature_endomorphism(m, rng.normal_cvec(4), rng.normal_cvec(4));
      CHECK(iso.membership_residual(r) <= 1e-8 * std::max(1.0, r.norm()));
    }
  }
}

TEST_CASE("curvature tensor symmetries on random triples") {
  Rng rng(kDefaultSeed);
  for (const auto kind : {ModelKind::Grassmannian2, ModelKind::ComplexProjective}) {
    for (int n : {2, 4}) {
      const CurvatureModel m = kind == ModelKind::Grassmannian2
                                   ? CurvatureModel::grassmannian(n)
                                   : CurvatureModel::cpn(n);
      double worst = 0.0;
      for (int t = 0; t < 250; ++t) {
        const CVec u = rng.normal_cvec(n), v = rng.normal_cvec(n), w = rng.normal_cvec(n);
        const RMat ruv = curvature_endomorphism(m, u, v);
        worst = std::max(worst, (ruv + curvature_endomorphism(m, v, u)).norm());
        worst = std::max(worst, skew_residual(ruv));
        // First Bianchi.
        const CVec b = complexify(RVec(ruv * realify(w))) +
                       complexify(RVec(curvature_endomorphism(m, v, w) * realify(u))) +
                       complexify(RVec(curvature_endomorphism(m, w, u) * realify(v)));
        worst = std::max(worst, b.norm());
        // Hermitian compatibility.
        worst = std::max(worst, (ruv * jmat(n) - jmat(n) * ruv).norm());
      }
      CHECK(worst <= 1e-9);
    }
  }
}

TEST_CASE("real-form independence of the Grassmannian rule") {
  Rng rng(kDefaultSeed);
  const CurvatureModel m = CurvatureModel::grassmannian(3);
  for (int t = 0; t < 8; ++t) {
    const double phi = rng.angle_pi();
    const CVec u = rng.normal_cvec(3), v = rng.normal_cvec(3);
    const RMat a = curvature_endomorphism_at_form(m, u, v, phi);
    const RMat b = curvature_endomorphism(m, u, v);
    CHECK((a - b).norm() <= 1e-9 * std::max(1.0, b.norm()));
  }
}

TEST_CASE("sign flag equivariance") {
  Rng rng(kDefaultSeed);
  const CurvatureModel plus = CurvatureModel::grassmannian(3, +1);
  const CurvatureModel minus = CurvatureModel::grassmannian(3, -1);
  for (int t = 0; t < 32; ++t) {
    const CVec u = rng.normal_cvec(3), v = rng.normal_cvec(3);
    CHECK((curvature_endomorphism(plus, u, v) + curvature_endomorphism(minus, u, v))
              .norm() == 0.0);
  }
  for (int t = 0; t < 16; ++t) {
    std::vector<CVec> gens{rng.normal_cvec(3), rng.normal_cvec(3)};
    const Subspace w = Subspace::span(3, gens);
    CHECK(is_curvature_invariant(plus, w).ok == is_curvature_invariant(minus, w).ok);
    CHECK(is_curvature_isotropic(plus, w).ok == is_curvature_isotropic(minus, w).ok);
  }
}

TEST_CASE("CPn invariant subspaces are the complex and totally real ones") {
  const CurvatureModel m = CurvatureModel::cpn(3);
  const CVec e1 = unit_vec(3, 0), e2 = unit_vec(3, 1);
  CHECK(is_curvature_invariant(m, Subspace::span(3, {e1, I1 * e1, e2, I1 * e2})).ok);
  CHECK(is_curvature_invariant(m, Subspace::span(3, {e1, e2})).ok);
  CHECK_FALSE(is_curvature_invariant(m, Subspace::span(3, {e1, e2 + 0.5 * I1 * e1})).ok);
}

TEST_CASE("graded stabilizer at hand-checked configurations") {
  SUBCASE("totally real line pair has trivial stabilizer") {
    const CurvatureModel m = CurvatureModel::grassmannian(2);
    const Subspace w = Subspace::span(2, {unit_vec(2, 0)});
    const Subspace u = Subspace::span(2, {I1 * unit_vec(2, 1)});
    const auto stab = graded_stabilizer(m, w, u);
    CHECK(stab.plus.empty());
    CHECK(stab.minus.empty());
  }
  SUBCASE("complex line pair is swapped by the real rotation") {
    const CurvatureModel m = CurvatureModel::grassmannian(2);
    const CVec e1 = unit_vec(2, 0), e2 = unit_vec(2, 1);
    const Subspace w = Subspace::span(2, {e1, I1 * e1});
    const Subspace u = Subspace::span(2, {e2, I1 * e2});
    const auto stab = graded_stabilizer(m, w, u);
    CHECK(stab.minus.size() == 1);
    // The minus part is spanned by the componentwise wedge e1 ^ e2.
    RMat cw = componentwise_wedge(e1, e2);
    cw /= cw.norm();
    RMat got = stab.minus[0] / stab.minus[0].norm();
    const double align = std::abs((cw.transpose() * got).trace());
    CHECK(align == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(stab.plus.size() == 1);  // J preserves both lines
  }
}
