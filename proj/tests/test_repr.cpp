// Copyright 2026 The Grasslab Authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "grasslab/catalog.hpp"
#include "grasslab/repr.hpp"

using namespace grasslab;

namespace {

const Complex I1(0.0, 1.0);

TypeTag coord_trkp(int n, int k) {
  TypeTag t;
  t.variant = Variant::TRKPrime;
  t.wp = RMat::Zero(n, 2 * k);
  for (int i = 0; i < 2 * k; ++i) t.wp(i, i) = 1.0;
  t.ip = RMat::Zero(n, n);
  for (int i = 0; i < k; ++i) {
    t.ip(k + i, i) = 1.0;
    t.ip(i, k + i) = -1.0;
  }
  t.w0p = RMat::Zero(n, k);
  for (int i = 0; i < k; ++i) t.w0p(i, i) = 1.0;
  return t;
}

}  // namespace

TEST_CASE("trivial algebra gives one trivial component") {
  const int n = 3;
  const Subspace s = Subspace::span(n, {unit_vec(n, 0), I1 * unit_vec(n, 1)});
  const OperatorAlgebra zero = OperatorAlgebra::span(n, {});
  const auto comps = isotypic_decomposition(zero, s);
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].kind == ComponentKind::Trivial);
  CHECK(same_subspace(comps[0].total, s));
  CHECK(comps[0].multiplicity == 2);
}

TEST_CASE("complex line acted on by R J is one complex component") {
  // h_W for W of type (c_2) inside C^3 acts on the orthocomplement through
  // R J, and the orthocomplement is a single complex-kind component.
  const int n = 3;
  const CurvatureModel m = CurvatureModel::grassmannian(n);
  const CVec e1 = unit_vec(n, 0), e2 = unit_vec(n, 1);
  const Subspace w = Subspace::span(n, {e1, I1 * e1, e2, I1 * e2});
  const OperatorAlgebra hw = curvature_algebra(m, w);
  const auto comps = isotypic_decomposition(hw, w.complement());
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].kind == ComponentKind::Complex);
  CHECK(comps[0].total.dim() == 2);
  CHECK(comps[0].multiplicity == 1);
}

TEST_CASE("tr_{2,2} orthocomplement splits into iW1, W2 and the trivial rest") {
  const int n = 5;
  const CurvatureModel m = CurvatureModel::grassmannian(n);
  const CVec e1 = unit_vec(n, 0), e2 = unit_vec(n, 1), e3 = unit_vec(n, 2),
             e4 = unit_vec(n, 3);
  const Subspace w = Subspace::span(n, {e1, e2, I1 * e3, I1 * e4});
  const OperatorAlgebra hw = curvature_algebra(m, w);
  const auto comps = isotypic_decomposition(hw, w.complement());
  REQUIRE(comps.size() == 3);

  const Subspace iw1 = Subspace::span(n, {I1 * e1, I1 * e2});
  const Subspace w2 = Subspace::span(n, {e3, e4});
  int found = 0;
  for (const auto& c : comps) {
    if (c.kind == ComponentKind::Trivial) {
      CHECK(c.total.dim() == 2);  // C e5 at n = 5
      ++found;
    } else if (same_subspace(c.total, iw1) || same_subspace(c.total, w2)) {
      CHECK(c.multiplicity == 1);
      ++found;
    }
  }
  CHECK(found == 3);

  SUBCASE("pieces are invariant, orthogonal, and rerun-stable") {
    int total = 0;
    for (const auto& c : comps) {
      total += c.total.dim();
      for (const RMat& a : hw.ops()) CHECK(invariance_residual(a, c.total) <= 1e-8);
      const auto again = isotypic_decomposition(hw, c.total);
      REQUIRE(again.size() == 1);
      CHECK(same_subspace(again[0].total, c.total));
    }
    CHECK(total == w.complement().dim());
    for (std::size_t a = 0; a < comps.size(); ++a)
      for (std::size_t b = a + 1; b < comps.size(); ++b)
        CHECK((comps[a].total.basis().transpose() * comps[b].total.basis())
                  .cwiseAbs()
                  .maxCoeff() <= 1e-9);
  }
}

TEST_CASE("tr_3' isotypic family reproduces the three-parameter module family") {
  const int n = 6, k = 3;
  const CurvatureModel m = CurvatureModel::grassmannian(n);
  const TypeTag tag = coord_trkp(n, k);
  const Subspace w = construct_type(tag, n);
  const OperatorAlgebra hw = curvature_algebra(m, w);
  REQUIRE(hw.dim() == 3);  // so(3)

  const auto comps = isotypic_decomposition(hw, w.complement());
  // One multiplicity-3 real component (dim 9) at n = 2k.
  REQUIRE(comps.size() == 1);
  const auto& comp = comps[0];
  CHECK(comp.kind == ComponentKind::Real);
  CHECK(comp.multiplicity == 3);
  CHECK(comp.total.dim() == 9);

  // The closed-form family: U(c) = {c0 v + c2 I'v + J(c0 I'v + c1 v)}.
  Rng rng(kDefaultSeed);
  for (int t = 0; t < 8; ++t) {
    RVec c = rng.normal_rvec(3);
    std::vector<CVec> gens;
    for (int j = 0; j < k; ++j) {
      const RVec v = tag.w0p.col(j);
      const RVec ipv = tag.ip * v;
      gens.push_back(real_vec(RVec(c(0) * v + c(2) * ipv)) +
                     I1 * real_vec(RVec(c(0) * ipv + c(1) * v)));
    }
    const Subspace u = Subspace::span(n, gens);
    CHECK(u.dim() == k);
    CHECK(max_principal_sine(comp.total, u) <= 1e-9);
    for (const RMat& a : hw.ops()) CHECK(invariance_residual(a, u) <= 1e-8);
  }

  SUBCASE("family members are invariant and projectively rigid") {
    RVec c(3);
    c << 0.3, -1.2, 0.7;
    const Subspace u1 = isotypic_family_member(comp, c);
    const Subspace u2 = isotypic_family_member(comp, RVec(2.0 * c));
    CHECK(same_subspace(u1, u2));
    for (const RMat& a : hw.ops()) CHECK(invariance_residual(a, u1) <= 1e-8);
    CHECK(max_principal_sine(comp.total, u1) <= 1e-9);
    RVec c0 = RVec::Zero(3);
    c0(0) = 1.0;
    CHECK(same_subspace(isotypic_family_member(comp, c0), comp.base));
    CHECK_THROWS_AS(isotypic_family_member(comp, RVec(RVec::Zero(3))),
                    std::invalid_argument);
  }
}

TEST_CASE("quaternionic commutant is detected") {
  // The realified su(2) action on C^2: self-intertwiners form the quaternions.
  const int n = 2;
  auto realified = [&](const Eigen::Matrix2cd& m) {
    RMat out(4, 4);
    out.topLeftCorner(2, 2) = m.real();
    out.topRightCorner(2, 2) = -m.imag();
    out.bottomLeftCorner(2, 2) = m.imag();
    out.bottomRightCorner(2, 2) = m.real();
    return out;
  };
  Eigen::Matrix2cd s1, s2, s3;
  s1 << Complex(0, 0), Complex(0, 1), Complex(0, 1), Complex(0, 0);
  s2 << Complex(0, 0), Complex(1, 0), Complex(-1, 0), Complex(0, 0);
  s3 << Complex(0, 1), Complex(0, 0), Complex(0, 0), Complex(0, -1);
  const OperatorAlgebra su2 =
      OperatorAlgebra::span(n, {realified(s1), realified(s2), realified(s3)});
  const auto comps = isotypic_decomposition(su2, Subspace::full(n));
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].kind == ComponentKind::Quaternionic);
  CHECK(comps[0].multiplicity == 1);
  CHECK(comps[0].div_basis.size() == 4);
}

TEST_CASE("intertwiner spaces") {
  const int n = 2;
  const CVec e1 = unit_vec(n, 0), e2 = unit_vec(n, 1);
  SUBCASE("zero algebra gives full Hom") {
    const OperatorAlgebra zero = OperatorAlgebra::span(n, {});
    const Subspace w = Subspace::span(n, {e1, I1 * e1});
    const Subspace u = Subspace::span(n, {e2});
    CHECK(intertwiner_space(zero, w, u).size() == 2u);
  }
  SUBCASE("complex lines under R J intertwine complex-linearly") {
    const CurvatureModel m = CurvatureModel::grassmannian(n);
    const Subspace w = Subspace::span(n, {e1, I1 * e1});
    const Subspace u = Subspace::span(n, {e2, I1 * e2});
    const OperatorAlgebra hw = curvature_algebra(m, w);  // = R J for c_1
    REQUIRE(hw.dim() == 1);
    CHECK(intertwiner_space(hw, w, u).size() == 2u);
    CHECK(intertwiner_space(hw, u, w).size() == 2u);  // adjoint isomorphism
  }
}

TEST_CASE("adjoint isomorphism equalizes intertwiner dimensions") {
  Rng rng(kDefaultSeed);
  const int n = 4;
  const CurvatureModel m = CurvatureModel::grassmannian(n);
  for (int t = 0; t < 6; ++t) {
    const TypeTag tag = random_tag(Variant::CK, n, 2, 0, rng);
    const Subspace w = construct_type(tag, n);
    const OperatorAlgebra hw = curvature_algebra(m, w);
    const Subspace u = isotypic_decomposition(hw, w.complement())[0].base;
    CHECK(intertwiner_space(hw, w, u).size() == intertwiner_space(hw, u, w).size());
  }
}

TEST_CASE("centralizers in so(V)") {
  const int n = 3;
  SUBCASE("zero algebra gives all of so(V)") {
    const OperatorAlgebra zero = OperatorAlgebra::span(n, {});
    const Subspace v = Subspace::span(n, {unit_vec(n, 0), unit_vec(n, 1), I1 * unit_vec(n, 2)});
    CHECK(centralizer_in_so(zero, v).size() == 3u);  // d(d-1)/2 with d = 3
  }
  SUBCASE("so(2) is its own centralizer") {
    const Subspace v = Subspace::span(n, {unit_vec(n, 0), unit_vec(n, 1)});
    const RMat rot = wedge(unit_vec(n, 0), unit_vec(n, 1));
    const OperatorAlgebra a = OperatorAlgebra::span(n, {rot});
    const auto z = centralizer_in_so(a, v);
    REQUIRE(z.size() == 1u);
    CHECK(std::abs((z[0] / z[0].norm()).cwiseProduct(rot / rot.norm()).sum()) ==
          doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("graded centralizer of the tr_k' pair is spanned by J_theta") {
  const int n = 6, k = 3;
  const CurvatureModel m = CurvatureModel::grassmannian(n);
  const TypeTag tag = coord_trkp(n, k);
  const Subspace w = construct_type(tag, n);
  const Subspace u = w.conjugated(0.0);  // theta = 0
  const Subspace v = w.direct_sum(u);

  std::vector<RMat> gens;
  const RMat pv = v.basis() * v.basis().transpose();
  for (int i = 0; i < w.dim(); ++i)
    for (int j = i + 1; j < w.dim(); ++j)
      gens.push_back(pv * curvature_endomorphism(m, w.vec(i), w.vec(j)) * pv);
  const OperatorAlgebra h = OperatorAlgebra::closure(n, gens);

  const auto z = centralizer_in_so(h, v, std::make_pair(w, u));
  REQUIRE(z.size() == 1u);
  const RMat jt = jtheta_operator(tag, 0.0, n);
  const RMat jt_v = pv * jt * pv;
  const double align =
      std::abs((z[0] / z[0].norm()).cwiseProduct(jt_v / jt_v.norm()).sum());
  CHECK(align == doctest::Approx(1.0).epsilon(1e-8));
}
