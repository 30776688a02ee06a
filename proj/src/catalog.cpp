// Copyright 2026 The Grasslab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "grasslab/catalog.hpp"

#include <Eigen/Eigenvalues>

namespace grasslab {

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::CK: return "c_k";
    case Variant::TRKL: return "tr_kl";
    case Variant::CKPrime: return "c_k_prime";
    case Variant::TRKPrime: return "tr_k_prime";
    case Variant::EX3: return "ex3";
    case Variant::EX2: return "ex2";
    case Variant::TR1: return "tr1";
  }
  throw std::logic_error("variant_name");
}

Variant variant_from_name(const std::string& s) {
  if (s == "c_k") return Variant::CK;
  if (s == "tr_kl") return Variant::TRKL;
  if (s == "c_k_prime") return Variant::CKPrime;
  if (s == "tr_k_prime") return Variant::TRKPrime;
  if (s == "ex3") return Variant::EX3;
  if (s == "ex2") return Variant::EX2;
  if (s == "tr1") return Variant::TR1;
  throw std::invalid_argument("unknown variant: " + s);
}

int TypeTag::k() const {
  switch (variant) {
    case Variant::CK: return static_cast<int>(w0.cols());
    case Variant::TRKL: return static_cast<int>(w1.cols());
    case Variant::CKPrime: return static_cast<int>(wp.cols()) / 2;
    case Variant::TRKPrime: return static_cast<int>(w0p.cols());
    default: return 0;
  }
}

int TypeTag::l() const {
  return variant == Variant::TRKL ? static_cast<int>(w2.cols()) : 0;
}

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument("TypeTag: " + msg);
}

void check_orthonormal_cols(const RMat& m, const std::string& what) {
  if (m.cols() == 0) return;
  const RMat g = m.transpose() * m - RMat::Identity(m.cols(), m.cols());
  require(g.cwiseAbs().maxCoeff() <= 1e-10, what + " not orthonormal");
}

// Plain R^n column-space helper (the Subspace class lives on C^n).
RMat real_orth(const RMat& cols) { return orthonormal_columns(cols); }

}  // namespace

void validate_tag(const TypeTag& tag, int n) {
  switch (tag.variant) {
    case Variant::CK: {
      require(tag.w0.rows() == n && tag.w0.cols() >= 1, "c_k needs k >= 1");
      check_orthonormal_cols(tag.w0, "W0");
      break;
    }
    case Variant::TRKL: {
      require(tag.w1.rows() == n && tag.w2.rows() == n, "payload row count");
      require(tag.w1.cols() + tag.w2.cols() >= 2, "tr_kl needs k + l >= 2");
      check_orthonormal_cols(tag.w1, "W1");
      check_orthonormal_cols(tag.w2, "W2");
      if (tag.w1.cols() > 0 && tag.w2.cols() > 0)
        require((tag.w1.transpose() * tag.w2).cwiseAbs().maxCoeff() <= 1e-10,
                "W1 and W2 not orthogonal");
      break;
    }
    case Variant::CKPrime:
    case Variant::TRKPrime: {
      require(tag.wp.rows() == n && tag.wp.cols() >= 2 && tag.wp.cols() % 2 == 0,
              "W' must have even dimension >= 2");
      check_orthonormal_cols(tag.wp, "W'");
      require(tag.ip.rows() == n && tag.ip.cols() == n, "I' shape");
      require((tag.ip + tag.ip.transpose()).cwiseAbs().maxCoeff() <= 1e-10, "I' not skew");
      const RMat p = tag.wp * tag.wp.transpose();
      require((tag.ip - p * tag.ip * p).cwiseAbs().maxCoeff() <= 1e-10,
              "I' not supported on W'");
      const RMat sq = tag.ip * tag.ip * tag.wp + tag.wp;
      require(sq.cwiseAbs().maxCoeff() <= 1e-10, "I'^2 != -Id on W'");
      if (tag.variant == Variant::TRKPrime) {
        require(tag.w0p.rows() == n && tag.w0p.cols() >= 2, "tr_k' needs k >= 2");
        require(2 * tag.w0p.cols() == tag.wp.cols(), "W' must equal W0' + I'(W0')");
        check_orthonormal_cols(tag.w0p, "W0'");
        require((tag.w0p.transpose() * tag.ip * tag.w0p).cwiseAbs().maxCoeff() <= 1e-10,
                "W0' not a real form of (W', I')");
        RMat both(n, tag.wp.cols());
        both << tag.w0p, tag.ip * tag.w0p;
        require((real_orth(both).cols() == tag.wp.cols()) &&
                    colspace_intersect(both, tag.wp).cols() == tag.wp.cols(),
                "W0' + I'(W0') != W'");
      }
      break;
    }
    case Variant::EX3: {
      require(tag.e1.size() == n && tag.e2.size() == n, "frame size");
      RMat f(n, 2);
      f << tag.e1, tag.e2;
      check_orthonormal_cols(f, "{e1,e2}");
      break;
    }
    case Variant::EX2: {
      require(n >= 3, "ex2 requires n >= 3");
      require(tag.e1.size() == n && tag.e2.size() == n && tag.e3.size() == n, "frame size");
      RMat f(n, 3);
      f << tag.e1, tag.e2, tag.e3;
      check_orthonormal_cols(f, "{e1,e2,e3}");
      break;
    }
    case Variant::TR1: {
      require(tag.u.size() == n, "u size");
      require(std::abs(tag.u.norm() - 1.0) <= 1e-10, "u not a unit vector");
      break;
    }
  }
}

Subspace construct_type(const TypeTag& tag, int n) {
  validate_tag(tag, n);
  std::vector<CVec> gens;
  const Complex iunit(0.0, 1.0);
  switch (tag.variant) {
    case Variant::CK:
      for (Eigen::Index j = 0; j < tag.w0.cols(); ++j) {
        const CVec v = real_vec(tag.w0.col(j));
        gens.push_back(v);
        gens.push_back(iunit * v);
      }
      break;
    case Variant::TRKL:
      for (Eigen::Index j = 0; j < tag.w1.cols(); ++j)
        gens.push_back(real_vec(tag.w1.col(j)));
      for (Eigen::Index j = 0; j < tag.w2.cols(); ++j)
        gens.push_back(iunit * real_vec(tag.w2.col(j)));
      break;
    case Variant::CKPrime:
      for (Eigen::Index j = 0; j < tag.wp.cols(); ++j) {
        const RVec v = tag.wp.col(j);
        gens.push_back(real_vec(v) - iunit * real_vec(RVec(tag.ip * v)));
      }
      break;
    case Variant::TRKPrime:
      for (Eigen::Index j = 0; j < tag.w0p.cols(); ++j) {
        const RVec v = tag.w0p.col(j);
        gens.push_back(real_vec(v) - iunit * real_vec(RVec(tag.ip * v)));
      }
      break;
    case Variant::EX3: {
      const CVec f1 = real_vec(tag.e1), f2 = real_vec(tag.e2);
      gens.push_back(f1 - iunit * f2);
      gens.push_back(f2 + iunit * f1);
      gens.push_back(f1 + iunit * f2);
      break;
    }
    case Variant::EX2: {
      const CVec f1 = real_vec(tag.e1), f2 = real_vec(tag.e2), f3 = real_vec(tag.e3);
      gens.push_back(2.0 * f1 + iunit * f2);
      gens.push_back(f2 + iunit * (f1 + std::sqrt(3.0) * f3));
      break;
    }
    case Variant::TR1:
      gens.push_back(tag.u);
      break;
  }
  for (CVec& g : gens) g = rot(g, tag.phi);
  return Subspace::span(n, gens);
}

OperatorAlgebra curvature_algebra(const CurvatureModel& m, const Subspace& w) {
  const auto verdict = is_curvature_invariant(m, w);
  if (!verdict.ok)
    throw std::invalid_argument("curvature_algebra: subspace not curvature invariant");
  std::vector<RMat> gens;
  for (int i = 0; i < w.dim(); ++i)
    for (int j = i + 1; j < w.dim(); ++j)
      gens.push_back(curvature_endomorphism(m, w.vec(i), w.vec(j)));
  OperatorAlgebra alg = OperatorAlgebra::span(m.n, gens);
  OperatorAlgebra closed = OperatorAlgebra::closure(m.n, alg.ops());
  if (closed.dim() != alg.dim())
    throw std::runtime_error("curvature_algebra: span not bracket-closed");
  return alg;
}

int expected_hw_dimension(const TypeTag& tag) {
  auto choose2 = [](int k) { return k * (k - 1) / 2; };
  switch (tag.variant) {
    case Variant::CK: return 1 + choose2(tag.k());
    case Variant::TRKL: return choose2(tag.k()) + choose2(tag.l());
    case Variant::CKPrime: return tag.k() * tag.k();
    case Variant::TRKPrime: return choose2(tag.k());
    case Variant::EX3: return 1;
    case Variant::EX2: return 1;
    case Variant::TR1: return 0;
  }
  throw std::logic_error("expected_hw_dimension");
}

// --------------------------------------------------------------------------
// classify

namespace {

RMat real_parts_matrix(const Subspace& w) {
  RMat out(w.n(), w.dim());
  for (int i = 0; i < w.dim(); ++i) out.col(i) = w.vec(i).real();
  return out;
}

RMat imag_parts_matrix(const Subspace& w) {
  RMat out(w.n(), w.dim());
  for (int i = 0; i < w.dim(); ++i) out.col(i) = w.vec(i).imag();
  return out;
}

// Graph map of a subspace of the form { v - i I v : v in V0 }: given the
// orthonormal columns q of the real-parts span, returns I q_j for each.
RMat graph_map_images(const Subspace& w, const RMat& q) {
  const RMat a = real_parts_matrix(w);
  const RMat b = imag_parts_matrix(w);
  RMat out(q.rows(), q.cols());
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const RVec c = a.colPivHouseholderQr().solve(q.col(j));
    if ((a * c - q.col(j)).norm() > 1e-7)
      throw std::runtime_error("classify: graph solve failed");
    out.col(j) = -b * c;
  }
  return out;
}

TypeTag recover_ck(const CurvatureModel& m, const Subspace& w) {
  TypeTag tag;
  tag.variant = Variant::CK;
  tag.phi = 0.0;
  const Subspace realpts = w.intersect(Subspace::real_form(m.n, 0.0));
  if (2 * realpts.dim() != w.dim())
    throw std::runtime_error("classify: complex subspace with bad real locus");
  RMat w0(m.n, realpts.dim());
  for (int i = 0; i < realpts.dim(); ++i) w0.col(i) = realpts.vec(i).real();
  tag.w0 = real_orth(w0);
  return tag;
}

TypeTag recover_ckprime(const CurvatureModel& m, const Subspace& w) {
  TypeTag tag;
  tag.variant = Variant::CKPrime;
  tag.phi = 0.0;
  const RMat wp = real_orth(real_parts_matrix(w));
  if (wp.cols() != w.dim())
    throw std::runtime_error("classify: degenerate real-part span for c_k'");
  const RMat images = graph_map_images(w, wp);
  RMat ip = RMat::Zero(m.n, m.n);
  for (Eigen::Index j = 0; j < wp.cols(); ++j)
    ip += images.col(j) * wp.col(j).transpose();
  ip = 0.5 * (ip - ip.transpose());
  tag.wp = wp;
  tag.ip = ip;
  return tag;
}

TypeTag recover_trkprime(const CurvatureModel& m, const Subspace& w) {
  TypeTag tag;
  tag.variant = Variant::TRKPrime;
  tag.phi = 0.0;
  const RMat w0p = real_orth(real_parts_matrix(w));
  if (w0p.cols() != w.dim())
    throw std::runtime_error("classify: degenerate real-part span for tr_k'");
  const RMat images = graph_map_images(w, w0p);
  RMat ip = RMat::Zero(m.n, m.n);
  for (Eigen::Index j = 0; j < w0p.cols(); ++j)
    ip += images.col(j) * w0p.col(j).transpose() - w0p.col(j) * images.col(j).transpose();
  RMat both(m.n, 2 * w0p.cols());
  both << w0p, images;
  tag.w0p = w0p;
  tag.wp = real_orth(both);
  tag.ip = ip;
  return tag;
}

TypeTag recover_trkl(const CurvatureModel& m, const Subspace& w,
                     const Eigen::MatrixXcd& bform) {
  // The restricted bilinear form rescales by e^{2 i phi} under real-form
  // rotation; candidate angles from the largest entry, refined by maximizing
  // dim(W cap R(phi)).
  Eigen::Index bi = 0, bj = 0;
  bform.cwiseAbs().maxCoeff(&bi, &bj);
  const double theta = std::arg(bform(bi, bj));
  auto norm_pi = [](double p) {
    p = std::fmod(p, M_PI);
    if (p < 0) p += M_PI;
    return p;
  };
  std::vector<double> cands = {norm_pi(theta / 2), norm_pi(theta / 2 + M_PI_2),
                               norm_pi(-theta / 2), norm_pi(-theta / 2 + M_PI_2)};
  double best_phi = 0.0;
  int best_dim = -1;
  for (double c : cands) {
    const int dimc = w.intersect(Subspace::real_form(m.n, c)).dim();
    if (dimc > best_dim || (dimc == best_dim && c < best_phi - 1e-12)) {
      best_dim = dimc;
      best_phi = c;
    }
  }
  Subspace s1 = w.intersect(Subspace::real_form(m.n, best_phi));
  Subspace s2 = w.intersect(Subspace::real_form(m.n, best_phi + M_PI_2));
  if (s1.dim() + s2.dim() != w.dim())
    throw std::runtime_error("classify: totally real subspace with bad form split");
  // The intersection tolerates angles of a few 1e-5, so best_phi can sit a
  // hair off the true angle; the recovered vectors are exact elements of W,
  // and their bilinear squares read the angle back exactly.
  Complex acc(0.0, 0.0);
  for (int i = 0; i < s1.dim(); ++i) acc += complex_bilinear(s1.vec(i), s1.vec(i));
  double phi = norm_pi(0.5 * std::arg(acc));
  if (s1.dim() == s2.dim() && phi >= M_PI_2) {  // canonical angle for k = l
    phi -= M_PI_2;
    std::swap(s1, s2);
  }
  TypeTag tag;
  tag.variant = Variant::TRKL;
  tag.phi = phi;
  RMat w1(m.n, s1.dim()), w2(m.n, s2.dim());
  for (int i = 0; i < s1.dim(); ++i) w1.col(i) = rot(s1.vec(i), -phi).real();
  for (int i = 0; i < s2.dim(); ++i) w2.col(i) = rot(s2.vec(i), -phi).imag();
  tag.w1 = real_orth(w1);
  tag.w2 = real_orth(w2);
  return tag;
}

TypeTag recover_ex3(const CurvatureModel& m, const Subspace& w) {
  const Subspace c = w.intersect(w.applyJ());
  const TypeTag inner = recover_ckprime(m, c);  // c is a c_1'-type graph
  const Subspace third = c.complement_in(w);
  if (third.dim() != 1) throw std::runtime_error("classify: ex3 third direction missing");
  const CVec w3 = third.vec(0);
  TypeTag tag;
  tag.variant = Variant::EX3;
  tag.phi = 0.0;
  tag.e1 = std::sqrt(2.0) * w3.real();
  tag.e2 = std::sqrt(2.0) * w3.imag();
  if (std::abs(tag.e1.norm() - 1.0) > 1e-7 || std::abs(tag.e2.norm() - 1.0) > 1e-7 ||
      std::abs(tag.e1.dot(tag.e2)) > 1e-7)
    throw std::runtime_error("classify: ex3 frame recovery failed");
  if ((inner.ip * tag.e1 - tag.e2).norm() > 1e-7)
    throw std::runtime_error("classify: ex3 orientation mismatch");
  return tag;
}

TypeTag recover_ex2(const CurvatureModel& m, const Subspace& w) {
  const int n = m.n;
  const OperatorAlgebra hw = curvature_algebra(m, w);
  if (hw.dim() != 1) throw std::runtime_error("classify: ex2 curvature span not a line");
  const RMat& g = hw.op(0);
  const RMat p = g.topLeftCorner(n, n);
  const RMat q = g.bottomLeftCorner(n, n);
  if ((g.topRightCorner(n, n) + q).cwiseAbs().maxCoeff() > 1e-8 ||
      (g.bottomRightCorner(n, n) - p).cwiseAbs().maxCoeff() > 1e-8)
    throw std::runtime_error("classify: ex2 generator not complex linear");
  const double c = q.trace() / n;
  if (std::abs(c) < 1e-10) throw std::runtime_error("classify: ex2 generator traceless");
  const RMat a = p / c;
  if (((q / c) - RMat::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-6)
    throw std::runtime_error("classify: ex2 generator J-part mismatch");

  const RMat rew = real_orth(real_parts_matrix(w));
  const RMat ra = real_orth(a);
  const RMat f2m = colspace_intersect(rew, ra);
  if (f2m.cols() != 1) throw std::runtime_error("classify: ex2 f2 recovery failed");
  const RVec f2 = f2m.col(0);
  const RMat f1m = real_orth(RMat(rew - f2 * (f2.transpose() * rew)));
  if (f1m.cols() != 1) throw std::runtime_error("classify: ex2 f1 recovery failed");
  const RVec f1 = f1m.col(0);

  for (int s1 : {+1, -1}) {
    for (int s2 : {+1, -1}) {
      const RVec g1 = s1 * f1;
      const RVec g2 = s2 * f2;
      const RVec p1 = -0.5 * (a * g2);
      const RVec g3 = (g1 - 2.0 * p1) / std::sqrt(3.0);
      if (std::abs(g3.norm() - 1.0) > 1e-6) continue;
      const RMat model = (g2 * g1.transpose() - g1 * g2.transpose()) +
                         std::sqrt(3.0) * (g3 * g2.transpose() - g2 * g3.transpose());
      if ((a - model).cwiseAbs().maxCoeff() > 1e-6) continue;
      TypeTag tag;
      tag.variant = Variant::EX2;
      tag.phi = 0.0;
      tag.e1 = g1;
      tag.e2 = g2;
      tag.e3 = g3;
      if (same_subspace(construct_type(tag, n), w, 1e-7)) return tag;
    }
  }
  throw std::runtime_error("classify: ex2 frame recovery failed");
}

}  // namespace

TypeTag classify(const CurvatureModel& m, const Subspace& w) {
  if (m.kind != ModelKind::Grassmannian2)
    throw std::invalid_argument("classify: only the Grassmannian catalog is supported");
  const auto verdict = is_curvature_invariant(m, w);
  if (!verdict.ok)
    throw std::invalid_argument("classify: subspace not curvature invariant (residual " +
                                std::to_string(verdict.residual) + ")");
  const int d = w.dim();
  if (d == 0) throw std::invalid_argument("classify: empty subspace");

  TypeTag tag;
  if (d == 1) {
    tag.variant = Variant::TR1;
    tag.phi = 0.0;
    tag.u = w.vec(0);
  } else {
    const int c = w.intersect(w.applyJ()).dim();
    const bool totally_real = is_totally_real_subspace(w);
    Eigen::MatrixXcd bform(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) bform(i, j) = complex_bilinear(w.vec(i), w.vec(j));
    const bool bzero = bform.cwiseAbs().maxCoeff() <= kResidualTol;

    if (c == d) {
      tag = bzero ? recover_ckprime(m, w) : recover_ck(m, w);
    } else if (totally_real) {
      tag = bzero ? recover_trkprime(m, w) : recover_trkl(m, w, bform);
    } else if (d == 3 && c == 2) {
      tag = recover_ex3(m, w);
    } else if (d == 2 && c == 0) {
      tag = recover_ex2(m, w);
    } else {
      throw std::runtime_error("classify: no decision row matches (d=" + std::to_string(d) +
                               ", c=" + std::to_string(c) + ")");
    }
  }
  if (!same_subspace(construct_type(tag, m.n), w, 1e-7))
    throw std::runtime_error("classify: reconstruction mismatch");
  return tag;
}

// --------------------------------------------------------------------------
// J_theta

RMat jtheta_operator(const TypeTag& tag, double theta, int n) {
  if (tag.variant != Variant::TRKPrime)
    throw std::invalid_argument("jtheta_operator: tag must be of type tr_k'");
  validate_tag(tag, n);
  const int k = tag.k();
  const Complex iunit(0.0, 1.0);
  Eigen::MatrixXcd vc(n, 2 * k), tc(n, 2 * k);
  for (int j = 0; j < k; ++j) {
    const CVec v = real_vec(tag.w0p.col(j));
    const CVec ivv = real_vec(RVec(tag.ip * tag.w0p.col(j)));
    const CVec aj = v - iunit * ivv;
    const CVec bj = v + iunit * ivv;
    vc.col(j) = aj;
    vc.col(k + j) = bj;
    tc.col(j) = std::polar(1.0, -theta) * bj;
    tc.col(k + j) = -std::polar(1.0, theta) * aj;
  }
  // Complex-linear solve: J vc = tc, zero off the complex span of W'.
  const Eigen::MatrixXcd gram = vc.adjoint() * vc;
  const Eigen::MatrixXcd jc = tc * gram.ldlt().solve(vc.adjoint());
  RMat out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = jc.real();
  out.topRightCorner(n, n) = -jc.imag();
  out.bottomLeftCorner(n, n) = jc.imag();
  out.bottomRightCorner(n, n) = jc.real();
  return out;
}

JthetaReport jtheta_structure(const TypeTag& tag, double theta, int n) {
  if (tag.variant != Variant::TRKPrime)
    throw std::invalid_argument("jtheta_structure: tag must be of type tr_k'");
  validate_tag(tag, n);
  const int k = tag.k();
  if (n < 2 * k) throw std::invalid_argument("jtheta_structure: needs n >= 2k");

  JthetaReport rep;
  rep.k = k;
  rep.theta = theta;

  const Subspace w = construct_type(tag, n);
  const Subspace u = w.conjugated(tag.phi).rotated(-theta);
  const Subspace v = w.direct_sum(u);
  const RMat jt = jtheta_operator(tag, theta, n);

  // J_theta^2 = -Id on C W'.
  std::vector<CVec> cw;
  for (Eigen::Index j = 0; j < tag.wp.cols(); ++j) {
    cw.push_back(rot(real_vec(tag.wp.col(j)), tag.phi));
    cw.push_back(Complex(0, 1) * cw.back());
  }
  const Subspace cwp = Subspace::span(n, cw);
  rep.residual_jsq = ((jt * jt + RMat::Identity(2 * n, 2 * n)) * cwp.basis())
                         .cwiseAbs()
                         .maxCoeff();

  rep.residual_swap = std::max(subspace_distance(w.apply(jt), u),
                               subspace_distance(u.apply(jt), w));

  const CurvatureModel model = CurvatureModel::grassmannian(n, +1);
  const GradedStabilizer stab = graded_stabilizer(model, w, u);
  rep.dim_plus = static_cast<int>(stab.plus.size());
  rep.dim_minus = static_cast<int>(stab.minus.size());

  const RMat pv = v.basis() * v.basis().transpose();
  const RMat jv = pv * jt * pv;
  for (const RMat& a : stab.plus)
    rep.residual_commute = std::max(rep.residual_commute, (a * jv - jv * a).norm());
  for (const RMat& a : stab.minus)
    rep.residual_anticommute = std::max(rep.residual_anticommute, (a * jv + jv * a).norm());

  const int half = k * (k - 1) / 2;
  rep.ok = rep.dim_plus == half && rep.dim_minus == half &&
           rep.max_residual() <= kResidualTol;
  if (!rep.ok)
    throw std::runtime_error("jtheta_structure: structural check failed (k=" +
                             std::to_string(k) + ")");
  return rep;
}

// --------------------------------------------------------------------------
// random payloads

namespace {

RMat random_orthonormal(int n, int k, Rng& rng) {
  if (k == 0) return RMat::Zero(n, 0);
  RMat m(n, k);
  for (int j = 0; j < k; ++j) m.col(j) = rng.normal_rvec(n);
  RMat q = real_orth(m);
  while (q.cols() < k) {  // essentially impossible, but stay deterministic
    m.col(rng.next_u64() % k) = rng.normal_rvec(n);
    q = real_orth(m);
  }
  return q;
}

// Random Hermitian structure supported on the column space of wp: pick a
// random orthonormal frame of W' and rotate consecutive pairs into each
// other. The outer-product form keeps the matrix exactly skew.
RMat random_hermitian_structure(const RMat& wp, Rng& rng) {
  const int n = static_cast<int>(wp.rows());
  const int d = static_cast<int>(wp.cols());
  RMat coords(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) coords(i, j) = rng.normal();
  const RMat q = orthonormal_columns(coords);
  if (q.cols() != d) return random_hermitian_structure(wp, rng);
  RMat ip = RMat::Zero(n, n);
  for (int i = 0; i + 1 < d; i += 2) {
    const RVec a = wp * q.col(i);
    const RVec b = wp * q.col(i + 1);
    ip += b * a.transpose() - a * b.transpose();
  }
  return ip;
}

// Random real form (Lagrangian) of (W', I').
RMat random_lagrangian(const RMat& wp, const RMat& ip, Rng& rng) {
  const int n = static_cast<int>(wp.rows());
  const int k = static_cast<int>(wp.cols()) / 2;
  RMat out(n, k);
  RMat blocked(n, 0);
  for (int j = 0; j < k; ++j) {
    RVec v;
    for (int attempt = 0;; ++attempt) {
      v = wp * (wp.transpose() * rng.normal_rvec(n));
      v -= blocked * (blocked.transpose() * v);
      if (v.norm() > 1e-6) break;
      if (attempt > 64) throw std::runtime_error("random_lagrangian: degenerate draws");
    }
    v /= v.norm();
    out.col(j) = v;
    RMat grown(n, blocked.cols() + 2);
    grown.leftCols(blocked.cols()) = blocked;
    grown.col(blocked.cols()) = v;
    grown.col(blocked.cols() + 1) = ip * v;
    blocked = real_orth(grown);
  }
  return out;
}

}  // namespace

TypeTag random_tag(Variant v, int n, int k, int l, Rng& rng) {
  TypeTag tag;
  tag.variant = v;
  switch (v) {
    case Variant::CK:
      tag.phi = rng.angle_pi();
      tag.w0 = random_orthonormal(n, k, rng);
      break;
    case Variant::TRKL: {
      tag.phi = rng.angle_pi();
      RMat both = random_orthonormal(n, k + l, rng);
      tag.w1 = both.leftCols(k);
      tag.w2 = both.rightCols(l);
      // Canonical parameter ordering for round-trips: k >= l, and for k == l
      // the angle in [0, pi/2).
      if (k == l && tag.phi >= M_PI_2) tag.phi -= M_PI_2;
      break;
    }
    case Variant::CKPrime:
      tag.phi = rng.angle_pi();
      tag.wp = random_orthonormal(n, 2 * k, rng);
      tag.ip = random_hermitian_structure(tag.wp, rng);
      break;
    case Variant::TRKPrime:
      tag.phi = rng.angle_pi();
      tag.wp = random_orthonormal(n, 2 * k, rng);
      tag.ip = random_hermitian_structure(tag.wp, rng);
      tag.w0p = random_lagrangian(tag.wp, tag.ip, rng);
      break;
    case Variant::EX3: {
      tag.phi = rng.angle_pi();
      const RMat f = random_orthonormal(n, 2, rng);
      tag.e1 = f.col(0);
      tag.e2 = f.col(1);
      break;
    }
    case Variant::EX2: {
      tag.phi = rng.angle_pi();
      const RMat f = random_orthonormal(n, 3, rng);
      tag.e1 = f.col(0);
      tag.e2 = f.col(1);
      tag.e3 = f.col(2);
      break;
    }
    case Variant::TR1:
      tag.phi = 0.0;
      tag.u = rng.unit_cvec(n);
      break;
  }
  return tag;
}

}  // namespace grasslab
