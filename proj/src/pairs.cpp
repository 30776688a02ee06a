// Copyright 2026 The Grasslab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "grasslab/pairs.hpp"

#include "grasslab/io.hpp"

namespace grasslab {

PairVerdict is_ci_pair(const CurvatureModel& m, const Subspace& w, const Subspace& u,
                       double tol) {
  PairVerdict v;
  if (w.dim() > 0 && u.dim() > 0)
    v.orth = (w.basis().transpose() * u.basis()).cwiseAbs().maxCoeff();
  const RMat id = RMat::Identity(2 * m.n, 2 * m.n);
  const RMat pw = w.dim() > 0 ? RMat(id - w.basis() * w.basis().transpose()) : id;
  const RMat pu = u.dim() > 0 ? RMat(id - u.basis() * u.basis().transpose()) : id;
  auto scan = [&](const Subspace& src, const RMat& off_src, const Subspace& dst,
                  const RMat& off_dst, double* own, double* cross) {
    for (int i = 0; i < src.dim(); ++i) {
      for (int j = i + 1; j < src.dim(); ++j) {
        const RMat r = curvature_endomorphism(m, src.vec(i), src.vec(j));
        if (src.dim() > 0) {
          const RMat a = off_src * (r * src.basis());
          for (Eigen::Index c = 0; c < a.cols(); ++c)
            *own = std::max(*own, a.col(c).norm());
        }
        if (dst.dim() > 0) {
          const RMat b = off_dst * (r * dst.basis());
          for (Eigen::Index c = 0; c < b.cols(); ++c)
            *cross = std::max(*cross, b.col(c).norm());
        }
      }
    }
  };
  scan(w, pw, u, pu, &v.w_inv, &v.cross_wu);
  scan(u, pu, w, pw, &v.u_inv, &v.cross_uw);
  v.ok = v.max_residual() <= tol;
  return v;
}

// --------------------------------------------------------------------------
// Canonical rows

namespace {

RMat unit_cols(int n, std::initializer_list<int> idx) {
  RMat m = RMat::Zero(n, static_cast<Eigen::Index>(idx.size()));
  int j = 0;
  for (int a : idx) m(a, j++) = 1.0;
  return m;
}

/// I' with I'(e_a) = e_b for each listed pair, zero elsewhere.
RMat herm_from_pairs(int n, std::initializer_list<std::pair<int, int>> pairs) {
  RMat m = RMat::Zero(n, n);
  for (const auto& [a, b] : pairs) {
    m(b, a) = 1.0;
    m(a, b) = -1.0;
  }
  return m;
}

TypeTag ck_tag(int n, std::initializer_list<int> w0, double phi = 0.0) {
  TypeTag t;
  t.variant = Variant::CK;
  t.phi = phi;
  t.w0 = unit_cols(n, w0);
  return t;
}

TypeTag trkl_tag(int n, std::initializer_list<int> w1, std::initializer_list<int> w2,
                 double phi = 0.0) {
  TypeTag t;
  t.variant = Variant::TRKL;
  t.phi = phi;
  t.w1 = unit_cols(n, w1);
  t.w2 = unit_cols(n, w2);
  return t;
}

TypeTag ckp_tag(int n, std::initializer_list<int> wp,
                std::initializer_list<std::pair<int, int>> ipairs, double phi = 0.0) {
  TypeTag t;
  t.variant = Variant::CKPrime;
  t.phi = phi;
  t.wp = unit_cols(n, wp);
  t.ip = herm_from_pairs(n, ipairs);
  return t;
}

TypeTag trkp_tag(int n, std::initializer_list<int> wp,
                 std::initializer_list<std::pair<int, int>> ipairs,
                 std::initializer_list<int> w0p, double phi = 0.0) {
  TypeTag t;
  t.variant = Variant::TRKPrime;
  t.phi = phi;
  t.wp = unit_cols(n, wp);
  t.ip = herm_from_pairs(n, ipairs);
  t.w0p = unit_cols(n, w0p);
  return t;
}

TypeTag tr1_tag(const CVec& u) {
  TypeTag t;
  t.variant = Variant::TR1;
  t.u = u / u.norm();
  return t;
}

TypeTag ex3_tag(int n, int a, int b, double phi = 0.0) {
  TypeTag t;
  t.variant = Variant::EX3;
  t.phi = phi;
  t.e1 = unit_cols(n, {a}).col(0);
  t.e2 = unit_cols(n, {b}).col(0);
  return t;
}

/// The element of SU(W', Itilde) cap so(W') determined by (t, w) on the
/// Hermitian frame {a1, I' a1} of (W', Itilde).
RMat build_jtilde(const RVec& a1, const RVec& a2, const RMat& ip, double t, Complex w) {
  const RVec b1 = ip * a1, b2 = ip * a2;
  const double re = w.real(), im = w.imag();
  RMat jt = RMat::Zero(a1.size(), a1.size());
  auto put = [&](const RVec& src, const RVec& img) { jt += img * src.transpose(); };
  put(a1, RVec(t * a2 + re * b1 + im * b2));
  put(a2, RVec(-t * a1 + re * b2 - im * b1));
  put(b1, RVec(-re * a1 + im * a2 - t * b2));
  put(b2, RVec(-re * a2 - im * a1 + t * b1));
  return jt;
}

PairRecord make_row(std::string id, int n, TypeTag w, TypeTag u, bool v_ci = false,
                    bool blocked = false) {
  PairRecord r;
  r.row_id = std::move(id);
  r.n = n;
  r.tag_w = std::move(w);
  r.tag_u = std::move(u);
  r.v_ci = v_ci;
  r.blocked = blocked;
  return r;
}

}  // namespace

std::vector<PairRecord> builtin_table() {
  std::vector<PairRecord> rows;
  const Complex i1(0.0, 1.0);

  rows.push_back(make_row("c_k,c_l", 2, ck_tag(2, {0}), ck_tag(2, {1}), /*v_ci=*/true));

  rows.push_back(make_row("tr_ij,tr_kl/phi", 4, trkl_tag(4, {0}, {1}),
                          trkl_tag(4, {2}, {3}, 0.6)));
  rows.push_back(make_row("tr_ij,tr_kl/phi0", 4, trkl_tag(4, {0}, {1}),
                          trkl_tag(4, {2}, {3}), /*v_ci=*/true));
  rows.push_back(make_row("tr_jk,tr_lj/W1=U2", 4, trkl_tag(4, {0, 1}, {2}),
                          trkl_tag(4, {3}, {0, 1})));
  rows.push_back(make_row("tr_kl,tr_lk/swap", 3, trkl_tag(3, {0}, {1, 2}),
                          trkl_tag(3, {1, 2}, {0}), /*v_ci=*/true));
  rows.push_back(make_row("tr_1k,tr_l1/orth", 6, trkl_tag(6, {0}, {1, 2}),
                          trkl_tag(6, {3, 4}, {5})));
  rows.push_back(make_row("tr_1k,tr_l1/W2=U1", 4, trkl_tag(4, {0}, {1, 2}),
                          trkl_tag(4, {1, 2}, {3})));
  rows.push_back(make_row("tr_11,tr_11", 2, trkl_tag(2, {0}, {1}), trkl_tag(2, {1}, {0})));

  rows.push_back(make_row("tr_kl,tr1", 5, trkl_tag(5, {0, 1}, {2, 3}),
                          tr1_tag(unit_vec(5, 4))));
  {
    CVec u = (unit_vec(4, 3) + i1 * unit_vec(4, 0)) / std::sqrt(2.0);
    rows.push_back(make_row("tr_1k,tr1", 4, trkl_tag(4, {0}, {1, 2}), tr1_tag(u)));
  }
  {
    CVec u = (unit_vec(2, 1) + i1 * unit_vec(2, 0)) / std::sqrt(2.0);
    rows.push_back(make_row("tr_11,tr1", 2, trkl_tag(2, {0}, {1}), tr1_tag(u)));
  }

  rows.push_back(make_row("c_k,c_l'", 3, ck_tag(3, {0}), ckp_tag(3, {1, 2}, {{1, 2}}),
                          /*v_ci=*/false, /*blocked=*/true));
  rows.push_back(make_row("c_k',c_l'/orth", 4, ckp_tag(4, {0, 1}, {{0, 1}}),
                          ckp_tag(4, {2, 3}, {{2, 3}}), /*v_ci=*/true));
  {
    TypeTag u = ckp_tag(2, {0, 1}, {{0, 1}});
    u.ip = -u.ip;  // J' = -I'
    rows.push_back(make_row("c_k',c_k'/J=-I", 2, ckp_tag(2, {0, 1}, {{0, 1}}), u,
                            /*v_ci=*/true));
  }
  {
    CVec u = (unit_vec(2, 0) + i1 * unit_vec(2, 1)) / std::sqrt(2.0);
    rows.push_back(make_row("c_1',tr1", 2, ckp_tag(2, {0, 1}, {{0, 1}}), tr1_tag(u),
                            /*v_ci=*/true));
  }

  rows.push_back(make_row("tr_j',tr_kl", 6,
                          trkp_tag(6, {0, 1, 2, 3}, {{0, 2}, {1, 3}}, {0, 1}),
                          trkl_tag(6, {4}, {5}), /*v_ci=*/false, /*blocked=*/true));
  rows.push_back(make_row("tr_k',tr_l'/orth", 8,
                          trkp_tag(8, {0, 1, 2, 3}, {{0, 2}, {1, 3}}, {0, 1}),
                          trkp_tag(8, {4, 5, 6, 7}, {{4, 6}, {5, 7}}, {4, 5}),
                          /*v_ci=*/true));
  rows.push_back(make_row("tr_k',tr_k'/J=I", 6,
                          trkp_tag(6, {0, 1, 2, 3, 4, 5}, {{0, 3}, {1, 4}, {2, 5}},
                                   {0, 1, 2}),
                          trkp_tag(6, {0, 1, 2, 3, 4, 5}, {{0, 3}, {1, 4}, {2, 5}},
                                   {3, 4, 5}),
                          /*v_ci=*/true));
  {
    const int n = 6;
    const double theta = 0.3;
    TypeTag w = trkp_tag(n, {0, 1, 2, 3, 4, 5}, {{0, 3}, {1, 4}, {2, 5}}, {0, 1, 2});
    TypeTag u = w;
    u.ip = -w.ip;  // J' = -I'
    RMat u0p(n, 3);
    for (int j = 0; j < 3; ++j)
      u0p.col(j) = std::cos(theta) * w.w0p.col(j) +
                   std::sin(theta) * RVec(w.ip * w.w0p.col(j));
    u.w0p = u0p;
    PairRecord r = make_row("tr_k',tr_k'/J=-I", n, w, u);
    r.theta = theta;
    rows.push_back(r);
  }
  {
    const int n = 4;
    const double t = 0.6;
    const Complex w_coef(0.8, 0.0);
    TypeTag w = trkp_tag(n, {0, 1, 2, 3}, {{0, 2}, {1, 3}}, {0, 1});
    const RMat jt = build_jtilde(w.w0p.col(0), w.w0p.col(1), w.ip, t, w_coef);
    TypeTag u = w;
    u.w0p = jt * w.w0p;
    u.ip = -jt * w.ip * jt;  // J' = Jt I' Jt^{-1}, Jt^{-1} = -Jt
    PairRecord r = make_row("tr_2',tr_2'/star", n, w, u);
    r.jt_t = t;
    r.jt_w = w_coef;
    rows.push_back(r);
  }
  rows.push_back(make_row("tr_k',tr1", 5,
                          trkp_tag(5, {0, 1, 2, 3}, {{0, 2}, {1, 3}}, {0, 1}),
                          tr1_tag(unit_vec(5, 4))));
  {
    CVec u = (unit_vec(2, 1) - i1 * unit_vec(2, 0)) / std::sqrt(2.0);
    rows.push_back(make_row("ex3,tr1", 2, ex3_tag(2, 0, 1), tr1_tag(u), /*v_ci=*/true));
  }
  rows.push_back(make_row("tr1,tr1", 2, tr1_tag(unit_vec(2, 0)), tr1_tag(unit_vec(2, 1))));
  return rows;
}

// --------------------------------------------------------------------------
// Conditions-column validation

namespace {

void cond(bool ok, const std::string& row, const std::string& what) {
  if (!ok)
    throw std::invalid_argument("PairRecord " + row + ": condition violated: " + what);
}

bool spans_equal(const RMat& a, const RMat& b) {
  return a.cols() == b.cols() && colspace_distance(a, b) <= 1e-10;
}

bool spans_orth(const RMat& a, const RMat& b) {
  if (a.cols() == 0 || b.cols() == 0) return true;
  return (a.transpose() * b).cwiseAbs().maxCoeff() <= 1e-10;
}

bool same_form(const TypeTag& a, const TypeTag& b) {
  const double d = std::fmod(std::abs(a.phi - b.phi), M_PI);
  return std::min(d, M_PI - d) <= 1e-10;
}

}  // namespace

void validate_pair_record(const PairRecord& rec) {
  const auto& W = rec.tag_w;
  const auto& U = rec.tag_u;
  validate_tag(W, rec.n);
  validate_tag(U, rec.n);
  const std::string& id = rec.row_id;

  if (id == "c_k,c_l") {
    cond(same_form(W, U), id, "R = R*");
    cond(spans_orth(W.w0, U.w0), id, "W0 orth U0");
  } else if (id == "tr_ij,tr_kl/phi" || id == "tr_ij,tr_kl/phi0") {
    const double phi = W.phi - U.phi;
    RMat wall(rec.n, W.w1.cols() + W.w2.cols());
    wall << W.w1, W.w2;
    RMat uall(rec.n, U.w1.cols() + U.w2.cols());
    uall << U.w1, U.w2;
    // <w, e^{i phi} u> = cos(phi) <w, u> on coordinate payloads.
    cond(std::abs(std::cos(phi)) <= 1e-10 || spans_orth(wall, uall), id,
         "W1+W2 orth e^{i phi}(U1+U2)");
  } else if (id == "tr_jk,tr_lj/W1=U2") {
    cond(same_form(W, U), id, "R = R*");
    cond(spans_equal(W.w1, U.w2), id, "W1 = U2");
    cond(spans_orth(W.w2, U.w1), id, "W2 orth U1");
  } else if (id == "tr_kl,tr_lk/swap") {
    cond(same_form(W, U), id, "R = R*");
    cond(spans_equal(W.w1, U.w2), id, "W1 = U2");
    cond(spans_equal(W.w2, U.w1), id, "W2 = U1");
  } else if (id == "tr_1k,tr_l1/orth") {
    cond(W.w1.cols() == 1 && U.w2.cols() == 1, id, "i = l = 1");
    cond(same_form(W, U), id, "R = R*");
    cond(spans_orth(W.w1, U.w1), id, "W1 orth U1");
    cond(spans_orth(W.w2, U.w2), id, "W2 orth U2");
    cond(spans_orth(W.w2, U.w1), id, "W2 orth U1");
  } else if (id == "tr_1k,tr_l1/W2=U1") {
    cond(W.w1.cols() == 1 && U.w2.cols() == 1, id, "i = l = 1");
    cond(same_form(W, U), id, "R = R*");
    cond(spans_orth(W.w1, U.w1), id, "W1 orth U1");
    cond(spans_orth(W.w2, U.w2), id, "W2 orth U2");
    cond(spans_equal(W.w2, U.w1), id, "W2 = U1");
  } else if (id == "tr_11,tr_11") {
    cond(W.w1.cols() == 1 && W.w2.cols() == 1 && U.w1.cols() == 1 && U.w2.cols() == 1,
         id, "all factors lines");
    cond(same_form(W, U), id, "R = R*");
    cond(spans_orth(W.w1, U.w1), id, "W1 orth U1");
    cond(spans_orth(W.w2, U.w2), id, "W2 orth U2");
  } else if (id == "tr_kl,tr1") {
    cond(W.w1.cols() >= 2 && W.w2.cols() >= 2, id, "k, l >= 2");
    const FormSplit s = split_real_imag(U.u, W.phi);
    cond(spans_orth(RMat(s.a), W.w1) && spans_orth(RMat(s.a), W.w2) &&
             spans_orth(RMat(s.b), W.w1) && spans_orth(RMat(s.b), W.w2),
         id, "u orth CW1 + CW2");
  } else if (id == "tr_1k,tr1") {
    cond(W.w1.cols() == 1 && W.w2.cols() >= 2, id, "k = 1, l >= 2");
    const FormSplit s = split_real_imag(U.u, W.phi);
    cond(spans_orth(RMat(s.a), W.w1), id, "Re(u) orth W1");
    cond(spans_orth(RMat(s.a), W.w2) && spans_orth(RMat(s.b), W.w2), id, "u orth CW2");
  } else if (id == "tr_11,tr1") {
    const FormSplit s = split_real_imag(U.u, W.phi);
    cond(spans_orth(RMat(s.a), W.w1), id, "Re(u) orth W1");
    cond(spans_orth(RMat(s.b), W.w2), id, "Im(u) orth W2");
  } else if (id == "c_k,c_l'") {
    cond(same_form(W, U), id, "R = R*");
    cond(spans_orth(W.w0, U.wp), id, "W0 orth U'");
  } else if (id == "c_k',c_l'/orth") {
    cond(same_form(W, U), id, "R = R*");
    cond(spans_orth(W.wp, U.wp), id, "W' orth U'");
  } else if (id == "c_k',c_k'/J=-I") {
    cond(same_form(W, U), id, "R = R*");
    cond(spans_equal(W.wp, U.wp), id, "W' = U'");
    cond((W.ip + U.ip).cwiseAbs().maxCoeff() <= 1e-10, id, "I' = -J'");
  } else if (id == "c_1',tr1") {
    const Subspace wbar = construct_type(W, rec.n).conjugated(W.phi);
    cond(wbar.containment_residual(U.u) <= 1e-10, id, "u in conj(W)");
  } else if (id == "tr_j',tr_kl") {
    cond(same_form(W, U), id, "R = R*");
    cond(spans_orth(W.wp, U.w1) && spans_orth(W.wp, U.w2), id, "W' orth U1 + U2");
  } else if (id == "tr_k',tr_l'/orth") {
    cond(same_form(W, U), id, "R = R*");
    cond(spans_orth(W.wp, U.wp), id, "W' orth U'");
  } else if (id == "tr_k',tr_k'/J=I") {
    cond(same_form(W, U), id, "R = R*");
    cond(spans_equal(W.wp, U.wp), id, "W' = U'");
    cond((W.ip - U.ip).cwiseAbs().maxCoeff() <= 1e-10, id, "J' = I'");
    cond(spans_equal(RMat(W.ip * W.w0p), U.w0p), id, "U0' = I'(W0')");
  } else if (id == "tr_k',tr_k'/J=-I") {
    cond(same_form(W, U), id, "R = R*");
    cond(spans_equal(W.wp, U.wp), id, "W' = U'");
    cond((W.ip + U.ip).cwiseAbs().maxCoeff() <= 1e-10, id, "J' = -I'");
    RMat expu(rec.n, W.w0p.cols());
    for (Eigen::Index j = 0; j < W.w0p.cols(); ++j)
      expu.col(j) = std::cos(rec.theta) * W.w0p.col(j) +
                    std::sin(rec.theta) * RVec(W.ip * W.w0p.col(j));
    cond(spans_equal(expu, U.w0p), id, "U0' = exp(theta I')(W0')");
  } else if (id == "tr_2',tr_2'/star") {
    cond(same_form(W, U), id, "R = R*");
    cond(W.w0p.cols() == 2, id, "k = 2");
    cond(spans_equal(W.wp, U.wp), id, "W' = U'");
    cond(std::abs(rec.jt_t * rec.jt_t + std::norm(rec.jt_w) - 1.0) <= 1e-10, id,
         "t^2 + |w|^2 = 1");
    const RMat jt = build_jtilde(W.w0p.col(0), W.w0p.col(1), W.ip, rec.jt_t, rec.jt_w);
    cond((jt + jt.transpose()).cwiseAbs().maxCoeff() <= 1e-10, id, "Jt skew");
    const RMat itilde =
        herm_from_pairs(rec.n, {}) + (W.w0p.col(1) * W.w0p.col(0).transpose() -
                                      W.w0p.col(0) * W.w0p.col(1).transpose()) +
        (RVec(W.ip * W.w0p.col(1)) * RVec(W.ip * W.w0p.col(0)).transpose() -
         RVec(W.ip * W.w0p.col(0)) * RVec(W.ip * W.w0p.col(1)).transpose());
    cond((jt * itilde - itilde * jt).cwiseAbs().maxCoeff() <= 1e-10, id,
         "Jt in U(W', Itilde)");
    cond(spans_equal(RMat(jt * W.w0p), U.w0p), id, "U0' = Jt(W0')");
    cond((U.ip + jt * W.ip * jt).cwiseAbs().maxCoeff() <= 1e-10, id,
         "J' = Jt I' Jt^{-1}");
  } else if (id == "tr_k',tr1") {
    const FormSplit s = split_real_imag(U.u, W.phi);
    cond(spans_orth(RMat(s.a), W.wp) && spans_orth(RMat(s.b), W.wp), id, "u orth CW'");
  } else if (id == "ex3,tr1") {
    const Complex i1(0.0, 1.0);
    CVec expect = rot(CVec(real_vec(W.e2) - i1 * real_vec(W.e1)), W.phi) / std::sqrt(2.0);
    const double d = std::min((U.u - expect).norm(), (U.u + expect).norm());
    cond(d <= 1e-10, id, "u = +-(e2 - i e1)/sqrt(2)");
  } else if (id == "tr1,tr1") {
    cond(std::abs(inner(W.u, U.u)) <= 1e-10, id, "u orth v");
  } else {
    throw std::invalid_argument("validate_pair_record: unknown row_id " + id);
  }
}

// --------------------------------------------------------------------------
// Construction and embedding

namespace {

RMat embed_cols(const RMat& m, int n_from, int n_to) {
  RMat out = RMat::Zero(n_to, m.cols());
  out.topRows(n_from) = m;
  return out;
}

TypeTag embed_tag(const TypeTag& tag, int n_from, int n_to) {
  if (n_from == n_to) return tag;
  TypeTag out = tag;
  auto pad_vec = [&](const RVec& v) {
    RVec o = RVec::Zero(n_to);
    o.head(n_from) = v;
    return o;
  };
  switch (tag.variant) {
    case Variant::CK: out.w0 = embed_cols(tag.w0, n_from, n_to); break;
    case Variant::TRKL:
      out.w1 = embed_cols(tag.w1, n_from, n_to);
      out.w2 = embed_cols(tag.w2, n_from, n_to);
      break;
    case Variant::CKPrime:
    case Variant::TRKPrime: {
      out.wp = embed_cols(tag.wp, n_from, n_to);
      RMat ip = RMat::Zero(n_to, n_to);
      ip.topLeftCorner(n_from, n_from) = tag.ip;
      out.ip = ip;
      if (tag.variant == Variant::TRKPrime) out.w0p = embed_cols(tag.w0p, n_from, n_to);
      break;
    }
    case Variant::EX3:
      out.e1 = pad_vec(tag.e1);
      out.e2 = pad_vec(tag.e2);
      break;
    case Variant::EX2:
      out.e1 = pad_vec(tag.e1);
      out.e2 = pad_vec(tag.e2);
      out.e3 = pad_vec(tag.e3);
      break;
    case Variant::TR1: {
      CVec u = CVec::Zero(n_to);
      u.head(n_from) = tag.u;
      out.u = u;
      break;
    }
  }
  return out;
}

}  // namespace

std::pair<Subspace, Subspace> construct_pair(const PairRecord& rec, int n) {
  if (n < rec.n) throw std::invalid_argument("construct_pair: n below the row minimum");
  validate_pair_record(rec);
  const Subspace w = construct_type(embed_tag(rec.tag_w, rec.n, n), n);
  const Subspace u = construct_type(embed_tag(rec.tag_u, rec.n, n), n);
  const auto verdict = is_ci_pair(CurvatureModel::grassmannian(n, +1), w, u);
  if (!verdict.ok)
    throw std::runtime_error("construct_pair: row " + rec.row_id +
                             " did not verify as a CI pair (residual " +
                             std::to_string(verdict.max_residual()) + ")");
  return {w, u};
}

std::string default_table_path() {
#ifdef GRASSLAB_TABLE1_DEFAULT
  return GRASSLAB_TABLE1_DEFAULT;
#else
  return "data/table1.json";
#endif
}

std::vector<PairRecord> load_table(const std::string& path) {
  return io::load_pair_records(path);
}

// --------------------------------------------------------------------------
// verify_table with mutation probes

namespace {

// Perturb one basis vector of `target` so that it acquires a component along
// `toward`; breaks orthogonality of the pair.
Subspace mutate_toward(const Subspace& target, const Subspace& toward, Rng& rng) {
  for (int attempt = 0; attempt < 16; ++attempt) {
    RMat cols = target.basis();
    const int c = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(cols.cols()));
    RVec dir = toward.basis() * rng.normal_rvec(toward.dim());
    if (dir.norm() < 1e-9) continue;
    dir /= dir.norm();
    cols.col(c) = (cols.col(c) + 0.35 * dir).normalized();
    const Subspace out = Subspace::span_real_cols(target.n(), cols);
    if (out.dim() != target.dim()) continue;
    if ((toward.basis().transpose() * out.basis()).cwiseAbs().maxCoeff() > 1e-6)
      return out;
  }
  throw std::runtime_error("mutate_toward: could not produce a violating perturbation");
}

// Perturb one basis vector of `target` inside the orthogonal complement of
// `keep_orth`, so the result is still orthogonal but no longer curvature
// invariant.
Subspace mutate_within(const CurvatureModel& m, const Subspace& target,
                       const Subspace& keep_orth, Rng& rng) {
  const Subspace room = keep_orth.complement();
  for (int attempt = 0; attempt < 16; ++attempt) {
    RMat cols = target.basis();
    const int c = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(cols.cols()));
    RVec dir = room.project(RVec(rng.normal_rvec(2 * target.n())));
    if (dir.norm() < 1e-9) continue;
    dir /= dir.norm();
    cols.col(c) = (cols.col(c) + 0.35 * dir).normalized();
    const Subspace out = Subspace::span_real_cols(target.n(), cols);
    if (out.dim() != target.dim()) continue;
    if (same_subspace(out, target, 1e-6)) continue;
    if (is_curvature_invariant(m, out).residual > 1e-6) return out;
  }
  throw std::runtime_error("mutate_within: could not produce a violating perturbation");
}

}  // namespace

TableReport verify_table(const std::vector<PairRecord>& records, int n, int sign,
                         std::uint64_t seed, int mutations) {
  TableReport report;
  const CurvatureModel model = CurvatureModel::grassmannian(n, sign);
  for (const PairRecord& rec : records) {
    if (rec.n > n) continue;
    RowReport row;
    row.row_id = rec.row_id;
    row.n = n;
    row.mutations_total = mutations;
    const auto [w, u] = construct_pair(rec, n);
    const PairVerdict pv = is_ci_pair(model, w, u);
    row.pass = pv.ok;
    row.max_residual = pv.max_residual();

    for (int p = 0; p < mutations; ++p) {
      Rng rng(case_seed(seed, rec.row_id + "/mut" + std::to_string(p)));
      // Menu: break orthogonality, or break curvature invariance of one
      // factor while staying orthogonal (when there is room to move).
      std::vector<int> menu{0};
      if (u.dim() >= 2 && 2 * n - w.dim() > u.dim()) menu.push_back(1);
      if (w.dim() >= 2 && 2 * n - u.dim() > w.dim()) menu.push_back(2);
      const int choice = menu[static_cast<std::size_t>(p) % menu.size()];
      bool mutated_fails = false;
      try {
        PairVerdict mv;
        if (choice == 0) {
          mv = is_ci_pair(model, w, mutate_toward(u, w, rng));
        } else if (choice == 1) {
          mv = is_ci_pair(model, w, mutate_within(model, u, w, rng));
        } else {
          mv = is_ci_pair(model, mutate_within(model, w, u, rng), u);
        }
        mutated_fails = !mv.ok;
      } catch (const std::exception&) {
        mutated_fails = false;
      }
      if (mutated_fails) ++row.mutations_failed;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

// --------------------------------------------------------------------------
// Randomized nonexistence searches

namespace {

RMat footprint(const Subspace& w) {
  RMat cols(w.n(), 2 * w.dim());
  for (int i = 0; i < w.dim(); ++i) {
    cols.col(2 * i) = w.vec(i).real();
    cols.col(2 * i + 1) = w.vec(i).imag();
  }
  return orthonormal_columns(cols);
}

// Random payload for variant b with the R^n payload drawn orthogonal to
// `avoid` (n x f). Falls back to plain sampling when there is no room.
TypeTag random_tag_avoiding(Variant v, int n, int k, int l, Rng& rng, const RMat& avoid) {
  const int room = n - static_cast<int>(avoid.cols());
  auto draw = [&](int count) {
    RMat m(n, count);
    for (int j = 0; j < count; ++j) {
      RVec x = rng.normal_rvec(n);
      x -= avoid * (avoid.transpose() * x);
      m.col(j) = x;
    }
    return orthonormal_columns(m);
  };
  TypeTag tag;
  tag.variant = v;
  switch (v) {
    case Variant::CK:
      if (room < k) return random_tag(v, n, k, l, rng);
      tag.phi = rng.angle_pi();
      tag.w0 = draw(k);
      if (tag.w0.cols() != k) return random_tag(v, n, k, l, rng);
      return tag;
    case Variant::TRKL: {
      if (room < k + l) return random_tag(v, n, k, l, rng);
      RMat both = draw(k + l);
      if (both.cols() != k + l) return random_tag(v, n, k, l, rng);
      tag.phi = rng.angle_pi();
      tag.w1 = both.leftCols(k);
      tag.w2 = both.rightCols(l);
      return tag;
    }
    case Variant::CKPrime:
    case Variant::TRKPrime: {
      if (room < 2 * k) return random_tag(v, n, k, l, rng);
      TypeTag t = random_tag(v, n, k, l, rng);  // draws structure; replace W'
      RMat wp = draw(2 * k);
      if (wp.cols() != 2 * k) return t;
      // Transport the Hermitian structure onto the new frame.
      const RMat old_wp = t.wp;
      RMat ip = wp * (old_wp.transpose() * t.ip * old_wp).eval() * wp.transpose();
      if (t.variant == Variant::TRKPrime) t.w0p = wp * (old_wp.transpose() * t.w0p);
      t.wp = wp;
      t.ip = 0.5 * (ip - ip.transpose());
      return t;
    }
    case Variant::EX3: {
      if (room < 2) return random_tag(v, n, k, l, rng);
      const RMat f = draw(2);
      if (f.cols() != 2) return random_tag(v, n, k, l, rng);
      tag.phi = rng.angle_pi();
      tag.e1 = f.col(0);
      tag.e2 = f.col(1);
      return tag;
    }
    case Variant::EX2: {
      if (room < 3) return random_tag(v, n, k, l, rng);
      const RMat f = draw(3);
      if (f.cols() != 3) return random_tag(v, n, k, l, rng);
      tag.phi = rng.angle_pi();
      tag.e1 = f.col(0);
      tag.e2 = f.col(1);
      tag.e3 = f.col(2);
      return tag;
    }
    case Variant::TR1:
      return random_tag(v, n, k, l, rng);  // handled at the subspace level
  }
  throw std::logic_error("random_tag_avoiding");
}

}  // namespace

SearchReport search_pairs(const CurvatureModel& m, const SearchSpec& spec, long budget,
                          std::uint64_t seed) {
  if (budget < 1) throw std::invalid_argument("search_pairs: budget must be >= 1");
  SearchReport report;
  report.budget = budget;
  for (long s = 0; s < budget; ++s) {
    Rng rng(case_seed(seed, spec.id + "#" + std::to_string(s)));
    TypeTag tag_a = random_tag(spec.a, m.n, spec.ka, spec.la, rng);
    Subspace w;
    try {
      w = construct_type(tag_a, m.n);
    } catch (const std::exception&) {
      continue;
    }
    const bool disjoint = (s % 2) == 0;
    TypeTag tag_b;
    Subspace u;
    try {
      if (spec.b == Variant::TR1) {
        CVec raw = rng.normal_cvec(m.n);
        if (disjoint) raw -= w.project(raw);
        if (raw.norm() < 1e-9) continue;
        tag_b.variant = Variant::TR1;
        tag_b.u = raw / raw.norm();
      } else if (disjoint) {
        tag_b = random_tag_avoiding(spec.b, m.n, spec.kb, spec.lb, rng, footprint(w));
      } else {
        tag_b = random_tag(spec.b, m.n, spec.kb, spec.lb, rng);
      }
      u = construct_type(tag_b, m.n);
    } catch (const std::exception&) {
      continue;
    }
    const PairVerdict pv = is_ci_pair(m, w, u);
    if (pv.max_residual() <= 1e-9) {
      ++report.hits;
      if (report.examples.size() < 50)
        report.examples.push_back(FoundPair{s, pv.max_residual()});
    }
  }
  return report;
}

std::vector<SearchSpec> nonexistence_specs() {
  std::vector<SearchSpec> specs;
  auto add = [&](std::string id, Variant a, int ka, int la, Variant b, int kb, int lb,
                 int n) {
    specs.push_back(SearchSpec{std::move(id), a, b, n, ka, la, kb, lb});
  };
  add("c_1~tr_11", Variant::CK, 1, 0, Variant::TRKL, 1, 1, 4);
  add("c_1~tr_21", Variant::CK, 1, 0, Variant::TRKL, 2, 1, 5);
  add("c_1~tr_2'", Variant::CK, 1, 0, Variant::TRKPrime, 2, 0, 6);
  add("c_1~ex3", Variant::CK, 1, 0, Variant::EX3, 0, 0, 4);
  add("c_1~ex2", Variant::CK, 1, 0, Variant::EX2, 0, 0, 5);
  add("c_1~tr1", Variant::CK, 1, 0, Variant::TR1, 0, 0, 3);
  add("c_2~tr1", Variant::CK, 2, 0, Variant::TR1, 0, 0, 4);
  add("tr_11~c_1'", Variant::TRKL, 1, 1, Variant::CKPrime, 1, 0, 5);
  add("tr_21~c_1'", Variant::TRKL, 2, 1, Variant::CKPrime, 1, 0, 6);
  add("c_2'~tr1", Variant::CKPrime, 2, 0, Variant::TR1, 0, 0, 4);
  add("tr_2'~c_1'", Variant::TRKPrime, 2, 0, Variant::CKPrime, 1, 0, 6);
  add("ex3~c_1'", Variant::EX3, 0, 0, Variant::CKPrime, 1, 0, 4);
  add("ex3~tr_2'", Variant::EX3, 0, 0, Variant::TRKPrime, 2, 0, 6);
  add("ex3~tr_11", Variant::EX3, 0, 0, Variant::TRKL, 1, 1, 4);
  add("ex3~ex3", Variant::EX3, 0, 0, Variant::EX3, 0, 0, 4);
  add("ex2~c_1'", Variant::EX2, 0, 0, Variant::CKPrime, 1, 0, 5);
  add("ex2~tr_11", Variant::EX2, 0, 0, Variant::TRKL, 1, 1, 5);
  add("ex2~tr1", Variant::EX2, 0, 0, Variant::TR1, 0, 0, 3);
  add("ex2~tr_2'", Variant::EX2, 0, 0, Variant::TRKPrime, 2, 0, 7);
  add("ex2~ex2", Variant::EX2, 0, 0, Variant::EX2, 0, 0, 6);
  add("ex2~ex3", Variant::EX2, 0, 0, Variant::EX3, 0, 0, 5);
  return specs;
}

}  // namespace grasslab
