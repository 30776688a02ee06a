// Copyright 2026 The Grasslab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "grasslab/io.hpp"

#include <fstream>

namespace grasslab::io {

namespace {

json rvec_to_json(const RVec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

RVec rvec_from_json(const json& j) {
  RVec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j[i];
  return v;
}

json cols_to_json(const RMat& m) {
  json out = json::array();
  for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(rvec_to_json(m.col(c)));
  return out;
}

RMat cols_from_json(const json& j, int rows) {
  RMat m(rows, static_cast<Eigen::Index>(j.size()));
  for (std::size_t c = 0; c < j.size(); ++c) {
    const RVec col = rvec_from_json(j[c]);
    if (col.size() != rows) throw std::invalid_argument("payload column size mismatch");
    m.col(static_cast<Eigen::Index>(c)) = col;
  }
  return m;
}

json square_to_json(const RMat& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(m(r, c));
  return out;
}

RMat square_from_json(const json& j, int side) {
  if (j.size() != static_cast<std::size_t>(side) * static_cast<std::size_t>(side))
    throw std::invalid_argument("square matrix size mismatch");
  RMat m(side, side);
  std::size_t at = 0;
  for (Eigen::Index r = 0; r < side; ++r)
    for (Eigen::Index c = 0; c < side; ++c) m(r, c) = j[at++];
  return m;
}

}  // namespace

json cvec_to_json(const CVec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out.push_back(json::array({v(i).real(), v(i).imag()}));
  return out;
}

CVec cvec_from_json(const json& j) {
  CVec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != 2)
      throw std::invalid_argument("complex entry must be [re, im]");
    v(static_cast<Eigen::Index>(i)) = Complex(j[i][0], j[i][1]);
  }
  return v;
}

json subspace_to_json(const Subspace& s) {
  json out;
  out["n"] = s.n();
  json vecs = json::array();
  for (int i = 0; i < s.dim(); ++i) vecs.push_back(cvec_to_json(s.vec(i)));
  out["vectors"] = vecs;
  return out;
}

Subspace subspace_from_json(const json& j) {
  const int n = j.at("n");
  std::vector<CVec> vecs;
  for (const auto& v : j.at("vectors")) {
    CVec u = cvec_from_json(v);
    if (u.size() != n) throw std::invalid_argument("subspace vector size mismatch");
    vecs.push_back(std::move(u));
  }
  return Subspace::span(n, vecs);
}

json operator_to_json(const RMat& m) {
  json out;
  out["n"] = static_cast<int>(m.rows()) / 2;
  out["entries"] = square_to_json(m);
  return out;
}

RMat operator_from_json(const json& j) {
  const int n = j.at("n");
  return square_from_json(j.at("entries"), 2 * n);
}

json model_to_json(const CurvatureModel& m) {
  json out;
  out["kind"] = m.kind == ModelKind::Grassmannian2 ? "grassmannian2" : "cpn";
  out["n"] = m.n;
  out["sign"] = m.sign;
  return out;
}

CurvatureModel model_from_json(const json& j) {
  const std::string kind = j.at("kind");
  const int n = j.at("n");
  const int sign = j.at("sign");
  if (kind == "grassmannian2") return CurvatureModel::grassmannian(n, sign);
  if (kind == "cpn") return CurvatureModel::cpn(n, sign);
  throw std::invalid_argument("unknown model kind: " + kind);
}

json tag_to_json(const TypeTag& t) {
  json out;
  out["variant"] = variant_name(t.variant);
  out["phi"] = t.phi;
  json p;
  switch (t.variant) {
    case Variant::CK:
      p["n"] = static_cast<int>(t.w0.rows());
      p["W0"] = cols_to_json(t.w0);
      break;
    case Variant::TRKL:
      p["n"] = static_cast<int>(t.w1.rows());
      p["W1"] = cols_to_json(t.w1);
      p["W2"] = cols_to_json(t.w2);
      break;
    case Variant::CKPrime:
      p["n"] = static_cast<int>(t.wp.rows());
      p["Wprime"] = cols_to_json(t.wp);
      p["Iprime"] = square_to_json(t.ip);
      break;
    case Variant::TRKPrime:
      p["n"] = static_cast<int>(t.wp.rows());
      p["Wprime"] = cols_to_json(t.wp);
      p["Iprime"] = square_to_json(t.ip);
      p["W0prime"] = cols_to_json(t.w0p);
      break;
    case Variant::EX3:
      p["n"] = static_cast<int>(t.e1.size());
      p["e1"] = rvec_to_json(t.e1);
      p["e2"] = rvec_to_json(t.e2);
      break;
    case Variant::EX2:
      p["n"] = static_cast<int>(t.e1.size());
      p["e1"] = rvec_to_json(t.e1);
      p["e2"] = rvec_to_json(t.e2);
      p["e3"] = rvec_to_json(t.e3);
      break;
    case Variant::TR1:
      p["n"] = static_cast<int>(t.u.size());
      p["u"] = cvec_to_json(t.u);
      break;
  }
  out["payload"] = p;
  return out;
}

TypeTag tag_from_json(const json& j) {
  TypeTag t;
  t.variant = variant_from_name(j.at("variant"));
  t.phi = j.at("phi");
  const json& p = j.at("payload");
  const int n = p.at("n");
  switch (t.variant) {
    case Variant::CK:
      t.w0 = cols_from_json(p.at("W0"), n);
      break;
    case Variant::TRKL:
      t.w1 = cols_from_json(p.at("W1"), n);
      t.w2 = cols_from_json(p.at("W2"), n);
      break;
    case Variant::CKPrime:
      t.wp = cols_from_json(p.at("Wprime"), n);
      t.ip = square_from_json(p.at("Iprime"), n);
      break;
    case Variant::TRKPrime:
      t.wp = cols_from_json(p.at("Wprime"), n);
      t.ip = square_from_json(p.at("Iprime"), n);
      t.w0p = cols_from_json(p.at("W0prime"), n);
      break;
    case Variant::EX3:
      t.e1 = rvec_from_json(p.at("e1"));
      t.e2 = rvec_from_json(p.at("e2"));
      break;
    case Variant::EX2:
      t.e1 = rvec_from_json(p.at("e1"));
      t.e2 = rvec_from_json(p.at("e2"));
      t.e3 = rvec_from_json(p.at("e3"));
      break;
    case Variant::TR1:
      t.u = cvec_from_json(p.at("u"));
      break;
  }
  return t;
}

json jet_to_json(const TwoJet& jet) {
  json out;
  out["model"] = model_to_json(jet.model);
  out["W"] = subspace_to_json(jet.w);
  json h = json::array();
  for (const auto& row : jet.h) {
    json r = json::array();
    for (const auto& v : row) r.push_back(cvec_to_json(v));
    h.push_back(r);
  }
  out["h"] = h;
  return out;
}

TwoJet jet_from_json(const json& j) {
  const CurvatureModel model = model_from_json(j.at("model"));
  const Subspace w = subspace_from_json(j.at("W"));
  std::vector<std::vector<CVec>> h;
  for (const auto& row : j.at("h")) {
    std::vector<CVec> r;
    for (const auto& v : row) r.push_back(cvec_from_json(v));
    h.push_back(std::move(r));
  }
  return make_jet(model, w, std::move(h));
}

json pair_record_to_json(const PairRecord& r) {
  json out;
  out["row_id"] = r.row_id;
  out["n"] = r.n;
  out["tagW"] = tag_to_json(r.tag_w);
  out["tagU"] = tag_to_json(r.tag_u);
  if (r.row_id == "tr_k',tr_k'/J=-I") out["theta"] = r.theta;
  if (r.row_id == "tr_2',tr_2'/star") {
    out["jtilde"] = json{{"t", r.jt_t}, {"w", json::array({r.jt_w.real(), r.jt_w.imag()})}};
  }
  out["v_ci"] = r.v_ci;
  out["blocked"] = r.blocked;
  return out;
}

PairRecord pair_record_from_json(const json& j) {
  PairRecord r;
  r.row_id = j.at("row_id");
  r.n = j.at("n");
  r.tag_w = tag_from_json(j.at("tagW"));
  r.tag_u = tag_from_json(j.at("tagU"));
  if (j.contains("theta")) r.theta = j.at("theta");
  if (j.contains("jtilde")) {
    r.jt_t = j.at("jtilde").at("t");
    r.jt_w = Complex(j.at("jtilde").at("w")[0], j.at("jtilde").at("w")[1]);
  }
  r.v_ci = j.value("v_ci", false);
  r.blocked = j.value("blocked", false);
  return r;
}

std::vector<PairRecord> load_pair_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open table file: " + path);
  json j = json::parse(in);
  std::vector<PairRecord> out;
  for (const auto& row : j.at("rows")) out.push_back(pair_record_from_json(row));
  return out;
}

void save_pair_records(const std::vector<PairRecord>& records, const std::string& path) {
  json j;
  j["schema_version"] = 1;
  json rows = json::array();
  for (const auto& r : records) rows.push_back(pair_record_to_json(r));
  j["rows"] = rows;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write table file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace grasslab::io
