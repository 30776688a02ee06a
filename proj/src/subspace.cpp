// Copyright 2026 The Grasslab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "grasslab/subspace.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

namespace grasslab {

RMat orthonormal_columns(const RMat& cols, double rel_tol, double abs_floor) {
  if (cols.cols() == 0) return RMat::Zero(cols.rows(), 0);
  Eigen::JacobiSVD<RMat> svd(cols, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) return RMat::Zero(cols.rows(), 0);
  const double cut = std::max(rel_tol * sv(0), abs_floor);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++rank;
  if (rank == 0) return RMat::Zero(cols.rows(), 0);
  // Column-pivoted QR supplies the canonical orthonormal frame; the SVD
  // fixes the rank decision.
  Eigen::ColPivHouseholderQR<RMat> qr(cols);
  RMat q = qr.householderQ() * RMat::Identity(cols.rows(), rank);
  return q;
}

Subspace Subspace::span(int n, const std::vector<CVec>& vectors) {
  RMat cols(2 * n, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != n) throw std::invalid_argument("span: dimension mismatch");
    cols.col(static_cast<Eigen::Index>(i)) = realify(vectors[i]);
  }
  return Subspace(n, orthonormal_columns(cols));
}

Subspace Subspace::span_real_cols(int n, const RMat& cols) {
  if (cols.rows() != 2 * n) throw std::invalid_argument("span_real_cols: bad row count");
  return Subspace(n, orthonormal_columns(cols));
}

Subspace Subspace::from_orthonormal(int n, RMat basis) {
  if (basis.rows() != 2 * n) throw std::invalid_argument("from_orthonormal: bad row count");
  RMat g = basis.transpose() * basis - RMat::Identity(basis.cols(), basis.cols());
  if (basis.cols() > 0 && g.cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("from_orthonormal: basis not orthonormal");
  return Subspace(n, std::move(basis));
}

Subspace Subspace::real_form(int n, double phi) {
  RMat cols(2 * n, n);
  for (int a = 0; a < n; ++a) cols.col(a) = realify(rot(unit_vec(n, a), phi));
  return Subspace(n, orthonormal_columns(cols));
}

double Subspace::containment_residual(const CVec& v) const {
  if (v.size() != n_) throw std::invalid_argument("containment_residual: dimension mismatch");
  const RVec r = realify(v);
  return (r - project(r)).norm();
}

Subspace Subspace::intersect(const Subspace& other) const {
  if (other.n_ != n_) throw std::invalid_argument("intersect: dimension mismatch");
  if (dim() == 0 || other.dim() == 0) return Subspace::zero(n_);
  // Principal vectors with cos(theta) > 1 - 1e-9 count as common directions.
  const RMat m = basis_.transpose() * other.basis_;
  Eigen::JacobiSVD<RMat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  std::vector<int> keep;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > 1.0 - 1e-9) keep.push_back(static_cast<int>(i));
  if (keep.empty()) return Subspace::zero(n_);
  RMat cols(2 * n_, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j)
    cols.col(static_cast<Eigen::Index>(j)) = basis_ * svd.matrixU().col(keep[j]);
  return Subspace(n_, orthonormal_columns(cols));
}

Subspace Subspace::complement() const {
  const int m = 2 * n_;
  if (dim() == 0) return Subspace::full(n_);
  if (dim() == m) return Subspace::zero(n_);
  RMat p = RMat::Identity(m, m) - basis_ * basis_.transpose();
  RMat q = orthonormal_columns(p);
  return Subspace(n_, std::move(q));
}

Subspace Subspace::complement_in(const Subspace& ambient) const {
  RMat proj = ambient.basis_ - basis_ * (basis_.transpose() * ambient.basis_);
  return Subspace(n_, orthonormal_columns(proj));
}

Subspace Subspace::rotated(double phi) const {
  return Subspace(n_, orthonormal_columns(rot_mat(n_, phi) * basis_));
}

Subspace Subspace::applyJ() const {
  return Subspace(n_, orthonormal_columns(jmat(n_) * basis_));
}

Subspace Subspace::conjugated(double phi) const {
  std::vector<CVec> vs;
  vs.reserve(dim());
  for (int i = 0; i < dim(); ++i) vs.push_back(conjugate_in_form(vec(i), phi));
  return Subspace::span(n_, vs);
}

Subspace Subspace::apply(const RMat& op) const {
  return Subspace(n_, orthonormal_columns(op * basis_));
}

Subspace Subspace::direct_sum(const Subspace& other) const {
  if (other.n_ != n_) throw std::invalid_argument("direct_sum: dimension mismatch");
  RMat cols(2 * n_, basis_.cols() + other.basis_.cols());
  cols << basis_, other.basis_;
  return Subspace(n_, orthonormal_columns(cols));
}

double max_principal_sine(const Subspace& container, const Subspace& sub) {
  if (sub.dim() == 0) return 0.0;
  if (container.dim() == 0) return 1.0;
  const RMat resid =
      sub.basis() - container.basis() * (container.basis().transpose() * sub.basis());
  Eigen::JacobiSVD<RMat> svd(resid);
  return svd.singularValues()(0);
}

double subspace_distance(const Subspace& a, const Subspace& b) {
  return std::max(max_principal_sine(a, b), max_principal_sine(b, a));
}

bool same_subspace(const Subspace& a, const Subspace& b, double sin_tol) {
  return a.dim() == b.dim() && subspace_distance(a, b) <= sin_tol;
}

namespace {

double colspace_sine(const RMat& container, const RMat& sub) {
  if (sub.cols() == 0) return 0.0;
  if (container.cols() == 0) return 1.0;
  const RMat qc = orthonormal_columns(container);
  const RMat qs = orthonormal_columns(sub);
  const RMat resid = qs - qc * (qc.transpose() * qs);
  Eigen::JacobiSVD<RMat> svd(resid);
  return svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
}

}  // namespace

double colspace_distance(const RMat& a, const RMat& b) {
  return std::max(colspace_sine(a, b), colspace_sine(b, a));
}

RMat colspace_intersect(const RMat& a, const RMat& b) {
  if (a.cols() == 0 || b.cols() == 0) return RMat::Zero(a.rows(), 0);
  const RMat qa = orthonormal_columns(a);
  const RMat qb = orthonormal_columns(b);
  const RMat m = qa.transpose() * qb;
  Eigen::JacobiSVD<RMat> svd(m, Eigen::ComputeThinU);
  std::vector<int> keep;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1.0 - 1e-9) keep.push_back(static_cast<int>(i));
  RMat out(a.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j)
    out.col(static_cast<Eigen::Index>(j)) = qa * svd.matrixU().col(keep[j]);
  return orthonormal_columns(out);
}

bool is_complex_subspace(const Subspace& w, double tol) {
  return subspace_distance(w, w.applyJ()) <= tol;
}

bool is_totally_real_subspace(const Subspace& w, double tol) {
  if (w.dim() == 0) return true;
  const RMat g = w.basis().transpose() * (jmat(w.n()) * w.basis());
  return g.cwiseAbs().maxCoeff() <= tol;
}

}  // namespace grasslab
