// Copyright 2026 The Grasslab Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace grasslab {

using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

// Default tolerances used across the library. Rank decisions are relative,
// invariant residuals absolute (all data is O(1) on orthonormal frames).
inline constexpr double kRankTol = 1e-8;
inline constexpr double kSkewTol = 1e-10;
inline constexpr double kResidualTol = 1e-8;
inline constexpr std::uint64_t kDefaultSeed = 24601;

/// A point of T_pN ~ C^n is stored as an Eigen complex vector. The
/// realification R^{2n} stacks real parts first, imaginary parts second,
/// so that multiplication by i is the block matrix [[0,-I],[I,0]].
inline RVec realify(const CVec& u) {
  const Eigen::Index n = u.size();
  RVec r(2 * n);
  r.head(n) = u.real();
  r.tail(n) = u.imag();
  return r;
}

inline CVec complexify(const RVec& r) {
  if (r.size() % 2 != 0) throw std::invalid_argument("realified vector has odd size");
  const Eigen::Index n = r.size() / 2;
  CVec u(n);
  u.real() = r.head(n);
  u.imag() = r.tail(n);
  return u;
}

/// Real inner product <u,v> = Re(sum u_a conj(v_a)).
inline double inner(const CVec& u, const CVec& v) {
  if (u.size() != v.size()) throw std::invalid_argument("inner: dimension mismatch");
  return u.dot(v).real();  // Eigen's dot conjugates the left argument; Re part is symmetric
}

inline double norm(const CVec& u) { return u.norm(); }

/// Complex bilinear form B(u,v) = sum u_a v_a (no conjugation).
inline Complex complex_bilinear(const CVec& u, const CVec& v) {
  if (u.size() != v.size()) throw std::invalid_argument("complex_bilinear: dimension mismatch");
  return (u.array() * v.array()).sum();
}

inline CVec unit_vec(int n, int a) {
  CVec e = CVec::Zero(n);
  e(a) = Complex(1.0, 0.0);
  return e;
}

inline CVec real_vec(const RVec& a) {
  CVec u(a.size());
  u.real() = a;
  u.imag().setZero();
  return u;
}

/// Multiplication by e^{i phi}.
inline CVec rot(const CVec& u, double phi) { return u * std::polar(1.0, phi); }

/// J^N on the realification: [[0,-I],[I,0]].
inline RMat jmat(int n) {
  RMat j = RMat::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = -RMat::Identity(n, n);
  j.bottomLeftCorner(n, n) = RMat::Identity(n, n);
  return j;
}

/// Realified multiplication by e^{i phi}.
inline RMat rot_mat(int n, double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  RMat r = RMat::Zero(2 * n, 2 * n);
  r.topLeftCorner(n, n) = c * RMat::Identity(n, n);
  r.topRightCorner(n, n) = -s * RMat::Identity(n, n);
  r.bottomLeftCorner(n, n) = s * RMat::Identity(n, n);
  r.bottomRightCorner(n, n) = c * RMat::Identity(n, n);
  return r;
}

/// The real form R(phi) = e^{i phi} R^n; angles are identified mod pi.
struct RealForm {
  double phi = 0.0;
  static RealForm of(double phi) {
    double p = std::fmod(phi, M_PI);
    if (p < 0) p += M_PI;
    if (p >= M_PI) p = 0.0;  // guard fmod edge
    return RealForm{p};
  }
};

/// Coordinates (a,b) in R^n x R^n with u = e^{i phi}(a + i b); the actual
/// real/imaginary parts with respect to R(phi) are e^{i phi} a and e^{i phi} b.
struct FormSplit {
  RVec a;
  RVec b;
};

inline FormSplit split_real_imag(const CVec& u, double phi = 0.0) {
  const CVec w = rot(u, -phi);
  return FormSplit{w.real(), w.imag()};
}

/// Conjugation with respect to the real form R(phi): fixes R(phi), negates i R(phi).
inline CVec conjugate_in_form(const CVec& u, double phi = 0.0) {
  return rot(CVec(rot(u, -phi).conjugate()), phi);
}

// ---------------------------------------------------------------------------
// Deterministic random numbers. All randomized routines take an explicit
// 64-bit seed; draws below avoid std::*_distribution so that streams are
// identical across standard-library implementations.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(splitmix64(seed ^ 0x6a09e667f3bcc908ULL)) {}

  std::uint64_t next_u64() {
    s_ = splitmix64(s_);
    return s_;
  }

  /// Uniform in [0,1) with 53 bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double angle_pi() { return uniform01() * M_PI; }

  /// Standard normal via Box-Muller (no cached spare, for reproducibility).
  double normal() {
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  RVec normal_rvec(int n) {
    RVec v(n);
    for (int i = 0; i < n; ++i) v(i) = normal();
    return v;
  }

  CVec normal_cvec(int n) {
    CVec v(n);
    for (int i = 0; i < n; ++i) v(i) = Complex(normal(), normal());
    return v;
  }

  CVec unit_cvec(int n) {
    CVec v = normal_cvec(n);
    while (v.norm() < 1e-6) v = normal_cvec(n);
    return v / v.norm();
  }

  RVec unit_rvec(int n) {
    RVec v = normal_rvec(n);
    while (v.norm() < 1e-6) v = normal_rvec(n);
    return v / v.norm();
  }

 private:
  std::uint64_t s_;
};

/// Per-case derived seed; stable under reordering of case execution.
inline std::uint64_t case_seed(std::uint64_t base, const std::string& id) {
  return splitmix64(base ^ fnv1a(id));
}

}  // namespace grasslab
