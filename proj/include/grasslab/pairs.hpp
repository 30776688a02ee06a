// Copyright 2026 The Grasslab Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "grasslab/catalog.hpp"

namespace grasslab {

struct PairVerdict {
  bool ok = false;
  double orth = 0.0;      // max |<w_i, u_j>|
  double w_inv = 0.0;     // R(W,W,W) outside W
  double cross_wu = 0.0;  // R(W,W,U) outside U
  double u_inv = 0.0;     // R(U,U,U) outside U
  double cross_uw = 0.0;  // R(U,U,W) outside W
  double max_residual() const {
    return std::max({orth, w_inv, cross_wu, u_inv, cross_uw});
  }
};

/// Orthogonal curvature-invariant-pair check; verdict invariant under the
/// sign flag.
PairVerdict is_ci_pair(const CurvatureModel& m, const Subspace& w, const Subspace& u,
                       double tol = kResidualTol);

/// One canonical Table-1 row instance: tags at the smallest admissible n,
/// plus row-specific parameters.
struct PairRecord {
  std::string row_id;
  int n = 0;
  TypeTag tag_w;
  TypeTag tag_u;
  double theta = 0.0;      // rows constructed as exp(theta I') rotations
  double jt_t = 0.0;       // rows constructed through a second structure
  Complex jt_w{0.0, 0.0};
  bool v_ci = false;       // W + U curvature invariant for this row
  bool blocked = false;    // graded obstruction proves non-integrability
};

/// Checks the row's Conditions column on the payloads (1e-10) and throws
/// std::invalid_argument when violated.
void validate_pair_record(const PairRecord& rec);

/// Builds (W, U) at ambient dimension n >= rec.n (payload zero-padded);
/// the result is verified to be an orthogonal CI pair.
std::pair<Subspace, Subspace> construct_pair(const PairRecord& rec, int n);

/// The canonical rows shipped with the repository.
std::vector<PairRecord> builtin_table();
std::vector<PairRecord> load_table(const std::string& path);
std::string default_table_path();

struct RowReport {
  std::string row_id;
  int n = 0;
  bool pass = false;
  double max_residual = 0.0;
  int mutations_failed = 0;  // mutated configurations correctly rejected
  int mutations_total = 0;
};

struct TableReport {
  std::vector<RowReport> rows;
  bool all_pass() const {
    for (const auto& r : rows)
      if (!r.pass || r.mutations_failed != r.mutations_total) return false;
    return true;
  }
};

/// Instantiates every row admissible at dimension n, checks it, and runs
/// `mutations` condition-violating probes per row (all expected to fail).
TableReport verify_table(const std::vector<PairRecord>& records, int n, int sign,
                         std::uint64_t seed, int mutations = 20);

/// Randomized search specification for one ordered variant pair.
struct SearchSpec {
  std::string id;
  Variant a = Variant::TR1;
  Variant b = Variant::TR1;
  int n = 4;
  int ka = 1, la = 0;
  int kb = 1, lb = 0;
};

struct FoundPair {
  long sample = 0;
  double residual = 0.0;
};

struct SearchReport {
  long budget = 0;
  long hits = 0;
  std::vector<FoundPair> examples;  // capped
};

/// Samples random payloads for both variants (orthogonality encouraged by
/// projecting the second payload away from the first footprint on alternate
/// samples) and counts strict CI-pair hits (all residuals <= 1e-9).
SearchReport search_pairs(const CurvatureModel& m, const SearchSpec& spec, long budget,
                          std::uint64_t seed);

/// The forbidden ordered variant pairs of the nonexistence corollaries,
/// with parameters chosen inside the forbidden regime.
std::vector<SearchSpec> nonexistence_specs();

}  // namespace grasslab
