// Copyright 2026 The Grasslab Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "grasslab/io.hpp"

#include <iosfwd>

namespace grasslab {

struct RunConfig {
  int n = 4;
  int sign = +1;
  std::uint64_t seed = kDefaultSeed;
  std::string suite = "all";
  long budget = 1000;
  std::string out;  // empty: write the report to stdout
  std::string format = "json";
  int jobs = 1;
  std::string table_path = default_table_path();
};

struct CaseResult {
  std::string id;
  bool pass = false;
  double residual = 0.0;
  io::json evidence;  // small per-case payload
};

struct SuiteOutcome {
  std::vector<CaseResult> cases;
  int passed() const {
    int p = 0;
    for (const auto& c : cases) p += c.pass ? 1 : 0;
    return p;
  }
  bool all_pass() const { return passed() == static_cast<int>(cases.size()); }
};

/// Runs the named suite; cases are generated and reported in a canonical
/// order and carry per-case seeds, so --jobs never changes the content.
SuiteOutcome run_suite(const RunConfig& config);

std::string render_report(const RunConfig& config, const SuiteOutcome& outcome);

/// Executes, writes the report (file or stdout), logs a one-line summary.
/// Returns 0 when every case passes, 1 on verification failure, 2 on a
/// config error.
int run_and_report(const RunConfig& config, std::ostream& log);

}  // namespace grasslab
