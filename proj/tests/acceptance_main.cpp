// Copyright 2026 The Grasslab Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance gate: one line per criterion, nonzero exit on any failure.
// Every tolerance below is pinned in code; no criterion defers to later
// calibration.

#include "grasslab/io.hpp"
#include "grasslab/jets.hpp"
#include "grasslab/pairs.hpp"
#include "grasslab/repr.hpp"
#include "grasslab/suites.hpp"

#include <Eigen/SVD>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

using namespace grasslab;

namespace {

const Complex I1(0.0, 1.0);

struct Criterion {
  bool pass = true;
  std::string detail;
  double seconds = 0.0;
};

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::vector<std::tuple<Variant, int, int>> admissible(int n) {
  std::vector<std::tuple<Variant, int, int>> out;
  for (int k = 1; k <= n; ++k) out.emplace_back(Variant::CK, k, 0);
  for (int k = 1; k <= n; ++k)
    for (int l = 0; l <= k; ++l)
      if (k + l >= 2 && k + l <= n) out.emplace_back(Variant::TRKL, k, l);
  for (int k = 1; 2 * k <= n; ++k) out.emplace_back(Variant::CKPrime, k, 0);
  for (int k = 2; 2 * k <= n; ++k) out.emplace_back(Variant::TRKPrime, k, 0);
  out.emplace_back(Variant::EX3, 0, 0);
  if (n >= 3) out.emplace_back(Variant::EX2, 0, 0);
  out.emplace_back(Variant::TR1, 0, 0);
  return out;
}

// 1. Curvature axioms on 1e4 random triples, residuals <= 1e-9, < 10 s.
Criterion criterion_axioms() {
  Criterion c;
  Timer timer;
  Rng rng(kDefaultSeed ^ 0xA1u);
  double worst = 0.0;
  const long total = 10000;
  long done = 0;
  std::vector<CurvatureModel> models;
  std::vector<OperatorAlgebra> isos;
  for (int n = 2; n <= 6; ++n) {
    models.push_back(CurvatureModel::grassmannian(n));
    models.push_back(CurvatureModel::cpn(n));
  }
  for (const auto& m : models) isos.push_back(isotropy_algebra(m));
  while (done < total) {
    for (std::size_t mi = 0; mi < models.size() && done < total; ++mi, ++done) {
      const auto& m = models[mi];
      const CVec u = rng.normal_cvec(m.n), v = rng.normal_cvec(m.n),
                 w = rng.normal_cvec(m.n);
      const RMat ruv = curvature_endomorphism(m, u, v);
      const double scale = std::max(1.0, ruv.norm());
      worst = std::max(worst, (ruv + curvature_endomorphism(m, v, u)).norm() / scale);
      worst = std::max(worst, skew_residual(ruv) / scale);
      const CVec bianchi =
          complexify(RVec(ruv * realify(w))) +
          complexify(RVec(curvature_endomorphism(m, v, w) * realify(u))) +
          complexify(RVec(curvature_endomorphism(m, w, u) * realify(v)));
      worst = std::max(worst, bianchi.norm() / scale);
      worst = std::max(worst, (ruv * jmat(m.n) - jmat(m.n) * ruv).norm() / scale);
      worst = std::max(worst, isos[mi].membership_residual(ruv) / scale);
    }
  }
  c.seconds = timer.seconds();
  c.pass = worst <= 1e-9 && c.seconds < 10.0;
  std::ostringstream ss;
  ss << "max residual " << worst << " over " << total << " triples";
  c.detail = ss.str();
  return c;
}

// 2. Constructor suite: 50 instantiations per type per n in 2..6, CI residual
//    <= 1e-8, < 30 s.
Criterion criterion_constructors() {
  Criterion c;
  Timer timer;
  Rng rng(kDefaultSeed ^ 0xA2u);
  double worst = 0.0;
  long count = 0;
  for (int n = 2; n <= 6; ++n) {
    const CurvatureModel m = CurvatureModel::grassmannian(n);
    for (Variant v : {Variant::CK, Variant::TRKL, Variant::CKPrime, Variant::TRKPrime,
                      Variant::EX3, Variant::EX2, Variant::TR1}) {
      // Admissible parameters for this variant at this n.
      std::vector<std::pair<int, int>> params;
      for (const auto& [pv, k, l] : admissible(n))
        if (pv == v) params.emplace_back(k, l);
      if (params.empty()) continue;
      for (int t = 0; t < 50; ++t) {
        const auto& [k, l] = params[t % params.size()];
        const TypeTag tag = random_tag(v, n, k, l, rng);
        worst = std::max(worst,
                         is_curvature_invariant(m, construct_type(tag, n)).residual);
        ++count;
      }
    }
  }
  c.seconds = timer.seconds();
  c.pass = worst <= 1e-8 && c.seconds < 30.0;
  std::ostringstream ss;
  ss << "max residual " << worst << " over " << count << " constructions";
  c.detail = ss.str();
  return c;
}

// 3. Classifier round-trip: 500 cycles, 100%.
Criterion criterion_roundtrip() {
  Criterion c;
  Timer timer;
  Rng rng(kDefaultSeed ^ 0xA3u);
  int ok = 0;
  const int total = 500;
  for (int t = 0; t < total; ++t) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 5);
    const CurvatureModel m = CurvatureModel::grassmannian(n);
    const auto params = admissible(n);
    const auto& [v, k, l] = params[rng.next_u64() % params.size()];
    const TypeTag tag = random_tag(v, n, k, l, rng);
    const Subspace w = construct_type(tag, n);
    try {
      const TypeTag back = classify(m, w);
      if (back.variant == tag.variant && back.k() == tag.k() && back.l() == tag.l() &&
          same_subspace(construct_type(back, n), w, 1e-7))
        ++ok;
    } catch (const std::exception&) {
    }
  }
  c.seconds = timer.seconds();
  c.pass = ok == total;
  c.detail = std::to_string(ok) + "/" + std::to_string(total) + " cycles exact";
  return c;
}

// 4. h_W dimension table against an independent numerical-rank oracle.
Criterion criterion_hw_dimensions() {
  Criterion c;
  Timer timer;
  Rng rng(kDefaultSeed ^ 0xA4u);
  int checked = 0;
  std::string fail;
  for (int n = 2; n <= 6; ++n) {
    const CurvatureModel m = CurvatureModel::grassmannian(n);
    for (const auto& [v, k, l] : admissible(n)) {
      const TypeTag tag = random_tag(v, n, k, l, rng);
      const Subspace w = construct_type(tag, n);
      // Independent oracle: numerical rank of the stacked curvature span.
      const int d = w.dim();
      const int pairs = d * (d - 1) / 2;
      int rank = 0;
      if (pairs > 0) {
        RMat stacked(4 * n * n, pairs);
        int at = 0;
        for (int i = 0; i < d; ++i)
          for (int j = i + 1; j < d; ++j) {
            const RMat r = curvature_endomorphism(m, w.vec(i), w.vec(j));
            stacked.col(at++) = Eigen::Map<const RVec>(r.data(), 4 * n * n);
          }
        Eigen::JacobiSVD<RMat> svd(stacked);
        const auto& sv = svd.singularValues();
        for (Eigen::Index i = 0; i < sv.size(); ++i)
          if (sv(i) > std::max(1e-8 * sv(0), 1e-10)) ++rank;
      }
      const int expected = expected_hw_dimension(tag);
      const int via_algebra = curvature_algebra(m, w).dim();
      ++checked;
      if (rank != expected || via_algebra != expected) {
        fail = variant_name(v) + " n=" + std::to_string(n) + " k=" + std::to_string(k) +
               " l=" + std::to_string(l) + " rank=" + std::to_string(rank) +
               " expected=" + std::to_string(expected);
        break;
      }
    }
    if (!fail.empty()) break;
  }
  c.seconds = timer.seconds();
  c.pass = fail.empty();
  c.detail = fail.empty() ? std::to_string(checked) + " parameter sets exact" : fail;
  return c;
}

// 5. Table rows at canonical minimal n; mutations all fail; sign flip
//    verdict-identical; < 60 s.
Criterion criterion_table() {
  Criterion c;
  Timer timer;
  const auto records = builtin_table();
  std::string fail;
  for (const auto& rec : records) {
    const TableReport plus = verify_table({rec}, rec.n, +1, kDefaultSeed, 20);
    const TableReport minus = verify_table({rec}, rec.n, -1, kDefaultSeed, 20);
    const RowReport& rp = plus.rows.at(0);
    const RowReport& rm = minus.rows.at(0);
    if (!rp.pass || rp.mutations_failed != rp.mutations_total) {
      fail = rec.row_id + ": pass=" + std::to_string(rp.pass) +
             " mutations=" + std::to_string(rp.mutations_failed) + "/" +
             std::to_string(rp.mutations_total);
      break;
    }
    if (rp.pass != rm.pass || rp.mutations_failed != rm.mutations_failed) {
      fail = rec.row_id + ": sign flip changed the verdicts";
      break;
    }
  }
  c.seconds = timer.seconds();
  c.pass = fail.empty() && c.seconds < 60.0;
  c.detail = fail.empty()
                 ? std::to_string(records.size()) + " rows, 20 mutations each"
                 : fail;
  return c;
}

// 6. Nonexistence searches: budget 1e4, seeds 1..5, zero hits, < 5 min.
Criterion criterion_nonexistence() {
  Criterion c;
  Timer timer;
  const auto specs = nonexistence_specs();
  struct Job {
    SearchSpec spec;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (const auto& spec : specs)
    for (std::uint64_t seed = 1; seed <= 5; ++seed) jobs.push_back({spec, seed});
  std::vector<long> hits(jobs.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      const CurvatureModel m = CurvatureModel::grassmannian(jobs[i].spec.n, +1);
      hits[i] = search_pairs(m, jobs[i].spec, 10000, jobs[i].seed).hits;
    }
  };
  const unsigned hw = std::max(2u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < hw; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  long total_hits = 0;
  std::string fail;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    total_hits += hits[i];
    if (hits[i] != 0 && fail.empty())
      fail = jobs[i].spec.id + " seed " + std::to_string(jobs[i].seed) + ": " +
             std::to_string(hits[i]) + " hits";
  }
  c.seconds = timer.seconds();
  c.pass = total_hits == 0 && c.seconds < 300.0;
  std::ostringstream ss;
  ss << specs.size() << " forbidden pairs x 5 seeds x 10000 samples, "
     << total_hits << " hits";
  c.detail = fail.empty() ? ss.str() : fail;
  return c;
}

// 7. Jet suite: circles and zero jets integrate; the counterexample fails at
//    cond2 k=1 with residual 1 (= the spectral norm of J on V); dense jets
//    on a complex plane never integrate.
Criterion criterion_jets() {
  Criterion c;
  Timer timer;
  Rng rng(kDefaultSeed ^ 0xA7u);
  std::string fail;

  const CurvatureModel m4 = CurvatureModel::grassmannian(4);
  for (int t = 0; t < 100 && fail.empty(); ++t) {
    const CVec x = rng.unit_cvec(4);
    CVec eta = rng.normal_cvec(4);
    eta -= inner(eta, x) * x;
    if (!is_integrable_jet(circle_jet(m4, x, eta)).ok)
      fail = "circle jet " + std::to_string(t) + " failed";
  }

  const int n0 = 6;
  const CurvatureModel m6 = CurvatureModel::grassmannian(n0);
  for (const auto& [v, k, l] : admissible(n0)) {
    if (!fail.empty()) break;
    const TypeTag tag = random_tag(v, n0, k, l, rng);
    if (!is_integrable_jet(zero_jet(m6, construct_type(tag, n0))).ok)
      fail = "zero jet on " + variant_name(v) + " failed";
  }

  {
    const CurvatureModel m2 = CurvatureModel::grassmannian(2);
    const Subspace w = Subspace::from_orthonormal(2, [] {
      RMat b = RMat::Zero(4, 2);
      b(0, 0) = 1.0;  // e1
      b(3, 1) = 1.0;  // i e2
      return b;
    }());
    std::vector<std::vector<CVec>> h(2, std::vector<CVec>(2, CVec::Zero(2)));
    h[0][0] = unit_vec(2, 1);
    const auto verdict = is_integrable_jet(make_jet(m2, w, std::move(h)));
    if (verdict.ok || verdict.failing_clause != "cond2:k=1" ||
        std::abs(verdict.residual - 1.0) > 1e-8)
      fail = "counterexample: clause=" + verdict.failing_clause +
             " residual=" + std::to_string(verdict.residual);
  }

  for (int t = 0; t < 100 && fail.empty(); ++t) {
    const TypeTag tag = random_tag(Variant::CK, 4, 2, 0, rng);
    const TwoJet jet = random_dense_jet(m4, construct_type(tag, 4), rng);
    if (is_integrable_jet(jet).ok)
      fail = "dense jet " + std::to_string(t) + " unexpectedly integrable";
  }

  c.seconds = timer.seconds();
  c.pass = fail.empty();
  c.detail = fail.empty() ? "100 circles, 7 zero jets, counterexample, 100 dense"
                          : fail;
  return c;
}

// 8. Obstruction catalog: blocked rows return blocked; provably invariant
//    sums verify.
Criterion criterion_obstructions() {
  Criterion c;
  Timer timer;
  std::string fail;
  int blocked = 0, vci = 0;
  for (const auto& rec : builtin_table()) {
    const CurvatureModel m = CurvatureModel::grassmannian(rec.n, +1);
    const auto [w, u] = construct_pair(rec, rec.n);
    if (rec.blocked) {
      ++blocked;
      if (dec_obstruction(m, w, u).verdict != Obstruction::Blocked) {
        fail = rec.row_id + " not blocked";
        break;
      }
    }
    if (rec.v_ci) {
      ++vci;
      const auto civ = is_curvature_invariant(m, w.direct_sum(u));
      if (!civ.ok) {
        fail = rec.row_id + " V not invariant (residual " +
               std::to_string(civ.residual) + ")";
        break;
      }
    }
  }
  c.seconds = timer.seconds();
  c.pass = fail.empty() && blocked >= 2 && vci >= 8;
  c.detail = fail.empty() ? std::to_string(blocked) + " blocked rows, " +
                                std::to_string(vci) + " invariant sums"
                          : fail;
  return c;
}

// 9. Curved-flat normal form at n = 4; the violating jet names cfl2.
Criterion criterion_curved_flat() {
  Criterion c;
  Timer timer;
  Rng rng(kDefaultSeed ^ 0xA9u);
  std::string fail;
  {
    const CurvatureModel m = CurvatureModel::grassmannian(4);
    const Subspace w = Subspace::from_orthonormal(4, [] {
      RMat b = RMat::Zero(8, 2);
      b(0, 0) = 1.0;  // e1
      b(5, 1) = 1.0;  // i e2
      return b;
    }());
    std::vector<std::vector<CVec>> h(2, std::vector<CVec>(2, CVec::Zero(4)));
    h[0][0] = (0.5 + rng.uniform01()) * unit_vec(4, 2);
    h[1][1] = (0.5 + rng.uniform01()) * I1 * unit_vec(4, 3);
    const auto rep = curved_flat_normal_form(make_jet(m, w, std::move(h)));
    const double worst =
        std::max({rep.residual_cfl0, rep.residual_cfl1, rep.residual_cfl2});
    if (!rep.ok || worst > 1e-9)
      fail = "product jet: clause=" + rep.failing_clause + " residual=" +
             std::to_string(worst);
  }
  if (fail.empty()) {
    const CurvatureModel m = CurvatureModel::grassmannian(2);
    const Subspace w = Subspace::from_orthonormal(2, [] {
      RMat b = RMat::Zero(4, 2);
      b(0, 0) = 1.0;
      b(3, 1) = 1.0;
      return b;
    }());
    std::vector<std::vector<CVec>> h(2, std::vector<CVec>(2, CVec::Zero(2)));
    h[0][0] = unit_vec(2, 1);
    const auto rep = curved_flat_normal_form(make_jet(m, w, std::move(h)));
    if (rep.ok || rep.failing_clause != "cfl2")
      fail = "violating jet reported clause " + rep.failing_clause;
  }
  c.seconds = timer.seconds();
  c.pass = fail.empty();
  c.detail = fail.empty() ? "adapted basis found; violation names cfl2" : fail;
  return c;
}

// 10. J_theta structure for k in {2,3,4}, theta in {0, 0.7, pi/3}.
Criterion criterion_jtheta() {
  Criterion c;
  Timer timer;
  Rng rng(kDefaultSeed ^ 0xAAu);
  std::string fail;
  double worst = 0.0;
  for (int k : {2, 3, 4}) {
    const int n = 2 * k;
    for (double theta : {0.0, 0.7, M_PI / 3.0}) {
      try {
        const auto rep = jtheta_structure(random_tag(Variant::TRKPrime, n, k, 0, rng),
                                          theta, n);
        worst = std::max(worst, rep.max_residual());
        if (rep.dim_plus + rep.dim_minus != k * (k - 1)) {
          fail = "k=" + std::to_string(k) + ": stabilizer dimension " +
                 std::to_string(rep.dim_plus + rep.dim_minus);
        }
      } catch (const std::exception& e) {
        fail = "k=" + std::to_string(k) + ": " + e.what();
      }
      if (!fail.empty()) break;
    }
    if (!fail.empty()) break;
  }
  c.seconds = timer.seconds();
  c.pass = fail.empty() && worst <= 1e-8;
  std::ostringstream ss;
  ss << "max residual " << worst;
  c.detail = fail.empty() ? ss.str() : fail;
  return c;
}

// 11. Determinism: two runs of the full suite with equal seeds produce
//     byte-identical reports.
Criterion criterion_determinism() {
  Criterion c;
  Timer timer;
  RunConfig config;
  config.n = 3;
  config.suite = "all";
  config.seed = 777;
  config.budget = 500;
  config.jobs = 2;
  const std::string a = render_report(config, run_suite(config));
  const std::string b = render_report(config, run_suite(config));
  c.seconds = timer.seconds();
  c.pass = !a.empty() && a == b;
  c.detail = c.pass ? std::to_string(a.size()) + " bytes identical"
                    : "reports differ";
  return c;
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    Criterion (*fn)();
  };
  const Entry entries[] = {
      {"curvature axioms", criterion_axioms},
      {"constructor suite", criterion_constructors},
      {"classifier round-trip", criterion_roundtrip},
      {"h_W dimension table", criterion_hw_dimensions},
      {"table verification", criterion_table},
      {"nonexistence searches", criterion_nonexistence},
      {"jet suite", criterion_jets},
      {"obstruction suite", criterion_obstructions},
      {"curved-flat normal form", criterion_curved_flat},
      {"j-theta structure", criterion_jtheta},
      {"report determinism", criterion_determinism},
  };
  bool all = true;
  int idx = 0;
  for (const auto& e : entries) {
    ++idx;
    Criterion c;
    try {
      c = e.fn();
    } catch (const std::exception& ex) {
      c.pass = false;
      c.detail = std::string("exception: ") + ex.what();
    }
    all = all && c.pass;
    std::printf("criterion %2d [%s]: %s (%s; %.1fs)\n", idx, e.name,
                c.pass ? "PASS" : "FAIL", c.detail.c_str(), c.seconds);
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
