// Copyright 2026 The Grasslab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "grasslab/suites.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

namespace grasslab {

namespace {

struct CaseSpec {
  std::string id;
  std::function<CaseResult(std::uint64_t case_seed)> fn;
};

CaseResult simple_case(const std::string& id, bool pass, double residual,
                       io::json evidence = io::json::object()) {
  return CaseResult{id, pass, residual, std::move(evidence)};
}

TypeTag coordinate_trkp_tag(int n, int k) {
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

Subspace coordinate_plane(int n, std::vector<std::pair<int, bool>> dirs) {
  // (index, imaginary?) coordinate directions, kept in the given order.
  RMat basis(2 * n, static_cast<Eigen::Index>(dirs.size()));
  basis.setZero();
  for (std::size_t j = 0; j < dirs.size(); ++j)
    basis(dirs[j].second ? n + dirs[j].first : dirs[j].first,
          static_cast<Eigen::Index>(j)) = 1.0;
  return Subspace::from_orthonormal(n, basis);
}

TwoJet product_of_circles_jet(int n, double kappa1, double kappa2) {
  const CurvatureModel model = CurvatureModel::grassmannian(n, +1);
  const Subspace w = coordinate_plane(n, {{0, false}, {1, true}});
  std::vector<std::vector<CVec>> h(2, std::vector<CVec>(2, CVec::Zero(n)));
  h[0][0] = kappa1 * unit_vec(n, 2);
  h[1][1] = kappa2 * Complex(0, 1) * unit_vec(n, 3);
  return make_jet(model, w, std::move(h));
}

TwoJet cond2_counterexample_jet(int n) {
  const CurvatureModel model = CurvatureModel::grassmannian(n, +1);
  const Subspace w = coordinate_plane(n, {{0, false}, {1, true}});
  std::vector<std::vector<CVec>> h(2, std::vector<CVec>(2, CVec::Zero(n)));
  h[0][0] = unit_vec(n, 1);
  return make_jet(model, w, std::move(h));
}

struct VariantParams {
  Variant v;
  int k;
  int l;
  std::string label;
};

std::vector<VariantParams> admissible_params(int n) {
  std::vector<VariantParams> out;
  for (int k = 1; k <= n; ++k)
    out.push_back({Variant::CK, k, 0, "c_k=" + std::to_string(k)});
  for (int k = 1; k <= n; ++k)
    for (int l = 0; l <= k; ++l) {
      if (k + l < 2 || k + l > n) continue;
      out.push_back({Variant::TRKL, k, l,
                     "tr_kl=" + std::to_string(k) + "," + std::to_string(l)});
    }
  for (int k = 1; 2 * k <= n; ++k)
    out.push_back({Variant::CKPrime, k, 0, "c_k'=" + std::to_string(k)});
  for (int k = 2; 2 * k <= n; ++k)
    out.push_back({Variant::TRKPrime, k, 0, "tr_k'=" + std::to_string(k)});
  out.push_back({Variant::EX3, 0, 0, "ex3"});
  if (n >= 3) out.push_back({Variant::EX2, 0, 0, "ex2"});
  out.push_back({Variant::TR1, 0, 0, "tr1"});
  return out;
}

// ---------------------------------------------------------------------
// Suite builders

void add_types_cases(const RunConfig& config, std::vector<CaseSpec>* cases) {
  const int n = config.n;
  const CurvatureModel model = CurvatureModel::grassmannian(n, config.sign);
  for (const auto& p : admissible_params(n)) {
    cases->push_back(
        {"types/construct/" + p.label, [=](std::uint64_t seed) {
           Rng rng(seed);
           double worst = 0.0;
           bool ok = true;
           for (int t = 0; t < 10; ++t) {
             const TypeTag tag = random_tag(p.v, n, p.k, p.l, rng);
             const Subspace w = construct_type(tag, n);
             const auto civ = is_curvature_invariant(model, w);
             worst = std::max(worst, civ.residual);
             ok = ok && civ.ok;
           }
           return simple_case("types/construct/" + p.label, ok, worst);
         }});
    cases->push_back(
        {"types/hw/" + p.label, [=](std::uint64_t seed) {
           Rng rng(seed);
           const TypeTag tag = random_tag(p.v, n, p.k, p.l, rng);
           const Subspace w = construct_type(tag, n);
           const int dim = curvature_algebra(model, w).dim();
           const int expected = expected_hw_dimension(tag);
           return simple_case("types/hw/" + p.label, dim == expected, 0.0,
                              io::json{{"dim", dim}, {"expected", expected}});
         }});
  }
  cases->push_back({"types/roundtrip", [=](std::uint64_t seed) {
                      Rng rng(seed);
                      const auto params = admissible_params(n);
                      int ok_count = 0;
                      const int total = 60;
                      for (int t = 0; t < total; ++t) {
                        const auto& p = params[rng.next_u64() % params.size()];
                        const TypeTag tag = random_tag(p.v, n, p.k, p.l, rng);
                        const Subspace w = construct_type(tag, n);
                        try {
                          const TypeTag back = classify(model, w);
                          const bool ok = back.variant == tag.variant &&
                                          back.k() == tag.k() && back.l() == tag.l() &&
                                          same_subspace(construct_type(back, n), w, 1e-7);
                          ok_count += ok ? 1 : 0;
                        } catch (const std::exception&) {
                        }
                      }
                      return simple_case("types/roundtrip", ok_count == total, 0.0,
                                         io::json{{"ok", ok_count}, {"total", total}});
                    }});
}

void add_table_cases(const RunConfig& config, std::vector<CaseSpec>* cases) {
  std::vector<PairRecord> records = load_table(config.table_path);
  for (const auto& rec : records) {
    if (rec.n > config.n) continue;
    const PairRecord r = rec;
    const RunConfig cfg = config;
    cases->push_back({"table/" + r.row_id, [=](std::uint64_t) {
                        TableReport rep =
                            verify_table({r}, cfg.n, cfg.sign, cfg.seed, 20);
                        const RowReport& row = rep.rows.at(0);
                        const bool pass =
                            row.pass && row.mutations_failed == row.mutations_total;
                        return simple_case(
                            "table/" + r.row_id, pass, row.max_residual,
                            io::json{{"mutations_failed", row.mutations_failed},
                                     {"mutations_total", row.mutations_total}});
                      }});
  }
}

void add_nonexistence_cases(const RunConfig& config, std::vector<CaseSpec>* cases) {
  for (const SearchSpec& spec : nonexistence_specs()) {
    const RunConfig cfg = config;
    cases->push_back({"nonexistence/" + spec.id, [=](std::uint64_t) {
                        const CurvatureModel m =
                            CurvatureModel::grassmannian(spec.n, cfg.sign);
                        const SearchReport rep =
                            search_pairs(m, spec, cfg.budget, cfg.seed);
                        return simple_case("nonexistence/" + spec.id, rep.hits == 0,
                                           static_cast<double>(rep.hits),
                                           io::json{{"budget", rep.budget},
                                                    {"hits", rep.hits}});
                      }});
  }
}

void add_jets_cases(const RunConfig& config, std::vector<CaseSpec>* cases) {
  const int n = std::max(config.n, 2);
  const CurvatureModel model = CurvatureModel::grassmannian(n, +1);

  cases->push_back({"jets/circles", [=](std::uint64_t seed) {
                      Rng rng(seed);
                      bool ok = true;
                      for (int t = 0; t < 25; ++t) {
                        const CVec x = rng.unit_cvec(n);
                        CVec eta = rng.normal_cvec(n);
                        eta -= inner(eta, x) * x;
                        const TwoJet jet = circle_jet(model, x, eta);
                        ok = ok && is_integrable_jet(jet).ok;
                      }
                      return simple_case("jets/circles", ok, 0.0);
                    }});

  for (const auto& p : admissible_params(n)) {
    cases->push_back({"jets/zero/" + p.label, [=](std::uint64_t seed) {
                        Rng rng(seed);
                        const TypeTag tag = random_tag(p.v, n, p.k, p.l, rng);
                        const TwoJet jet = zero_jet(model, construct_type(tag, n));
                        const auto v = is_integrable_jet(jet);
                        return simple_case("jets/zero/" + p.label, v.ok, v.residual);
                      }});
  }

  cases->push_back({"jets/cond2-counterexample", [=](std::uint64_t) {
                      const TwoJet jet = cond2_counterexample_jet(n);
                      const auto v = is_integrable_jet(jet);
                      const bool pass = !v.ok && v.failing_clause == "cond2:k=1" &&
                                        std::abs(v.residual - 1.0) <= 1e-8;
                      return simple_case("jets/cond2-counterexample", pass, v.residual,
                                         io::json{{"clause", v.failing_clause}});
                    }});

  {
    const int nd = std::max(n, 3);
    const CurvatureModel md = CurvatureModel::grassmannian(nd, +1);
    cases->push_back({"jets/dense-c2", [=](std::uint64_t seed) {
                        Rng rng(seed);
                        int failed = 0;
                        const int total = 25;
                        for (int t = 0; t < total; ++t) {
                          TypeTag tag = random_tag(Variant::CK, nd, 2, 0, rng);
                          const Subspace w = construct_type(tag, nd);
                          const TwoJet jet = random_dense_jet(md, w, rng);
                          if (!is_integrable_jet(jet).ok) ++failed;
                        }
                        return simple_case("jets/dense-c2", failed == total, 0.0,
                                           io::json{{"failed", failed}, {"total", total}});
                      }});
  }

  {
    const int nf = std::max(n, 4);
    cases->push_back({"jets/curved-flat/adapted", [=](std::uint64_t seed) {
                        Rng rng(seed);
                        const TwoJet jet = product_of_circles_jet(
                            nf, 0.5 + rng.uniform01(), 0.5 + rng.uniform01());
                        const auto rep = curved_flat_normal_form(jet);
                        const double worst = std::max(
                            {rep.residual_cfl0, rep.residual_cfl1, rep.residual_cfl2});
                        return simple_case("jets/curved-flat/adapted",
                                           rep.ok && worst <= 1e-9, worst);
                      }});
    cases->push_back({"jets/curved-flat/violation", [=](std::uint64_t) {
                        const TwoJet jet = cond2_counterexample_jet(2);
                        const auto rep = curved_flat_normal_form(jet);
                        return simple_case("jets/curved-flat/violation",
                                           !rep.ok && rep.failing_clause == "cfl2",
                                           rep.residual_cfl2,
                                           io::json{{"clause", rep.failing_clause}});
                      }});
  }

  cases->push_back(
      {"jets/kernel-invariance", [=](std::uint64_t seed) {
         Rng rng(seed);
         double worst = 0.0;
         bool ok = true;
         for (int t = 0; t < 20; ++t) {
           TwoJet jet = [&]() {
             switch (t % 3) {
               case 0: {
                 const auto params = admissible_params(n);
                 const auto& p = params[rng.next_u64() % params.size()];
                 return zero_jet(model, construct_type(random_tag(p.v, n, p.k, p.l, rng), n));
               }
               case 1: {
                 const CVec x = rng.unit_cvec(n);
                 CVec eta = rng.normal_cvec(n);
                 eta -= inner(eta, x) * x;
                 return circle_jet(model, x, eta);
               }
               default:
                 return product_of_circles_jet(std::max(n, 4), 1.0 + rng.uniform01(),
                                               t % 6 == 2 ? 0.0 : rng.uniform01());
             }
           }();
           const Subspace kern = kernel_of_h(jet);
           if (kern.dim() == 0) continue;
           const OperatorAlgebra hw = curvature_algebra(jet.model, jet.w);
           for (const RMat& a : hw.ops())
             worst = std::max(worst, invariance_residual(a, kern));
           ok = ok && worst <= kResidualTol;
         }
         return simple_case("jets/kernel-invariance", ok, worst);
       }});

  cases->push_back(
      {"jets/semi-parallel-restriction", [=](std::uint64_t seed) {
         Rng rng(seed);
         bool ok = true;
         for (int t = 0; t < 20; ++t) {
           TwoJet jet = [&]() {
             if (t % 2 == 0) {
               const CVec x = rng.unit_cvec(n);
               CVec eta = rng.normal_cvec(n);
               eta -= inner(eta, x) * x;
               return circle_jet(model, x, eta);
             }
             TypeTag tag = random_tag(Variant::TRKL, n, 1, 1, rng);
             return random_dense_jet(model, construct_type(tag, n), rng);
           }();
           const auto on_v = is_semi_parallel(jet, false);
           const auto on_full = is_semi_parallel(jet, true);
           ok = ok && (on_v.ok == on_full.ok);
         }
         return simple_case("jets/semi-parallel-restriction", ok, 0.0);
       }});
}

void add_obstruction_cases(const RunConfig& config, std::vector<CaseSpec>* cases) {
  std::vector<PairRecord> records = load_table(config.table_path);
  for (const auto& rec : records) {
    const PairRecord r = rec;
    if (r.blocked) {
      cases->push_back({"obstructions/blocked/" + r.row_id, [=](std::uint64_t) {
                          const auto [w, u] = construct_pair(r, r.n);
                          const CurvatureModel m =
                              CurvatureModel::grassmannian(r.n, +1);
                          const auto rep = dec_obstruction(m, w, u);
                          return simple_case(
                              "obstructions/blocked/" + r.row_id,
                              rep.verdict == Obstruction::Blocked, 0.0,
                              io::json{{"minus_dim", rep.minus_dim},
                                       {"hom_dim", rep.hom_dim}});
                        }});
    }
    if (r.v_ci) {
      cases->push_back({"obstructions/v-ci/" + r.row_id, [=](std::uint64_t) {
                          const auto [w, u] = construct_pair(r, r.n);
                          const CurvatureModel m =
                              CurvatureModel::grassmannian(r.n, +1);
                          const auto civ = is_curvature_invariant(m, w.direct_sum(u));
                          return simple_case("obstructions/v-ci/" + r.row_id, civ.ok,
                                             civ.residual);
                        }});
    }
  }
}

void add_jtheta_cases(const RunConfig& config, std::vector<CaseSpec>* cases) {
  const int kmax = std::min(4, config.n / 2);
  const std::vector<double> thetas = {0.0, 0.7, M_PI / 3.0};
  for (int k = 2; k <= kmax; ++k) {
    for (std::size_t ti = 0; ti < thetas.size(); ++ti) {
      const double theta = thetas[ti];
      const int n = config.n;
      const std::string id =
          "jtheta/k=" + std::to_string(k) + "/theta" + std::to_string(ti);
      cases->push_back({id, [=](std::uint64_t seed) {
                          Rng rng(seed);
                          double worst = 0.0;
                          bool ok = true;
                          try {
                            const auto r1 =
                                jtheta_structure(coordinate_trkp_tag(n, k), theta, n);
                            worst = std::max(worst, r1.max_residual());
                            const auto r2 = jtheta_structure(
                                random_tag(Variant::TRKPrime, n, k, 0, rng), theta, n);
                            worst = std::max(worst, r2.max_residual());
                          } catch (const std::exception&) {
                            ok = false;
                          }
                          return simple_case(id, ok && worst <= kResidualTol, worst);
                        }});
    }
  }
}

}  // namespace

SuiteOutcome run_suite(const RunConfig& config) {
  if (config.n < 2) throw std::invalid_argument("run_suite: n must be >= 2");
  if (config.budget < 1) throw std::invalid_argument("run_suite: budget must be >= 1");
  static const std::vector<std::string> known = {
      "all", "types", "table", "nonexistence", "jets", "obstructions", "jtheta"};
  if (std::find(known.begin(), known.end(), config.suite) == known.end())
    throw std::invalid_argument("unknown suite: " + config.suite);
  std::vector<CaseSpec> specs;
  const bool all = config.suite == "all";
  if (all || config.suite == "types") add_types_cases(config, &specs);
  if (all || config.suite == "table") add_table_cases(config, &specs);
  if (all || config.suite == "nonexistence") add_nonexistence_cases(config, &specs);
  if (all || config.suite == "jets") add_jets_cases(config, &specs);
  if (all || config.suite == "obstructions") add_obstruction_cases(config, &specs);
  if (all || config.suite == "jtheta") add_jtheta_cases(config, &specs);

  SuiteOutcome outcome;
  outcome.cases.resize(specs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= specs.size()) return;
      const std::uint64_t seed = case_seed(config.seed, specs[i].id);
      try {
        outcome.cases[i] = specs[i].fn(seed);
      } catch (const std::exception& e) {
        outcome.cases[i] =
            CaseResult{specs[i].id, false, 0.0, io::json{{"error", e.what()}}};
      }
    }
  };
  const int jobs = std::max(1, config.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return outcome;
}

std::string render_report(const RunConfig& config, const SuiteOutcome& outcome) {
  if (config.format == "csv" && config.suite == "table") {
    std::ostringstream out;
    out << "row_id,n,verdict,max_residual,mutations_failed\n";
    for (const auto& c : outcome.cases) {
      std::string row = c.id;
      if (row.rfind("table/", 0) == 0) row = row.substr(6);
      out << '"' << row << '"' << "," << config.n << ","
          << (c.pass ? "pass" : "fail") << "," << c.residual << ","
          << c.evidence.value("mutations_failed", 0) << "\n";
    }
    return out.str();
  }
  if (config.format == "csv") {
    std::ostringstream out;
    out << "id,verdict,max_residual,evidence\n";
    for (const auto& c : outcome.cases) {
      std::string ev = c.evidence.dump();
      for (auto& ch : ev)
        if (ch == ',') ch = ';';
      out << '"' << c.id << '"' << "," << (c.pass ? "pass" : "fail") << ","
          << c.residual << "," << ev << "\n";
    }
    return out.str();
  }
  io::json report;
  report["schema_version"] = 1;
  report["config"] = io::json{{"n", config.n},       {"sign", config.sign},
                              {"seed", config.seed}, {"suite", config.suite},
                              {"budget", config.budget}, {"format", config.format},
                              {"jobs", config.jobs}};
  io::json cases = io::json::array();
  for (const auto& c : outcome.cases) {
    cases.push_back(io::json{{"id", c.id},
                             {"verdict", c.pass ? "pass" : "fail"},
                             {"residuals", io::json{{"max", c.residual}}},
                             {"evidence", c.evidence}});
  }
  report["cases"] = cases;
  report["summary"] = io::json{{"total", outcome.cases.size()},
                               {"passed", outcome.passed()},
                               {"failed", outcome.cases.size() - outcome.passed()}};
  return report.dump(2) + "\n";
}

int run_and_report(const RunConfig& config, std::ostream& log) {
  SuiteOutcome outcome;
  try {
    outcome = run_suite(config);
  } catch (const std::invalid_argument& e) {
    log << "config error: " << e.what() << "\n";
    return 2;
  }
  const std::string text = render_report(config, outcome);
  const std::string summary = "suite=" + config.suite +
                              " cases=" + std::to_string(outcome.cases.size()) +
                              " passed=" + std::to_string(outcome.passed()) + "\n";
  if (config.out.empty()) {
    // Keep stdout parseable: the report is the only thing written there.
    log << text;
    std::cerr << summary;
  } else {
    std::ofstream f(config.out, std::ios::binary);
    if (!f) {
      log << "cannot write report: " << config.out << "\n";
      return 2;
    }
    f << text;
    log << summary;
  }
  return outcome.all_pass() ? 0 : 1;
}

}  // namespace grasslab
