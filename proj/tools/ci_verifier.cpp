// Copyright 2026 The Grasslab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "grasslab/suites.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

int classify_command(const std::string& input) {
  using namespace grasslab;
  io::json j;
  try {
    std::ifstream in(input);
    if (!in) {
      std::cerr << "cannot open " << input << "\n";
      return 2;
    }
    j = io::json::parse(in);
  } catch (const std::exception& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return 2;
  }
  try {
    const Subspace w = io::subspace_from_json(j);
    const CurvatureModel m = CurvatureModel::grassmannian(w.n(), +1);
    const auto civ = is_curvature_invariant(m, w);
    if (!civ.ok) {
      std::cerr << "not curvature invariant (residual " << civ.residual << ")\n";
      return 1;
    }
    const TypeTag tag = classify(m, w);
    io::json out = io::tag_to_json(tag);
    out["k"] = tag.k();
    out["l"] = tag.l();
    std::cout << out.dump(2) << "\n";
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}

int emit_table_command(const std::string& out) {
  grasslab::io::save_pair_records(grasslab::builtin_table(), out);
  std::cout << "wrote " << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature-invariance verification suites for the oriented 2-plane "
               "Grassmannian"};
  app.require_subcommand(0, 1);

  grasslab::RunConfig config;
  long long seed_arg = static_cast<long long>(config.seed);
  app.add_option("--n", config.n, "ambient complex dimension")->check(CLI::Range(2, 64));
  app.add_option("--sign", config.sign, "+1 compact, -1 non-compact dual")
      ->check(CLI::IsMember({1, -1}));
  app.add_option("--seed", seed_arg, "64-bit seed for all randomized cases");
  app.add_option("--suite", config.suite,
                 "types|table|nonexistence|jets|obstructions|jtheta|all");
  app.add_option("--budget", config.budget, "samples per randomized search");
  app.add_option("--out", config.out, "report path (default: stdout)");
  app.add_option("--format", config.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--jobs", config.jobs, "worker threads (never changes content)")
      ->check(CLI::Range(1, 256));
  app.add_option("--table", config.table_path, "canonical table file");

  std::string classify_input;
  CLI::App* cls = app.add_subcommand("classify", "classify a subspace JSON file");
  cls->add_option("input", classify_input, "subspace JSON")->required();

  std::string emit_out = "table1.json";
  CLI::App* emit = app.add_subcommand("emit-table", "write the canonical table file");
  emit->add_option("--out", emit_out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  if (cls->parsed()) return classify_command(classify_input);
  if (emit->parsed()) return emit_table_command(emit_out);

  config.seed = static_cast<std::uint64_t>(seed_arg);
  return grasslab::run_and_report(config, std::cout);
}
