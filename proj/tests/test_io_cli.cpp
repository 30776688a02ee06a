// Copyright 2026 The Grasslab Authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "grasslab/suites.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace grasslab;

namespace {

const Complex I1(0.0, 1.0);

int run_cli(const std::string& args) {
  const std::string cmd = std::string(CI_VERIFIER_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

int run_cli_capture(const std::string& args, const std::string& stdout_path) {
  const std::string cmd = std::string(CI_VERIFIER_PATH) + " " + args + " >" +
                          stdout_path + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("subspace json round trip") {
  Rng rng(kDefaultSeed);
  const Subspace w =
      Subspace::span(3, {rng.normal_cvec(3), rng.normal_cvec(3)});
  const io::json j = io::subspace_to_json(w);
  const Subspace back = io::subspace_from_json(j);
  CHECK(same_subspace(w, back, 1e-10));
}

TEST_CASE("tag json round trip across variants") {
  Rng rng(kDefaultSeed);
  const int n = 4;
  for (const auto& [v, k, l] :
       std::vector<std::tuple<Variant, int, int>>{{Variant::CK, 2, 0},
                                                  {Variant::TRKL, 2, 1},
                                                  {Variant::CKPrime, 2, 0},
                                                  {Variant::TRKPrime, 2, 0},
                                                  {Variant::EX3, 0, 0},
                                                  {Variant::EX2, 0, 0},
                                                  {Variant::TR1, 0, 0}}) {
    const TypeTag tag = random_tag(v, n, k, l, rng);
    const TypeTag back = io::tag_from_json(io::tag_to_json(tag));
    CHECK(back.variant == tag.variant);
    CHECK(same_subspace(construct_type(back, n), construct_type(tag, n), 1e-10));
  }
}

TEST_CASE("jet json round trip validates symmetry") {
  const CurvatureModel m = CurvatureModel::grassmannian(3);
  Rng rng(kDefaultSeed);
  const TypeTag tag = random_tag(Variant::TRKL, 3, 1, 1, rng);
  const TwoJet jet = random_dense_jet(m, construct_type(tag, 3), rng);
  const TwoJet back = io::jet_from_json(io::jet_to_json(jet));
  CHECK(same_subspace(jet.w, back.w, 1e-10));
  CHECK(is_semi_parallel(jet).ok == is_semi_parallel(back).ok);

  io::json broken = io::jet_to_json(jet);
  broken["h"][0][1][0][0] = broken["h"][0][1][0][0].get<double>() + 1.0;
  CHECK_THROWS(io::jet_from_json(broken));
}

TEST_CASE("operator and model json") {
  const RMat j = jmat(2);
  const RMat back = io::operator_from_json(io::operator_to_json(j));
  CHECK((j - back).norm() == 0.0);
  const CurvatureModel m = io::model_from_json(
      io::json{{"kind", "grassmannian2"}, {"n", 5}, {"sign", -1}});
  CHECK(m.n == 5);
  CHECK(m.sign == -1);
  CHECK_THROWS(io::model_from_json(io::json{{"kind", "sphere"}, {"n", 2}, {"sign", 1}}));
}

TEST_CASE("suite reports are deterministic and jobs-independent") {
  RunConfig config;
  config.n = 3;
  config.suite = "jtheta";
  config.seed = 12345;
  const std::string a = render_report(config, run_suite(config));
  const std::string b = render_report(config, run_suite(config));
  CHECK(a == b);
  RunConfig parallel = config;
  parallel.jobs = 4;
  const std::string c = render_report(parallel, run_suite(parallel));
  // --jobs shows up in the config block but never in the cases.
  io::json ja = io::json::parse(a), jc = io::json::parse(c);
  CHECK(ja["cases"] == jc["cases"]);
}

TEST_CASE("csv rendering uses the flat schema") {
  RunConfig config;
  config.n = 2;
  config.suite = "jtheta";  // empty on n=2: header only
  config.format = "csv";
  const std::string text = render_report(config, run_suite(config));
  CHECK(text.rfind("id,verdict,max_residual,evidence", 0) == 0);
}

TEST_CASE("table csv quotes row ids and reports mutation counts") {
  RunConfig config;
  config.n = 2;
  config.suite = "table";
  config.format = "csv";
  const std::string text = render_report(config, run_suite(config));
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "row_id,n,verdict,max_residual,mutations_failed");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    CHECK(line.front() == '"');  // row ids contain commas and are quoted
    CHECK(line.find(",pass,") != std::string::npos);
    CHECK(line.substr(line.size() - 3) == ",20");
  }
  CHECK(rows == 7);  // the rows admissible at n = 2
}

TEST_CASE("cli exit codes") {
  SUBCASE("usage error is 2") {
    CHECK(run_cli("--suite nonsense --n 3") == 2);
    CHECK(run_cli("--n 1") == 2);
  }
  SUBCASE("passing suite is 0") {
    CHECK(run_cli("--suite jtheta --n 4 --seed 7") == 0);
  }
  SUBCASE("classify round trip through a file") {
    const std::string dir = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp");
    const std::string path = dir + "/grasslab_subspace.json";
    const std::string outp = dir + "/grasslab_classify_out.json";
    {
      const Subspace w = Subspace::span(
          3, {unit_vec(3, 0), I1 * unit_vec(3, 0)});
      std::ofstream out(path);
      out << io::subspace_to_json(w).dump();
    }
    CHECK(run_cli_capture("classify " + path, outp) == 0);
    {
      const io::json tag = io::json::parse(slurp(outp));
      CHECK(tag["variant"] == "c_k");
      CHECK(tag["k"] == 1);
    }
    {
      // An ex2 payload classifies back to its own variant.
      Rng rng(kDefaultSeed);
      const Subspace w = construct_type(random_tag(Variant::EX2, 3, 0, 0, rng), 3);
      std::ofstream out(path);
      out << io::subspace_to_json(w).dump();
    }
    CHECK(run_cli_capture("classify " + path, outp) == 0);
    CHECK(io::json::parse(slurp(outp))["variant"] == "ex2");
    {
      // Not curvature invariant: exit 1.
      const Subspace w = Subspace::span(
          3, {unit_vec(3, 0), (unit_vec(3, 1) + I1 * unit_vec(3, 0)) / std::sqrt(2.0)});
      std::ofstream out(path);
      out << io::subspace_to_json(w).dump();
    }
    CHECK(run_cli("classify " + path) == 1);
    {
      std::ofstream out(path);
      out << "{ not json";
    }
    CHECK(run_cli("classify " + path) == 2);
  }
}

TEST_CASE("cli report files are byte-identical across runs") {
  const std::string dir = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp");
  const std::string p1 = dir + "/grasslab_rep1.json";
  const std::string p2 = dir + "/grasslab_rep2.json";
  const std::string args = "--suite table --n 3 --seed 31 --out ";
  REQUIRE(run_cli(args + p1) == 0);
  REQUIRE(run_cli(args + p2) == 0);
  const std::string a = slurp(p1), b = slurp(p2);
  CHECK(!a.empty());
  CHECK(a == b);
}
