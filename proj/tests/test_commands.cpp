#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "helpers.hpp"
#include "mdep/commands.hpp"
#include "mdep/io.hpp"

using namespace mdep;
using nlohmann::json;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / ("mdep_test_" + name);
  std::ofstream(p, std::ios::binary) << text;
  return p;
}

std::filesystem::path sample_file(const std::string& name, const Sample& s, bool header) {
  Table t{s.data(), {}};
  if (header) {
    for (Index j = 0; j < s.cols(); ++j) t.header.push_back("v" + std::to_string(j));
  }
  return write_temp(name, write_csv(t));
}

}  // namespace

TEST_CASE("cmd_test on constant columns") {
  RunConfig cfg;
  cfg.input = write_temp("const.csv", "a,b\n1,5\n1,5\n1,5\n1,5\n");
  cfg.measure = "DCOV_SQ";
  const json j = cmd_test(cfg);
  CHECK(j["statistic"] == 0.0);
  CHECK(j["p_value"] == 1.0);
  CHECK(j["B"] == adaptive_B(4));
  CHECK(j["B_adaptive"] == true);
  CHECK(j["block_dims"] == json::array({1, 1}));
  for (const char* key : {"measure", "statistic", "p_value", "B", "n", "d", "block_dims", "seed", "alpha", "elapsed_ms"}) {
    CHECK(j.contains(key));
  }
}

TEST_CASE("cmd_test output is stable apart from elapsed_ms") {
  std::mt19937_64 rng(3);
  RunConfig cfg;
  cfg.input = sample_file("stable.csv", testing::random_sample(rng, 30, {2, 1}), true);
  cfg.blocks = "2,1";
  cfg.measure = "qstar";
  cfg.B = 77;
  cfg.seed = 5;
  json a = cmd_test(cfg), b = cmd_test(cfg);
  a.erase("elapsed_ms");
  b.erase("elapsed_ms");
  CHECK(a == b);
  CHECK(json::parse(a.dump()) == a);
  CHECK(a["measure"] == "Q_STAR");
  CHECK(a["B"] == 77);
  CHECK(a["B_adaptive"] == false);
  const double m = a["p_value"].get<double>() * 77.0;
  CHECK(std::abs(m - std::round(m)) < 1e-9);
}

TEST_CASE("cmd_test errors map to exit codes") {
  RunConfig cfg;
  cfg.input = write_temp("small.csv", "1,2\n3,4\n5,7\n");
  cfg.measure = "no_such";
  try {
    cmd_test(cfg);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(exit_code(e.code()) == 2);
    CHECK(error_json(e)["error"] == "InvalidArgument");
  }
  cfg.measure = "dcov";
  cfg.input = "/nonexistent.csv";
  try {
    cmd_test(cfg);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(exit_code(e.code()) == 3);
  }
  std::mt19937_64 rng(4);
  cfg.input = sample_file("big.csv", testing::random_sample(rng, 200, {1, 1}), false);
  cfg.measure = "Q_COMPLETE";
  try {
    cmd_test(cfg);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(exit_code(e.code()) == 4);
    CHECK(error_json(e)["required_terms"] == 1'600'000'000ULL);
  }
  CHECK(exit_code(Errc::RaggedRows) == 3);
}

TEST_CASE("header detection and explicit override") {
  RunConfig cfg;
  cfg.input = write_temp("nohdr.csv", "1,2\n2,1\n3,5\n4,4\n");
  CHECK(load_sample(cfg).rows() == 4);
  cfg.header = true;
  CHECK(load_sample(cfg).rows() == 3);
}

TEST_CASE("cmd_pairwise") {
  std::mt19937_64 rng(5);
  RunConfig cfg;
  cfg.input = sample_file("pairs.csv", testing::random_sample(rng, 30, {1, 1, 1}), false);
  cfg.B = 50;
  cfg.alpha = 0.09;
  const json j = cmd_pairwise(cfg);
  CHECK(j["pairs"].size() == 3);
  CHECK(j["threshold"].get<double>() == doctest::Approx(0.03));
  CHECK(j["d"] == 3);
  cfg.blocks = "cols=1;2";
  const json two = cmd_pairwise(cfg);
  CHECK(two["pairs"].size() == 1);
  CHECK(two["threshold"] == 0.09);
}

TEST_CASE("cmd_simulate") {
  SimulateConfig cfg;
  cfg.example = Example::Ex3;
  cfg.sizes = {20, 200};
  cfg.reps = 1;
  cfg.B = 10;
  cfg.measures = {"Q_COMPLETE", "Q_STAR"};
  const auto r = cmd_simulate(cfg);
  REQUIRE(r.report.cells.size() == 4);
  CHECK(!r.report.cells[0].skipped);
  CHECK(r.report.cells[2].skipped);
  CHECK(r.summary["skipped"].size() == 1);
  CHECK(r.summary["skipped"][0]["n"] == 200);
  CHECK(r.summary["skipped"][0]["error"] == "BudgetExceeded");
  for (const auto& c : r.report.cells) {
    if (!c.skipped) CHECK((c.rate() == 0.0 || c.rate() == 1.0));
  }
  CHECK(parse_report_csv(emit_report(r.report, "csv")) == r.report);

  const SimulateConfig parsed = parse_simulate_config(json::parse(
      R"({"example":"EX5","hypothesis":"ALT","sizes":[100],"d":25,"reps":7,"measures":["R_ASYM"],"B":33,"budget":5})"));
  CHECK(parsed.example == Example::Ex5);
  CHECK(parsed.hypothesis == Hypothesis::Alt);
  CHECK(parsed.d == 25);
  CHECK(parsed.B == 33);
  CHECK(parsed.guard.max_elementary_terms == 5);
  CHECK_THROWS_AS(parse_simulate_config(json::parse(R"({"example":"EX7"})")), Error);
  CHECK_THROWS_AS(parse_simulate_config(json::parse(R"({"reps":"many"})")), Error);
}

TEST_CASE("cmd_demo_ff") {
  const json j = cmd_demo_ff(default_ff_path(), 20, 1, CostGuard{});
  CHECK(j["n"] == 52);
  CHECK(j["B"] == 20);
  CHECK(j["correlations"].size() == 3);
  CHECK(j["tests"][0]["measure"] == "Q_COMPLETE");
  CHECK(j["tests"][0]["p_value"].is_null());
  CHECK(j["tests"][1]["p_value"].is_number());
}
