#include "doctest.h"
#include "helpers.hpp"
#include "mdep/simulation.hpp"

using namespace mdep;

TEST_CASE("scenario defaults") {
  const auto e1 = scenario_defaults(Example::Ex1, Hypothesis::Alt, 50);
  CHECK(e1.d == 2);
  CHECK(e1.block_dim == 5);
  CHECK(effective_rho(e1) == 0.1);
  CHECK(effective_rho(scenario_defaults(Example::Ex4, Hypothesis::Alt, 50)) == 0.4);
  CHECK(effective_rho(scenario_defaults(Example::Ex4, Hypothesis::Null, 50)) == 0.0);
  CHECK(scenario_defaults(Example::Ex5, Hypothesis::Null, 100).block_dim == 1);
  CHECK(scenario_defaults(Example::Triplet, Hypothesis::Null, 100).d == 3);
  CHECK(parse_example("ex3") == Example::Ex3);
  CHECK(parse_hypothesis("alt") == Hypothesis::Alt);
  CHECK(!parse_example("EX9").has_value());
}

TEST_CASE("compound symmetry factor") {
  const Matrix L = chol_compound_symmetry(4, 0.3);
  const Matrix sigma = L * L.transpose();
  CHECK(sigma.diagonal().isOnes(1e-14));
  CHECK(std::abs(sigma(0, 3) - 0.3) < 1e-14);
  CHECK(L.isLowerTriangular());
  CHECK_THROWS_AS(chol_compound_symmetry(4, -0.4), Error);
  CHECK_THROWS_AS(chol_compound_symmetry(3, 1.0), Error);
  CHECK_NOTHROW(chol_compound_symmetry(1, 5.0));
}

TEST_CASE("normal generator has the requested correlation") {
  Rng rng(1);
  const Sample s = gen_normal_compound(20000, 2, 3, 0.4, rng);
  CHECK(s.blocks().dims() == std::vector<Index>{3, 3});
  const Matrix c = (s.data().rowwise() - s.data().colwise().mean()).eval();
  const Matrix cov = c.transpose() * c / 19999.0;
  CHECK(std::abs(cov(0, 0) - 1.0) < 0.05);
  CHECK(std::abs(cov(0, 5) - 0.4) < 0.05);
  CHECK(std::abs(cov(1, 2) - 0.4) < 0.05);
}

TEST_CASE("log-square generator") {
  Rng rng(2);
  const Sample s = gen_lognormal_sq(20000, 2, 2, 0.0, rng);
  // E ln(Z^2) = -(gamma + ln 2) for standard normal Z.
  const double mean = s.data().col(0).mean();
  CHECK(std::abs(mean - (-1.2703628454614782)) < 0.05);
  CHECK(all_finite(s.data()));
}

TEST_CASE("sign triplet construction") {
  Rng rng(3);
  const Index q = 4;
  const Sample s = gen_sign_triplet(20000, q, rng, true);
  CHECK(s.blocks().dims() == std::vector<Index>{q, q, q});
  double abs_mean = 0.0;
  for (Index i = 0; i < s.rows(); ++i) {
    const double z = s.data()(i, 2 * q);
    const double sign = s.data()(i, 0) * s.data()(i, q) >= 0.0 ? 1.0 : -1.0;
    CHECK(z * sign > 0.0);
    abs_mean += std::abs(z);
  }
  abs_mean /= static_cast<double>(s.rows());
  CHECK(std::abs(abs_mean - 1.0 / std::sqrt(2.0)) < 0.02);

  Rng rng2(3);
  const Sample indep = gen_sign_triplet(4000, q, rng2, false);
  int agree = 0;
  for (Index i = 0; i < indep.rows(); ++i) {
    const double sign = indep.data()(i, 0) * indep.data()(i, q) >= 0.0 ? 1.0 : -1.0;
    agree += indep.data()(i, 2 * q) * sign > 0.0;
  }
  CHECK(std::abs(agree / 4000.0 - 0.5) < 0.05);
}

TEST_CASE("power study bookkeeping") {
  ScenarioConfig cfg = scenario_defaults(Example::Ex1, Hypothesis::Alt, 20);
  cfg.reps = 6;
  cfg.B = 40;
  cfg.seed = 99;
  cfg.measures = {MeasureKind::DcovSq, MeasureKind::QStar, MeasureKind::QComplete};
  const PowerStudy a = run_power_study(cfg);
  REQUIRE(a.report.cells.size() == 3);
  for (const auto& c : a.report.cells) {
    CHECK(!c.skipped);
    CHECK(c.B == 40);
    CHECK(c.reps == 6);
    CHECK(c.rejections >= 0);
    CHECK(c.rejections <= 6);
  }
  cfg.threads = 3;
  const PowerStudy b = run_power_study(cfg);
  CHECK(a.report == b.report);
  CHECK(a.p_values == b.p_values);

  cfg.reps = 1;
  const PowerStudy one = run_power_study(cfg);
  for (const auto& c : one.report.cells) CHECK((c.rate() == 0.0 || c.rate() == 1.0));
}

TEST_CASE("guarded cells are skipped up front") {
  ScenarioConfig cfg = scenario_defaults(Example::Ex3, Hypothesis::Null, 200);
  cfg.reps = 1;
  cfg.B = 5;
  cfg.measures = {MeasureKind::QComplete, MeasureKind::QStar};
  const PowerStudy s = run_power_study(cfg);
  CHECK(s.report.cells[0].skipped);
  CHECK(s.decisions[0].empty());
  CHECK(!s.report.cells[1].skipped);
  CHECK(s.report.cells[0].d == 3);
}

TEST_CASE("report rendering") {
  PowerReport r;
  PowerCell a{Example::Ex2, Hypothesis::Alt, 50, 2, "DCOV_SQ", 300, 300, 123, false};
  PowerCell b{Example::Ex2, Hypothesis::Alt, 50, 2, "Q_COMPLETE", 300, 300, 0, true};
  PowerCell c{Example::Ex2, Hypothesis::Null, 100, 2, "DCOV_SQ", 250, 300, 31, false};
  r.cells = {a, b, c};

  SUBCASE("csv round trip") {
    const std::string csv = emit_report(r, "csv");
    CHECK(csv.rfind("example,hypothesis,n,d,measure,B,reps,rejections,rate,stderr\n", 0) == 0);
    CHECK(csv.find("EX2,ALT,50,2,Q_COMPLETE,300,300,-,-,-") != std::string::npos);
    CHECK(parse_report_csv(csv) == r);
    CHECK(parse_report_csv(emit_report(PowerReport{}, ReportFormat::Csv)) == PowerReport{});
  }
  SUBCASE("markdown") {
    const std::string md = emit_report(r, ReportFormat::Markdown);
    CHECK(md.find("### EX2 ALT (empirical power)") != std::string::npos);
    CHECK(md.find("### EX2 NULL (empirical size)") != std::string::npos);
    CHECK(md.find("| 50 | 2 | 0.410 | - |") != std::string::npos);
  }
  SUBCASE("json") {
    const std::string js = emit_report(r, "json");
    CHECK(js.find("\"rate\": null") != std::string::npos);
  }
  CHECK_THROWS_AS(emit_report(r, "xml"), Error);
  CHECK_THROWS_AS(parse_report_csv("a,b\n"), Error);
  CHECK_THROWS_AS(parse_report_csv("example,hypothesis,n,d,measure,B,reps,rejections,rate,stderr\nEX1,NULL,x,2,D,1,1,0,0,0\n"),
                  Error);
}
