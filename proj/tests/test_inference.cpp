#include "doctest.h"
#include "helpers.hpp"
#include "mdep/inference.hpp"

using namespace mdep;

TEST_CASE("adaptive replicate count") {
  CHECK(adaptive_B(500) == 210);
  CHECK(adaptive_B(52) == 296);
  CHECK(adaptive_B(25) == 400);
  CHECK(adaptive_B(100) == 250);
  CHECK_THROWS_AS(adaptive_B(0), Error);
}

TEST_CASE("row maps keep block 0 and permute the rest") {
  const RowMaps maps = draw_row_maps(12, 4, 77);
  CHECK(is_identity(maps[0]));
  for (std::size_t j = 1; j < 4; ++j) {
    RowMap sorted = maps[j];
    std::sort(sorted.begin(), sorted.end());
    CHECK(is_identity(sorted));
  }
  CHECK(maps == draw_row_maps(12, 4, 77));
  CHECK(maps != draw_row_maps(12, 4, 78));
  CHECK(maps[1] != maps[2]);
}

TEST_CASE("p-values live on the m/B grid") {
  std::mt19937_64 rng(5);
  const Sample s = testing::random_sample(rng, 30, {1, 1, 1});
  PermutationPlan plan{57, 9};
  const auto out = permutation_test(s, MeasureKind::QStar, plan);
  const double m = out.p_value * 57.0;
  CHECK(std::abs(m - std::round(m)) < 1e-9);
  CHECK(out.replicates.size() == 57);
  const auto hits = std::count_if(out.replicates.begin(), out.replicates.end(), [&](double r) { return r >= out.observed; });
  CHECK(out.p_value == static_cast<double>(hits) / 57.0);
}

TEST_CASE("constant columns give statistic 0 and p-value 1") {
  Matrix m(10, 2);
  m.col(0).setConstant(3.0);
  m.col(1).setConstant(-1.0);
  const Sample s = make_sample(m, BlockSpec({1, 1}));
  const auto out = permutation_test(s, MeasureKind::DcovSq, {100, 1});
  CHECK(out.observed == 0.0);
  CHECK(out.p_value == 1.0);
}

TEST_CASE("perfect dependence is detected") {
  Matrix m(40, 2);
  for (Index i = 0; i < 40; ++i) m(i, 0) = m(i, 1) = static_cast<double>(i);
  const auto out = permutation_test(make_sample(m, BlockSpec({1, 1})), MeasureKind::DcovSq, {200, 3});
  CHECK(out.p_value < 0.02);
}

TEST_CASE("property: determinism across thread counts") {
  std::mt19937_64 rng(6);
  const Sample s = testing::random_sample(rng, 20, {2, 1, 1});
  for (MeasureKind stat : {MeasureKind::SSym, MeasureKind::IStar, MeasureKind::JAsym}) {
    const auto serial = permutation_test(s, stat, {64, 123});
    for (unsigned t : {2u, 3u, 8u}) {
      PermutationPlan plan{64, 123, true, t};
      const auto par = permutation_test(s, stat, plan);
      CHECK(par.replicates == serial.replicates);
      CHECK(par.p_value == serial.p_value);
    }
  }
  const Sample u = testing::random_sample(rng, 20, {1, 1, 1});
  const auto serial = permutation_test(u, RankStatKind::HlRho, {50, 4});
  CHECK(permutation_test(u, RankStatKind::HlRho, {50, 4, true, 5}).replicates == serial.replicates);
}

TEST_CASE("permutation test argument checks") {
  std::mt19937_64 rng(7);
  const Sample s = testing::random_sample(rng, 8, {1, 1});
  CHECK_THROWS_AS(permutation_test(s, MeasureKind::DcovSq, {0, 1}), Error);
  CHECK_THROWS_AS(permutation_test(testing::random_sample(rng, 8, {2}), MeasureKind::QStar, {10, 1}), Error);
  CHECK_THROWS_AS(permutation_test(testing::random_sample(rng, 200, {1, 1}), MeasureKind::QComplete, {10, 1}),
                  BudgetExceededError);
}

TEST_CASE("pairwise Bonferroni") {
  std::mt19937_64 rng(8);
  SUBCASE("d = 2 is a single pair at level alpha") {
    const Sample s = testing::random_sample(rng, 25, {1, 2});
    const auto r = pairwise_bonferroni(s, 0.05, {100, 2});
    REQUIRE(r.pairs.size() == 1);
    CHECK(r.threshold == 0.05);
    CHECK(r.pairs[0].rejected == (r.pairs[0].test.p_value < 0.05));
  }
  SUBCASE("d = 4 gives six pairs at alpha / 6") {
    const Sample s = testing::random_sample(rng, 25, {1, 1, 1, 1});
    const auto r = pairwise_bonferroni(s, 0.06, {50, 2});
    CHECK(r.pairs.size() == 6);
    CHECK(r.threshold == doctest::Approx(0.01));
    CHECK(r.pairs[5].first == 2);
    CHECK(r.pairs[5].second == 3);
    CHECK(r.pairs[1].test.seed == substream_seed(2, 1));
  }
  CHECK_THROWS_AS(pairwise_bonferroni(testing::random_sample(rng, 5, {1}), 0.05, {10, 1}), Error);
}

TEST_CASE("permute_blocks keeps marginals") {
  std::mt19937_64 rng(10);
  const Sample s = testing::random_sample(rng, 9, {1, 1});
  const Sample p = permute_blocks(s, 5);
  CHECK(p.block(0) == s.block(0));
  std::vector<double> a(s.data().col(1).begin(), s.data().col(1).end());
  std::vector<double> b(p.data().col(1).begin(), p.data().col(1).end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  CHECK(a == b);
}
