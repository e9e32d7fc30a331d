#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mdep/prepared.hpp"
#include "mdep/random.hpp"

namespace mdep {

struct PermutationPlan {
  int B = 0;
  std::uint64_t seed = 0;
  bool parallel = false;
  unsigned threads = 0;  // parallel only; 0 means hardware concurrency
};

struct PermutationTestOutcome {
  Statistic statistic = MeasureKind::DcovSq;
  double observed = 0.0;
  std::vector<double> replicates;
  double p_value = 1.0;  // #{replicate >= observed} / B
  int B = 0;
  std::uint64_t seed = 0;
  Index n = 0;
  Index d = 0;
  std::optional<std::string> note;
};

/// floor(200 + 5000 / n).
int adaptive_B(Index n);

/// Row maps of one null resample: block 0 stays, every other block gets an
/// independent uniform permutation drawn from `seed`.
RowMaps draw_row_maps(Index n, Index d, std::uint64_t seed);
Sample permute_blocks(const Sample& sample, std::uint64_t seed);

/// Replicate b uses draw_row_maps(n, d, substream_seed(plan.seed, b)).
PermutationTestOutcome permutation_test(const PreparedStatistic& stat, const PermutationPlan& plan);
PermutationTestOutcome permutation_test(const Sample& sample, Statistic stat, const PermutationPlan& plan,
                                        const CostGuard& guard = {});

struct PairOutcome {
  Index first = 0;
  Index second = 0;
  PermutationTestOutcome test;
  bool rejected = false;  // p < threshold
};

struct BonferroniReport {
  std::vector<PairOutcome> pairs;
  double alpha = 0.0;
  double threshold = 0.0;  // alpha / C(d, 2)
  bool reject_overall = false;
};

/// Distance-covariance permutation test on every block pair; pair i (in
/// lexicographic order) uses seed substream_seed(plan.seed, i).
BonferroniReport pairwise_bonferroni(const Sample& sample, double alpha, const PermutationPlan& plan);

}  // namespace mdep
