#include "mdep/inference.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <thread>

namespace mdep {

int adaptive_B(Index n) {
  if (n < 1) throw Error(Errc::InvalidArgument, "sample size must be positive");
  return static_cast<int>(200 + 5000 / n);
}

RowMaps draw_row_maps(Index n, Index d, std::uint64_t seed) {
  RowMaps maps = identity_maps(n, d);
  Rng rng(seed);
  for (std::size_t j = 1; j < maps.size(); ++j) shuffle(maps[j], rng);
  return maps;
}

Sample permute_blocks(const Sample& sample, std::uint64_t seed) {
  if (sample.block_count() < 2) return sample;
  const RowMaps maps = draw_row_maps(sample.rows(), sample.block_count(), seed);
  return remap_rows(sample, maps);
}

PermutationTestOutcome permutation_test(const PreparedStatistic& stat, const PermutationPlan& plan) {
  if (plan.B < 1) throw Error(Errc::InvalidArgument, "B must be at least 1");
  if (stat.d() < 2) throw Error(Errc::NeedAtLeastTwoBlocks, "permutation test needs d >= 2");

  PermutationTestOutcome out;
  out.statistic = stat.statistic();
  out.B = plan.B;
  out.seed = plan.seed;
  out.n = stat.n();
  out.d = stat.d();
  if (std::holds_alternative<MeasureKind>(out.statistic)) {
    const MeasureResult obs = stat.observed();
    out.observed = obs.value;
    out.note = obs.cost_note;
  } else {
    out.observed = stat.evaluate(identity_maps(stat.n(), stat.d()));
  }

  out.replicates.assign(static_cast<std::size_t>(plan.B), 0.0);
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t b = first; b < out.replicates.size(); b += stride) {
      out.replicates[b] = stat.evaluate(draw_row_maps(stat.n(), stat.d(), substream_seed(plan.seed, b)));
    }
  };
  unsigned threads = 1;
  if (plan.parallel) {
    threads = plan.threads != 0 ? plan.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(plan.B));
  }
  if (threads <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          work(t, threads);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  const auto hits = std::count_if(out.replicates.begin(), out.replicates.end(),
                                  [&](double r) { return r >= out.observed; });
  out.p_value = static_cast<double>(hits) / static_cast<double>(plan.B);
  return out;
}

PermutationTestOutcome permutation_test(const Sample& sample, Statistic stat, const PermutationPlan& plan,
                                        const CostGuard& guard) {
  return permutation_test(PreparedStatistic(sample, stat, guard), plan);
}

BonferroniReport pairwise_bonferroni(const Sample& sample, double alpha, const PermutationPlan& plan) {
  const Index d = sample.block_count();
  if (d < 2) throw Error(Errc::NeedAtLeastTwoBlocks, "pairwise tests need d >= 2");
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(Errc::InvalidArgument, "alpha must lie in (0, 1)");
  BonferroniReport report;
  report.alpha = alpha;
  report.threshold = alpha / (0.5 * static_cast<double>(d) * static_cast<double>(d - 1));
  std::uint64_t index = 0;
  for (Index a = 0; a < d; ++a) {
    for (Index b = a + 1; b < d; ++b, ++index) {
      PermutationPlan pair_plan = plan;
      pair_plan.seed = substream_seed(plan.seed, index);
      const Sample pair = concat_blocks(sample, {std::vector<Index>{a}, std::vector<Index>{b}});
      PairOutcome po{a, b, permutation_test(pair, MeasureKind::DcovSq, pair_plan), false};
      po.rejected = po.test.p_value < report.threshold;
      report.reject_overall = report.reject_overall || po.rejected;
      report.pairs.push_back(std::move(po));
    }
  }
  return report;
}

}  // namespace mdep
