#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mdep/simulation.hpp"

namespace mdep {

/// Inputs shared by the `test` and `pairwise` subcommands.
struct RunConfig {
  std::filesystem::path input;
  std::string blocks;          // see parse_block_layout; empty: one block per column
  std::string measure = "DCOV_SQ";
  std::optional<int> B;        // unset: adaptive_B(n)
  double alpha = 0.05;
  std::uint64_t seed = 1;
  std::optional<bool> header;  // unset: detect from the first line
  CostGuard guard;
  unsigned threads = 1;
};

/// Process exit status for an error code: 2 usage, 3 data, 4 budget.
int exit_code(Errc code) noexcept;
nlohmann::json error_json(const Error& e);

Sample load_sample(const RunConfig& cfg);

nlohmann::json cmd_test(const RunConfig& cfg);
nlohmann::json cmd_pairwise(const RunConfig& cfg);

struct SimulateConfig {
  Example example = Example::Ex1;
  Hypothesis hypothesis = Hypothesis::Null;
  std::vector<Index> sizes{25, 50, 100};
  std::optional<Index> d;           // overrides the example default (EX5 mostly)
  std::optional<Index> block_dim;
  std::optional<double> rho;
  int reps = 100;
  double alpha = 0.1;
  std::vector<std::string> measures{"DCOV_SQ", "Q_STAR"};
  std::uint64_t seed = 1;
  std::optional<int> B;
  CostGuard guard;
  unsigned threads = 1;
};

/// Reads a JSON object whose keys mirror SimulateConfig members.
SimulateConfig parse_simulate_config(const nlohmann::json& j);

struct SimulateResult {
  PowerReport report;
  nlohmann::json summary;  // settings, skipped cells, elapsed_ms
};

SimulateResult cmd_simulate(const SimulateConfig& cfg);

/// Correlations of the factor table and permutation tests of every statistic
/// defined for three univariate blocks.
nlohmann::json cmd_demo_ff(const std::filesystem::path& path, std::optional<int> B, std::uint64_t seed,
                           const CostGuard& guard);

/// Bundled annual-factors fixture.
std::filesystem::path default_ff_path();

}  // namespace mdep
