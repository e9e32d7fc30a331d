#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mdep/inference.hpp"
#include "mdep/random.hpp"

namespace mdep {

/// EX1/EX3: compound-symmetric normal blocks; EX2/EX4: ln(Y^2) of those;
/// EX5: univariate normal components; TRIPLET: sign(X1 Y1) W construction.
enum class Example { Ex1, Ex2, Ex3, Ex4, Ex5, Triplet };
enum class Hypothesis { Null, Alt };

std::string_view to_string(Example e) noexcept;
std::string_view to_string(Hypothesis h) noexcept;
std::optional<Example> parse_example(std::string_view s);
std::optional<Hypothesis> parse_hypothesis(std::string_view s);

struct ScenarioConfig {
  Example example = Example::Ex1;
  Index n = 50;
  Index d = 2;
  Index block_dim = 5;
  /// Off-diagonal correlation. Unset: 0 under Null, 0.4 for EX2/EX4 and 0.1
  /// otherwise under Alt. Ignored by TRIPLET.
  std::optional<double> rho;
  Hypothesis hypothesis = Hypothesis::Null;
  int reps = 100;
  double alpha = 0.1;
  std::vector<Statistic> measures;
  std::uint64_t seed = 1;
  CostGuard guard;
  std::optional<int> B;   // default adaptive_B(n)
  unsigned threads = 1;   // workers across repetitions
};

/// The usual d and block width of each example (EX5 keeps the caller's d).
ScenarioConfig scenario_defaults(Example e, Hypothesis h, Index n);
double effective_rho(const ScenarioConfig& cfg);

/// Lower-triangular L with L L^T = (1 - rho) I + rho 11^T.
Matrix chol_compound_symmetry(Index dim, double rho);

Sample gen_normal_compound(Index n, Index d, Index q, double rho, Rng& rng);
/// ln(Y^2) elementwise; rows containing an exact zero are redrawn.
Sample gen_lognormal_sq(Index n, Index d, Index q, double rho, Rng& rng);
/// Three q-blocks X, Y, Z with Z_1 = s W, W exponential with mean 1/sqrt(2).
/// s = sign(X_1 Y_1) when dependent, else an independent fair sign.
Sample gen_sign_triplet(Index n, Index q, Rng& rng, bool dependent = true);

Sample generate(const ScenarioConfig& cfg, Rng& rng);

struct PowerCell {
  Example example = Example::Ex1;
  Hypothesis hypothesis = Hypothesis::Null;
  Index n = 0;
  Index d = 0;
  std::string measure;
  int B = 0;
  int reps = 0;
  int rejections = 0;
  bool skipped = false;  // refused by the cost guard

  [[nodiscard]] double rate() const noexcept;
  [[nodiscard]] double stderr_mc() const noexcept;
  friend bool operator==(const PowerCell&, const PowerCell&) = default;
};

struct PowerReport {
  std::vector<PowerCell> cells;
  friend bool operator==(const PowerReport&, const PowerReport&) = default;
};

struct PowerStudy {
  PowerReport report;
  /// decisions[m][r]: measure m rejected in repetition r (empty when skipped).
  std::vector<std::vector<std::uint8_t>> decisions;
  std::vector<std::vector<double>> p_values;
};

/// Every measure sees the same dataset and the same permutation seed within
/// a repetition. Repetition r draws data from substream_seed(rep, 0) and
/// permutations from substream_seed(rep, 1), rep = substream_seed(seed, r).
PowerStudy run_power_study(const ScenarioConfig& cfg);

enum class ReportFormat { Csv, Markdown, Json };
ReportFormat parse_report_format(std::string_view s);
std::string emit_report(const PowerReport& report, ReportFormat format);
std::string emit_report(const PowerReport& report, std::string_view format);
PowerReport parse_report_csv(std::string_view text);

}  // namespace mdep
