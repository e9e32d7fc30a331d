#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mdep/geometry.hpp"
#include "mdep/measures.hpp"
#include "mdep/rank.hpp"

namespace mdep {

/// Anything a permutation test can calibrate.
using Statistic = std::variant<MeasureKind, RankStatKind>;

std::string to_string(const Statistic& stat);
/// Accepts short names (dcov, q, qstar, r, s, j, i, jstar, istar, u3, hl_tau,
/// hl_rho) and the enum spellings (DCOV_SQ, Q_COMPLETE, ...), case-insensitive.
std::optional<Statistic> parse_statistic(std::string_view name);

/// A statistic bound to one sample, evaluated under arbitrary per-block row maps.
///
/// Construction validates the block layout and the cost guard and caches the
/// per-block distance matrices. evaluate(maps) then equals the statistic of
/// remap_rows(sample, maps) without rebuilding distances. Const member
/// functions are safe to call concurrently.
class PreparedStatistic {
 public:
  PreparedStatistic(const Sample& sample, Statistic stat, const CostGuard& guard = {});

  [[nodiscard]] Index n() const noexcept { return geometry_.n(); }
  [[nodiscard]] Index d() const noexcept { return geometry_.d(); }
  [[nodiscard]] const Statistic& statistic() const noexcept { return stat_; }

  /// Reported value under maps (after the tiny-negative clamp where it applies).
  [[nodiscard]] double evaluate(const RowMaps& maps) const;
  /// Value plus note, on the unpermuted sample. Measures only.
  [[nodiscard]] MeasureResult observed() const;
  /// Unclamped value and term scale.
  [[nodiscard]] kernel::Evaluated raw(const RowMaps& maps) const;

 private:
  struct Finished {
    double value;
    std::optional<std::string> note;
  };
  [[nodiscard]] Finished finish(const kernel::Evaluated& e) const;
  [[nodiscard]] kernel::Evaluated measure(MeasureKind kind, const RowMaps& maps) const;

  BlockGeometry geometry_;
  Statistic stat_;
  std::vector<Vector> columns_;  // univariate blocks, for rank statistics
  std::vector<std::optional<double>> product_cache_;  // per summand, Q family only
};

}  // namespace mdep
