#pragma once

#include <span>

#include "mdep/sample.hpp"

namespace mdep {

enum class RankStatKind { HlTau, HlRho };

/// Kendall tau-a: (concordant - discordant) / C(n, 2). Ties count zero.
double kendall_tau(const Vector& x, const Vector& y);

/// Pearson correlation of average ranks.
double spearman_rho(const Vector& x, const Vector& y);

/// Max of |tau| or |rho| over all pairs of columns.
double hl_stat(std::span<const Vector> columns, RankStatKind kind);
/// Same, with every block of the sample required to be one column wide.
double hl_stat(const Sample& sample, RankStatKind kind);

}  // namespace mdep
