#include "mdep/rank.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace mdep {
namespace {

void check_pair(const Vector& x, const Vector& y) {
  if (x.size() != y.size()) {
    throw Error(Errc::LengthMismatch, std::to_string(x.size()) + " vs " + std::to_string(y.size()));
  }
  if (x.size() < 2) throw Error(Errc::TooFewRows, "need at least 2 observations");
}

// Average ranks (1-based), centred at (n + 1) / 2.
Vector centred_ranks(const Vector& x) {
  const Index n = x.size();
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return x[a] < x[b]; });
  Vector r(n);
  Index i = 0;
  while (i < n) {
    Index j = i + 1;
    while (j < n && x[order[j]] == x[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j + 1);
    for (Index k = i; k < j; ++k) r[order[k]] = avg;
    i = j;
  }
  r.array() -= 0.5 * static_cast<double>(n + 1);
  return r;
}

int sgn(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

double kendall_tau(const Vector& x, const Vector& y) {
  check_pair(x, y);
  const Index n = x.size();
  long long s = 0;
  for (Index i = 0; i < n; ++i) {
    const double xi = x[i], yi = y[i];
    int row = 0;
    for (Index j = i + 1; j < n; ++j) row += sgn(xi - x[j]) * sgn(yi - y[j]);
    s += row;
  }
  const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  return static_cast<double>(s) / pairs;
}

double spearman_rho(const Vector& x, const Vector& y) {
  check_pair(x, y);
  const Vector rx = centred_ranks(x);
  const Vector ry = centred_ranks(y);
  const double nx = rx.norm(), ny = ry.norm();
  if (nx == 0.0 || ny == 0.0) throw Error(Errc::ZeroVariance, "all values equal");
  return std::clamp(rx.dot(ry) / (nx * ny), -1.0, 1.0);
}

double hl_stat(std::span<const Vector> columns, RankStatKind kind) {
  if (columns.size() < 2) throw Error(Errc::NeedAtLeastTwoBlocks, "rank statistic over one column");
  double best = 0.0;
  for (std::size_t a = 0; a < columns.size(); ++a) {
    for (std::size_t b = a + 1; b < columns.size(); ++b) {
      const double v = kind == RankStatKind::HlTau ? kendall_tau(columns[a], columns[b])
                                                   : spearman_rho(columns[a], columns[b]);
      best = std::max(best, std::abs(v));
    }
  }
  return best;
}

double hl_stat(const Sample& sample, RankStatKind kind) {
  const Index d = sample.block_count();
  for (Index j = 0; j < d; ++j) {
    if (sample.blocks().dim(j) != 1) {
      throw Error(Errc::BlocksNotUnivariate, "block " + std::to_string(j) + " has width " +
                                                 std::to_string(sample.blocks().dim(j)));
    }
  }
  std::vector<Vector> cols;
  cols.reserve(static_cast<std::size_t>(d));
  for (Index j = 0; j < d; ++j) cols.push_back(sample.block(j).col(0));
  return hl_stat(cols, kind);
}

}  // namespace mdep
