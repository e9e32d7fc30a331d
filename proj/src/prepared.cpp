#include "mdep/prepared.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace mdep {
namespace {

struct NamedStatistic {
  std::string_view short_name;
  std::string_view long_name;
  Statistic stat;
};

const std::array<NamedStatistic, 12> kNames = {{
    {"dcov", "DCOV_SQ", MeasureKind::DcovSq},
    {"q", "Q_COMPLETE", MeasureKind::QComplete},
    {"qstar", "Q_STAR", MeasureKind::QStar},
    {"r", "R_ASYM", MeasureKind::RAsym},
    {"s", "S_SYM", MeasureKind::SSym},
    {"j", "J_ASYM", MeasureKind::JAsym},
    {"i", "I_SYM", MeasureKind::ISym},
    {"jstar", "J_STAR", MeasureKind::JStar},
    {"istar", "I_STAR", MeasureKind::IStar},
    {"u3", "U3_PLUGIN", MeasureKind::U3Plugin},
    {"hl_tau", "HL_TAU", RankStatKind::HlTau},
    {"hl_rho", "HL_RHO", RankStatKind::HlRho},
}};

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

bool clampable(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::QStar:
    case MeasureKind::JStar:
    case MeasureKind::IStar:
    case MeasureKind::U3Plugin: return false;
    default: return true;
  }
}

// Running sums of gathered squared-distance matrices: the squared distances of
// concatenated blocks.
struct Partials {
  std::vector<Matrix> prefix;  // prefix[c] = sum_{j <= c}
  std::vector<Matrix> suffix;  // suffix[c] = sum_{j >= c}

  explicit Partials(const std::vector<Matrix>& g, bool need_prefix) {
    const std::size_t d = g.size();
    suffix.resize(d);
    suffix[d - 1] = g[d - 1];
    for (std::size_t c = d - 1; c-- > 0;) suffix[c] = g[c] + suffix[c + 1];
    if (need_prefix) {
      prefix.resize(d);
      prefix[0] = g[0];
      for (std::size_t c = 1; c < d; ++c) prefix[c] = prefix[c - 1] + g[c];
    }
  }

  [[nodiscard]] Matrix rest(std::size_t c) const {
    const std::size_t d = suffix.size();
    if (c == 0) return suffix[1];
    if (c + 1 == d) return prefix[d - 2];
    return prefix[c - 1] + suffix[c + 1];
  }
};

bool summand_cacheable(MeasureKind kind, Index c, Index d) {
  if (kind == MeasureKind::QComplete) return true;
  if (kind == MeasureKind::JAsym) return c == d - 2;
  if (kind == MeasureKind::ISym) return d == 2;
  return false;
}

}  // namespace

std::string to_string(const Statistic& stat) {
  for (const auto& e : kNames) {
    if (e.stat == stat) return std::string(e.long_name);
  }
  return "UNKNOWN";
}

std::optional<Statistic> parse_statistic(std::string_view name) {
  for (const auto& e : kNames) {
    if (iequals(name, e.short_name) || iequals(name, e.long_name)) return e.stat;
  }
  return std::nullopt;
}

PreparedStatistic::PreparedStatistic(const Sample& sample, Statistic stat, const CostGuard& guard)
    : geometry_(sample), stat_(stat) {
  const Index d = sample.block_count();
  const Index n = sample.rows();

  if (std::holds_alternative<RankStatKind>(stat_)) {
    if (d < 2) throw Error(Errc::NeedAtLeastTwoBlocks, "rank statistic needs d >= 2");
    for (Index j = 0; j < d; ++j) {
      if (sample.blocks().dim(j) != 1) {
        throw Error(Errc::BlocksNotUnivariate, "block " + std::to_string(j) + " has width " +
                                                   std::to_string(sample.blocks().dim(j)));
      }
      columns_.push_back(sample.block(j).col(0));
    }
    return;
  }

  const MeasureKind kind = std::get<MeasureKind>(stat_);
  switch (kind) {
    case MeasureKind::DcovSq:
      if (d != 2) throw Error(Errc::WrongBlockCount, "distance covariance needs exactly 2 blocks, got " + std::to_string(d));
      break;
    case MeasureKind::U3Plugin:
      if (d != 3) throw Error(Errc::WrongBlockCount, "U3 plug-in needs exactly 3 blocks, got " + std::to_string(d));
      break;
    case MeasureKind::QComplete:
    case MeasureKind::QStar:
      break;
    default:
      if (d < 2) throw Error(Errc::NeedAtLeastTwoBlocks, std::string(to_string(kind)) + " needs d >= 2");
  }
  if (is_guarded(kind)) {
    const std::uint64_t need = required_terms(kind, n, d);
    if (need > guard.max_elementary_terms) throw BudgetExceededError(need, guard.max_elementary_terms);
  }

  if (kind == MeasureKind::QComplete || kind == MeasureKind::JAsym || kind == MeasureKind::ISym) {
    std::vector<Matrix> g;
    for (Index j = 0; j < d; ++j) g.push_back(geometry_.squared(j));
    if (kind == MeasureKind::QComplete) {
      product_cache_.push_back(kernel::q_product_term(g));
      return;
    }
    const Index summands = kind == MeasureKind::JAsym ? d - 1 : d;
    product_cache_.resize(static_cast<std::size_t>(summands));
    for (Index c = 0; c < summands; ++c) {
      if (!summand_cacheable(kind, c, d)) continue;
      // Both groups are single blocks here.
      const Index other = kind == MeasureKind::JAsym ? c + 1 : 1 - c;
      const std::vector<Matrix> pair = {g[static_cast<std::size_t>(c)], g[static_cast<std::size_t>(other)]};
      product_cache_[static_cast<std::size_t>(c)] = kernel::q_product_term(pair);
    }
  }
}

kernel::Evaluated PreparedStatistic::measure(MeasureKind kind, const RowMaps& maps) const {
  const Index d = this->d();
  auto squared = [&] {
    std::vector<Matrix> g;
    g.reserve(static_cast<std::size_t>(d));
    for (Index j = 0; j < d; ++j) g.push_back(reindex(geometry_.squared(j), maps[static_cast<std::size_t>(j)]));
    return g;
  };
  auto dist = [&](Index j) { return reindex(geometry_.distances(j), maps[static_cast<std::size_t>(j)]); };

  switch (kind) {
    case MeasureKind::DcovSq: return kernel::dcov(dist(0), dist(1));
    case MeasureKind::QComplete: return kernel::q_complete(squared(), product_cache_.front());
    case MeasureKind::QStar: return kernel::q_star(squared());
    case MeasureKind::U3Plugin: {
      const kernel::U3Terms t = kernel::u3(dist(0), dist(1), dist(2));
      const double scale = std::max({t.triple_same, 2.0 * t.triple_split, t.triple_prod, t.pair_same[0],
                                     t.pair_same[1], t.pair_same[2]});
      return {t.total(), scale};
    }
    default: break;
  }

  const bool asym = kind == MeasureKind::RAsym || kind == MeasureKind::JAsym || kind == MeasureKind::JStar;
  const std::vector<Matrix> g = squared();
  const Partials partial(g, !asym);
  const Index summands = asym ? d - 1 : d;
  kernel::Evaluated total;
  for (Index c = 0; c < summands; ++c) {
    const auto cs = static_cast<std::size_t>(c);
    const Matrix other = asym ? partial.suffix[cs + 1] : partial.rest(cs);
    kernel::Evaluated e;
    switch (kind) {
      case MeasureKind::RAsym:
      case MeasureKind::SSym: e = kernel::dcov(dist(c), other.cwiseSqrt()); break;
      case MeasureKind::JAsym:
      case MeasureKind::ISym: {
        const std::vector<Matrix> pair = {g[cs], other};
        e = kernel::q_complete(pair, product_cache_[cs]);
        break;
      }
      default: {
        // The proxy shifts the second slot; keep block 0 in the unshifted one.
        const std::vector<Matrix> pair =
            asym || c == 0 ? std::vector<Matrix>{g[cs], other} : std::vector<Matrix>{other, g[cs]};
        e = kernel::q_star(pair);
      }
    }
    total.value += e.value;
    total.scale += e.scale;
  }
  return total;
}

kernel::Evaluated PreparedStatistic::raw(const RowMaps& maps) const {
  const Index d = this->d();
  if (static_cast<Index>(maps.size()) != d) throw Error(Errc::DimensionMismatch, "one row map per block required");
  for (const auto& m : maps) {
    if (static_cast<Index>(m.size()) != n()) throw Error(Errc::DimensionMismatch, "row map length");
  }
  if (const auto* rank = std::get_if<RankStatKind>(&stat_)) {
    std::vector<Vector> cols(columns_.size());
    for (std::size_t j = 0; j < columns_.size(); ++j) {
      const auto& map = maps[j];
      if (is_identity(map)) {
        cols[j] = columns_[j];
        continue;
      }
      cols[j].resize(n());
      for (Index k = 0; k < n(); ++k) cols[j][k] = columns_[j][map[static_cast<std::size_t>(k)]];
    }
    return {hl_stat(cols, *rank), 1.0};
  }
  return measure(std::get<MeasureKind>(stat_), maps);
}

PreparedStatistic::Finished PreparedStatistic::finish(const kernel::Evaluated& e) const {
  if (e.value >= 0.0) return {e.value, std::nullopt};
  const auto* kind = std::get_if<MeasureKind>(&stat_);
  if (kind == nullptr) return {e.value, std::nullopt};
  const double eps = 1e-9 * e.scale;
  if (clampable(*kind)) {
    if (e.value >= -eps) return {0.0, "clamped rounding-level negative value " + std::to_string(e.value) + " to 0"};
    return {e.value, "negative value beyond rounding tolerance"};
  }
  return {e.value, "raw negative value reported (this statistic is not guaranteed nonnegative)"};
}

double PreparedStatistic::evaluate(const RowMaps& maps) const { return finish(raw(maps)).value; }

MeasureResult PreparedStatistic::observed() const {
  const auto* kind = std::get_if<MeasureKind>(&stat_);
  if (kind == nullptr) throw Error(Errc::InvalidArgument, "rank statistics have no MeasureResult");
  const Finished f = finish(raw(identity_maps(n(), d())));
  return {*kind, f.value, n(), d(), f.note};
}

}  // namespace mdep
