#include "mdep/measures.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mdep/prepared.hpp"

namespace mdep {
namespace {

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && out > kMax / base) return kMax;
    out *= base;
  }
  return out;
}

MeasureResult run(MeasureKind kind, const Sample& sample, const CostGuard& guard) {
  return PreparedStatistic(sample, kind, guard).observed();
}

}  // namespace

std::string_view to_string(MeasureKind kind) noexcept {
  switch (kind) {
    case MeasureKind::DcovSq: return "DCOV_SQ";
    case MeasureKind::QComplete: return "Q_COMPLETE";
    case MeasureKind::QStar: return "Q_STAR";
    case MeasureKind::RAsym: return "R_ASYM";
    case MeasureKind::SSym: return "S_SYM";
    case MeasureKind::JAsym: return "J_ASYM";
    case MeasureKind::ISym: return "I_SYM";
    case MeasureKind::JStar: return "J_STAR";
    case MeasureKind::IStar: return "I_STAR";
    case MeasureKind::U3Plugin: return "U3_PLUGIN";
  }
  return "UNKNOWN";
}

bool is_guarded(MeasureKind kind) noexcept {
  return kind == MeasureKind::QComplete || kind == MeasureKind::JAsym || kind == MeasureKind::ISym;
}

std::uint64_t required_terms(MeasureKind kind, Index n, Index d) {
  const auto un = static_cast<std::uint64_t>(n);
  const auto ud = static_cast<std::uint64_t>(d);
  switch (kind) {
    case MeasureKind::QComplete: return saturating_pow(un, 2 * ud);
    case MeasureKind::JAsym:
    case MeasureKind::ISym: return saturating_pow(un, 4);
    default: return saturating_pow(un, 2) * ud;
  }
}

MeasureResult dcov_sq(const Sample& sample) {
  MeasureResult r = run(MeasureKind::DcovSq, sample, {});
#ifndef NDEBUG
  const double alt = dcov_sq_double_centered(sample);
  if (std::abs(alt - r.value) > 1e-10 * std::max(1.0, std::abs(alt))) {
    throw std::logic_error("distance covariance forms disagree");
  }
#endif
  return r;
}

double dcov_sq_double_centered(const Sample& sample) {
  if (sample.block_count() != 2) throw Error(Errc::WrongBlockCount, "distance covariance needs exactly 2 blocks");
  return kernel::dcov_double_centered(pairwise_distances(sample.block(0)), pairwise_distances(sample.block(1)));
}

MeasureResult q_complete(const Sample& sample, const CostGuard& guard) { return run(MeasureKind::QComplete, sample, guard); }
MeasureResult q_star(const Sample& sample) { return run(MeasureKind::QStar, sample, {}); }
MeasureResult r_asym(const Sample& sample) { return run(MeasureKind::RAsym, sample, {}); }
MeasureResult s_sym(const Sample& sample) { return run(MeasureKind::SSym, sample, {}); }
MeasureResult j_asym(const Sample& sample, const CostGuard& guard) { return run(MeasureKind::JAsym, sample, guard); }
MeasureResult i_sym(const Sample& sample, const CostGuard& guard) { return run(MeasureKind::ISym, sample, guard); }
MeasureResult j_star(const Sample& sample) { return run(MeasureKind::JStar, sample, {}); }
MeasureResult i_star(const Sample& sample) { return run(MeasureKind::IStar, sample, {}); }
MeasureResult u3_plugin(const Sample& sample, const CostGuard& guard) { return run(MeasureKind::U3Plugin, sample, guard); }

kernel::U3Terms u3_terms(const Sample& sample) {
  if (sample.block_count() != 3) throw Error(Errc::WrongBlockCount, "U3 plug-in needs exactly 3 blocks");
  return kernel::u3(pairwise_distances(sample.block(0)), pairwise_distances(sample.block(1)),
                    pairwise_distances(sample.block(2)));
}

MeasureResult evaluate(MeasureKind kind, const Sample& sample, const CostGuard& guard) {
  if (kind == MeasureKind::DcovSq) return dcov_sq(sample);
  return run(kind, sample, guard);
}

}  // namespace mdep
