#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "mdep/geometry.hpp"
#include "mdep/sample.hpp"

namespace mdep {

enum class MeasureKind {
  DcovSq,     // V_n^2 of a 2-block sample
  QComplete,  // Q_n, complete V-statistic
  QStar,      // Q_n^*, cyclic-shift incomplete V-statistic
  RAsym,      // sum_c V_n^2(X_c, X_{c+})
  SSym,       // sum_c V_n^2(X_c, X_{-c})
  JAsym,      // sum_c Q_n(X_c, X_{c+})
  ISym,       // sum_c Q_n(X_c, X_{-c})
  JStar,      // sum_c Q_n^*(X_c, X_{c+})
  IStar,      // sum_c Q_n^*(X_c, X_{-c}), shifting whichever side lacks block 0
  U3Plugin,   // three-block plug-in of the w2-weighted measure
};

std::string_view to_string(MeasureKind kind) noexcept;

struct MeasureResult {
  MeasureKind kind;
  double value = 0.0;
  Index n = 0;
  Index d = 0;
  std::optional<std::string> cost_note;
};

/// Refuses statistics whose naive term count exceeds the limit.
struct CostGuard {
  std::uint64_t max_elementary_terms = 100'000'000;
};

/// Elementary distance terms needed by `kind`; saturates at UINT64_MAX.
/// Only the complete-V family (QComplete, JAsym, ISym) is refused by a guard;
/// for those the count is n^{2d} and n^4 per summand respectively.
std::uint64_t required_terms(MeasureKind kind, Index n, Index d);
bool is_guarded(MeasureKind kind) noexcept;

MeasureResult dcov_sq(const Sample& sample);
/// Debug cross-check of dcov_sq through double-centred distance matrices.
double dcov_sq_double_centered(const Sample& sample);
MeasureResult q_complete(const Sample& sample, const CostGuard& guard = {});
MeasureResult q_star(const Sample& sample);
MeasureResult r_asym(const Sample& sample);
MeasureResult s_sym(const Sample& sample);
MeasureResult j_asym(const Sample& sample, const CostGuard& guard = {});
MeasureResult i_sym(const Sample& sample, const CostGuard& guard = {});
MeasureResult j_star(const Sample& sample);
MeasureResult i_star(const Sample& sample);
MeasureResult u3_plugin(const Sample& sample, const CostGuard& guard = {});
/// The individual empirical means behind u3_plugin.
kernel::U3Terms u3_terms(const Sample& sample);

MeasureResult evaluate(MeasureKind kind, const Sample& sample, const CostGuard& guard = {});

}  // namespace mdep
