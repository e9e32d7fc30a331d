#include "mdep/error.hpp"

namespace mdep {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NonFiniteEntry: return "NonFiniteEntry";
    case Errc::TooFewRows: return "TooFewRows";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::DuplicateIndex: return "DuplicateIndex";
    case Errc::WrongBlockCount: return "WrongBlockCount";
    case Errc::NeedAtLeastTwoBlocks: return "NeedAtLeastTwoBlocks";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::DimensionTooLarge: return "DimensionTooLarge";
    case Errc::QuadratureNotConverged: return "QuadratureNotConverged";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::ZeroVariance: return "ZeroVariance";
    case Errc::BlocksNotUnivariate: return "BlocksNotUnivariate";
    case Errc::NotPositiveDefinite: return "NotPositiveDefinite";
    case Errc::UnsupportedFormat: return "UnsupportedFormat";
    case Errc::FileNotFound: return "FileNotFound";
    case Errc::RaggedRows: return "RaggedRows";
    case Errc::NonNumericCell: return "NonNumericCell";
    case Errc::LayoutNotRecognized: return "LayoutNotRecognized";
    case Errc::YearRangeMissing: return "YearRangeMissing";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

BudgetExceededError::BudgetExceededError(std::uint64_t required, std::uint64_t allowed)
    : Error(Errc::BudgetExceeded, "statistic needs " + std::to_string(required) +
                                      " elementary distance terms, budget allows " +
                                      std::to_string(allowed)),
      required_(required),
      allowed_(allowed) {}

}  // namespace mdep
