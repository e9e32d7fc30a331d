#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mdep {

enum class Errc {
  DimensionMismatch,
  NonFiniteEntry,
  TooFewRows,
  IndexOutOfRange,
  DuplicateIndex,
  WrongBlockCount,
  NeedAtLeastTwoBlocks,
  BudgetExceeded,
  DimensionTooLarge,
  QuadratureNotConverged,
  LengthMismatch,
  ZeroVariance,
  BlocksNotUnivariate,
  NotPositiveDefinite,
  UnsupportedFormat,
  FileNotFound,
  RaggedRows,
  NonNumericCell,
  LayoutNotRecognized,
  YearRangeMissing,
  InvalidArgument,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure in the library is reported as an Error carrying an Errc.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);
  [[nodiscard]] Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

class BudgetExceededError : public Error {
 public:
  BudgetExceededError(std::uint64_t required, std::uint64_t allowed);
  [[nodiscard]] std::uint64_t required() const noexcept { return required_; }
  [[nodiscard]] std::uint64_t allowed() const noexcept { return allowed_; }

 private:
  std::uint64_t required_;
  std::uint64_t allowed_;
};

}  // namespace mdep
