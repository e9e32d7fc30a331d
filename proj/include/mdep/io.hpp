#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mdep/sample.hpp"

namespace mdep {

struct Table {
  Matrix values;
  std::vector<std::string> header;  // empty when the file had none
};

/// Comma-separated numeric table. Leading/trailing blanks in cells are ignored,
/// blank lines are skipped. Error messages carry 1-based line and column.
Table parse_csv(const std::filesystem::path& path, bool has_header);
Table parse_csv_text(std::string_view text, bool has_header);

/// True when the first non-blank line has a cell that does not parse as a number.
bool looks_like_header(std::string_view text);

/// 17 significant digits, so parse_csv(write_csv(t)) reproduces t exactly.
std::string write_csv(const Table& table);

std::string read_text_file(const std::filesystem::path& path);

struct FamaFrench {
  Matrix values;  // 52 x 3, percent
  std::vector<std::string> columns{"Mkt-RF", "SMB", "RF"};
  std::vector<int> years;
};

/// Reads the annual block of a Fama/French factors download: everything before
/// the "Annual Factors" marker is skipped, then rows keyed by a 4-digit year
/// are collected and 1964..2015 are kept.
FamaFrench parse_fama_french(const std::filesystem::path& path);
FamaFrench parse_fama_french_text(std::string_view text);

/// Block layout read from the command line. Either a width list "2,3,1"
/// covering all columns left to right, or "cols=1-5;6-10" with 1-based
/// inclusive column ranges (a single column may be written "7").
struct BlockLayout {
  std::vector<std::pair<Index, Index>> ranges;  // 0-based [first, last]
  bool explicit_columns = false;

  [[nodiscard]] std::vector<Index> dims() const;
};

BlockLayout parse_block_layout(std::string_view spec);

/// Selects and orders the columns named by `layout` and wraps them as a Sample.
/// A width list must sum to the column count.
Sample apply_block_layout(const Matrix& data, const BlockLayout& layout);

}  // namespace mdep
