#include "mdep/io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace mdep {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  auto lines = split(text, '\n');
  for (auto& l : lines) {
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
  }
  return lines;
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<Index> to_index(std::string_view s) {
  s = trim(s);
  Index v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string location(std::size_t line, std::size_t col) {
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

std::vector<std::string_view> factor_fields(std::string_view line) {
  if (line.find(',') != std::string_view::npos) {
    auto f = split(line, ',');
    for (auto& c : f) c = trim(c);
    return f;
  }
  return split_ws(line);
}

bool is_year(std::string_view s) {
  return s.size() == 4 && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::FileNotFound, "cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool looks_like_header(std::string_view text) {
  for (auto line : lines_of(text)) {
    if (trim(line).empty()) continue;
    for (auto cell : split(line, ',')) {
      if (!to_double(cell)) return true;
    }
    return false;
  }
  return false;
}

Table parse_csv_text(std::string_view text, bool has_header) {
  Table table;
  std::vector<std::vector<double>> rows;
  std::size_t width = 0;
  bool header_pending = has_header;
  std::size_t line_no = 0;
  for (auto line : lines_of(text)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(line, ',');
    if (header_pending) {
      for (auto c : cells) table.header.emplace_back(trim(c));
      width = cells.size();
      header_pending = false;
      continue;
    }
    if (width == 0) width = cells.size();
    if (cells.size() != width) {
      throw Error(Errc::RaggedRows, location(line_no, std::min(cells.size(), width) + 1) + ": expected " +
                                        std::to_string(width) + " cells, found " + std::to_string(cells.size()));
    }
    std::vector<double> row;
    row.reserve(width);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const auto v = to_double(cells[c]);
      if (!v) {
        throw Error(Errc::NonNumericCell, location(line_no, c + 1) + ": '" + std::string(trim(cells[c])) + "'");
      }
      row.push_back(*v);
    }
    rows.push_back(std::move(row));
  }
  table.values.resize(static_cast<Index>(rows.size()), static_cast<Index>(width));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < width; ++c) table.values(static_cast<Index>(r), static_cast<Index>(c)) = rows[r][c];
  }
  return table;
}

Table parse_csv(const std::filesystem::path& path, bool has_header) {
  return parse_csv_text(read_text_file(path), has_header);
}

std::string write_csv(const Table& table) {
  std::string out;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (c != 0) out += ',';
    out += table.header[c];
  }
  if (!table.header.empty()) out += '\n';
  char buf[32];
  for (Index r = 0; r < table.values.rows(); ++r) {
    for (Index c = 0; c < table.values.cols(); ++c) {
      if (c != 0) out += ',';
      std::snprintf(buf, sizeof buf, "%.17g", table.values(r, c));
      out += buf;
    }
    out += '\n';
  }
  return out;
}

FamaFrench parse_fama_french_text(std::string_view text) {
  constexpr int kFirst = 1964;
  constexpr int kLast = 2015;
  const auto lines = lines_of(text);
  std::size_t i = 0;
  while (i < lines.size() && lines[i].find("Annual Factors") == std::string_view::npos) ++i;
  if (i == lines.size()) throw Error(Errc::LayoutNotRecognized, "no 'Annual Factors' section");

  std::vector<std::size_t> pick;
  for (++i; i < lines.size(); ++i) {
    const auto f = factor_fields(lines[i]);
    if (f.empty() || (f.size() == 1 && f[0].empty())) continue;
    std::map<std::string, std::size_t> where;
    for (std::size_t c = 0; c < f.size(); ++c) {
      for (const char* name : {"Mkt-RF", "SMB", "RF"}) {
        if (iequals(f[c], name)) where[name] = c;
      }
    }
    if (where.size() != 3) throw Error(Errc::LayoutNotRecognized, "annual header lacks Mkt-RF, SMB or RF");
    // With commas the header has an empty leading label for the year column;
    // whitespace splitting drops it.
    const std::size_t shift = lines[i].find(',') != std::string_view::npos ? 0 : 1;
    pick = {where["Mkt-RF"] + shift, where["SMB"] + shift, where["RF"] + shift};
    ++i;
    break;
  }
  if (pick.empty()) throw Error(Errc::LayoutNotRecognized, "annual section has no header");

  std::map<int, std::array<double, 3>> by_year;
  for (; i < lines.size(); ++i) {
    const auto f = factor_fields(lines[i]);
    if (f.empty() || !is_year(f[0])) continue;
    const int year = std::stoi(std::string(f[0]));
    if (year < kFirst || year > kLast) continue;
    std::array<double, 3> row{};
    for (std::size_t k = 0; k < 3; ++k) {
      const auto v = pick[k] < f.size() ? to_double(f[pick[k]]) : std::nullopt;
      if (!v) throw Error(Errc::NonNumericCell, location(i + 1, pick[k] + 1));
      row[k] = *v;
    }
    by_year[year] = row;
  }
  for (int y = kFirst; y <= kLast; ++y) {
    if (!by_year.count(y)) throw Error(Errc::YearRangeMissing, "year " + std::to_string(y) + " not found");
  }
  FamaFrench ff;
  ff.values.resize(kLast - kFirst + 1, 3);
  Index r = 0;
  for (const auto& [year, row] : by_year) {
    ff.years.push_back(year);
    for (Index k = 0; k < 3; ++k) ff.values(r, k) = row[static_cast<std::size_t>(k)];
    ++r;
  }
  return ff;
}

FamaFrench parse_fama_french(const std::filesystem::path& path) {
  return parse_fama_french_text(read_text_file(path));
}

std::vector<Index> BlockLayout::dims() const {
  std::vector<Index> out;
  out.reserve(ranges.size());
  for (const auto& [a, b] : ranges) out.push_back(b - a + 1);
  return out;
}

BlockLayout parse_block_layout(std::string_view spec) {
  spec = trim(spec);
  BlockLayout layout;
  auto bad = [&](const std::string& why) {
    return Error(Errc::InvalidArgument, "block spec '" + std::string(spec) + "': " + why);
  };
  if (spec.rfind("cols=", 0) == 0) {
    layout.explicit_columns = true;
    for (auto part : split(spec.substr(5), ';')) {
      part = trim(part);
      const std::size_t dash = part.find('-');
      const auto lo = to_index(part.substr(0, dash));
      const auto hi = dash == std::string_view::npos ? lo : to_index(part.substr(dash + 1));
      if (!lo || !hi) throw bad("cannot read range '" + std::string(part) + "'");
      if (*lo < 1 || *hi < *lo) throw bad("range '" + std::string(part) + "' is empty or not 1-based");
      layout.ranges.emplace_back(*lo - 1, *hi - 1);
    }
    auto sorted = layout.ranges;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 1; k < sorted.size(); ++k) {
      if (sorted[k].first <= sorted[k - 1].second) throw Error(Errc::DuplicateIndex, "overlapping column ranges");
    }
  } else {
    Index next = 0;
    for (auto part : split(spec, ',')) {
      const auto w = to_index(part);
      if (!w || *w < 1) throw bad("widths must be positive integers");
      layout.ranges.emplace_back(next, next + *w - 1);
      next += *w;
    }
  }
  if (layout.ranges.empty()) throw bad("no blocks");
  return layout;
}

Sample apply_block_layout(const Matrix& data, const BlockLayout& layout) {
  const auto dims = layout.dims();
  Index total = 0;
  for (Index w : dims) total += w;
  if (!layout.explicit_columns && total != data.cols()) {
    throw Error(Errc::DimensionMismatch, "block widths sum to " + std::to_string(total) + " but the data has " +
                                             std::to_string(data.cols()) + " columns");
  }
  Matrix out(data.rows(), total);
  Index at = 0;
  for (const auto& [a, b] : layout.ranges) {
    if (b >= data.cols()) {
      throw Error(Errc::IndexOutOfRange, "column " + std::to_string(b + 1) + " beyond " + std::to_string(data.cols()));
    }
    out.middleCols(at, b - a + 1) = data.middleCols(a, b - a + 1);
    at += b - a + 1;
  }
  return make_sample(std::move(out), BlockSpec(dims));
}

}  // namespace mdep
