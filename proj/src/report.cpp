#include <charconv>
#include <cstdio>
#include <map>
#include <sstream>

#include "json.hpp"
#include "mdep/simulation.hpp"

namespace mdep {
namespace {

constexpr std::string_view kCsvHeader = "example,hypothesis,n,d,measure,B,reps,rejections,rate,stderr";

std::string exact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fixed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename T>
T parse_int(std::string_view s, int line) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(Errc::NonNumericCell, "report line " + std::to_string(line) + ": '" + std::string(s) + "'");
  }
  return v;
}

std::string csv(const PowerReport& report) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& c : report.cells) {
    out += std::string(to_string(c.example)) + ',' + std::string(to_string(c.hypothesis)) + ',' +
           std::to_string(c.n) + ',' + std::to_string(c.d) + ',' + c.measure + ',' + std::to_string(c.B) + ',' +
           std::to_string(c.reps) + ',';
    if (c.skipped) {
      out += "-,-,-\n";
    } else {
      out += std::to_string(c.rejections) + ',' + exact(c.rate()) + ',' + exact(c.stderr_mc()) + '\n';
    }
  }
  return out;
}

// One table per (example, hypothesis): a row per (n, d), a column per measure.
std::string markdown(const PowerReport& report) {
  std::ostringstream os;
  std::vector<std::pair<std::string, std::string>> order;
  std::map<std::pair<std::string, std::string>, std::vector<const PowerCell*>> groups;
  for (const auto& c : report.cells) {
    const auto key = std::make_pair(std::string(to_string(c.example)), std::string(to_string(c.hypothesis)));
    if (!groups.count(key)) order.push_back(key);
    groups[key].push_back(&c);
  }
  if (order.empty()) {
    os << "| n | d |\n|---|---|\n";
    return os.str();
  }
  bool first = true;
  for (const auto& key : order) {
    const auto& cells = groups[key];
    std::vector<std::string> measures;
    std::vector<std::pair<Index, Index>> rows;
    for (const auto* c : cells) {
      if (std::find(measures.begin(), measures.end(), c->measure) == measures.end()) measures.push_back(c->measure);
      const auto row = std::make_pair(c->n, c->d);
      if (std::find(rows.begin(), rows.end(), row) == rows.end()) rows.push_back(row);
    }
    if (!first) os << '\n';
    first = false;
    os << "### " << key.first << ' ' << key.second << ' '
       << (key.second == "NULL" ? "(empirical size)" : "(empirical power)") << "\n\n| n | d |";
    for (const auto& m : measures) os << ' ' << m << " |";
    os << "\n|---|---|";
    for (std::size_t i = 0; i < measures.size(); ++i) os << "---|";
    os << '\n';
    for (const auto& row : rows) {
      os << "| " << row.first << " | " << row.second << " |";
      for (const auto& m : measures) {
        const PowerCell* hit = nullptr;
        for (const auto* c : cells) {
          if (c->n == row.first && c->d == row.second && c->measure == m) hit = c;
        }
        if (hit == nullptr || hit->skipped) {
          os << " - |";
        } else {
          os << ' ' << fixed3(hit->rate()) << " |";
        }
      }
      os << '\n';
    }
  }
  return os.str();
}

std::string json(const PowerReport& report) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : report.cells) {
    nlohmann::json j = {{"example", to_string(c.example)},
                        {"hypothesis", to_string(c.hypothesis)},
                        {"n", c.n},
                        {"d", c.d},
                        {"measure", c.measure},
                        {"B", c.B},
                        {"reps", c.reps},
                        {"skipped", c.skipped}};
    if (c.skipped) {
      j["rejections"] = nullptr;
      j["rate"] = nullptr;
      j["stderr"] = nullptr;
    } else {
      j["rejections"] = c.rejections;
      j["rate"] = c.rate();
      j["stderr"] = c.stderr_mc();
    }
    cells.push_back(std::move(j));
  }
  return nlohmann::json{{"cells", cells}}.dump(2) + "\n";
}

}  // namespace

ReportFormat parse_report_format(std::string_view s) {
  if (s == "csv") return ReportFormat::Csv;
  if (s == "markdown" || s == "md") return ReportFormat::Markdown;
  if (s == "json") return ReportFormat::Json;
  throw Error(Errc::UnsupportedFormat, "report format '" + std::string(s) + "'");
}

std::string emit_report(const PowerReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::Csv: return csv(report);
    case ReportFormat::Markdown: return markdown(report);
    case ReportFormat::Json: return json(report);
  }
  throw Error(Errc::UnsupportedFormat, "report format");
}

std::string emit_report(const PowerReport& report, std::string_view format) {
  return emit_report(report, parse_report_format(format));
}

PowerReport parse_report_csv(std::string_view text) {
  PowerReport report;
  int line_no = 0;
  bool header_seen = false;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kCsvHeader) throw Error(Errc::LayoutNotRecognized, "unexpected report header");
      header_seen = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 10) throw Error(Errc::RaggedRows, "report line " + std::to_string(line_no));
    PowerCell c;
    const auto ex = parse_example(f[0]);
    const auto hy = parse_hypothesis(f[1]);
    if (!ex || !hy) throw Error(Errc::LayoutNotRecognized, "report line " + std::to_string(line_no));
    c.example = *ex;
    c.hypothesis = *hy;
    c.n = parse_int<Index>(f[2], line_no);
    c.d = parse_int<Index>(f[3], line_no);
    c.measure = std::string(f[4]);
    c.B = parse_int<int>(f[5], line_no);
    c.reps = parse_int<int>(f[6], line_no);
    c.skipped = f[7] == "-";
    if (!c.skipped) c.rejections = parse_int<int>(f[7], line_no);
    report.cells.push_back(std::move(c));
  }
  if (!header_seen) throw Error(Errc::LayoutNotRecognized, "empty report");
  return report;
}

}  // namespace mdep
