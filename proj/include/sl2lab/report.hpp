#pragma once

// Suite reports, CSV tables and atomic file output.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "sl2lab/errors.hpp"
#include "sl2lab/text_format.hpp"

namespace sl2lab::cli {

enum class CaseStatus { Pass, Fail, Reported };

inline std::string_view to_string(CaseStatus s) {
  switch (s) {
    case CaseStatus::Pass: return "pass";
    case CaseStatus::Fail: return "fail";
    case CaseStatus::Reported: return "reported";
  }
  return "?";
}

struct CaseResult {
  std::string name;
  CaseStatus status = CaseStatus::Reported;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  std::string note;
};

struct SuiteReport {
  std::string name;
  std::string config_hash;
  std::uint64_t seed = 0;
  std::vector<CaseResult> cases;

  /// Asserted comparison: pass iff |measured - expected| <= tolerance (NaN fails).
  CaseResult& check(std::string case_name, double measured, double expected, double tolerance, std::string note = {}) {
    const bool ok = std::abs(measured - expected) <= tolerance;
    cases.push_back({std::move(case_name), ok ? CaseStatus::Pass : CaseStatus::Fail, measured, expected, tolerance,
                     std::move(note)});
    return cases.back();
  }

  /// Case carrying a numerical outcome that is recorded but not asserted.
  CaseResult& report(std::string case_name, double measured, double expected, std::string note = {}) {
    cases.push_back({std::move(case_name), CaseStatus::Reported, measured, expected, 0.0, std::move(note)});
    return cases.back();
  }

  std::size_t count(CaseStatus s) const {
    std::size_t n = 0;
    for (const auto& c : cases) n += c.status == s;
    return n;
  }
  std::size_t failures() const { return count(CaseStatus::Fail); }
};

inline void write_suite_report(std::ostream& os, const SuiteReport& r) {
  using text::fmt;
  os << "suite: " << r.name << "\n";
  os << "meta:\n";
  os << "  config_hash: " << r.config_hash << "\n";
  os << "  seed: " << r.seed << "\n";
  os << "cases:\n";
  for (const auto& c : r.cases) {
    os << "  - name: " << c.name << "\n";
    os << "    status: " << to_string(c.status) << "\n";
    os << "    measured: " << fmt(c.measured) << "\n";
    os << "    expected: " << fmt(c.expected) << "\n";
    if (c.status != CaseStatus::Reported) os << "    tolerance: " << fmt(c.tolerance) << "\n";
    if (!c.note.empty()) os << "    note: " << c.note << "\n";
  }
  os << "summary:\n";
  os << "  pass: " << r.count(CaseStatus::Pass) << "\n";
  os << "  fail: " << r.count(CaseStatus::Fail) << "\n";
  os << "  reported: " << r.count(CaseStatus::Reported) << "\n";
}

inline std::string to_string(const SuiteReport& r) {
  std::ostringstream os;
  write_suite_report(os, r);
  return os.str();
}

// ---------------------------------------------------------------------------
// CSV

/// Literal cell used where a quantity is undefined (theta in pi Z, a = 1).
inline constexpr std::string_view kSingularCell = "singular";

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> r) {
    if (r.size() != header.size()) throw ShapeMismatch("table row width does not match header");
    rows.push_back(std::move(r));
  }
  friend bool operator==(const Table&, const Table&) = default;
};

namespace detail {

inline void write_cell(std::ostream& os, const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) {
    os << cell;
    return;
  }
  os << '"';
  for (char ch : cell) {
    if (ch == '"') os << '"';
    os << ch;
  }
  os << '"';
}

inline std::vector<std::string> split_csv_line(const std::string& line, int line_no) {
  std::vector<std::string> cells(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cells.back() += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cells.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      cells.emplace_back();
    } else {
      cells.back() += ch;
    }
  }
  if (quoted) throw ConfigError("unterminated quote in table", line_no);
  return cells;
}

}  // namespace detail

inline void write_csv(std::ostream& os, const Table& t) {
  auto row = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) os << ',';
      detail::write_cell(os, r[i]);
    }
    os << '\n';
  };
  row(t.header);
  for (const auto& r : t.rows) row(r);
}

inline Table read_csv(std::istream& is) {
  Table t;
  std::string line;
  int n = 0;
  while (std::getline(is, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') throw ConfigError("table uses CR line endings", n);
    auto cells = detail::split_csv_line(line, n);
    if (n == 1) {
      t.header = std::move(cells);
    } else {
      if (cells.size() != t.header.size()) throw ConfigError("row width does not match header", n);
      t.rows.push_back(std::move(cells));
    }
  }
  return t;
}

inline std::string to_string(const Table& t) {
  std::ostringstream os;
  write_csv(os, t);
  return os.str();
}

// ---------------------------------------------------------------------------
// Output

/// Writes `content` to a sibling temporary file and renames it over `path`.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("rename to " + path.string() + " failed: " + ec.message());
  }
}

}  // namespace sl2lab::cli
