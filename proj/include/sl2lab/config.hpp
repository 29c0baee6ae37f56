#pragma once

// Run configuration: a line-oriented "key = value" file with '#' comments.
// Grids are written as linspace(a, b, n), geomspace(a, b, n), range(a, b, step)
// (inclusive end) or list(v1, v2, ...).

#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sl2lab/errors.hpp"
#include "sl2lab/scalar.hpp"
#include "sl2lab/text_format.hpp"

namespace sl2lab::cli {

struct GridSpec {
  enum class Kind { Linspace, Geomspace, Range, List };
  Kind kind = Kind::List;
  double a = 0.0, b = 0.0, step = 1.0;
  std::int64_t count = 0;
  std::vector<double> values;  // List only

  static GridSpec linspace(double a, double b, std::int64_t n) { return {Kind::Linspace, a, b, 1.0, n, {}}; }
  static GridSpec geomspace(double a, double b, std::int64_t n) { return {Kind::Geomspace, a, b, 1.0, n, {}}; }
  static GridSpec range(double a, double b, double step) { return {Kind::Range, a, b, step, 0, {}}; }
  static GridSpec list(std::vector<double> v) { return {Kind::List, 0, 0, 1.0, 0, std::move(v)}; }

  std::vector<double> points() const {
    std::vector<double> out;
    switch (kind) {
      case Kind::List:
        return values;
      case Kind::Linspace:
        for (std::int64_t i = 0; i < count; ++i)
          out.push_back(count == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
        if (count > 1) out.back() = b;
        return out;
      case Kind::Geomspace:
        for (std::int64_t i = 0; i < count; ++i)
          out.push_back(count == 1 ? a : a * std::pow(b / a, static_cast<double>(i) / static_cast<double>(count - 1)));
        if (count > 1) out.back() = b;
        return out;
      case Kind::Range: {
        const double span = (b - a) / step;
        const auto n = static_cast<std::int64_t>(std::floor(span + 1e-9));
        for (std::int64_t i = 0; i <= n; ++i) out.push_back(a + step * static_cast<double>(i));
        return out;
      }
    }
    return out;
  }

  std::string to_string() const {
    using text::fmt;
    switch (kind) {
      case Kind::Linspace: return "linspace(" + fmt(a) + ", " + fmt(b) + ", " + fmt(count) + ")";
      case Kind::Geomspace: return "geomspace(" + fmt(a) + ", " + fmt(b) + ", " + fmt(count) + ")";
      case Kind::Range: return "range(" + fmt(a) + ", " + fmt(b) + ", " + fmt(step) + ")";
      case Kind::List: {
        std::string s = "list(";
        for (std::size_t i = 0; i < values.size(); ++i) s += (i ? ", " : "") + fmt(values[i]);
        return s + ")";
      }
    }
    return {};
  }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Parses a grid expression; `line` is used for diagnostics only.
inline GridSpec parse_grid(std::string_view s, int line = 0) {
  s = text::trim(s);
  const auto open = s.find('(');
  if (open == std::string_view::npos || s.back() != ')') throw ConfigError("malformed grid: " + std::string(s), line);
  const auto head = text::trim(s.substr(0, open));
  const auto body = s.substr(open + 1, s.size() - open - 2);
  std::vector<double> args;
  if (!text::trim(body).empty()) {
    std::size_t pos = 0;
    while (true) {
      const auto comma = body.find(',', pos);
      const auto item = body.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
      double v;
      if (!text::parse_double(item, v)) throw ConfigError("grid argument is not a number: " + std::string(item), line);
      args.push_back(v);
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
  }
  auto count_arg = [&](double v) {
    if (!(v >= 0.0) || v != std::floor(v)) throw ConfigError("grid count must be a non-negative integer", line);
    return static_cast<std::int64_t>(v);
  };
  if (head == "list") return GridSpec::list(args);
  if (args.size() != 3) throw ConfigError("grid " + std::string(head) + " takes three arguments", line);
  if (head == "linspace") return GridSpec::linspace(args[0], args[1], count_arg(args[2]));
  if (head == "geomspace") {
    if (!(args[0] > 0.0 && args[1] > 0.0)) throw ConfigError("geomspace endpoints must be positive", line);
    return GridSpec::geomspace(args[0], args[1], count_arg(args[2]));
  }
  if (head == "range") {
    if (!(args[2] != 0.0) || (args[1] - args[0]) / args[2] < 0.0)
      throw ConfigError("range step must be nonzero and point from start to end", line);
    return GridSpec::range(args[0], args[1], args[2]);
  }
  throw ConfigError("unknown grid kind: " + std::string(head), line);
}

struct RunConfig {
  std::int64_t n_op = 64;
  std::int64_t n_fock = 24;
  std::int64_t m_qexp = 200;
  double tol = 1e-10;  // quadrature tolerance
  std::uint64_t seed = 20241014;
  std::string out_dir;  // empty: environment or built-in default
  GridSpec lambda_grid = GridSpec::geomspace(0.2, 0.01, 16);
  GridSpec theta_grid = GridSpec::linspace(0.0, 3.141592653589793, 13);
  GridSpec a_grid = GridSpec::list({1.0, 1.5, 2.0, 5.0});
  GridSpec k_grid = GridSpec::range(0, 36, 2);
  std::int64_t n_max = 5;  // characters tabulated for n = 1..n_max

  // test function for orbital tables and the trace comparison
  double bump_center = 0.0;
  double bump_width = 4.0;
  double bump_amplitude = 1.0;

  // trace comparison
  GridSpec trace_window = GridSpec::range(12, 36, 2);
  std::map<int, Complex> trace_weights;        // default 1 for every k in the window
  std::map<std::string, int> trace_epsilon;    // default +1
  std::map<std::string, double> trace_volume;  // default 1/order

  friend bool operator==(const RunConfig&, const RunConfig&) = default;

  void validate() const {
    if (!(tol > 0.0)) throw ConfigError("tol must be positive");
    if (n_op < 4) throw ConfigError("n_op must be at least 4");
    if (n_fock < 2) throw ConfigError("n_fock must be at least 2");
    if (m_qexp < 1) throw ConfigError("m_qexp must be at least 1");
    if (n_max < 1) throw ConfigError("n_max must be at least 1");
    if (!(bump_width > 0.0)) throw ConfigError("bump_width must be positive");
    if (!(bump_center + bump_width > 0.0)) throw ConfigError("bump support must meet [0, inf)");
    for (const auto* g : {&lambda_grid, &theta_grid, &a_grid, &k_grid})
      if (g->points().empty()) throw ConfigError("grids must be non-empty");
  }
};

namespace detail {

inline bool parse_complex(std::string_view s, Complex& out) {
  s = text::trim(s);
  const auto sp = s.find_first_of(" \t");
  double re, im = 0.0;
  if (sp == std::string_view::npos) {
    if (!text::parse_double(s, re)) return false;
  } else if (!text::parse_double(s.substr(0, sp), re) || !text::parse_double(s.substr(sp), im)) {
    return false;
  }
  out = {re, im};
  return true;
}

}  // namespace detail

/// Reads a config file body; unknown keys and malformed values raise ConfigError with the line.
inline RunConfig parse_config(std::istream& is) {
  RunConfig c;
  std::string raw;
  int line = 0;
  std::set<std::string> seen;
  while (std::getline(is, raw)) {
    ++line;
    std::string_view s = raw;
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = text::trim(s);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected key = value", line);
    const std::string key(text::trim(s.substr(0, eq)));
    const std::string_view val = text::trim(s.substr(eq + 1));
    if (!seen.insert(key).second) throw ConfigError("duplicate key " + key, line);

    auto as_int = [&](std::int64_t& dst) {
      if (!text::parse_int(val, dst)) throw ConfigError("integer expected for " + key, line);
    };
    auto as_double = [&](double& dst) {
      if (!text::parse_double(val, dst)) throw ConfigError("number expected for " + key, line);
    };
    auto positive = [&](double v) {
      if (!(v > 0.0)) throw ConfigError(key + " must be positive", line);
    };
    auto at_least = [&](std::int64_t v, std::int64_t lo) {
      if (v < lo) throw ConfigError(key + " must be at least " + std::to_string(lo), line);
    };
    auto nonempty = [&](const GridSpec& g) {
      if (g.points().empty()) throw ConfigError(key + " must be non-empty", line);
    };

    if (key == "n_op") {
      as_int(c.n_op);
      at_least(c.n_op, 4);
    } else if (key == "n_fock") {
      as_int(c.n_fock);
      at_least(c.n_fock, 2);
    } else if (key == "m_qexp") {
      as_int(c.m_qexp);
      at_least(c.m_qexp, 1);
    } else if (key == "n_max") {
      as_int(c.n_max);
      at_least(c.n_max, 1);
    } else if (key == "tol") {
      as_double(c.tol);
      positive(c.tol);
    } else if (key == "seed") {
      std::int64_t v;
      as_int(v);
      if (v < 0) throw ConfigError("seed must be non-negative", line);
      c.seed = static_cast<std::uint64_t>(v);
    } else if (key == "out_dir") {
      c.out_dir = std::string(val);
    } else if (key == "lambda_grid") {
      c.lambda_grid = parse_grid(val, line);
      nonempty(c.lambda_grid);
    } else if (key == "theta_grid") {
      c.theta_grid = parse_grid(val, line);
      nonempty(c.theta_grid);
    } else if (key == "a_grid") {
      c.a_grid = parse_grid(val, line);
      nonempty(c.a_grid);
    } else if (key == "k_grid") {
      c.k_grid = parse_grid(val, line);
      nonempty(c.k_grid);
    } else if (key == "bump_center") {
      as_double(c.bump_center);
    } else if (key == "bump_width") {
      as_double(c.bump_width);
      positive(c.bump_width);
    } else if (key == "bump_amplitude") {
      as_double(c.bump_amplitude);
    } else if (key == "trace.window") {
      c.trace_window = parse_grid(val, line);
    } else if (key.rfind("trace.weight.", 0) == 0) {
      std::int64_t k;
      if (!text::parse_int(std::string_view(key).substr(13), k)) throw ConfigError("bad weight key " + key, line);
      Complex w;
      if (!detail::parse_complex(val, w)) throw ConfigError("complex value expected for " + key, line);
      c.trace_weights[static_cast<int>(k)] = w;
    } else if (key.rfind("trace.epsilon.", 0) == 0) {
      std::int64_t e;
      as_int(e);
      if (e != 1 && e != -1) throw ConfigError(key + " must be +1 or -1", line);
      c.trace_epsilon[key.substr(14)] = static_cast<int>(e);
    } else if (key.rfind("trace.volume.", 0) == 0) {
      double v;
      as_double(v);
      c.trace_volume[key.substr(13)] = v;
    } else {
      throw ConfigError("unknown key " + key, line);
    }
  }
  c.validate();
  return c;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path);
  return parse_config(in);
}

/// Canonical form; parse_config(write_config(c)) == c.
inline void write_config(std::ostream& os, const RunConfig& c) {
  using text::fmt;
  os << "n_op = " << c.n_op << "\n";
  os << "n_fock = " << c.n_fock << "\n";
  os << "m_qexp = " << c.m_qexp << "\n";
  os << "n_max = " << c.n_max << "\n";
  os << "tol = " << fmt(c.tol) << "\n";
  os << "seed = " << c.seed << "\n";
  if (!c.out_dir.empty()) os << "out_dir = " << c.out_dir << "\n";
  os << "lambda_grid = " << c.lambda_grid.to_string() << "\n";
  os << "theta_grid = " << c.theta_grid.to_string() << "\n";
  os << "a_grid = " << c.a_grid.to_string() << "\n";
  os << "k_grid = " << c.k_grid.to_string() << "\n";
  os << "bump_center = " << fmt(c.bump_center) << "\n";
  os << "bump_width = " << fmt(c.bump_width) << "\n";
  os << "bump_amplitude = " << fmt(c.bump_amplitude) << "\n";
  os << "trace.window = " << c.trace_window.to_string() << "\n";
  for (const auto& [k, w] : c.trace_weights) os << "trace.weight." << k << " = " << fmt(w) << "\n";
  for (const auto& [k, e] : c.trace_epsilon) os << "trace.epsilon." << k << " = " << e << "\n";
  for (const auto& [k, v] : c.trace_volume) os << "trace.volume." << k << " = " << fmt(v) << "\n";
}

inline std::string to_string(const RunConfig& c) {
  std::ostringstream os;
  write_config(os, c);
  return os.str();
}

/// FNV-1a over the canonical text.
inline std::uint64_t config_hash(const RunConfig& c) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : to_string(c)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[static_cast<std::size_t>(i)] = digits[v & 0xf];
  return s;
}

}  // namespace sl2lab::cli
