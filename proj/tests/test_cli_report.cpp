#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "sl2lab/suites.hpp"

using namespace sl2lab;
using namespace sl2lab::cli;

namespace {

RunConfig parse(const std::string& s) {
  std::istringstream is(s);
  return parse_config(is);
}

}  // namespace

TEST(Config, DefaultRoundTrip) {
  const RunConfig c;
  EXPECT_EQ(parse(to_string(c)), c);
}

TEST(Config, RandomRoundTrip) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    RunConfig c;
    c.tol = std::pow(10.0, -14 * u(rng));
    c.seed = rng();
    c.seed >>= 1;
    c.n_op = 4 + static_cast<std::int64_t>(rng() % 100);
    c.lambda_grid = GridSpec::geomspace(0.3 * u(rng) + 1e-3, 1e-3 * u(rng) + 1e-5, 8 + rng() % 20);
    c.theta_grid = GridSpec::list({u(rng), u(rng) * 3, 1.0 / 3.0});
    c.bump_center = u(rng) - 0.5;
    c.bump_width = 1.0 + u(rng);
    c.trace_weights[12] = {u(rng), -u(rng)};
    c.trace_epsilon["S"] = -1;
    c.trace_volume["(ST)^2"] = u(rng);
    c.out_dir = "some/dir";
    const auto back = parse(to_string(c));
    EXPECT_EQ(back, c);
    EXPECT_EQ(config_hash(back), config_hash(c));
  }
}

TEST(Config, Diagnostics) {
  try {
    parse("n_op = 32\n# comment\ntol = -1e-3\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  EXPECT_THROW(parse("mystery = 1\n"), ConfigError);
  EXPECT_THROW(parse("n_op 32\n"), ConfigError);
  EXPECT_THROW(parse("n_op = 3\n"), ConfigError);
  EXPECT_THROW(parse("tol = abc\n"), ConfigError);
  EXPECT_THROW(parse("theta_grid = list()\n"), ConfigError);
  EXPECT_THROW(parse("n_op = 8\nn_op = 9\n"), ConfigError);
  EXPECT_THROW(parse("lambda_grid = wobble(1, 2, 3)\n"), ConfigError);
  EXPECT_THROW(parse("trace.epsilon.S = 2\n"), ConfigError);
}

TEST(Config, Hash) {
  RunConfig a, b;
  b.seed = a.seed + 1;
  EXPECT_NE(config_hash(a), config_hash(b));
  EXPECT_EQ(hex64(0xabcull), "0000000000000abc");
}

TEST(Grid, Kinds) {
  EXPECT_EQ(parse_grid("range(0, 36, 2)").points().size(), 19u);
  EXPECT_EQ(parse_grid("range(0, 36, 2)").points().back(), 36.0);
  const auto l = parse_grid("linspace(0, 1, 5)").points();
  ASSERT_EQ(l.size(), 5u);
  EXPECT_EQ(l[2], 0.5);
  const auto g = parse_grid("geomspace(0.2, 0.002, 3)").points();
  EXPECT_NEAR(g[1], 0.02, 1e-15);
  EXPECT_EQ(g.back(), 0.002);
  EXPECT_TRUE(parse_grid("list()").points().empty());
  EXPECT_EQ(parse_grid("list(1.5, -2)").points(), (std::vector<double>{1.5, -2}));
  EXPECT_THROW(parse_grid("linspace(0, 1)"), ConfigError);
  EXPECT_THROW(parse_grid("geomspace(0, 1, 3)"), ConfigError);
  EXPECT_THROW(parse_grid("range(0, 1, -1)"), ConfigError);
  EXPECT_THROW(parse_grid("linspace(0, 1, 2.5)"), ConfigError);
}

TEST(SuiteReport, StatusSemantics) {
  SuiteReport r{"x", "h", 1, {}};
  EXPECT_EQ(r.check("a", 1.0, 1.05, 0.1).status, CaseStatus::Pass);
  EXPECT_EQ(r.check("b", 1.0, 1.5, 0.1).status, CaseStatus::Fail);
  EXPECT_EQ(r.check("c", std::nan(""), 0.0, 1.0).status, CaseStatus::Fail);
  EXPECT_EQ(r.check("d", 2.0, 2.0, 0.0).status, CaseStatus::Pass);
  EXPECT_EQ(r.report("e", 3.0, 4.0).status, CaseStatus::Reported);
  EXPECT_EQ(r.failures(), 2u);
  const auto text = to_string(r);
  EXPECT_NE(text.find("suite: x"), std::string::npos);
  EXPECT_NE(text.find("status: reported"), std::string::npos);
}

TEST(Table, CsvRoundTrip) {
  Table t;
  t.header = {"theta", "value", "note"};
  t.add_row({text::fmt(0.1), text::fmt(1.0 / 3.0), "plain"});
  t.add_row({text::fmt(kPi), std::string(kSingularCell), "has, comma \"quoted\""});
  const auto s = to_string(t);
  EXPECT_EQ(s.find('\r'), std::string::npos);
  std::istringstream is(s);
  const auto back = read_csv(is);
  EXPECT_EQ(back, t);
  double v;
  ASSERT_TRUE(text::parse_double(back.rows[0][1], v));
  EXPECT_EQ(v, 1.0 / 3.0);
  EXPECT_THROW(t.add_row({"1"}), ShapeMismatch);
}

TEST(Tabulate, DimsMatchesOracle) {
  const RunConfig c;
  const auto t = cmd_tabulate("dims", parse_grid("range(0, 36, 2)").points(), c);
  ASSERT_EQ(t.rows.size(), 19u);
  for (const auto& row : t.rows) {
    std::int64_t k, d;
    ASSERT_TRUE(text::parse_int(row[0], k));
    ASSERT_TRUE(text::parse_int(row[1], d));
    int count = 0;
    if (k >= 12)
      for (int c6 = 0; 6 * c6 <= k - 12; ++c6) count += (k - 12 - 6 * c6) % 4 == 0;
    EXPECT_EQ(d, count) << k;
  }
}

TEST(Tabulate, CharacterAtQuarterTurnAndSingular) {
  const RunConfig c;
  const auto t = cmd_tabulate("character", {kPi / 2, 0.0}, c);
  ASSERT_EQ(t.rows.size(), 10u);
  for (int n = 1; n <= 5; ++n) {
    const auto& row = t.rows[n - 1];
    double re, im;
    ASSERT_TRUE(text::parse_double(row[2], re));
    ASSERT_TRUE(text::parse_double(row[3], im));
    const Complex v = orbital::ds_character_K(n, 1, kPi / 2);
    EXPECT_EQ(re, v.real());
    EXPECT_EQ(im, v.imag());
  }
  EXPECT_EQ(t.rows[5][2], kSingularCell);
}

TEST(Tabulate, EmptyGridAndHyperbolic) {
  const RunConfig c;
  for (const auto& what : table_kinds()) {
    const auto t = cmd_tabulate(what, {}, c);
    EXPECT_TRUE(t.rows.empty());
    EXPECT_FALSE(t.header.empty());
  }
  const auto h = cmd_tabulate("orbital_hyperbolic", {1.0, 1.5}, c);
  EXPECT_EQ(h.rows[0][1], kSingularCell);
  EXPECT_NE(h.rows[0][3], kSingularCell);
  EXPECT_NE(h.rows[1][1], kSingularCell);
  const auto e = cmd_tabulate("orbital_elliptic", {kPi, 1.0}, c);
  EXPECT_EQ(e.rows[0][1], kSingularCell);
  EXPECT_THROW(cmd_tabulate("nonsense", {}, c), ConfigError);
  EXPECT_THROW(cmd_tabulate("dims", {1.5}, c), ConfigError);
}

TEST(Decompose, Examples) {
  const auto id = cmd_decompose(1, 0, 0, 1);
  EXPECT_EQ(id.coords.x, 0.0);
  EXPECT_EQ(id.coords.y, 1.0);
  EXPECT_EQ(id.coords.theta, 0.0);
  EXPECT_EQ(id.endoscopy.rfind("FullGroup", 0), 0u);
  const auto s = cmd_decompose(0, -1, 1, 0);
  EXPECT_EQ(s.coords.y, 1.0);
  EXPECT_EQ(s.endoscopy.rfind("CompactTorus", 0), 0u);
  const auto d = cmd_decompose(2, 0, 0, 0.5);
  EXPECT_EQ(d.coords.y, 4.0);
  EXPECT_EQ(d.endoscopy.rfind("SplitTorus", 0), 0u);
  const auto p = cmd_decompose(1, 1, 0, 1);
  EXPECT_NE(p.endoscopy.find("parabolic"), std::string::npos);
  try {
    cmd_decompose(1, 1, 1, 3);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("2"), std::string::npos);
  }
  const auto n = cmd_decompose(2, 0, 0, 2, true);
  EXPECT_NEAR(n.g.a, 1.0, 1e-15);
  EXPECT_EQ(n.determinant, 4.0);
  EXPECT_NE(to_string(n).find("sheet: +1"), std::string::npos);
}

TEST(Verify, DefaultPassesAndDeterministic) {
  RunConfig c;
  c.n_op = 32;
  c.n_fock = 16;
  c.m_qexp = 120;
  const auto a = cmd_verify(c), b = cmd_verify(c);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].failures(), 0u) << to_string(a[i]);
    EXPECT_EQ(to_string(a[i]), to_string(b[i]));
  }
  RunConfig bad = c;
  bad.tol = -1.0;
  EXPECT_THROW(cmd_verify(bad), ConfigError);
}

TEST(Output, AtomicWrite) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "sl2lab_atomic_test";
  fs::remove_all(dir);
  write_file_atomic(dir / "sub" / "a.txt", "first\n");
  write_file_atomic(dir / "sub" / "a.txt", "second\n");
  std::ifstream in(dir / "sub" / "a.txt", std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), "second\n");
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir / "sub")) ++files;
  EXPECT_EQ(files, 1u);
  fs::remove_all(dir);
}

TEST(TraceFromConfig, DefaultsFilled) {
  const RunConfig c;
  const auto r = trace_compare_from_config(c);
  EXPECT_EQ(r.geometric.terms.size(), 6u);
  EXPECT_EQ(r.spectral.terms.size(), 13u);
  EXPECT_EQ(r.volume.at("S"), 0.25);
}
