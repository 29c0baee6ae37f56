// sl2lab: verify | tabulate | decompose | trace-compare

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sl2lab.hpp"

namespace fs = std::filesystem;
using namespace sl2lab;

namespace {

struct Overrides {
  std::string config_path;
  std::optional<std::int64_t> seed, n_op, n_fock, m_qexp;
  std::optional<double> tol;
  std::string out_dir;
};

cli::RunConfig resolve(const Overrides& o) {
  cli::RunConfig c = o.config_path.empty() ? cli::RunConfig{} : cli::load_config(o.config_path);
  if (o.seed) {
    if (*o.seed < 0) throw ConfigError("--seed must be non-negative");
    c.seed = static_cast<std::uint64_t>(*o.seed);
  }
  if (o.n_op) c.n_op = *o.n_op;
  if (o.n_fock) c.n_fock = *o.n_fock;
  if (o.m_qexp) c.m_qexp = *o.m_qexp;
  if (o.tol) c.tol = *o.tol;
  c.validate();
  return c;
}

fs::path output_dir(const Overrides& o, const cli::RunConfig& c) {
  if (!o.out_dir.empty()) return o.out_dir;
  if (!c.out_dir.empty()) return c.out_dir;
  if (const char* env = std::getenv("SL2LAB_OUT_DIR"); env && *env) return env;
  return "sl2lab_out";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for SL(2,R), modular forms and the elliptic trace formula"};
  app.require_subcommand(1);
  Overrides o;
  app.add_option("--config", o.config_path, "config file (key = value)");
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--out", o.out_dir, "output directory (default: $SL2LAB_OUT_DIR, then ./sl2lab_out)");
  app.add_option("--tol", o.tol, "quadrature tolerance");
  app.add_option("--n-op", o.n_op, "truncation of the discrete-series model");
  app.add_option("--n-fock", o.n_fock, "Fock space degree cap");
  app.add_option("--m-qexp", o.m_qexp, "q-expansion order");

  auto* verify = app.add_subcommand("verify", "run all invariant suites");
  verify->fallthrough();

  auto* tabulate = app.add_subcommand("tabulate", "write a CSV table");
  tabulate->fallthrough();
  std::string what, grid_spec;
  tabulate->add_option("what", what, "character | stable_character | orbital_elliptic | orbital_hyperbolic | dims")
      ->required()
      ->check(CLI::IsMember(cli::table_kinds()));
  tabulate->add_option("--grid", grid_spec, "grid, e.g. linspace(0.1, 3, 30) or list()");

  auto* decompose = app.add_subcommand("decompose", "Iwasawa coordinates and endoscopy class of a matrix");
  decompose->fallthrough();
  std::vector<double> entries;
  bool normalize = false;
  decompose->add_option("entries", entries, "a b c d")->required()->expected(4);
  decompose->add_flag("--normalize", normalize, "rescale by 1/sqrt(det) instead of rejecting det != 1");

  auto* trace_cmd = app.add_subcommand("trace-compare", "spectral and elliptic geometric sides");
  trace_cmd->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // help and version report success; every usage error is exit 2
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const auto cfg = resolve(o);
    const fs::path out = output_dir(o, cfg);

    if (*verify) {
      const auto reports = cli::cmd_verify(cfg);
      cli::write_file_atomic(out / "verify" / "config.txt", cli::to_string(cfg));
      std::size_t failures = 0;
      for (const auto& r : reports) {
        cli::write_file_atomic(out / "verify" / (r.name + ".txt"), cli::to_string(r));
        failures += r.failures();
        std::cout << r.name << ": " << r.count(cli::CaseStatus::Pass) << " pass, " << r.failures() << " fail, "
                  << r.count(cli::CaseStatus::Reported) << " reported\n";
        for (const auto& c : r.cases)
          if (c.status == cli::CaseStatus::Fail)
            std::cout << "  FAIL " << c.name << " measured=" << text::fmt(c.measured)
                      << " expected=" << text::fmt(c.expected) << " tol=" << text::fmt(c.tolerance) << "\n";
      }
      return failures == 0 ? 0 : 1;
    }
    if (*tabulate) {
      const auto grid = grid_spec.empty() ? cli::default_grid(what, cfg) : cli::parse_grid(grid_spec);
      const auto table = cli::cmd_tabulate(what, grid.points(), cfg);
      const fs::path path = out / (what + ".csv");
      cli::write_file_atomic(path, cli::to_string(table));
      std::cout << path.string() << "\n";
      return 0;
    }
    if (*decompose) {
      const auto d = cli::cmd_decompose(entries[0], entries[1], entries[2], entries[3], normalize);
      std::cout << cli::to_string(d);
      return 0;
    }
    if (*trace_cmd) {
      const auto r = cli::trace_compare_from_config(cfg);
      const fs::path path = out / "trace_report.txt";
      cli::write_file_atomic(path, trace::to_string(r));
      std::cout << "spectral_total: " << text::fmt(r.spectral_total) << "\n"
                << "geometric_total: " << text::fmt(r.geometric_total) << "\n"
                << "stable_total: " << text::fmt(r.stable_total) << "\n"
                << path.string() << "\n";
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
