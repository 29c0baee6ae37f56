// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "sl2lab.hpp"

using namespace sl2lab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "FAILED ") + what;
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

orbital::RadialTestFunction profile(int i) {
  static const std::vector<orbital::RadialTestFunction> p = {
      {0.0, 30.0}, {10.0, 20.0}, {5.0, 40.0, 2.0}, {20.0, 15.0, 0.5}, {0.0, 60.0}};
  return p[static_cast<std::size_t>(i)];
}

Outcome iwasawa() {
  Outcome o;
  std::mt19937_64 rng(2024);
  double recon = 0.0, y_err = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const auto g = cli::random_unimodular(rng);
    const auto c = iwasawa_decompose(g);
    recon = std::max(recon, iwasawa_compose(c).max_abs_diff(g));
    y_err = std::max(y_err, std::abs(c.y - 1.0 / (g.c * g.c + g.d * g.d)));
  }
  o.require(recon <= 1e-12, "reconstruction " + num(recon));
  o.require(y_err <= 1e-12, "y formula " + num(y_err));
  return o;
}

Outcome lie_model() {
  Outcome o;
  double worst = 0.0;
  for (int n = 1; n <= 10; ++n) worst = std::max(worst, rep::cartan_residuals<double>(n, 64).max());
  o.require(worst <= 1e-12, "brackets N=64 " + num(worst));
  double exact = 0.0;
  for (int n = 1; n <= 4; ++n)
    for (int N = 2; N <= 16; ++N) exact = std::max(exact, rep::cartan_residuals<Rational>(n, N).max());
  o.require(exact == 0.0, "rational path exact " + num(exact));
  double off = 0.0, drift = 0.0;
  for (int n = 1; n <= 10; ++n) {
    const auto c64 = rep::casimir_matrix<double>(n, 64);
    off = std::max({off, c64.off_diagonal_max, c64.diagonal_spread});
    for (int N : {8, 16, 32}) drift = std::max(drift, std::abs(rep::casimir_matrix<double>(n, N).eigenvalue - c64.eigenvalue));
    drift = std::max(drift, std::abs(c64.eigenvalue - rep::casimir_scalar(n).convert_to<double>()));
  }
  o.require(off <= 1e-12, "Casimir off-diagonal/spread " + num(off));
  o.require(drift <= 1e-12, "Casimir value vs N " + num(drift));
  return o;
}

Outcome virasoro() {
  Outcome o;
  fock::FockSpace space(24);
  double worst = 0.0;
  for (int m = -4; m <= 4; ++m)
    for (int n = -4; n <= 4; ++n) worst = std::max(worst, fock::virasoro_bracket_check(space, m, n).standard_residual);
  o.require(worst <= 1e-10, "brackets " + num(worst));
  double central = 0.0;
  for (int m = 1; m <= 4; ++m)
    central = std::max(central, std::abs(fock::vacuum_central_term(space, m) - (m * m * m - m) / 12.0));
  o.require(central <= 1e-10, "central sequence " + num(central));
  const auto p = cli::partition_numbers(24);
  bool mult = true;
  const auto spec = fock::l0_spectrum(space);
  mult = spec.size() == 25;
  for (const auto& [ev, m] : spec) mult = mult && m == p[static_cast<std::size_t>(ev)];
  o.require(mult, "L0 multiplicities = partition numbers (" + std::to_string(space.basis().size()) + " states)");
  return o;
}

Outcome characters() {
  Outcome o;
  double worst = 0.0;
  for (int n = 1; n <= 10; ++n)
    for (int i = 0; i < 100; ++i) {
      const double th = 2.0 * kPi * (i + 0.5) / 100.0;
      const Complex v =
          (orbital::ds_character_K(n, 1, th) - orbital::ds_character_K(n, -1, th)) * orbital::weyl_denominator(th) +
          (std::polar(1.0, n * th) - std::polar(1.0, -n * th));
      worst = std::max(worst, std::abs(v));
    }
  o.require(worst <= 1e-12, "identity " + num(worst));
  // Richardson extrapolation on eps = 0.1 / 2^j (even expansion in eps).
  double lim = 0.0;
  for (int n = 1; n <= 10; ++n) {
    std::vector<double> t;
    for (int j = 0; j < 5; ++j) t.push_back(orbital::so3_character(n, 0.1 / std::pow(2.0, j)));
    for (int level = 1; level < 5; ++level) {
      const double f = std::pow(4.0, level);
      for (int j = 4; j >= level; --j) t[j] = (f * t[j] - t[j - 1]) / (f - 1.0);
    }
    lim = std::max(lim, std::abs(t[4] - (2.0 * n - 1.0)));
  }
  o.require(lim <= 1e-8, "so3 limit " + num(lim));
  return o;
}

Outcome orbitals(const cli::RunConfig& cfg) {
  Outcome o;
  double disc = 0.0;
  for (int i = 0; i < 5; ++i)
    for (double a : {1.5, 2.0, 5.0}) disc = std::max(disc, orbital::orbital_hyperbolic(profile(i), a).discrepancy);
  o.require(disc <= 1e-8, "hyperbolic charts " + num(disc));

  double cont = 0.0;
  for (int i = 0; i < 5; ++i) {
    const auto f = profile(i);
    // limit of |a - 1/a| O_a as a -> 1 by Richardson in eps = a - 1 (expansion in eps)
    std::vector<double> t;
    for (int j = 0; j < 4; ++j) t.push_back(orbital::transfer_hyperbolic(f, 1.0 + 0.02 / std::pow(2.0, j)).value);
    for (int level = 1; level < 4; ++level) {
      const double fct = std::pow(2.0, level);
      for (int j = 3; j >= level; --j) t[j] = (fct * t[j] - t[j - 1]) / (fct - 1.0);
    }
    const double direct = orbital::unipotent_integral(f, 0).value;
    cont = std::max(cont, std::abs(t[3] - direct) / std::abs(direct));
  }
  o.require(cont <= 1e-4, "transfer continuity at a=1 " + num(cont));

  double a_err = 0.0, improvement = 1e300, best = 0.0;
  const auto grid = cfg.lambda_grid.points();
  for (int i = 0; i < 5; ++i) {
    const auto fit = orbital::singular_expansion(profile(i), grid);
    a_err = std::max(a_err, fit.a_relative_error);
    improvement = std::min(improvement, fit.log_improvement);
    best = std::max(best, fit.log_improvement);
  }
  const auto fit = orbital::singular_expansion(orbital::RadialTestFunction::bump(4.0), grid);
  a_err = std::max(a_err, fit.a_relative_error);
  improvement = std::min(improvement, fit.log_improvement);
  best = std::max(best, fit.log_improvement);
  o.require(a_err <= 0.02, "1/|lambda| coefficient rel err " + num(a_err));
  o.require(improvement >= 10.0, "ln(1/lambda) regressor improvement " + num(improvement) + ".." + num(best) + "x over 6 profiles (need 10x)");
  return o;
}

Outcome modular_forms() {
  using namespace modular;
  Outcome o;
  const auto e4 = eisenstein_q(4, 200), e6 = eisenstein_q(6, 200), d = delta_q(200);
  const auto lhs = e4 * e4 * e4 - e6 * e6;
  bool exact = true;
  for (std::size_t n = 0; n <= 200; ++n) exact = exact && lhs[n] == 1728 * d[n];
  o.require(exact, "1728 Delta = E4^3 - E6^2 to order 200");
  const auto v6 = eval_modular(e6, {0, 1});
  const auto v4 = eval_modular(e4, std::polar(1.0, 2 * kPi / 3));
  o.require(std::abs(v6.value) <= 1e-9 && v6.tail_bound <= 1e-9, "E6(i) " + num(std::abs(v6.value)));
  o.require(std::abs(v4.value) <= 1e-9 && v4.tail_bound <= 1e-9, "E4(rho) " + num(std::abs(v4.value)));

  std::mt19937_64 rng(77);
  double slash = 0.0, equiv = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Complex z{cli::uniform(rng, -0.5, 0.5), cli::uniform(rng, 1.0, 1.6)};
    for (const auto* f : {&e4, &e6, &d}) {
      const Complex v = eval_modular(*f, z).value;
      slash = std::max(slash, std::abs(slash_action(*f, ModularElement::S(), z).value - v) / std::abs(v));
      slash = std::max(slash, std::abs(slash_action(*f, ModularElement::T(), z).value - v) / std::abs(v));
    }
    const auto g = iwasawa_compose({z.real(), z.imag(), cli::uniform(rng, 0, 2 * kPi), 1});
    const Complex phi = lift_automorphic(d, g).value;
    const double t = cli::uniform(rng, 0, 2 * kPi);
    equiv = std::max(equiv, std::abs(lift_automorphic(d, g * GroupElement::rotation(t)).value -
                                     std::polar(1.0, 12 * t) * phi) / std::abs(phi));
    for (const auto& gamma : {ModularElement::S(), ModularElement::T(), ModularElement::T(-1)})
      equiv = std::max(equiv, std::abs(lift_automorphic(d, gamma.to_real() * g).value - phi) / std::abs(phi));
  }
  o.require(slash <= 1e-9, "slash invariance " + num(slash));
  o.require(equiv <= 1e-9, "lift equivariance " + num(equiv));
  bool dims = dim_cusp_forms(12) == 1 && dim_cusp_forms(24) == 2;
  for (int k = 0; k <= 60; ++k) {
    int count = 0;
    if (k % 2 == 0)
      for (int b = 0; 4 * b <= k - 12; ++b)
        for (int c = 0; 4 * b + 6 * c <= k - 12; ++c) count += 4 * b + 6 * c == k - 12;
    dims = dims && dim_cusp_forms(k) == count;
  }
  o.require(dims, "dim S_k oracle k <= 60");
  return o;
}

Outcome laplacian() {
  Outcome o;
  const auto d = modular::delta_q(200);
  std::mt19937_64 rng(99);
  double worst = 0.0, order_lo = 1e300, order_hi = 0.0;
  for (int i = 0; i < 10; ++i) {
    const auto g = iwasawa_compose({cli::uniform(rng, -0.5, 0.5), cli::uniform(rng, 0.9, 1.5), 0.0, 1});
    const auto c1 = modular::casimir_eigen_check(d, g, 1e-3);
    const auto c2 = modular::casimir_eigen_check(d, g, 5e-4);
    const double e1 = std::abs(c1.measured / c1.expected - 1.0), e2 = std::abs(c2.measured / c2.expected - 1.0);
    worst = std::max(worst, e1);
    const double p = std::log2(e1 / e2);
    order_lo = std::min(order_lo, p);
    order_hi = std::max(order_hi, p);
  }
  o.require(worst <= 1e-4, "ratio error " + num(worst));
  o.require(order_lo >= 1.8 && order_hi <= 2.2, "observed order " + num(order_lo) + ".." + num(order_hi));
  return o;
}

Outcome poisson() {
  Outcome o;
  double worst = 0.0;
  for (double alpha : {0.5, 1.0, 2.0})
    for (double x : {0.0, 1.0, kPi})
      worst = std::max(worst, trace::poisson_check(trace::SchwartzProfile::gaussian(alpha), x, 20).diff);
  o.require(worst <= 1e-10, "max |lhs - rhs| " + num(worst));
  return o;
}

Outcome trace_report(const cli::RunConfig& cfg) {
  Outcome o;
  const auto r = cli::trace_compare_from_config(cfg);
  Complex s, g, st;
  for (const auto& t : r.spectral.terms) s += t.contribution;
  for (const auto& t : r.geometric.terms) g += t.contribution;
  for (const auto& t : r.stable.terms) st += t.contribution;
  o.require(s == r.spectral_total && g == r.geometric_total && st == r.stable_total, "totals equal breakdowns");
  double col = 0.0;
  const auto f = cli::config_test_function(cfg);
  for (const auto& t : r.stable.terms) {
    const double th = t.cls.rotation_angle;
    const double so = orbital::orbital_elliptic(f, th).value - orbital::orbital_elliptic(f, -th).value;
    col = std::max(col, std::abs(t.contribution - t.volume * Complex(0, -2 * std::sin(th)) * so));
  }
  o.require(col <= 1e-10, "stable column vs per-class " + num(col));
  o.detail += "; spectral-geometric = " + num(std::abs(r.spectral_minus_geometric)) + " (reported only)";
  return o;
}

Outcome determinism(const cli::RunConfig& cfg) {
  Outcome o;
  auto render = [&] {
    std::string all;
    for (const auto& r : cli::cmd_verify(cfg)) all += cli::to_string(r);
    all += trace::to_string(cli::trace_compare_from_config(cfg));
    all += cli::to_string(cli::cmd_tabulate("orbital_elliptic", cfg.theta_grid.points(), cfg));
    return all;
  };
  const auto a = render(), b = render();
  o.require(a == b, "byte-identical reports (" + std::to_string(a.size()) + " bytes)");
  return o;
}

}  // namespace

int main() {
  const cli::RunConfig cfg;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 Iwasawa round-trip", iwasawa},
      {"2 Lie-algebra model", lie_model},
      {"3 Virasoro", virasoro},
      {"4 Characters", characters},
      {"5 Orbital integrals", [&] { return orbitals(cfg); }},
      {"6 Modular forms", modular_forms},
      {"7 Casimir eigenvalue", laplacian},
      {"8 Poisson summation", poisson},
      {"9 Trace comparison", [&] { return trace_report(cfg); }},
      {"10 Determinism", [&] { return determinism(cfg); }},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
