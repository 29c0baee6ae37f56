#pragma once

// Verification suites, table generation and matrix decomposition behind the
// command-line tool.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sl2lab/char_orbital.hpp"
#include "sl2lab/config.hpp"
#include "sl2lab/fock_virasoro.hpp"
#include "sl2lab/matrix_core.hpp"
#include "sl2lab/modular_lift.hpp"
#include "sl2lab/qexpansion.hpp"
#include "sl2lab/report.hpp"
#include "sl2lab/repn_model.hpp"
#include "sl2lab/text_format.hpp"
#include "sl2lab/trace_poisson.hpp"

namespace sl2lab::cli {

/// Uniform double in [lo, hi) from the top 53 bits; identical across standard libraries.
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

/// Random element of SL(2,R) with entries of moderate size.
inline GroupElement random_unimodular(std::mt19937_64& rng) {
  double a;
  do a = uniform(rng, -2.0, 2.0);
  while (std::abs(a) < 0.2);
  const double b = uniform(rng, -2.0, 2.0), c = uniform(rng, -2.0, 2.0);
  return {a, b, c, (1.0 + b * c) / a};
}

/// p(0..n) by Euler's recurrence over parts.
inline std::vector<std::uint64_t> partition_numbers(int n) {
  std::vector<std::uint64_t> p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = 1;
  for (int part = 1; part <= n; ++part)
    for (int m = part; m <= n; ++m) p[static_cast<std::size_t>(m)] += p[static_cast<std::size_t>(m - part)];
  return p;
}

inline orbital::RadialTestFunction config_test_function(const RunConfig& c) {
  return {c.bump_center, c.bump_width, c.bump_amplitude};
}

inline orbital::OrbitalOptions config_orbital_options(const RunConfig& c) { return {c.tol, 1e-12, 20000}; }

inline trace::TraceReport trace_compare_from_config(const RunConfig& cfg);

// ---------------------------------------------------------------------------
// Suites

inline SuiteReport suite_matrix_core(const RunConfig& cfg) {
  SuiteReport r{"matrix_core", hex64(config_hash(cfg)), cfg.seed, {}};
  std::mt19937_64 rng(cfg.seed);
  double recon = 0.0, y_err = 0.0, act_err = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const auto g = random_unimodular(rng);
    const auto co = iwasawa_decompose(g);
    recon = std::max(recon, iwasawa_compose(co).max_abs_diff(g));
    y_err = std::max(y_err, std::abs(co.y - 1.0 / (g.c * g.c + g.d * g.d)));
    const Complex w = mobius_act(g, {0.0, 1.0});
    act_err = std::max(act_err, std::abs(w - Complex(co.x, co.y)));
  }
  r.check("iwasawa_roundtrip_max_error", recon, 0.0, 1e-12);
  r.check("iwasawa_y_formula", y_err, 0.0, 1e-12);
  r.check("chart_point_is_orbit_of_i", act_err, 0.0, 1e-12);

  r.check("endoscopy_identity_full_group",
          classify_endoscopy(GroupElement::identity()).tag == EndoscopyTag::FullGroup, 1.0, 0.0);
  r.check("endoscopy_S_compact", classify_endoscopy({0, -1, 1, 0}).tag == EndoscopyTag::CompactTorus, 1.0, 0.0);
  r.check("endoscopy_diag_split", classify_endoscopy(GroupElement::diag(2.0)).tag == EndoscopyTag::SplitTorus, 1.0, 0.0);

  double fd_violation = 0.0;
  for (int i = 0; i < 500; ++i) {
    const Complex z{uniform(rng, -5.0, 5.0), std::exp(uniform(rng, std::log(0.01), std::log(3.0)))};
    const auto red = reduce_to_fundamental_domain(z);
    const double out_strip = std::max(0.0, std::abs(red.point.real()) - 0.5);
    const double out_disc = std::max(0.0, 1.0 - std::abs(red.point));
    const double image = std::abs(mobius_act(red.gamma, z) - red.point);
    fd_violation = std::max({fd_violation, out_strip, out_disc, image / std::max(1.0, std::abs(red.point))});
  }
  r.check("fundamental_domain_reduction", fd_violation, 0.0, 1e-10);
  return r;
}

inline SuiteReport suite_repn_model(const RunConfig& cfg) {
  SuiteReport r{"repn_model", hex64(config_hash(cfg)), cfg.seed, {}};
  const int N = static_cast<int>(cfg.n_op);
  double worst = 0.0;
  for (int n = 1; n <= 10; ++n) worst = std::max(worst, rep::cartan_residuals<double>(n, N).max());
  r.check("bracket_relations_double", worst, 0.0, 1e-12);
  double exact = 0.0;
  for (int n = 1; n <= 4; ++n) exact = std::max(exact, rep::cartan_residuals<Rational>(n, 16).max());
  r.check("bracket_relations_rational_exact", exact, 0.0, 0.0);

  double off = 0.0, spread = 0.0, value_err = 0.0, forms = 0.0;
  for (int n = 1; n <= 10; ++n) {
    const auto c = rep::casimir_matrix<double>(n, N);
    const auto c_small = rep::casimir_matrix<double>(n, std::max(8, N / 2));
    off = std::max(off, c.off_diagonal_max);
    spread = std::max(spread, c.diagonal_spread);
    forms = std::max(forms, c.forms_difference);
    value_err = std::max({value_err, std::abs(c.eigenvalue - rep::casimir_scalar(n).convert_to<double>()),
                          std::abs(c.eigenvalue - c_small.eigenvalue)});
  }
  r.check("casimir_off_diagonal", off, 0.0, 1e-12);
  r.check("casimir_diagonal_spread", spread, 0.0, 1e-12);
  r.check("casimir_value_independent_of_N", value_err, 0.0, 1e-12);
  r.check("casimir_two_forms_agree", forms, 0.0, 1e-12);

  const auto lit = rep::literal_product_form<double>(3, N);
  r.report("literal_product_form_diagonal_step", lit.entries(1, 1) - lit.entries(0, 0), 0.0,
           "quarter (H^2 + 4XY) drifts by one per step of z^m; not central");
  const auto wd = rep::weight_decomposition(3, 16);
  r.check("weight_ladder", wd.raising_ok && wd.lowering_ok && wd.lowest_annihilated, 1.0, 0.0);
  return r;
}

inline SuiteReport suite_fock_virasoro(const RunConfig& cfg) {
  SuiteReport r{"fock_virasoro", hex64(config_hash(cfg)), cfg.seed, {}};
  const int N = static_cast<int>(cfg.n_fock);
  fock::FockSpace space(N);
  const int reach = std::min(4, N / 4);
  double standard = 0.0, printed = 0.0;
  for (int m = -reach; m <= reach; ++m)
    for (int n = -reach; n <= reach; ++n) {
      const auto b = fock::virasoro_bracket_check(space, m, n);
      standard = std::max(standard, b.standard_residual);
      printed = std::max(printed, b.printed_residual);
    }
  r.check("bracket_standard_convention", standard, 0.0, 1e-10);
  r.report("bracket_printed_convention_residual", printed, 0.0, "(n-m) sign with L_0 central term");
  for (int m = 1; m <= std::min(4, N / 2); ++m)
    r.check("vacuum_central_term_m" + std::to_string(m), fock::vacuum_central_term(space, m),
            (static_cast<double>(m) * m * m - m) / 12.0, 1e-10);
  const auto spectrum = fock::l0_spectrum(space);
  const auto p = partition_numbers(N);
  double mismatch = 0.0;
  for (const auto& [ev, mult] : spectrum)
    mismatch = std::max(mismatch, std::abs(static_cast<double>(mult) - static_cast<double>(p[static_cast<std::size_t>(ev)])));
  r.check("l0_multiplicities_partition_numbers", mismatch, 0.0, 0.0);
  r.check("l0_levels", static_cast<double>(spectrum.size()), N + 1.0, 0.0);
  return r;
}

inline SuiteReport suite_char_orbital(const RunConfig& cfg) {
  SuiteReport r{"char_orbital", hex64(config_hash(cfg)), cfg.seed, {}};
  double ident = 0.0;
  for (int n = 1; n <= 10; ++n)
    for (int i = 1; i <= 100; ++i) {
      const double theta = 2.0 * kPi * (i - 0.5) / 100.0;
      if (orbital::is_singular_angle(theta)) continue;
      const Complex lhs = (orbital::ds_character_K(n, 1, theta) - orbital::ds_character_K(n, -1, theta)) *
                              orbital::weyl_denominator(theta) +
                          (std::polar(1.0, n * theta) - std::polar(1.0, -n * theta));
      ident = std::max(ident, std::abs(lhs));
    }
  r.check("character_identity", ident, 0.0, 1e-12);
  double so3 = 0.0;
  for (int n = 1; n <= 10; ++n) {
    // Richardson on eps = 1e-3, 5e-4 removes the eps^2 term.
    const double c1 = orbital::so3_character(n, 1e-3), c2 = orbital::so3_character(n, 5e-4);
    so3 = std::max(so3, std::abs((4.0 * c2 - c1) / 3.0 - (2.0 * n - 1.0)));
  }
  r.check("so3_character_limit", so3, 0.0, 1e-8);

  const auto f = config_test_function(cfg);
  const auto opt = config_orbital_options(cfg);
  double disc = 0.0;
  for (double a : {1.5, 2.0, 5.0}) disc = std::max(disc, orbital::orbital_hyperbolic(f, a, opt).discrepancy);
  r.check("hyperbolic_parametrizations_agree", disc, 0.0, 1e-8);
  const double at_one = orbital::transfer_hyperbolic(f, 1.0, opt).value;
  const double near = orbital::transfer_hyperbolic(f, 1.0 + 1e-6, opt).value;
  r.check("transfer_hyperbolic_continuous_at_1", std::abs(near - at_one) / std::abs(at_one), 0.0, 1e-4);

  const auto fit = orbital::singular_expansion(f, cfg.lambda_grid.points(), opt);
  r.check("singular_fit_inverse_lambda_coefficient", fit.a_relative_error, 0.0, 0.02);
  r.report("singular_fit_log_regressor_improvement", fit.log_improvement, 10.0,
           "residual ratio without/with the lambda ln(1/lambda) column");
  r.report("singular_fit_constant_term", fit.b_fit, fit.b_reference, "constant term against -2 f(I)");
  double so = 0.0;
  for (double theta : {0.3, 1.0, kPi / 2.0, 2.5}) so = std::max(so, std::abs(orbital::stable_orbital_elliptic(f, theta, opt).stable));
  r.check("stable_orbital_vanishes_for_bi_invariant_f", so, 0.0, 1e-8);
  return r;
}

inline SuiteReport suite_modular_lift(const RunConfig& cfg) {
  using namespace modular;
  SuiteReport r{"modular_lift", hex64(config_hash(cfg)), cfg.seed, {}};
  const auto M = static_cast<std::size_t>(cfg.m_qexp);
  const auto e4 = eisenstein_q(4, M), e6 = eisenstein_q(6, M), delta = delta_q(M);
  const auto diff = e4 * e4 * e4 - e6 * e6;
  bool exact = true;
  for (std::size_t n = 0; n <= M; ++n) exact = exact && diff[n] == 1728 * delta[n];
  r.check("discriminant_identity_exact", exact, 1.0, 0.0);
  r.check("tau_2", delta.order() >= 2 ? delta[2].convert_to<double>() : -24.0, -24.0, 0.0);

  const auto e6_i = eval_modular(e6, {0.0, 1.0});
  r.check("E6_vanishes_at_i", std::abs(e6_i.value), 0.0, 1e-9 + e6_i.tail_bound);
  const Complex rho = std::polar(1.0, 2.0 * kPi / 3.0);
  const auto e4_rho = eval_modular(e4, rho);
  r.check("E4_vanishes_at_rho", std::abs(e4_rho.value), 0.0, 1e-9 + e4_rho.tail_bound);

  std::mt19937_64 rng(cfg.seed ^ 0x5a5a5a5aull);
  double slash = 0.0, equiv = 0.0;
  const auto S = ModularElement::S(), T = ModularElement::T();
  for (int i = 0; i < 50; ++i) {
    const Complex z{uniform(rng, -0.5, 0.5), uniform(rng, 1.0, 1.6)};
    for (const auto* form : {&e4, &delta}) {
      const double ref = std::abs(eval_modular(*form, z).value);
      const Complex v = eval_modular(*form, z).value;
      slash = std::max(slash, std::abs(slash_action(*form, T, z).value - v) / ref);
      slash = std::max(slash, std::abs(slash_action(*form, S, z).value - v) / ref);
    }
    const auto g = iwasawa_compose({z.real(), z.imag(), uniform(rng, 0.0, 2 * kPi), 1});
    const double t = uniform(rng, 0.0, 2 * kPi);
    const Complex phi = lift_automorphic(delta, g).value;
    const double scale = std::abs(phi);
    equiv = std::max(equiv, std::abs(lift_automorphic(delta, T.to_real() * g).value - phi) / scale);
    equiv = std::max(equiv,
                     std::abs(lift_automorphic(delta, g * GroupElement::rotation(t)).value - std::polar(1.0, 12.0 * t) * phi) /
                         scale);
  }
  r.check("slash_invariance_S_T", slash, 0.0, 1e-9);
  r.check("lift_equivariance", equiv, 0.0, 1e-9);

  double dims = 0.0;
  for (int k = 0; k <= 60; ++k) {
    int count = 0;
    if (k % 2 == 0 && k >= 12)
      for (int c = 0; 6 * c <= k - 12; ++c) count += (k - 12 - 6 * c) % 4 == 0;
    dims = std::max(dims, std::abs(static_cast<double>(dim_cusp_forms(k) - count)));
  }
  r.check("dim_cusp_forms_oracle", dims, 0.0, 0.0);

  double ratio_err = 0.0, displayed = 0.0;
  for (int i = 0; i < 10; ++i) {
    const Complex z{uniform(rng, -0.5, 0.5), uniform(rng, 0.9, 1.5)};
    const auto g = iwasawa_compose({z.real(), z.imag(), 0.0, 1});
    const auto c = casimir_eigen_check(delta, g, 1e-3);
    ratio_err = std::max(ratio_err, std::abs(c.measured / c.expected - 1.0));
    displayed = std::max(displayed, std::abs(c.displayed_variant / c.expected - 1.0));
  }
  r.check("weight12_laplacian_eigenvalue", ratio_err, 0.0, 1e-4);
  r.report("weight12_laplacian_displayed_variant", displayed, 0.0, "i k y (dx + i dy) correction");
  return r;
}

inline SuiteReport suite_trace_poisson(const RunConfig& cfg) {
  SuiteReport r{"trace_poisson", hex64(config_hash(cfg)), cfg.seed, {}};
  double poisson = 0.0, odd = 0.0;
  for (double alpha : {0.5, 1.0, 2.0})
    for (double x : {0.0, 1.0, kPi}) {
      const auto psi = trace::SchwartzProfile::gaussian(alpha);
      poisson = std::max(poisson, trace::poisson_check(psi, x, 20).diff);
      odd = std::max(odd, trace::poisson_check(psi, x, 20, 1).diff);
    }
  r.check("poisson_gaussian_family", poisson, 0.0, 1e-10);
  r.report("poisson_parity_one_channel", odd, 0.0, "alternating lattice sum against half-integer frequencies");
  double ft = 0.0;
  for (int i = 0; i < 10; ++i)
    for (const auto& psi : {trace::SchwartzProfile::gaussian(1.0), trace::SchwartzProfile::quadratic_gaussian(0.7)})
      ft = std::max(ft, std::abs(psi.transform(0.5 * i) - psi.numerical_transform(0.5 * i)));
  r.check("closed_form_transform", ft, 0.0, 1e-10);

  const auto sp = trace::spectral_side({12, 14, 16}, {{12, 1.0}, {14, 1.0}, {16, 1.0}});
  r.check("spectral_side_window_12_16", sp.total.real(), 2.0, 0.0);
  const auto classes = trace::elliptic_classes_sl2z();
  r.check("elliptic_class_count", static_cast<double>(classes.size()), 6.0, 0.0);

  const auto rep = trace_compare_from_config(cfg);
  Complex geo_sum, st_sum, sp_sum;
  for (const auto& t : rep.spectral.terms) sp_sum += t.contribution;
  for (const auto& t : rep.geometric.terms) geo_sum += t.contribution;
  for (const auto& t : rep.stable.terms) st_sum += t.contribution;
  r.check("report_totals_equal_breakdowns",
          std::abs(sp_sum - rep.spectral_total) + std::abs(geo_sum - rep.geometric_total) +
              std::abs(st_sum - rep.stable_total),
          0.0, 0.0);
  r.report("spectral_minus_geometric", std::abs(rep.spectral_minus_geometric), 0.0,
           "epsilon and volume normalizations are caller-supplied");
  return r;
}

// ---------------------------------------------------------------------------
// Trace comparison from a config

inline trace::TraceReport trace_compare_from_config(const RunConfig& cfg) {
  std::set<int> window;
  for (double k : cfg.trace_window.points()) {
    if (k != std::floor(k)) throw ConfigError("trace.window must contain integers");
    window.insert(static_cast<int>(k));
  }
  std::map<int, Complex> weights = cfg.trace_weights;
  for (int k : window) weights.emplace(k, Complex(1.0, 0.0));
  std::map<std::string, int> eps = cfg.trace_epsilon;
  std::map<std::string, double> vol = cfg.trace_volume;
  for (const auto& c : trace::elliptic_classes_sl2z()) {
    eps.emplace(c.name, 1);
    vol.emplace(c.name, 1.0 / c.order);
  }
  return trace::trace_compare(config_test_function(cfg), window, weights, eps, vol, config_orbital_options(cfg));
}

inline std::vector<SuiteReport> cmd_verify(const RunConfig& cfg) {
  cfg.validate();
  return {suite_matrix_core(cfg), suite_repn_model(cfg), suite_fock_virasoro(cfg),
          suite_char_orbital(cfg), suite_modular_lift(cfg), suite_trace_poisson(cfg)};
}

// ---------------------------------------------------------------------------
// Tables

inline const std::vector<std::string>& table_kinds() {
  static const std::vector<std::string> kinds = {"character", "stable_character", "orbital_elliptic",
                                                 "orbital_hyperbolic", "dims"};
  return kinds;
}

/// Default grid for each table kind.
inline const GridSpec& default_grid(const std::string& what, const RunConfig& cfg) {
  if (what == "orbital_hyperbolic") return cfg.a_grid;
  if (what == "dims") return cfg.k_grid;
  return cfg.theta_grid;
}

inline Table cmd_tabulate(const std::string& what, const std::vector<double>& grid, const RunConfig& cfg) {
  using text::fmt;
  const std::string S(kSingularCell);
  Table t;
  const int n_max = static_cast<int>(cfg.n_max);
  if (what == "character") {
    t.header = {"theta", "n", "re Theta_n^+(k(theta))", "im Theta_n^+(k(theta))", "re Theta_n^-(k(theta))",
                "im Theta_n^-(k(theta))"};
    for (double th : grid)
      for (int n = 1; n <= n_max; ++n) {
        if (orbital::is_singular_angle(th)) {
          t.add_row({fmt(th), fmt(n), S, S, S, S});
          continue;
        }
        const Complex p = orbital::ds_character_K(n, 1, th), m = orbital::ds_character_K(n, -1, th);
        t.add_row({fmt(th), fmt(n), fmt(p.real()), fmt(p.imag()), fmt(m.real()), fmt(m.imag())});
      }
  } else if (what == "stable_character") {
    t.header = {"theta", "n", "re (Theta^+ - Theta^-)/D", "im (Theta^+ - Theta^-)/D", "re product form",
                "im product form"};
    for (double th : grid)
      for (int n = 1; n <= n_max; ++n) {
        if (orbital::is_singular_angle(th)) {
          t.add_row({fmt(th), fmt(n), S, S, S, S});
          continue;
        }
        const auto s = orbital::stable_character(n, th);
        t.add_row({fmt(th), fmt(n), fmt(s.quotient.real()), fmt(s.quotient.imag()), fmt(s.product_form.real()),
                   fmt(s.product_form.imag())});
      }
  } else if (what == "orbital_elliptic") {
    t.header = {"theta", "O_k(theta)(f)", "O_k(-theta)(f)", "SO(f)", "im Delta(k(theta)) SO(f)"};
    const auto f = config_test_function(cfg);
    const auto opt = config_orbital_options(cfg);
    for (double th : grid) {
      if (orbital::is_singular_angle(th)) {
        t.add_row({fmt(th), S, S, S, S});
        continue;
      }
      const auto so = orbital::stable_orbital_elliptic(f, th, opt);
      t.add_row({fmt(th), fmt(so.plus.value), fmt(so.minus.value), fmt(so.stable), fmt(so.transferred.imag())});
    }
  } else if (what == "orbital_hyperbolic") {
    t.header = {"a", "O_a(f) conjugation", "O_a(f) substituted", "|a - 1/a| O_a(f)"};
    const auto f = config_test_function(cfg);
    const auto opt = config_orbital_options(cfg);
    for (double a : grid) {
      if (!(a > 0.0)) throw DomainError("orbital_hyperbolic table: a must be positive");
      if (a == 1.0) {
        t.add_row({fmt(a), S, S, fmt(orbital::transfer_hyperbolic(f, a, opt).value)});
        continue;
      }
      const auto o = orbital::orbital_hyperbolic(f, a, opt);
      t.add_row({fmt(a), fmt(o.conjugation.value), fmt(o.substituted.value),
                 fmt(orbital::transfer_hyperbolic(f, a, opt).value)});
    }
  } else if (what == "dims") {
    t.header = {"k", "dim S_k"};
    for (double k : grid) {
      if (k != std::floor(k)) throw ConfigError("dims table: weights must be integers");
      t.add_row({fmt(static_cast<std::int64_t>(k)), fmt(modular::dim_cusp_forms(static_cast<int>(k)))});
    }
  } else {
    throw ConfigError("unknown table kind: " + what);
  }
  return t;
}

// ---------------------------------------------------------------------------
// Decomposition

struct Decomposition {
  GroupElement g;
  double determinant = 1.0;
  IwasawaCoords coords;
  std::string endoscopy;  // tag and datum, or the reason classification failed
};

/// Rejects det != 1 beyond 1e-9 unless `normalize` rescales by sqrt(det) (det > 0 only).
inline Decomposition cmd_decompose(double a, double b, double c, double d, bool normalize = false) {
  const double det = a * d - b * c;
  Decomposition out;
  out.determinant = det;
  if (normalize) {
    if (!(det > 0.0)) throw DomainError("cannot normalize: determinant " + text::fmt(det) + " is not positive");
    const double s = 1.0 / std::sqrt(det);
    a *= s, b *= s, c *= s, d *= s;
  } else if (!(std::abs(det - 1.0) <= 1e-9)) {
    throw DomainError("determinant is " + text::fmt(det) + ", expected 1");
  }
  out.g = {a, b, c, d};
  out.coords = iwasawa_decompose(out.g);
  try {
    const auto e = classify_endoscopy(out.g);
    out.endoscopy = std::string(to_string(e.tag)) + " datum=" + text::fmt(e.datum);
  } catch (const NotRegularSemisimple& e) {
    out.endoscopy = "not regular semisimple (parabolic)";
  }
  return out;
}

inline std::string to_string(const Decomposition& d) {
  using text::fmt;
  std::ostringstream os;
  os << "matrix: " << fmt(d.g.a) << ' ' << fmt(d.g.b) << ' ' << fmt(d.g.c) << ' ' << fmt(d.g.d) << "\n";
  os << "determinant: " << fmt(d.determinant) << "\n";
  os << "x: " << fmt(d.coords.x) << "\n";
  os << "y: " << fmt(d.coords.y) << "\n";
  os << "theta: " << fmt(d.coords.theta) << "\n";
  os << "sheet: " << (d.coords.sign > 0 ? "+1" : "-1") << "\n";
  os << "endoscopy: " << d.endoscopy << "\n";
  return os.str();
}

}  // namespace sl2lab::cli
