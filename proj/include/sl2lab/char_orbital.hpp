#pragma once

// Characters on the compact Cartan, orbital integrals of K-bi-invariant test
// functions, transfer factors and the small-angle expansion of the elliptic
// orbital integral.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sl2lab/errors.hpp"
#include "sl2lab/matrix_core.hpp"
#include "sl2lab/quadrature.hpp"
#include "sl2lab/scalar.hpp"

namespace sl2lab::orbital {

/// |z - w|^2 / (Im z Im w); 2 cosh d(z, w) = 2 + u.
inline double point_pair_invariant(Complex z, Complex w) { return std::norm(z - w) / (z.imag() * w.imag()); }

/// f(g) = h(u(g.i, i)) with the bump h(u) = A exp(-1/(1 - s^2)), s = (u - center)/width,
/// supported on |s| < 1. The support radius in u is center + width.
class RadialTestFunction {
 public:
  RadialTestFunction(double center, double width, double amplitude = 1.0)
      : center_(center), width_(width), amplitude_(amplitude) {
    if (!(width > 0.0)) throw ConfigError("RadialTestFunction: width must be positive");
    if (!(center + width > 0.0)) throw ConfigError("RadialTestFunction: support must meet [0, inf)");
  }

  /// The standard bump exp(-1/(1 - (u/R)^2)) on u < R.
  static RadialTestFunction bump(double radius) { return {0.0, radius}; }
  static RadialTestFunction zero(double radius = 1.0) { return {0.0, radius, 0.0}; }

  double center() const { return center_; }
  double width() const { return width_; }
  double amplitude() const { return amplitude_; }
  double support_radius() const { return center_ + width_; }
  bool is_zero() const { return amplitude_ == 0.0; }

  double profile(double u) const {
    const double s = (u - center_) / width_;
    if (!(std::abs(s) < 1.0) || amplitude_ == 0.0) return 0.0;
    return amplitude_ * std::exp(-1.0 / (1.0 - s * s));
  }

  double operator()(const GroupElement& g) const {
    const Complex i{0.0, 1.0};
    return profile(point_pair_invariant(mobius_act(g, i), i));
  }

  /// f at the identity.
  double at_identity() const { return profile(0.0); }

 private:
  double center_, width_, amplitude_;
};

// ---------------------------------------------------------------------------
// Characters

/// True when theta is numerically in pi*Z.
inline bool is_singular_angle(double theta, double tol = 1e-12) { return std::abs(std::sin(theta)) <= tol; }

/// chi_{2n-1}(k(theta)) = sin((2n-1)theta)/sin(theta), evaluated as
/// 1 + 2 sum_{j<n} cos(2j theta) so the value at theta in pi*Z is 2n-1.
inline double so3_character(int n, double theta) {
  if (n < 1) throw ConfigError("so3_character: n must be >= 1");
  double s = 1.0;
  for (int j = 1; j < n; ++j) s += 2.0 * std::cos(2.0 * j * theta);
  return s;
}

/// Rotation angle in [0, pi] of R in SO(3).
inline double so3_conjugacy_angle(const Eigen::Matrix3d& r, double tol = 1e-10) {
  const double orth = (r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  if (orth > tol || std::abs(r.determinant() - 1.0) > tol)
    throw DomainError("so3_conjugacy_angle: matrix is not a rotation");
  return std::acos(std::clamp(0.5 * (r.trace() - 1.0), -1.0, 1.0));
}

/// e^{i theta} - e^{-i theta} = 2i sin(theta).
inline Complex weyl_denominator(double theta) { return {0.0, 2.0 * std::sin(theta)}; }

/// Theta_n^{+-}(k(theta)) = -e^{+-i n theta}/(e^{i theta} - e^{-i theta}).
inline Complex ds_character_K(int n, int sign, double theta) {
  if (n < 1) throw ConfigError("ds_character_K: n must be >= 1");
  if (sign != 1 && sign != -1) throw ConfigError("ds_character_K: sign must be +1 or -1");
  if (is_singular_angle(theta)) throw SingularPoint("ds_character_K: theta in pi*Z");
  return -std::polar(1.0, sign * n * theta) / weyl_denominator(theta);
}

struct StableCharacter {
  Complex quotient;      // (Theta^+ - Theta^-)/(e^{i theta} - e^{-i theta})
  Complex product_form;  // -2i sin(theta) (e^{i n theta} - e^{-i n theta})
  Complex ratio;         // quotient / product_form (diagnostic)
};

inline StableCharacter stable_character(int n, double theta) {
  const Complex diff = ds_character_K(n, +1, theta) - ds_character_K(n, -1, theta);
  StableCharacter out;
  out.quotient = diff / weyl_denominator(theta);
  out.product_form = Complex(0.0, -2.0 * std::sin(theta)) * (std::polar(1.0, n * theta) - std::polar(1.0, -n * theta));
  out.ratio = std::abs(out.product_form) > 0.0 ? out.quotient / out.product_form : Complex(std::nan(""), 0.0);
  return out;
}

/// kappa-orbital integral of a pseudo-coefficient of Theta_n^{sign}, via
/// sum_w kappa(w) Theta_{w mu}(k(theta)^{-1}) with kappa(1) = 1, kappa(w) = -1.
inline Complex kappa_orbital(int n, int sign, double theta) {
  return ds_character_K(n, sign, -theta) - ds_character_K(n, -sign, -theta);
}

// ---------------------------------------------------------------------------
// Orbital integrals

enum class Parametrization { Hyperbolic, Elliptic, Unipotent };

struct OrbitalResult {
  double value = 0.0;
  double estimated_quadrature_error = 0.0;
  Parametrization parametrization = Parametrization::Hyperbolic;
  double parameter = 0.0;  // a, theta, or 0 for unipotent
};

struct OrbitalOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-12;
  std::size_t max_intervals = 20000;
};

namespace detail {

inline quad::QuadratureOptions to_quad(const OrbitalOptions& o) { return {o.abs_tol, o.rel_tol, o.max_intervals}; }

inline OrbitalResult finish(const quad::QuadratureResult& q, Parametrization p, double parameter, const char* what) {
  if (!q.converged) throw TruncationError(std::string(what) + ": quadrature did not reach tolerance");
  return {q.value, q.error, p, parameter};
}

}  // namespace detail

/// Integrand of the hyperbolic orbital integral in the unipotent-conjugation
/// parametrization: f(n(x)^{-1} diag(a, 1/a) n(x)).
inline double hyperbolic_integrand(const RadialTestFunction& f, double a, double x) {
  const GroupElement g{a, (a - 1.0 / a) * x, 0.0, 1.0 / a};
  return f(g);
}

/// Integrand of the elliptic orbital integral: sgn(t-1) f([[cos, t sin], [-sin/t, cos]]).
inline double elliptic_integrand(const RadialTestFunction& f, double theta, double t) {
  if (t <= 0.0) return 0.0;
  const double c = std::cos(theta), s = std::sin(theta);
  const GroupElement g{c, t * s, -s / t, c};
  const double sgn = t > 1.0 ? 1.0 : (t < 1.0 ? -1.0 : 0.0);
  return sgn * f(g);
}

/// Window of t outside which the elliptic integrand vanishes: u = sin^2 (t - 1/t)^2.
inline std::pair<double, double> elliptic_window(double support_radius, double theta) {
  const double s = std::sqrt(support_radius) / std::abs(std::sin(theta));
  const double t_hi = 0.5 * (s + std::sqrt(s * s + 4.0));
  return {1.0 / t_hi, t_hi};
}

/// int_R f(u) du over the unipotent orbit n(u) (sign = 0), or over the half line
/// u >= 0 (sign = +1) / u <= 0 (sign = -1).
inline OrbitalResult unipotent_integral(const RadialTestFunction& f, int sign = 0, const OrbitalOptions& opt = {}) {
  if (f.is_zero()) return {0.0, 0.0, Parametrization::Unipotent, 0.0};
  const double half = std::sqrt(f.support_radius());
  auto g = [&](double u) { return f(GroupElement::unipotent(u)); };
  quad::QuadratureResult q;
  if (sign >= 0) q += quad::integrate(g, 0.0, half, detail::to_quad(opt));
  if (sign <= 0) q += quad::integrate(g, -half, 0.0, detail::to_quad(opt));
  return detail::finish(q, Parametrization::Unipotent, 0.0, "unipotent_integral");
}

struct HyperbolicOrbital {
  OrbitalResult conjugation;  // int f(n(x)^{-1} gamma n(x)) dx
  OrbitalResult substituted;  // |a - 1/a|^{-1} int f([[a, u], [0, 1/a]]) du
  double discrepancy = 0.0;

  double value() const { return conjugation.value; }
};

inline HyperbolicOrbital orbital_hyperbolic(const RadialTestFunction& f, double a, const OrbitalOptions& opt = {}) {
  if (!(a > 0.0)) throw DomainError("orbital_hyperbolic: a must be positive");
  if (a == 1.0) throw SingularPoint("orbital_hyperbolic: a = 1 (transfer factor vanishes)");
  const double delta = a - 1.0 / a;
  const double radius = f.support_radius();
  HyperbolicOrbital out;
  out.conjugation = {0.0, 0.0, Parametrization::Hyperbolic, a};
  out.substituted = out.conjugation;
  if (f.is_zero() || delta * delta >= radius) return out;

  const double x_max = std::sqrt(radius / (delta * delta) - 1.0);
  const auto q1 = quad::integrate_panels([&](double x) { return hyperbolic_integrand(f, a, x); },
                                         {-x_max, 0.0, x_max}, detail::to_quad(opt));
  out.conjugation = detail::finish(q1, Parametrization::Hyperbolic, a, "orbital_hyperbolic");

  const double u_max = std::sqrt(radius - delta * delta);
  const auto q2 = quad::integrate_panels([&](double u) { return f(GroupElement{a, u, 0.0, 1.0 / a}); },
                                         {-u_max, 0.0, u_max}, detail::to_quad(opt));
  out.substituted = detail::finish(q2, Parametrization::Hyperbolic, a, "orbital_hyperbolic");
  out.substituted.value /= std::abs(delta);
  out.substituted.estimated_quadrature_error /= std::abs(delta);
  out.discrepancy = std::abs(out.conjugation.value - out.substituted.value);
  return out;
}

/// f^H(a) = |a - 1/a| O_a(f), extended continuously to a = 1 by the unipotent integral.
inline OrbitalResult transfer_hyperbolic(const RadialTestFunction& f, double a, const OrbitalOptions& opt = {}) {
  if (!(a > 0.0)) throw DomainError("transfer_hyperbolic: a must be positive");
  if (std::abs(a - 1.0) <= 1e-12) {
    auto r = unipotent_integral(f, 0, opt);
    r.parametrization = Parametrization::Hyperbolic;
    r.parameter = a;
    return r;
  }
  const double delta = std::abs(a - 1.0 / a);
  auto r = orbital_hyperbolic(f, a, opt).conjugation;
  r.value *= delta;
  r.estimated_quadrature_error *= delta;
  return r;
}

inline OrbitalResult orbital_elliptic(const RadialTestFunction& f, double theta, const OrbitalOptions& opt = {}) {
  if (is_singular_angle(theta)) throw SingularPoint("orbital_elliptic: theta in pi*Z (central element)");
  if (f.is_zero()) return {0.0, 0.0, Parametrization::Elliptic, theta};
  const auto [t_lo, t_hi] = elliptic_window(f.support_radius(), theta);
  const auto q = quad::integrate_panels([&](double t) { return elliptic_integrand(f, theta, t); }, {t_lo, 1.0, t_hi},
                                        detail::to_quad(opt));
  return detail::finish(q, Parametrization::Elliptic, theta, "orbital_elliptic");
}

struct StableOrbital {
  OrbitalResult plus;   // O_{k(theta)}
  OrbitalResult minus;  // O_{k(-theta)}
  double stable = 0.0;  // SO = O_{k(theta)} - O_{k(-theta)}
  Complex transfer_factor;
  Complex transferred;  // f^H = Delta(k(theta)) SO
  double estimated_quadrature_error = 0.0;
};

/// Delta(k(theta)) = -2i sin(theta).
inline Complex elliptic_transfer_factor(double theta) { return {0.0, -2.0 * std::sin(theta)}; }

inline StableOrbital stable_orbital_elliptic(const RadialTestFunction& f, double theta, const OrbitalOptions& opt = {}) {
  StableOrbital out;
  out.plus = orbital_elliptic(f, theta, opt);
  out.minus = orbital_elliptic(f, -theta, opt);
  out.stable = out.plus.value - out.minus.value;
  out.transfer_factor = elliptic_transfer_factor(theta);
  out.transferred = out.transfer_factor * out.stable;
  out.estimated_quadrature_error = out.plus.estimated_quadrature_error + out.minus.estimated_quadrature_error;
  return out;
}

// ---------------------------------------------------------------------------
// Small-angle expansion of the elliptic orbital integral

struct SingularExpansion {
  std::vector<double> lambda_grid;
  std::vector<double> f_plus;   // F(lambda), sin(theta) = lambda
  std::vector<double> f_minus;  // F(-lambda)

  // F(lambda) ~ a/|lambda| + b + c lambda ln(1/|lambda|)
  double a_fit = 0.0, b_fit = 0.0, log_coeff = 0.0;
  double residual_full = 0.0;    // with the log regressor
  double residual_nested = 0.0;  // a/|lambda| + b only
  double log_improvement = 1.0;  // residual_nested / residual_full

  double a_reference = 0.0;  // int_0^inf f(n(u)) du
  double b_reference = 0.0;  // -2 f(I)
  double a_relative_error = 0.0;

  std::vector<double> g_values;  // |lambda| (F(lambda) + F(-lambda))
  std::vector<double> h_values;  // lambda (F(lambda) - F(-lambda))
  double g_fit_residual = 0.0;   // basis {|lambda|^{2n-1}, lambda^{2n}}, n = 0..2
  double h_fit_residual = 0.0;   // basis {lambda^{2n}}, n = 0..2
};

namespace detail {

inline double lsq_residual(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, Eigen::VectorXd* coeffs = nullptr) {
  const Eigen::VectorXd c = x.colPivHouseholderQr().solve(y);
  if (coeffs) *coeffs = c;
  return (y - x * c).norm();
}

}  // namespace detail

inline void validate_lambda_grid(const std::vector<double>& grid) {
  if (grid.size() < 8) throw ConfigError("singular_expansion: lambda grid needs at least 8 points");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0 && grid[i] <= 0.3)) throw ConfigError("singular_expansion: lambda grid must lie in (0, 0.3]");
    if (i > 0 && !(grid[i] < grid[i - 1])) throw ConfigError("singular_expansion: lambda grid must be decreasing");
  }
}

inline SingularExpansion singular_expansion(const RadialTestFunction& f, const std::vector<double>& lambda_grid,
                                            const OrbitalOptions& opt = {}) {
  validate_lambda_grid(lambda_grid);
  SingularExpansion out;
  out.lambda_grid = lambda_grid;
  const auto n = static_cast<Eigen::Index>(lambda_grid.size());
  Eigen::VectorXd fv(n), gv(n), hv(n);
  Eigen::MatrixXd full(n, 3), g_basis(n, 6), h_basis(n, 3);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lam = lambda_grid[static_cast<std::size_t>(i)];
    const double theta = std::asin(lam);
    const double fp = orbital_elliptic(f, theta, opt).value;
    const double fm = orbital_elliptic(f, -theta, opt).value;
    out.f_plus.push_back(fp);
    out.f_minus.push_back(fm);
    fv(i) = fp;
    gv(i) = lam * (fp + fm);
    hv(i) = lam * (fp - fm);
    full(i, 0) = 1.0 / lam;
    full(i, 1) = 1.0;
    full(i, 2) = lam * std::log(1.0 / lam);
    for (int k = 0; k < 3; ++k) {
      g_basis(i, 2 * k) = std::pow(lam, 2 * k - 1);
      g_basis(i, 2 * k + 1) = std::pow(lam, 2 * k);
      h_basis(i, k) = std::pow(lam, 2 * k);
    }
  }
  out.g_values.assign(gv.data(), gv.data() + n);
  out.h_values.assign(hv.data(), hv.data() + n);

  Eigen::VectorXd c;
  out.residual_full = detail::lsq_residual(full, fv, &c);
  out.a_fit = c(0);
  out.b_fit = c(1);
  out.log_coeff = c(2);
  out.residual_nested = detail::lsq_residual(full.leftCols(2), fv);
  if (out.residual_full > 0.0)
    out.log_improvement = out.residual_nested / out.residual_full;
  else
    out.log_improvement = out.residual_nested > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;

  out.a_reference = unipotent_integral(f, +1, opt).value;
  out.b_reference = -2.0 * f.at_identity();
  out.a_relative_error = out.a_reference != 0.0 ? std::abs(out.a_fit - out.a_reference) / std::abs(out.a_reference)
                                                 : std::abs(out.a_fit);
  out.g_fit_residual = detail::lsq_residual(g_basis, gv);
  out.h_fit_residual = detail::lsq_residual(h_basis, hv);
  return out;
}

}  // namespace sl2lab::orbital
