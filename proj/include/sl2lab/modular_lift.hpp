#pragma once

// Evaluation of q-expansions on the upper half plane, the weight-k slash
// action, the lift to SL(2,R), point-pair kernels averaged over SL(2,Z), the
// weight-k Laplacian eigenvalue check and dimensions of cusp form spaces.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "sl2lab/char_orbital.hpp"
#include "sl2lab/errors.hpp"
#include "sl2lab/matrix_core.hpp"
#include "sl2lab/qexpansion.hpp"
#include "sl2lab/scalar.hpp"

namespace sl2lab::modular {

struct EvalOptions {
  double y_min = 0.2;
  double tol = 1e-15;  // target for the certified tail bound
};

struct ModularValue {
  Complex value;
  double tail_bound = 0.0;
  std::size_t terms_used = 0;
};

/// sum a_n q^n at q = exp(2 pi i z).
///
/// The tail beyond the last summed index n_c is bounded by 2 C n_c^p |q|^{n_c},
/// where |a_n| <= C n^p (p = k - 1, C from the stored coefficients) and n_c is
/// past the point where the envelope ratio drops below 1/2.
inline ModularValue eval_modular(const QExpansion& f, Complex z, const EvalOptions& opt = {}) {
  if (!(z.imag() >= opt.y_min)) throw DomainError("eval_modular: Im z below the evaluation region");
  const double r = std::exp(-2.0 * kPi * z.imag());
  const double p = std::max(0, f.weight - 1);
  const std::size_t order = f.order();

  double envelope = 0.0;
  for (std::size_t n = 1; n <= order; ++n)
    envelope = std::max(envelope, std::abs(f.coeffs[n].convert_to<double>()) / std::pow(static_cast<double>(n), p));

  auto bound_from = [&](std::size_t n) { return 2.0 * envelope * std::pow(static_cast<double>(n), p) * std::pow(r, n); };
  auto ratio_ok = [&](std::size_t n) { return std::pow(1.0 + 1.0 / static_cast<double>(n), p) * r <= 0.5; };

  std::size_t cut = 1;
  if (envelope > 0.0) {
    while (!(ratio_ok(cut) && bound_from(cut) <= opt.tol)) {
      ++cut;
      if (cut > order + 1) throw TruncationError("eval_modular: truncation order insufficient for tolerance");
    }
  } else {
    cut = order + 1;
  }

  ModularValue out;
  const double x = z.real();
  for (std::size_t n = 0; n < cut && n <= order; ++n) {
    if (f.coeffs[n] == 0) continue;
    const double frac = std::fmod(static_cast<double>(n) * x, 1.0);
    out.value += f.coeffs[n].convert_to<double>() * std::polar(std::pow(r, n), 2.0 * kPi * frac);
  }
  out.terms_used = std::min(cut, order + 1);
  out.tail_bound = envelope > 0.0 ? bound_from(cut) : 0.0;
  return out;
}

/// f(z) through reduction to the fundamental domain: f(z) = j(gamma, z)^{-k} f(gamma z).
inline ModularValue eval_modular_reduced(const QExpansion& f, Complex z, const EvalOptions& opt = {}) {
  const auto red = reduce_to_fundamental_domain(z);
  auto v = eval_modular(f, red.point, opt);
  const Complex j = std::pow(automorphy_factor(red.gamma.to_real(), z), -f.weight);
  v.value *= j;
  v.tail_bound *= std::abs(j);
  return v;
}

/// (f|_k gamma)(z) = (cz+d)^{-k} f(gamma z).
inline ModularValue slash_action(const QExpansion& f, const GroupElement& gamma, Complex z, const EvalOptions& opt = {}) {
  const Complex j = std::pow(automorphy_factor(gamma, z), -f.weight);
  auto v = eval_modular(f, mobius_act(gamma, z), opt);
  v.value *= j;
  v.tail_bound *= std::abs(j);
  return v;
}

inline ModularValue slash_action(const QExpansion& f, const ModularElement& gamma, Complex z, const EvalOptions& opt = {}) {
  return slash_action(f, gamma.to_real(), z, opt);
}

struct AutomorphicValue {
  GroupElement g;
  Complex value;
  int weight = 0;
  double tail_bound = 0.0;
};

/// phi_f(g) = y^{k/2} e^{i k theta} f(x + iy) in the chart g = n(x) a(y) k(theta).
inline AutomorphicValue lift_automorphic(const QExpansion& f, const GroupElement& g, const EvalOptions& opt = {}) {
  const auto c = iwasawa_decompose(g);
  const double k = f.weight;
  const auto v = eval_modular(f, {c.x, c.y}, opt);
  const double scale = std::pow(c.y, 0.5 * k);
  const double phase = c.sign < 0 ? c.theta + kPi : c.theta;
  return {g, scale * std::polar(1.0, k * phase) * v.value, f.weight, scale * v.tail_bound};
}

// ---------------------------------------------------------------------------
// Kernel K(z, z') = sum_{gamma in SL(2,Z)} k(u(z, gamma z'))

struct HeckeKernelValue {
  Complex z, z_prime;
  double value = 0.0;
  std::size_t terms_used = 0;   // nonzero terms
  std::size_t enumerated = 0;   // group elements visited
  std::int64_t height_bound = 0;
  std::int64_t support_threshold = 0;
  bool complete = false;
  double tail_bound = 0.0;  // 0 when complete, +inf otherwise
};

/// Frobenius norm of n(x) a(y), the chart representative of z.
inline double chart_norm(Complex z) {
  return std::sqrt((z.real() * z.real() + z.imag() * z.imag() + 1.0) / z.imag());
}

/// Height beyond which no gamma can bring gamma z' into the support around z.
inline std::int64_t kernel_support_threshold(double support_radius, Complex z, Complex z_prime) {
  return static_cast<std::int64_t>(std::floor(chart_norm(z) * chart_norm(z_prime) * std::sqrt(2.0 + support_radius)));
}

namespace detail {

inline std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
  if (b == 0) {
    x = a >= 0 ? 1 : -1;
    y = 0;
    return std::abs(a);
  }
  std::int64_t x1, y1;
  const std::int64_t g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

// t-range with |base + t * step| <= bound.
inline std::pair<std::int64_t, std::int64_t> t_range(std::int64_t base, std::int64_t step, std::int64_t bound) {
  if (step == 0) {
    if (std::abs(base) <= bound) return {std::numeric_limits<std::int64_t>::min() / 4, std::numeric_limits<std::int64_t>::max() / 4};
    return {1, 0};
  }
  if (step > 0) return {ceil_div(-bound - base, step), floor_div(bound - base, step)};
  return {ceil_div(bound - base, step), floor_div(-bound - base, step)};
}

}  // namespace detail

/// All gamma in SL(2,Z) with max |entry| <= bound, ordered by (height, a, b, c, d).
inline std::vector<ModularElement> enumerate_sl2z(std::int64_t bound) {
  std::vector<ModularElement> out;
  for (std::int64_t c = -bound; c <= bound; ++c)
    for (std::int64_t d = -bound; d <= bound; ++d) {
      if (std::gcd(c, d) != 1) continue;
      // a d - b c = 1: solve d*a0 + (-c)*b0 = 1.
      std::int64_t a0, b0;
      detail::ext_gcd(d, -c, a0, b0);
      const auto ra = detail::t_range(a0, c, bound);
      const auto rb = detail::t_range(b0, d, bound);
      const std::int64_t lo = std::max(ra.first, rb.first), hi = std::min(ra.second, rb.second);
      for (std::int64_t t = lo; t <= hi; ++t) out.push_back({a0 + t * c, b0 + t * d, c, d});
    }
  std::sort(out.begin(), out.end(), [](const ModularElement& x, const ModularElement& y) {
    const auto hx = x.height(), hy = y.height();
    if (hx != hy) return hx < hy;
    return x < y;
  });
  return out;
}

inline HeckeKernelValue hecke_kernel(const orbital::RadialTestFunction& k, Complex z, Complex z_prime,
                                     std::optional<std::int64_t> height_bound = std::nullopt) {
  if (!(z.imag() > 0.0) || !(z_prime.imag() > 0.0)) throw DomainError("hecke_kernel: points must lie in H");
  HeckeKernelValue out;
  out.z = z;
  out.z_prime = z_prime;
  out.support_threshold = kernel_support_threshold(k.support_radius(), z, z_prime);
  out.height_bound = height_bound.value_or(out.support_threshold);
  out.complete = out.height_bound >= out.support_threshold;
  out.tail_bound = out.complete ? 0.0 : std::numeric_limits<double>::infinity();
  if (k.is_zero()) return out;
  for (const auto& gamma : enumerate_sl2z(out.height_bound)) {
    ++out.enumerated;
    const double term = k.profile(orbital::point_pair_invariant(z, mobius_act(gamma, z_prime)));
    if (term != 0.0) {
      out.value += term;
      ++out.terms_used;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Weight-k Laplacian

struct CasimirEigenCheck {
  Complex measured;         // (Delta_k F)/F with Delta_k = -y^2 (dxx + dyy) + i k y dx
  double expected = 0.0;    // (k/2)(1 - k/2)
  Complex displayed_variant;  // same ratio with i k y (dx + i dy); carries a first-order residual
  double lambda_s_equals_k = 0.0;  // s(s-1)/4 at s = k
  Complex s_from_measured;         // root of s(s-1)/4 = measured with Re s >= 1/2
  double relative_error = 0.0;     // |measured / expected - 1| (|measured| when expected = 0)
};

/// Finite-difference weight-k Laplacian of F(z) = y^{k/2} f(z) at z = g.i.
inline CasimirEigenCheck casimir_eigen_check(const QExpansion& f, const GroupElement& g, double h_step,
                                             const EvalOptions& opt = {}) {
  if (!(h_step >= 1e-4 && h_step <= 1e-2)) throw ConfigError("casimir_eigen_check: h_step must lie in [1e-4, 1e-2]");
  const Complex z = mobius_act(g, {0.0, 1.0});
  const double k = f.weight;
  auto F = [&](double dx, double dy) {
    const Complex w{z.real() + dx, z.imag() + dy};
    return std::pow(w.imag(), 0.5 * k) * eval_modular(f, w, opt).value;
  };
  const double h = h_step, y = z.imag();
  const Complex f0 = F(0, 0);
  const Complex fxp = F(h, 0), fxm = F(-h, 0), fyp = F(0, h), fym = F(0, -h);
  const double nearby = std::max({std::abs(fxp), std::abs(fxm), std::abs(fyp), std::abs(fym)});
  if (!(std::abs(f0) > 1e-9 * nearby) || std::abs(f0) < 1e-300)
    throw IllConditioned("casimir_eigen_check: F vanishes at the sample point");
  const Complex fxx = (fxp - 2.0 * f0 + fxm) / (h * h);
  const Complex fyy = (fyp - 2.0 * f0 + fym) / (h * h);
  const Complex fx = (fxp - fxm) / (2.0 * h);
  const Complex fy = (fyp - fym) / (2.0 * h);
  const Complex i{0.0, 1.0};
  const Complex lap = -y * y * (fxx + fyy);

  CasimirEigenCheck out;
  out.measured = (lap + i * k * y * fx) / f0;
  out.displayed_variant = (lap + i * k * y * (fx + i * fy)) / f0;
  out.expected = 0.5 * k * (1.0 - 0.5 * k);
  out.lambda_s_equals_k = k * (k - 1.0) / 4.0;
  out.s_from_measured = 0.5 * (1.0 + std::sqrt(Complex(1.0) + 16.0 * out.measured));
  out.relative_error = out.expected != 0.0 ? std::abs(out.measured / out.expected - 1.0) : std::abs(out.measured);
  return out;
}

// ---------------------------------------------------------------------------
// Dimensions

/// dim S_k(SL(2,Z)).
inline int dim_cusp_forms(int k) {
  if (k < 0 || k % 2 != 0) return 0;
  if (k < 12) return 0;
  const int base = k / 12;
  return k % 12 == 2 ? base - 1 : base;
}

/// Delta * E_4^b E_6^c with 4b + 6c = k - 12, a basis of S_k.
inline std::vector<QExpansion> cusp_form_basis(int k, std::size_t order) {
  std::vector<QExpansion> out;
  if (k < 12 || k % 2 != 0) return out;
  const auto delta = delta_q(order);
  const auto e4 = eisenstein_q(4, order), e6 = eisenstein_q(6, order);
  const int rest = k - 12;
  for (int c = 0; 6 * c <= rest; ++c) {
    if ((rest - 6 * c) % 4 != 0) continue;
    const int b = (rest - 6 * c) / 4;
    QExpansion m = delta;
    for (int j = 0; j < b; ++j) m = m * e4;
    for (int j = 0; j < c; ++j) m = m * e6;
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace sl2lab::modular
