#pragma once

// Poisson summation on the covering line of SO(2), the spectral side with
// cusp-form multiplicities, the elliptic geometric side and its comparison.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sl2lab/char_orbital.hpp"
#include "sl2lab/errors.hpp"
#include "sl2lab/matrix_core.hpp"
#include "sl2lab/modular_lift.hpp"
#include "sl2lab/quadrature.hpp"
#include "sl2lab/scalar.hpp"
#include "sl2lab/text_format.hpp"

namespace sl2lab::trace {

// ---------------------------------------------------------------------------
// Poisson summation

/// psi(t) = t^{2p} exp(-alpha t^2), p in {0, 1}, with psi_hat(xi) = int psi(t) e^{-i xi t} dt.
class SchwartzProfile {
 public:
  enum class Kind { Gaussian, QuadraticGaussian };

  static SchwartzProfile gaussian(double alpha) { return {Kind::Gaussian, alpha}; }
  static SchwartzProfile quadratic_gaussian(double alpha) { return {Kind::QuadraticGaussian, alpha}; }

  Kind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  std::string name() const {
    return (kind_ == Kind::Gaussian ? "gaussian(" : "t2_gaussian(") + text::fmt(alpha_) + ")";
  }

  double operator()(double t) const {
    const double g = std::exp(-alpha_ * t * t);
    return kind_ == Kind::Gaussian ? g : t * t * g;
  }

  double transform(double xi) const {
    const double g = std::sqrt(kPi / alpha_) * std::exp(-xi * xi / (4.0 * alpha_));
    if (kind_ == Kind::Gaussian) return g;
    return g * (1.0 / (2.0 * alpha_) - xi * xi / (4.0 * alpha_ * alpha_));
  }

  /// Quadrature of int psi(t) cos(xi t) dt; psi is even so the sine part vanishes.
  double numerical_transform(double xi, double abs_tol = 1e-13) const {
    const double L = std::sqrt(40.0 / alpha_) + 2.0;
    std::vector<double> breaks;
    const int panels = std::max(8, static_cast<int>(std::ceil(std::abs(xi) * L / kPi)));
    for (int i = 0; i <= panels; ++i) breaks.push_back(-L + 2.0 * L * i / panels);
    quad::QuadratureOptions opt{abs_tol, 1e-14, 20000};
    return quad::integrate_panels([&](double t) { return (*this)(t) * std::cos(xi * t); }, breaks, opt).value;
  }

 private:
  SchwartzProfile(Kind k, double a) : kind_(k), alpha_(a) {
    if (!(a > 0.0)) throw ConfigError("SchwartzProfile: alpha must be positive");
  }
  Kind kind_;
  double alpha_;
};

struct PoissonCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double diff = 0.0;
  int parity = 0;
};

/// parity 0: sum psi(x + 2 pi n) against (1/2pi) sum psi_hat(k) e^{ikx}.
/// parity 1: alternating sum against half-integer frequencies.
/// Sums run symmetrically outward from the centre so that x -> -x mirrors the order.
inline PoissonCheck poisson_check(const SchwartzProfile& psi, double x, int n_terms, int parity = 0) {
  if (n_terms < 10) throw ConfigError("poisson_check: need at least 10 terms");
  if (parity != 0 && parity != 1) throw ConfigError("poisson_check: parity must be 0 or 1");
  const double two_pi = 2.0 * kPi;
  PoissonCheck out;
  out.parity = parity;
  double lhs = psi(x);
  for (int n = 1; n <= n_terms; ++n) {
    const double s = (parity == 1 && n % 2 == 1) ? -1.0 : 1.0;
    lhs += s * (psi(x + two_pi * n) + psi(x - two_pi * n));
  }
  double rhs = 0.0;
  if (parity == 0) {
    rhs = psi.transform(0.0);
    for (int k = 1; k <= n_terms; ++k) rhs += 2.0 * psi.transform(k) * std::cos(k * x);
  } else {
    for (int k = 0; k <= n_terms; ++k) rhs += 2.0 * psi.transform(k + 0.5) * std::cos((k + 0.5) * x);
  }
  out.lhs = lhs;
  out.rhs = rhs / two_pi;
  out.diff = std::abs(out.lhs - out.rhs);
  return out;
}

// ---------------------------------------------------------------------------
// Spectral side

struct SpectralTerm {
  int weight = 0;
  int multiplicity = 0;
  Complex test_weight;
  Complex contribution;
};

struct SpectralSide {
  Complex total;
  std::vector<SpectralTerm> terms;
};

/// sum_k dim S_k * w(k) over the window, in increasing k.
inline SpectralSide spectral_side(const std::set<int>& window, const std::map<int, Complex>& weights) {
  SpectralSide out;
  for (int k : window) {
    const auto it = weights.find(k);
    if (it == weights.end()) throw ConfigError("spectral_side: no test weight for k = " + std::to_string(k));
    SpectralTerm t{k, modular::dim_cusp_forms(k), it->second, {}};
    t.contribution = static_cast<double>(t.multiplicity) * t.test_weight;
    out.total += t.contribution;
    out.terms.push_back(t);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Elliptic classes of SL(2,Z)

struct EllipticClass {
  std::string name;
  ModularElement representative;
  double theta = 0.0;           // arccos(tr/2)
  double rotation_angle = 0.0;  // representative conjugate in SL(2,R) to k(rotation_angle)
  int order = 0;
};

inline int element_order(const ModularElement& g, int max_order = 12) {
  ModularElement p = g;
  for (int n = 1; n <= max_order; ++n) {
    if (p == ModularElement::identity()) return n;
    p = p * g;
  }
  return 0;
}

/// The six elliptic classes: S^{+-1}, (ST)^{+-1}, (ST)^{+-2}.
inline std::vector<EllipticClass> elliptic_classes_sl2z() {
  const auto S = ModularElement::S(), T = ModularElement::T();
  const auto st = S * T, st2 = st * st;
  const std::vector<std::pair<std::string, ModularElement>> reps = {
      {"S", S},          {"S^-1", S.inverse()},        {"ST", st},
      {"(ST)^-1", st.inverse()}, {"(ST)^2", st2}, {"(ST)^-2", st2.inverse()}};
  std::vector<EllipticClass> out;
  for (const auto& [name, g] : reps) {
    EllipticClass c;
    c.name = name;
    c.representative = g;
    c.theta = std::acos(0.5 * static_cast<double>(g.trace()));
    c.rotation_angle = classify_endoscopy(g.to_real()).datum;
    c.order = element_order(g);
    out.push_back(c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Geometric side

struct GeometricTerm {
  EllipticClass cls;
  int epsilon = 1;
  double volume = 0.0;
  double orbital = 0.0;  // O_{k(rotation_angle)}(f)
  double contribution = 0.0;
};

struct StableTerm {
  EllipticClass cls;
  double volume = 0.0;
  Complex transfer_factor;
  double stable_orbital = 0.0;
  Complex contribution;  // vol * Delta * SO
};

struct GeometricSide {
  double total = 0.0;
  std::vector<GeometricTerm> terms;
};

struct StableSide {
  Complex total;
  std::vector<StableTerm> terms;
};

namespace detail {

template <class M>
const typename M::mapped_type& lookup(const M& m, const std::string& key, const char* what) {
  const auto it = m.find(key);
  if (it == m.end()) throw ConfigError(std::string(what) + ": missing constant for class " + key);
  return it->second;
}

}  // namespace detail

inline GeometricSide geometric_side(const orbital::RadialTestFunction& f, const std::map<std::string, int>& epsilon,
                                    const std::map<std::string, double>& volume,
                                    const orbital::OrbitalOptions& opt = {}) {
  GeometricSide out;
  for (const auto& c : elliptic_classes_sl2z()) {
    GeometricTerm t;
    t.cls = c;
    t.epsilon = detail::lookup(epsilon, c.name, "geometric_side");
    if (t.epsilon != 1 && t.epsilon != -1) throw ConfigError("geometric_side: epsilon must be +1 or -1 for " + c.name);
    t.volume = detail::lookup(volume, c.name, "geometric_side");
    t.orbital = f.is_zero() ? 0.0 : orbital::orbital_elliptic(f, c.rotation_angle, opt).value;
    t.contribution = t.epsilon * t.volume * t.orbital;
    out.total += t.contribution;
    out.terms.push_back(t);
  }
  return out;
}

inline StableSide stable_side(const orbital::RadialTestFunction& f, const std::map<std::string, double>& volume,
                              const orbital::OrbitalOptions& opt = {}) {
  StableSide out;
  for (const auto& c : elliptic_classes_sl2z()) {
    StableTerm t;
    t.cls = c;
    t.volume = detail::lookup(volume, c.name, "stable_side");
    t.transfer_factor = orbital::elliptic_transfer_factor(c.rotation_angle);
    t.stable_orbital = f.is_zero() ? 0.0 : orbital::stable_orbital_elliptic(f, c.rotation_angle, opt).stable;
    t.contribution = t.volume * t.transfer_factor * t.stable_orbital;
    out.total += t.contribution;
    out.terms.push_back(t);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Comparison report

struct TraceReport {
  Complex spectral_total;
  Complex geometric_total;
  Complex stable_total;
  Complex spectral_minus_geometric;
  Complex geometric_minus_stable;
  SpectralSide spectral;
  GeometricSide geometric;
  StableSide stable;
  std::map<std::string, int> epsilon;
  std::map<std::string, double> volume;
  std::string test_function;  // description of f
};

/// Both sides and the stable variant; equality is recorded, never enforced.
inline TraceReport trace_compare(const orbital::RadialTestFunction& f, const std::set<int>& window,
                                 const std::map<int, Complex>& weights, const std::map<std::string, int>& epsilon,
                                 const std::map<std::string, double>& volume, const orbital::OrbitalOptions& opt = {}) {
  TraceReport r;
  r.spectral = spectral_side(window, weights);
  r.geometric = geometric_side(f, epsilon, volume, opt);
  r.stable = stable_side(f, volume, opt);
  r.spectral_total = r.spectral.total;
  r.geometric_total = r.geometric.total;
  r.stable_total = r.stable.total;
  r.spectral_minus_geometric = r.spectral_total - r.geometric_total;
  r.geometric_minus_stable = r.geometric_total - r.stable_total;
  r.epsilon = epsilon;
  r.volume = volume;
  r.test_function = "bump(center=" + text::fmt(f.center()) + ", width=" + text::fmt(f.width()) +
                    ", amplitude=" + text::fmt(f.amplitude()) + ")";
  return r;
}

/// Key-value header followed by one CSV table per side.
inline void write_trace_report(std::ostream& os, const TraceReport& r) {
  using text::fmt;
  os << "# trace report\n";
  os << "test_function: " << r.test_function << "\n";
  os << "spectral_total: " << fmt(r.spectral_total) << "\n";
  os << "geometric_total: " << fmt(r.geometric_total) << "\n";
  os << "stable_total: " << fmt(r.stable_total) << "\n";
  os << "spectral_minus_geometric: " << fmt(r.spectral_minus_geometric) << "\n";
  os << "geometric_minus_stable: " << fmt(r.geometric_minus_stable) << "\n";
  os << "equality: reported\n";
  os << "normalization:\n";
  for (const auto& [k, v] : r.epsilon) os << "  epsilon." << k << ": " << v << "\n";
  for (const auto& [k, v] : r.volume) os << "  volume." << k << ": " << fmt(v) << "\n";
  os << "[spectral]\n";
  os << "k,multiplicity,weight_re,weight_im,contribution_re,contribution_im\n";
  for (const auto& t : r.spectral.terms)
    os << t.weight << ',' << t.multiplicity << ',' << fmt(t.test_weight.real()) << ',' << fmt(t.test_weight.imag())
       << ',' << fmt(t.contribution.real()) << ',' << fmt(t.contribution.imag()) << "\n";
  os << "[geometric]\n";
  os << "class,a,b,c,d,theta,rotation_angle,order,epsilon,volume,orbital,contribution\n";
  for (const auto& t : r.geometric.terms) {
    const auto& g = t.cls.representative;
    os << t.cls.name << ',' << g.a << ',' << g.b << ',' << g.c << ',' << g.d << ',' << fmt(t.cls.theta) << ','
       << fmt(t.cls.rotation_angle) << ',' << t.cls.order << ',' << t.epsilon << ',' << fmt(t.volume) << ','
       << fmt(t.orbital) << ',' << fmt(t.contribution) << "\n";
  }
  os << "[stable]\n";
  os << "class,volume,transfer_re,transfer_im,stable_orbital,contribution_re,contribution_im\n";
  for (const auto& t : r.stable.terms)
    os << t.cls.name << ',' << fmt(t.volume) << ',' << fmt(t.transfer_factor.real()) << ','
       << fmt(t.transfer_factor.imag()) << ',' << fmt(t.stable_orbital) << ',' << fmt(t.contribution.real()) << ','
       << fmt(t.contribution.imag()) << "\n";
}

inline std::string to_string(const TraceReport& r) {
  std::ostringstream os;
  write_trace_report(os, r);
  return os.str();
}

}  // namespace sl2lab::trace
