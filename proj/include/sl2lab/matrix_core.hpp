#pragma once

// Group arithmetic on SL(2,R): Mobius action, the N.A.K chart, one-parameter
// subgroups, centralizer classification and reduction to the standard
// fundamental domain of SL(2,Z).

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "sl2lab/errors.hpp"
#include "sl2lab/scalar.hpp"

namespace sl2lab {

/// Plain 2x2 matrix over a ring; no determinant constraint.
template <class T>
struct Mat2 {
  T a{1}, b{0}, c{0}, d{1};

  constexpr T det() const { return a * d - b * c; }
  constexpr T trace() const { return a + d; }

  friend constexpr Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend constexpr Mat2 operator+(const Mat2& x, const Mat2& y) { return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d}; }
  friend constexpr Mat2 operator-(const Mat2& x, const Mat2& y) { return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d}; }
  friend constexpr Mat2 operator*(const T& s, const Mat2& x) { return {s * x.a, s * x.b, s * x.c, s * x.d}; }
  friend constexpr bool operator==(const Mat2&, const Mat2&) = default;
};

template <class T>
constexpr Mat2<T> bracket(const Mat2<T>& x, const Mat2<T>& y) {
  return x * y - y * x;
}

/// Element of SL(2,R). The determinant constraint is checked by `checked`;
/// products of valid elements are trusted.
struct GroupElement {
  double a = 1, b = 0, c = 0, d = 1;

  static constexpr double kDetTolerance = 1e-12;

  static GroupElement identity() { return {}; }

  /// Throws DomainError unless |ad - bc - 1| <= tol.
  static GroupElement checked(double a, double b, double c, double d, double tol = kDetTolerance) {
    const double det = a * d - b * c;
    if (!(std::abs(det - 1.0) <= tol))
      throw DomainError("matrix is not unimodular: det = " + std::to_string(det));
    return {a, b, c, d};
  }

  static GroupElement diag(double lambda) { return {lambda, 0, 0, 1.0 / lambda}; }
  static GroupElement unipotent(double x) { return {1, x, 0, 1}; }
  /// k(t) = [[cos t, sin t], [-sin t, cos t]].
  static GroupElement rotation(double t) { return {std::cos(t), std::sin(t), -std::sin(t), std::cos(t)}; }

  double det() const { return a * d - b * c; }
  double trace() const { return a + d; }
  GroupElement inverse() const { return {d, -b, -c, a}; }
  GroupElement transpose() const { return {a, c, b, d}; }
  Mat2<double> matrix() const { return {a, b, c, d}; }

  double max_abs_diff(const GroupElement& o) const {
    return std::max({std::abs(a - o.a), std::abs(b - o.b), std::abs(c - o.c), std::abs(d - o.d)});
  }

  friend GroupElement operator*(const GroupElement& x, const GroupElement& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend GroupElement operator-(const GroupElement& x) { return {-x.a, -x.b, -x.c, -x.d}; }
};

/// Element of SL(2,Z), kept in exact integer arithmetic.
struct ModularElement {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  static ModularElement identity() { return {}; }
  static ModularElement S() { return {0, -1, 1, 0}; }
  static ModularElement T(std::int64_t n = 1) { return {1, n, 0, 1}; }

  std::int64_t det() const { return a * d - b * c; }
  std::int64_t trace() const { return a + d; }
  ModularElement inverse() const { return {d, -b, -c, a}; }
  GroupElement to_real() const {
    return {static_cast<double>(a), static_cast<double>(b), static_cast<double>(c), static_cast<double>(d)};
  }
  std::int64_t height() const { return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)}); }

  friend ModularElement operator*(const ModularElement& x, const ModularElement& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend ModularElement operator-(const ModularElement& x) { return {-x.a, -x.b, -x.c, -x.d}; }
  friend bool operator==(const ModularElement&, const ModularElement&) = default;
  friend auto operator<=>(const ModularElement&, const ModularElement&) = default;
};

// ---------------------------------------------------------------------------
// Mobius action

/// (az+b)/(cz+d) for Im z > 0.
inline Complex mobius_act(const GroupElement& g, Complex z) {
  if (!(z.imag() > 0.0)) throw DomainError("mobius_act: Im z must be positive");
  return (g.a * z + g.b) / (g.c * z + g.d);
}

inline Complex mobius_act(const ModularElement& g, Complex z) { return mobius_act(g.to_real(), z); }

/// Automorphy factor j(g, z) = cz + d.
inline Complex automorphy_factor(const GroupElement& g, Complex z) { return g.c * z + g.d; }

// ---------------------------------------------------------------------------
// Iwasawa chart g = n(x) a(y) k(theta)

/// Coordinates of the chart g = [[1,x],[0,1]] diag(y^{1/2}, y^{-1/2}) k(theta),
/// so that g.i = x + iy. `sign` selects the sheet -k(theta); decomposition
/// always returns the + sheet since theta already covers the whole circle.
struct IwasawaCoords {
  double x = 0.0;
  double y = 1.0;
  double theta = 0.0;
  int sign = +1;
};

inline double normalize_angle(double theta) {
  constexpr double two_pi = 2.0 * kPi;
  double t = std::fmod(theta, two_pi);
  if (t < 0.0) t += two_pi;
  if (t >= two_pi || t == 0.0) t = 0.0;  // also folds -0
  return t;
}

inline IwasawaCoords iwasawa_decompose(const GroupElement& g) {
  const double r2 = g.c * g.c + g.d * g.d;
  IwasawaCoords out;
  out.y = 1.0 / r2;
  out.x = (g.a * g.c + g.b * g.d) / r2;
  // Bottom row of n a k(theta) is y^{-1/2} (-sin theta, cos theta).
  out.theta = normalize_angle(std::atan2(-g.c, g.d));
  out.sign = +1;
  return out;
}

inline GroupElement iwasawa_compose(const IwasawaCoords& coords) {
  if (!(coords.y > 0.0)) throw DomainError("iwasawa_compose: y must be positive");
  if (coords.sign != 1 && coords.sign != -1) throw DomainError("iwasawa_compose: sign must be +1 or -1");
  const double s = std::sqrt(coords.y), inv = 1.0 / s;
  const double ct = coords.sign * std::cos(coords.theta), st = coords.sign * std::sin(coords.theta);
  // [[s, x/s], [0, 1/s]] * [[ct, st], [-st, ct]]
  return {s * ct - coords.x * inv * st, s * st + coords.x * inv * ct, -inv * st, inv * ct};
}

// ---------------------------------------------------------------------------
// Lie algebra and one-parameter subgroups

enum class LieName { H, X, Y, XminusY, XplusY };

struct LieGenerator {
  LieName name;
  Mat2<std::int64_t> matrix;
};

inline LieGenerator lie_generator(LieName name) {
  switch (name) {
    case LieName::H: return {name, {1, 0, 0, -1}};
    case LieName::X: return {name, {0, 1, 0, 0}};
    case LieName::Y: return {name, {0, 0, 1, 0}};
    case LieName::XminusY: return {name, {0, 1, -1, 0}};
    case LieName::XplusY: return {name, {0, 1, 1, 0}};
  }
  throw ConfigError("unknown Lie generator");
}

/// exp(t * gen) for gen in {H, X-Y, X+Y}, in closed form.
inline GroupElement one_param(LieName gen, double t) {
  switch (gen) {
    case LieName::H: return {std::exp(t), 0, 0, std::exp(-t)};
    case LieName::XminusY: return GroupElement::rotation(t);
    case LieName::XplusY: return {std::cosh(t), std::sinh(t), std::sinh(t), std::cosh(t)};
    default: break;
  }
  throw ConfigError("one_param: generator must be H, X-Y or X+Y");
}

// ---------------------------------------------------------------------------
// Centralizers

enum class EndoscopyTag { FullGroup, SplitTorus, CompactTorus, Center };

inline std::string_view to_string(EndoscopyTag t) {
  switch (t) {
    case EndoscopyTag::FullGroup: return "FullGroup";
    case EndoscopyTag::SplitTorus: return "SplitTorus";
    case EndoscopyTag::CompactTorus: return "CompactTorus";
    case EndoscopyTag::Center: return "Center";
  }
  return "?";
}

/// Identity component of the centralizer of g.
///
/// `datum` is the scalar +-1 for FullGroup, the eigenvalue of modulus > 1 for
/// SplitTorus, and the rotation angle theta in (0, 2pi) with g conjugate to
/// k(theta) in SL(2,R) for CompactTorus. `generator` is a traceless unit
/// vector Z of the commutant, so the component is {exp(tZ)}. The Center tag
/// is never produced: solving gX = Xg always yields a one-parameter torus for
/// regular elements.
struct EndoscopyClass {
  EndoscopyTag tag = EndoscopyTag::FullGroup;
  double datum = 1.0;
  int commutant_dimension = 4;
  Mat2<double> generator{0, 0, 0, 0};
};

/// Basis of the commutant {X : gX = Xg} of a 2x2 real matrix.
inline std::vector<Mat2<double>> commutant_basis(const GroupElement& g, double tol = 1e-12) {
  // Unknown vector (x11, x12, x21, x22); rows are entries of gX - Xg.
  Eigen::Matrix4d m;
  m << 0, -g.c, g.b, 0,                 //
      -g.b, g.a - g.d, 0, g.b,          //
      g.c, 0, g.d - g.a, -g.c,          //
      0, g.c, -g.b, 0;
  Eigen::FullPivLU<Eigen::Matrix4d> lu(m);
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  lu.setThreshold(tol * scale);
  const Eigen::MatrixXd ker = lu.kernel();
  std::vector<Mat2<double>> out;
  for (Eigen::Index j = 0; j < ker.cols(); ++j) out.push_back({ker(0, j), ker(1, j), ker(2, j), ker(3, j)});
  return out;
}

inline EndoscopyClass classify_endoscopy(const GroupElement& g, double tol = 1e-12) {
  const auto basis = commutant_basis(g, tol);
  EndoscopyClass out;
  out.commutant_dimension = static_cast<int>(basis.size());
  if (basis.size() == 4) {
    out.tag = EndoscopyTag::FullGroup;
    out.datum = g.a > 0 ? 1.0 : -1.0;
    return out;
  }
  if (basis.size() != 2) throw DomainError("classify_endoscopy: unexpected commutant dimension");
  // Traceless element of span{K1, K2}.
  const auto& k1 = basis[0];
  const auto& k2 = basis[1];
  Mat2<double> z = k2.trace() * k1 - k1.trace() * k2;
  if (std::abs(z.a) + std::abs(z.b) + std::abs(z.c) + std::abs(z.d) < tol) z = k1;
  const double norm = std::sqrt(z.a * z.a + z.b * z.b + z.c * z.c + z.d * z.d);
  z = (1.0 / norm) * z;
  out.generator = z;
  const double mu = -z.det();  // Z^2 = mu * I
  const double tr = g.trace();
  if (std::abs(mu) <= 1e3 * tol) throw NotRegularSemisimple("classify_endoscopy: element is parabolic (not semisimple)");
  if (mu > 0.0) {
    out.tag = EndoscopyTag::SplitTorus;
    const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0));
    out.datum = tr > 0 ? 0.5 * (tr + disc) : 0.5 * (tr - disc);
  } else {
    out.tag = EndoscopyTag::CompactTorus;
    const double base = std::acos(std::clamp(0.5 * tr, -1.0, 1.0));
    out.datum = g.c < 0.0 ? base : 2.0 * kPi - base;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fundamental domain of SL(2,Z)

struct FundamentalDomainReduction {
  Complex point;
  ModularElement gamma;  // point = gamma . z
  int steps = 0;
};

/// Reduces z into {|Re z| <= 1/2, |z| >= 1}; boundary ties resolve to Re >= 0.
inline FundamentalDomainReduction reduce_to_fundamental_domain(Complex z, double tie_tol = 1e-12) {
  if (!(z.imag() > 0.0)) throw DomainError("reduce_to_fundamental_domain: Im z must be positive");
  ModularElement gamma;
  int steps = 0;
  for (; steps < 10000; ++steps) {
    const double shift = std::floor(z.real() + 0.5);
    if (shift != 0.0) {
      const auto n = static_cast<std::int64_t>(shift);
      z -= shift;
      gamma = ModularElement::T(-n) * gamma;
    }
    if (std::norm(z) < 1.0 - tie_tol) {
      z = -1.0 / z;
      gamma = ModularElement::S() * gamma;
    } else {
      break;
    }
  }
  if (std::abs(z.real() + 0.5) <= tie_tol) {
    z += 1.0;
    gamma = ModularElement::T(1) * gamma;
  }
  if (std::abs(std::norm(z) - 1.0) <= tie_tol && z.real() < -tie_tol) {
    z = -1.0 / z;
    gamma = ModularElement::S() * gamma;
  }
  return {z, gamma, steps};
}

}  // namespace sl2lab
