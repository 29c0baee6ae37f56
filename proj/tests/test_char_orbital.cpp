#include <cmath>
#include <vector>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "sl2lab/char_orbital.hpp"

using namespace sl2lab;
using orbital::RadialTestFunction;

namespace {

// Plain composite Simpson rule; independent of the adaptive integrator.
template <class F>
double simpson(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

}  // namespace

TEST(PointPair, FrobeniusIdentity) {
  // u(g.i, i) = a^2 + b^2 + c^2 + d^2 - 2
  const GroupElement g{1.3, 0.4, -0.7, (1 + 0.4 * -0.7) / 1.3};
  const double u = orbital::point_pair_invariant(mobius_act(g, {0, 1}), {0, 1});
  EXPECT_NEAR(u, g.a * g.a + g.b * g.b + g.c * g.c + g.d * g.d - 2.0, 1e-13);
}

TEST(TestFunction, BumpShape) {
  const auto f = RadialTestFunction::bump(4.0);
  EXPECT_DOUBLE_EQ(f.at_identity(), std::exp(-1.0));
  EXPECT_EQ(f.profile(4.0), 0.0);
  EXPECT_EQ(f.profile(5.0), 0.0);
  EXPECT_GT(f.profile(3.99), 0.0);
  EXPECT_EQ(f.support_radius(), 4.0);
  EXPECT_TRUE(RadialTestFunction::zero().is_zero());
  EXPECT_THROW(RadialTestFunction(0.0, -1.0), ConfigError);
  EXPECT_THROW(RadialTestFunction(-3.0, 1.0), ConfigError);
  // K-bi-invariance
  const GroupElement g{2.0, 0.3, 0.1, (1 + 0.03) / 2.0};
  EXPECT_NEAR(f(GroupElement::rotation(0.4) * g * GroupElement::rotation(1.1)), f(g), 1e-14);
}

TEST(Characters, Identity) {
  for (int n = 1; n <= 10; ++n)
    for (int i = 0; i < 100; ++i) {
      const double th = 0.03 + i * (2 * kPi - 0.06) / 99.0;
      if (orbital::is_singular_angle(th)) continue;
      const Complex lhs =
          (orbital::ds_character_K(n, 1, th) - orbital::ds_character_K(n, -1, th)) * orbital::weyl_denominator(th);
      EXPECT_LE(std::abs(lhs + std::polar(1.0, n * th) - std::polar(1.0, -n * th)), 1e-12);
    }
}

TEST(Characters, WeylReflection) {
  for (int n = 1; n <= 6; ++n)
    for (double th : {0.3, 1.1, 2.0, 4.4}) {
      EXPECT_LE(std::abs(orbital::ds_character_K(n, 1, -th) + orbital::ds_character_K(n, -1, th)), 1e-13);
    }
}

TEST(Characters, ValueAtQuarterTurn) {
  // theta = pi/2: -i^n / (2i)
  for (int n = 1; n <= 5; ++n) {
    const Complex expect = -std::pow(Complex(0, 1), n) / Complex(0, 2);
    EXPECT_LE(std::abs(orbital::ds_character_K(n, 1, kPi / 2) - expect), 1e-15);
  }
}

TEST(Characters, SingularAndBadArgs) {
  EXPECT_THROW(orbital::ds_character_K(1, 1, 0.0), SingularPoint);
  EXPECT_THROW(orbital::ds_character_K(1, 1, kPi), SingularPoint);
  EXPECT_THROW(orbital::ds_character_K(0, 1, 1.0), ConfigError);
  EXPECT_THROW(orbital::ds_character_K(1, 2, 1.0), ConfigError);
}

TEST(Characters, StableQuotientIsOdd) {
  for (int n = 1; n <= 5; ++n)
    for (double th : {0.4, 1.3, 2.2}) {
      const auto p = orbital::stable_character(n, th), m = orbital::stable_character(n, -th);
      EXPECT_LE(std::abs(p.quotient + m.quotient), 1e-13);
      const Complex closed{0.0, std::sin(n * th) / (2 * std::sin(th) * std::sin(th))};
      EXPECT_LE(std::abs(p.quotient - closed), 1e-12);
      EXPECT_NEAR(p.product_form.real(), 4 * std::sin(th) * std::sin(n * th), 1e-13);
    }
}

TEST(Characters, KappaOrbital) {
  // kappa(1) Theta^s(-theta) + kappa(w) Theta^{-s}(-theta)
  const Complex k = orbital::kappa_orbital(3, 1, 0.7);
  EXPECT_LE(std::abs(k - (orbital::ds_character_K(3, 1, -0.7) - orbital::ds_character_K(3, -1, -0.7))), 1e-15);
}

TEST(SO3, CharacterAndLimit) {
  for (int n = 1; n <= 6; ++n) {
    // sin((2n-1) t) / sin(t)
    for (double t : {0.3, 1.0, 2.5})
      EXPECT_NEAR(orbital::so3_character(n, t), std::sin((2 * n - 1) * t) / std::sin(t), 1e-12);
    EXPECT_NEAR(orbital::so3_character(n, 1e-7), 2 * n - 1, 1e-8);
  }
  const Eigen::Matrix3d r = Eigen::AngleAxisd(0.8, Eigen::Vector3d(1, 2, 2).normalized()).toRotationMatrix();
  EXPECT_NEAR(orbital::so3_conjugacy_angle(r), 0.8, 1e-12);
}

TEST(Orbital, HyperbolicTwoCharts) {
  const std::vector<RadialTestFunction> profiles = {RadialTestFunction(0, 30), RadialTestFunction(10, 20),
                                                    RadialTestFunction(5, 40, 2.0)};
  for (const auto& f : profiles)
    for (double a : {1.5, 2.0, 5.0}) {
      const auto o = orbital::orbital_hyperbolic(f, a);
      EXPECT_LE(o.discrepancy, 1e-8);
      // independent Simpson on the substituted chart
      const double delta = a - 1 / a;
      const double um = std::sqrt(f.support_radius() - delta * delta);
      const double ref = simpson([&](double u) { return f(GroupElement{a, u, 0, 1 / a}); }, -um, um, 4000) / delta;
      EXPECT_NEAR(o.value(), ref, 1e-8 * std::max(1.0, std::abs(ref)));
    }
}

TEST(Orbital, HyperbolicErrors) {
  const auto f = RadialTestFunction::bump(4.0);
  EXPECT_THROW(orbital::orbital_hyperbolic(f, 1.0), SingularPoint);
  EXPECT_THROW(orbital::orbital_hyperbolic(f, -2.0), DomainError);
  EXPECT_EQ(orbital::orbital_hyperbolic(f, 5.0).value(), 0.0);  // orbit misses the support
  EXPECT_EQ(orbital::orbital_hyperbolic(RadialTestFunction::zero(), 2.0).value(), 0.0);
}

TEST(Orbital, TransferContinuousAtOne) {
  const auto f = RadialTestFunction(0, 9);
  const double at_one = orbital::transfer_hyperbolic(f, 1.0).value;
  const double ref = simpson([&](double u) { return f(GroupElement::unipotent(u)); }, -3, 3, 6000);
  EXPECT_NEAR(at_one, ref, 1e-9);
  for (double eps : {1e-3, 1e-4, 1e-5})
    EXPECT_NEAR(orbital::transfer_hyperbolic(f, 1 + eps).value, at_one, 10 * eps * std::abs(at_one));
}

TEST(Orbital, EllipticEvenAndStableZero) {
  const auto f = RadialTestFunction(1, 6);
  for (double th : {0.2, 0.9, kPi / 2, 2.8}) {
    const auto so = orbital::stable_orbital_elliptic(f, th);
    EXPECT_NEAR(so.plus.value, so.minus.value, 1e-12);
    EXPECT_LE(std::abs(so.transferred), 1e-11);
    EXPECT_LE(std::abs(so.transfer_factor - Complex(0, -2 * std::sin(th))), 1e-15);
  }
  EXPECT_THROW(orbital::orbital_elliptic(f, 0.0), SingularPoint);
}

TEST(Orbital, EllipticAgainstSimpson) {
  const auto f = RadialTestFunction::bump(4.0);
  const double th = 0.8;
  const auto [lo, hi] = orbital::elliptic_window(f.support_radius(), th);
  // unsigned integrand so the t = 1 endpoint samples the one-sided limit
  const auto g = [&](double t) {
    return f(GroupElement{std::cos(th), t * std::sin(th), -std::sin(th) / t, std::cos(th)});
  };
  const double ref = -simpson(g, lo, 1.0, 20000) + simpson(g, 1.0, hi, 20000);
  EXPECT_NEAR(orbital::orbital_elliptic(f, th).value, ref, 1e-8);
}

TEST(Orbital, UnipotentHalfLines) {
  const auto f = RadialTestFunction(0, 9);
  const double whole = orbital::unipotent_integral(f, 0).value;
  EXPECT_NEAR(orbital::unipotent_integral(f, 1).value + orbital::unipotent_integral(f, -1).value, whole, 1e-12);
  EXPECT_NEAR(orbital::unipotent_integral(f, 1).value, 0.5 * whole, 1e-12);
}

TEST(Singular, InverseLambdaCoefficient) {
  const auto f = RadialTestFunction::bump(4.0);
  std::vector<double> grid;
  for (int i = 0; i < 16; ++i) grid.push_back(0.2 * std::pow(0.05, i / 15.0));
  const auto fit = orbital::singular_expansion(f, grid);
  EXPECT_LE(fit.a_relative_error, 0.02);
  EXPECT_NEAR(fit.b_reference, -2 * std::exp(-1.0), 1e-15);
  // The odd part vanishes, so the H fit is exact up to quadrature noise.
  EXPECT_LE(fit.h_fit_residual, 1e-8);
}

TEST(Singular, GridValidation) {
  const auto f = RadialTestFunction::bump(4.0);
  EXPECT_THROW(orbital::singular_expansion(f, {0.1, 0.05}), ConfigError);
  std::vector<double> bad = {0.5, 0.2, 0.1, 0.05, 0.04, 0.03, 0.02, 0.01};
  EXPECT_THROW(orbital::singular_expansion(f, bad), ConfigError);
  std::vector<double> increasing = {0.01, 0.02, 0.03, 0.04, 0.05, 0.1, 0.2, 0.3};
  EXPECT_THROW(orbital::singular_expansion(f, increasing), ConfigError);
}
