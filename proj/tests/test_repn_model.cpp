#include <gtest/gtest.h>

#include "sl2lab/repn_model.hpp"

using namespace sl2lab;

// The model acts on polynomials: H = 2z d + (n+1), X = -z^2 d - (n+1) z, Y = d.
// Entries are checked against those rules applied to single monomials.
TEST(Generators, MatchDifferentialOperators) {
  for (int n = 1; n <= 6; ++n) {
    const int N = 12;
    const auto h = rep::generator_matrix<Rational>(LieName::H, n, N);
    const auto x = rep::generator_from_combinations<Rational>(LieName::X, n, N);
    const auto y = rep::generator_from_combinations<Rational>(LieName::Y, n, N);
    for (int m = 0; m <= N; ++m)
      for (int r = 0; r <= N; ++r) {
        const Rational h_expect = r == m ? Rational(2 * m + n + 1) : Rational(0);
        const Rational x_expect = r == m + 1 ? Rational(-(m + n + 1)) : Rational(0);
        const Rational y_expect = r == m - 1 ? Rational(m) : Rational(0);
        EXPECT_EQ(h.entries(r, m), h_expect);
        EXPECT_EQ(x.entries(r, m), x_expect);
        EXPECT_EQ(y.entries(r, m), y_expect);
      }
  }
}

TEST(Generators, DirectAndCombinedAgree) {
  const auto x = rep::generator_matrix<double>(LieName::X, 3, 10);
  const auto xc = rep::generator_from_combinations<double>(LieName::X, 3, 10);
  const auto y = rep::generator_matrix<double>(LieName::Y, 3, 10);
  const auto yc = rep::generator_from_combinations<double>(LieName::Y, 3, 10);
  EXPECT_EQ(x.entries, xc.entries);
  EXPECT_EQ(y.entries, yc.entries);
}

TEST(Generators, RejectBadConfig) {
  EXPECT_THROW(rep::generator_matrix<double>(LieName::H, 0, 8), ConfigError);
  EXPECT_THROW(rep::generator_matrix<double>(LieName::H, 1, 1), ConfigError);
  EXPECT_THROW(rep::casimir_matrix<double>(1, 3), ConfigError);
}

TEST(Brackets, DoubleInterior) {
  for (int n = 1; n <= 10; ++n) EXPECT_LE(rep::cartan_residuals<double>(n, 64).max(), 1e-12) << "n=" << n;
}

TEST(Brackets, RationalExact) {
  for (int n = 1; n <= 4; ++n)
    for (int N : {4, 8, 16}) EXPECT_EQ(rep::cartan_residuals<Rational>(n, N).max(), 0.0);
}

TEST(Brackets, BoundaryIsDifferent) {
  // The last column sees the missing z^{N+1}, so [X,Y] - H is nonzero there.
  const int N = 6;
  const auto x = rep::generator_from_combinations<Rational>(LieName::X, 2, N);
  const auto y = rep::generator_from_combinations<Rational>(LieName::Y, 2, N);
  const auto h = rep::generator_matrix<Rational>(LieName::H, 2, N);
  const auto r = rep::commutator(x, y) - h;
  EXPECT_NE(r.entries(N, N), Rational(0));
}

TEST(Brackets, ShapeMismatch) {
  const auto a = rep::generator_matrix<double>(LieName::H, 1, 8);
  const auto b = rep::generator_matrix<double>(LieName::H, 2, 8);
  const auto c = rep::generator_matrix<double>(LieName::H, 1, 9);
  EXPECT_THROW(rep::commutator(a, b), ShapeMismatch);
  EXPECT_THROW(rep::commutator(a, c), ShapeMismatch);
}

TEST(Casimir, ScalarOnInterior) {
  for (int n = 1; n <= 10; ++n) {
    const auto c = rep::casimir_matrix<double>(n, 64);
    EXPECT_LE(c.off_diagonal_max, 1e-12);
    EXPECT_LE(c.diagonal_spread, 1e-12);
    EXPECT_LE(c.forms_difference, 1e-12);
    EXPECT_NEAR(c.eigenvalue, (n * n - 1) / 4.0, 1e-12);
  }
}

TEST(Casimir, IndependentOfTruncation) {
  for (int n = 1; n <= 5; ++n) {
    const auto a = rep::casimir_matrix<Rational>(n, 8);
    const auto b = rep::casimir_matrix<Rational>(n, 20);
    EXPECT_EQ(a.eigenvalue, b.eigenvalue);
    EXPECT_EQ(a.eigenvalue, rep::casimir_scalar(n));
    EXPECT_EQ(a.off_diagonal_max, 0.0);
    EXPECT_EQ(b.diagonal_spread, 0.0);
  }
}

TEST(Casimir, LiteralProductFormIsNotCentral) {
  const int n = 3;
  const auto lit = rep::literal_product_form<Rational>(n, 10);
  // diagonal m + (n+1)^2/4 on z^m
  for (int m = 0; m <= 6; ++m) EXPECT_EQ(lit.entries(m, m), Rational(m) + Rational((n + 1) * (n + 1), 4));
}

TEST(Weights, LadderStructure) {
  const auto wd = rep::weight_decomposition(3, 12);
  ASSERT_EQ(wd.spaces.size(), 13u);
  for (std::size_t m = 0; m < wd.spaces.size(); ++m) {
    EXPECT_EQ(wd.spaces[m].weight, 4 + 2 * static_cast<long long>(m));
    EXPECT_EQ(wd.spaces[m].multiplicity, 1);
  }
  EXPECT_TRUE(wd.raising_ok);
  EXPECT_TRUE(wd.lowering_ok);
  EXPECT_TRUE(wd.lowest_annihilated);
}

TEST(OperatorMatrix, Metadata) {
  const auto h = rep::generator_matrix<double>(LieName::H, 2, 5);
  EXPECT_EQ(h.dim(), 6u);
  EXPECT_EQ(h.boundary_index(), 5u);
  EXPECT_EQ(h.basis_label(), rep::kMonomialBasis);
  const auto v = h.apply({1, 0, 0, 0, 0, 1});
  EXPECT_DOUBLE_EQ(v[0], 3.0);
  EXPECT_DOUBLE_EQ(v[5], 13.0);
}
