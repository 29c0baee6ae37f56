#pragma once

// Holomorphic discrete-series model of weight n on the truncated monomial
// basis {z^m : 0 <= m <= N}. Column j of every matrix is the image of z^j.
//
//   H     = 2z d/dz + (n+1)
//   X - Y = -(1+z^2) d/dz - (n+1) z
//   X + Y =  (1-z^2) d/dz - (n+1) z
//
// Degree-raising terms applied to z^N fall outside the span and are dropped,
// so only the leading index block is free of truncation effects.

#include <cstddef>
#include <map>
#include <string_view>
#include <vector>

#include "sl2lab/dense_matrix.hpp"
#include "sl2lab/errors.hpp"
#include "sl2lab/matrix_core.hpp"
#include "sl2lab/scalar.hpp"

namespace sl2lab::rep {

inline constexpr std::string_view kMonomialBasis = "monomial z^m, m=0..N";

/// Last index of the block unaffected by truncation for single commutators.
inline std::size_t commutator_interior(int truncation) { return static_cast<std::size_t>(truncation - 2); }
/// Last index of the block unaffected by truncation for quadratic expressions.
inline std::size_t quadratic_interior(int truncation) { return static_cast<std::size_t>(truncation - 4); }

template <class T>
struct OperatorMatrix {
  int weight = 1;      // series label n
  int truncation = 2;  // N; dim = N + 1
  DenseMatrix<T> entries;

  std::size_t dim() const { return entries.rows(); }
  std::string_view basis_label() const { return kMonomialBasis; }
  /// Column whose degree-raising image was truncated.
  std::size_t boundary_index() const { return static_cast<std::size_t>(truncation); }

  /// Image of a coefficient vector (c_0..c_N) in the monomial basis.
  std::vector<T> apply(const std::vector<T>& v) const {
    if (v.size() != dim()) throw ShapeMismatch("apply: vector length differs from dim");
    std::vector<T> out(dim(), T(0));
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j) out[i] += entries(i, j) * v[j];
    return out;
  }
};

namespace detail {

inline void check_config(int n, int truncation) {
  if (n < 1) throw ConfigError("weight n must be >= 1");
  if (truncation < 2) throw ConfigError("truncation N must be >= 2");
}

template <class T>
void check_compatible(const OperatorMatrix<T>& a, const OperatorMatrix<T>& b) {
  if (a.dim() != b.dim() || a.weight != b.weight || a.truncation != b.truncation || a.basis_label() != b.basis_label())
    throw ShapeMismatch("operator matrices live on different truncated models");
}

template <class T>
OperatorMatrix<T> make(int n, int truncation, DenseMatrix<T> m) {
  return {n, truncation, std::move(m)};
}

}  // namespace detail

/// Matrix of a generator of sl(2,R) in the weight-n model.
template <class T>
OperatorMatrix<T> generator_matrix(LieName gen, int n, int truncation) {
  detail::check_config(n, truncation);
  const std::size_t dim = static_cast<std::size_t>(truncation) + 1;
  DenseMatrix<T> m(dim, dim);
  const T shift = T(n + 1);
  for (std::size_t j = 0; j < dim; ++j) {
    const T deg = T(static_cast<long long>(j));
    const bool raises = j + 1 < dim;
    switch (gen) {
      case LieName::H:
        m(j, j) = T(2) * deg + shift;
        break;
      case LieName::XminusY:
        if (j > 0) m(j - 1, j) = -deg;
        if (raises) m(j + 1, j) = -(deg + shift);
        break;
      case LieName::XplusY:
        if (j > 0) m(j - 1, j) = deg;
        if (raises) m(j + 1, j) = -(deg + shift);
        break;
      case LieName::X: {
        // ((X-Y) + (X+Y)) / 2 = -z^2 d/dz - (n+1) z
        if (raises) m(j + 1, j) = -(deg + shift);
        break;
      }
      case LieName::Y:
        // ((X+Y) - (X-Y)) / 2 = d/dz
        if (j > 0) m(j - 1, j) = deg;
        break;
    }
  }
  return detail::make(n, truncation, std::move(m));
}

/// X and Y recovered from the displayed U-combinations, (A + B)/2 and (B - A)/2.
template <class T>
OperatorMatrix<T> generator_from_combinations(LieName which, int n, int truncation) {
  const auto xmy = generator_matrix<T>(LieName::XminusY, n, truncation);
  const auto xpy = generator_matrix<T>(LieName::XplusY, n, truncation);
  const T half = T(1) / T(2);
  if (which == LieName::X) return detail::make(n, truncation, (xmy.entries + xpy.entries) * half);
  if (which == LieName::Y) return detail::make(n, truncation, (xpy.entries - xmy.entries) * half);
  throw ConfigError("generator_from_combinations: only X or Y");
}

template <class T>
OperatorMatrix<T> commutator(const OperatorMatrix<T>& a, const OperatorMatrix<T>& b) {
  detail::check_compatible(a, b);
  return detail::make(a.weight, a.truncation, commutator(a.entries, b.entries));
}

template <class T>
OperatorMatrix<T> operator-(const OperatorMatrix<T>& a, const OperatorMatrix<T>& b) {
  detail::check_compatible(a, b);
  return detail::make(a.weight, a.truncation, a.entries - b.entries);
}

template <class T>
OperatorMatrix<T> operator*(const T& s, const OperatorMatrix<T>& a) {
  return detail::make(a.weight, a.truncation, a.entries * s);
}

/// max |entry| over rows/columns 0..last.
template <class T>
double interior_residual(const OperatorMatrix<T>& m, std::size_t last) {
  return m.entries.max_abs_block(last);
}

/// Residuals of [H,X] - 2X, [H,Y] + 2Y, [X,Y] - H on the commutator interior.
struct CartanResiduals {
  double hx = 0, hy = 0, xy = 0;
  double max() const { return std::max({hx, hy, xy}); }
};

template <class T>
CartanResiduals cartan_residuals(int n, int truncation) {
  const auto h = generator_matrix<T>(LieName::H, n, truncation);
  const auto x = generator_from_combinations<T>(LieName::X, n, truncation);
  const auto y = generator_from_combinations<T>(LieName::Y, n, truncation);
  const std::size_t last = commutator_interior(truncation);
  CartanResiduals r;
  r.hx = interior_residual(commutator(h, x) - T(2) * x, last);
  r.hy = interior_residual(commutator(h, y) - T(-2) * y, last);
  r.xy = interior_residual(commutator(x, y) - h, last);
  return r;
}

// ---------------------------------------------------------------------------
// Casimir element

/// Both Casimir expressions and the scalar they act by on the interior.
///
/// sum_of_squares  = -1/4 ((X-Y)^2 - (X+Y)^2 - H^2)
/// ordered_product =  1/4 (H^2 - 2H + 4XY)
///
/// The two agree identically in the enveloping algebra because XY - YX = H.
template <class T>
struct CasimirResult {
  OperatorMatrix<T> sum_of_squares;
  OperatorMatrix<T> ordered_product;
  T eigenvalue;                   // diagonal value at z^0
  double forms_difference = 0.0;  // max |sum_of_squares - ordered_product| on the interior
  double off_diagonal_max = 0.0;  // on the interior of sum_of_squares
  double diagonal_spread = 0.0;   // max |diag - eigenvalue| on the interior
};

template <class T>
CasimirResult<T> casimir_matrix(int n, int truncation) {
  detail::check_config(n, truncation);
  if (truncation < 4) throw ConfigError("casimir_matrix: truncation N must be >= 4");
  const auto h = generator_matrix<T>(LieName::H, n, truncation).entries;
  const auto xmy = generator_matrix<T>(LieName::XminusY, n, truncation).entries;
  const auto xpy = generator_matrix<T>(LieName::XplusY, n, truncation).entries;
  const auto x = generator_from_combinations<T>(LieName::X, n, truncation).entries;
  const auto y = generator_from_combinations<T>(LieName::Y, n, truncation).entries;
  const T quarter = T(1) / T(4);

  CasimirResult<T> out{detail::make(n, truncation, (xmy * xmy - xpy * xpy - h * h) * (-quarter)),
                       detail::make(n, truncation, (h * h - T(2) * h + T(4) * (x * y)) * quarter), T(0)};
  const std::size_t last = quadratic_interior(truncation);
  out.eigenvalue = out.sum_of_squares.entries(0, 0);
  out.forms_difference = interior_residual(out.sum_of_squares - out.ordered_product, last);
  for (std::size_t i = 0; i <= last; ++i)
    for (std::size_t j = 0; j <= last; ++j) {
      const T& v = out.sum_of_squares.entries(i, j);
      if (i == j)
        out.diagonal_spread = std::max(out.diagonal_spread, magnitude(T(v - out.eigenvalue)));
      else
        out.off_diagonal_max = std::max(out.off_diagonal_max, magnitude(v));
    }
  return out;
}

/// 1/4 (H^2 + 4XY) exactly as printed in the product form; this differs from
/// the Casimir by H/2 and is not scalar. Kept as a diagnostic.
template <class T>
OperatorMatrix<T> literal_product_form(int n, int truncation) {
  const auto h = generator_matrix<T>(LieName::H, n, truncation).entries;
  const auto x = generator_from_combinations<T>(LieName::X, n, truncation).entries;
  const auto y = generator_from_combinations<T>(LieName::Y, n, truncation).entries;
  return detail::make(n, truncation, (h * h + T(4) * (x * y)) * (T(1) / T(4)));
}

/// Closed-form Casimir scalar (n^2 - 1)/4 of the weight-n model.
inline Rational casimir_scalar(int n) { return Rational(n * n - 1, 4); }

// ---------------------------------------------------------------------------
// Weight decomposition

struct WeightSpace {
  long long weight = 0;
  int multiplicity = 0;
  friend bool operator==(const WeightSpace&, const WeightSpace&) = default;
};

struct WeightDecomposition {
  std::vector<WeightSpace> spaces;  // ascending weight
  bool raising_ok = true;           // X maps weight m into weight m + 2
  bool lowering_ok = true;          // Y maps weight m into weight m - 2
  bool lowest_annihilated = true;   // Y kills the lowest weight vector
};

/// Eigenspaces of the diagonal H and the ladder action of X, Y between them.
/// The ladder checks skip the truncated top vector.
inline WeightDecomposition weight_decomposition(int n, int truncation) {
  const auto h = generator_matrix<Rational>(LieName::H, n, truncation);
  const auto x = generator_from_combinations<Rational>(LieName::X, n, truncation);
  const auto y = generator_from_combinations<Rational>(LieName::Y, n, truncation);
  const std::size_t dim = h.dim();
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      if (i != j && h.entries(i, j) != 0) throw DomainError("weight_decomposition: H is not diagonal");

  std::map<Rational, std::vector<std::size_t>> spaces;
  for (std::size_t j = 0; j < dim; ++j) spaces[h.entries(j, j)].push_back(j);

  WeightDecomposition out;
  for (const auto& [w, idx] : spaces)
    out.spaces.push_back({static_cast<long long>(w.convert_to<double>()), static_cast<int>(idx.size())});

  auto weight_of = [&](const std::vector<Rational>& v, Rational& w) {
    bool found = false;
    for (std::size_t i = 0; i < dim; ++i)
      if (v[i] != 0) {
        if (found && h.entries(i, i) != w) return false;
        w = h.entries(i, i);
        found = true;
      }
    return found;
  };

  for (std::size_t j = 0; j < dim; ++j) {
    std::vector<Rational> e(dim, Rational(0));
    e[j] = 1;
    const Rational m = h.entries(j, j);
    if (j + 1 < dim) {
      Rational w;
      if (!weight_of(x.apply(e), w) || w != m + 2) out.raising_ok = false;
    }
    const auto ye = y.apply(e);
    Rational w;
    const bool nonzero = weight_of(ye, w);
    if (j == 0) {
      out.lowest_annihilated = !nonzero;
    } else if (!nonzero || w != m - 2) {
      out.lowering_ok = false;
    }
  }
  return out;
}

}  // namespace sl2lab::rep
