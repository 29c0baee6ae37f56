#pragma once

// Exponential Fock space of C, loop fields with values in so(2) = R, and the
// Virasoro generators of a single free boson on the degree-truncated Fock
// space of partitions.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "sl2lab/errors.hpp"
#include "sl2lab/scalar.hpp"

namespace sl2lab::fock {

// ---------------------------------------------------------------------------
// Hardy space <-> exponential Fock space

/// Coordinates in the orthonormal graded basis e_n = z^n / sqrt(n!) of EXP C.
struct FockVector {
  std::vector<Complex> coeffs;

  double norm_squared() const {
    double s = 0.0;
    for (const auto& c : coeffs) s += std::norm(c);
    return s;
  }

  /// Value of sum_n c_n z^n / sqrt(n!) as a Bargmann-Fock function.
  Complex evaluate(Complex z) const {
    Complex term = 1.0, sum = 0.0;
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
      if (n > 0) term *= z / std::sqrt(static_cast<double>(n));
      sum += coeffs[n] * term;
    }
    return sum;
  }

  /// Coefficient against the unnormalized basis z^n / n! (= sqrt(n!) c_n).
  Complex exponential_coefficient(std::size_t n) const {
    return n < coeffs.size() ? coeffs[n] * std::sqrt(std::tgamma(static_cast<double>(n) + 1.0)) : Complex{};
  }

  friend FockVector operator+(const FockVector& u, const FockVector& v) {
    FockVector out{std::vector<Complex>(std::max(u.coeffs.size(), v.coeffs.size()))};
    for (std::size_t i = 0; i < u.coeffs.size(); ++i) out.coeffs[i] += u.coeffs[i];
    for (std::size_t i = 0; i < v.coeffs.size(); ++i) out.coeffs[i] += v.coeffs[i];
    return out;
  }
};

/// Sends f(z) = sum c_n z^n (Hardy norm sum |c_n|^2) to sum c_n e_n.
inline FockVector fock_embed(std::span<const Complex> series_coeffs) {
  return {std::vector<Complex>(series_coeffs.begin(), series_coeffs.end())};
}

// ---------------------------------------------------------------------------
// Loop fields

/// T(z) = sum_n c_n z^n with finitely many nonzero real modes.
struct LoopField {
  std::map<int, double> modes;

  double mode(int n) const {
    const auto it = modes.find(n);
    return it == modes.end() ? 0.0 : it->second;
  }
  friend LoopField operator+(LoopField a, const LoopField& b) {
    for (const auto& [n, c] : b.modes) a.modes[n] += c;
    return a;
  }
};

/// (1/2 pi i) \oint z^{m+1} T(z) dz around 0, i.e. the mode c_{-m-2}.
inline double loop_mode_contribution(const LoopField& field, int m) { return field.mode(-m - 2); }

/// Contributions to L_m for m = -N..N (index m + N).
inline std::vector<double> loop_modes_to_virasoro(const LoopField& field, int truncation) {
  std::vector<double> out;
  out.reserve(2 * static_cast<std::size_t>(truncation) + 1);
  for (int m = -truncation; m <= truncation; ++m) out.push_back(loop_mode_contribution(field, m));
  return out;
}

// ---------------------------------------------------------------------------
// Bosonic Fock space

/// Orthonormal basis of partition states prod_k a_{-k}^{m_k} |0> / norm, total
/// degree sum k m_k <= N, ordered by degree.
class PartitionBasis {
 public:
  using Multiplicities = std::vector<int>;  // index k = 1..N, slot 0 unused

  explicit PartitionBasis(int truncation) : truncation_(truncation) {
    if (truncation < 0) throw ConfigError("PartitionBasis: truncation must be >= 0");
    degree_begin_.push_back(0);
    for (int d = 0; d <= truncation; ++d) {
      Multiplicities m(static_cast<std::size_t>(truncation) + 1, 0);
      enumerate(d, d, m);
      degree_begin_.push_back(states_.size());
    }
    for (std::size_t i = 0; i < states_.size(); ++i) index_.emplace(states_[i], i);
  }

  int truncation() const { return truncation_; }
  std::size_t size() const { return states_.size(); }
  const Multiplicities& state(std::size_t i) const { return states_[i]; }
  int degree(std::size_t i) const { return degree_of(states_[i]); }
  /// Number of basis states of exactly degree d.
  std::size_t count(int d) const { return degree_begin_[d + 1] - degree_begin_[d]; }
  /// Index of the first state of degree > d.
  std::size_t end_of_degree(int d) const { return degree_begin_[std::min(d, truncation_) + 1]; }

  /// Index of a multiplicity vector, or npos when outside the truncated space.
  std::size_t find(const Multiplicities& m) const {
    const auto it = index_.find(m);
    return it == index_.end() ? npos : it->second;
  }

  static int degree_of(const Multiplicities& m) {
    int d = 0;
    for (std::size_t k = 1; k < m.size(); ++k) d += static_cast<int>(k) * m[k];
    return d;
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  // Partitions of `remaining` into parts <= max_part, largest part first.
  void enumerate(int remaining, int max_part, Multiplicities& m) {
    if (remaining == 0) {
      states_.push_back(m);
      return;
    }
    for (int k = std::min(remaining, max_part); k >= 1; --k) {
      ++m[k];
      enumerate(remaining - k, k, m);
      --m[k];
    }
  }

  int truncation_;
  std::vector<Multiplicities> states_;
  std::vector<std::size_t> degree_begin_;
  std::map<Multiplicities, std::size_t> index_;
};

/// Column-sparse real matrix on a PartitionBasis.
class SparseOperator {
 public:
  using Column = std::vector<std::pair<std::size_t, double>>;

  SparseOperator() = default;
  explicit SparseOperator(std::size_t dim) : columns_(dim) {}

  std::size_t dim() const { return columns_.size(); }
  const Column& column(std::size_t j) const { return columns_[j]; }
  Column& column(std::size_t j) { return columns_[j]; }

  double entry(std::size_t i, std::size_t j) const {
    for (const auto& [r, v] : columns_[j])
      if (r == i) return v;
    return 0.0;
  }

  /// y += s * A x for sparse x given as (index, value) pairs.
  void apply_add(const Column& x, double s, std::map<std::size_t, double>& y) const {
    for (const auto& [j, xv] : x)
      for (const auto& [i, v] : columns_[j]) y[i] += s * v * xv;
  }

 private:
  std::vector<Column> columns_;
};

/// L_m of the free boson, L_m = 1/2 sum_j :a_{m-j} a_j:, on the truncated space.
/// Images above degree N are projected away.
struct VirasoroOperator {
  int index = 0;
  double central_charge = 1.0;
  std::shared_ptr<const PartitionBasis> basis;
  SparseOperator matrix;

  /// L_m e_s as a sparse vector.
  SparseOperator::Column image(std::size_t s) const { return matrix.column(s); }
};

namespace detail {

// Applies a_k (k > 0 annihilates, k < 0 creates) to a basis state with
// amplitude; returns false when the result vanishes or leaves the space.
inline bool apply_oscillator(int k, PartitionBasis::Multiplicities& m, double& amp) {
  if (k > 0) {
    if (static_cast<std::size_t>(k) >= m.size() || m[k] == 0) return false;
    amp *= std::sqrt(static_cast<double>(k) * m[k]);
    --m[k];
    return true;
  }
  const int p = -k;
  if (static_cast<std::size_t>(p) >= m.size()) return false;
  amp *= std::sqrt(static_cast<double>(p) * (m[p] + 1));
  ++m[p];
  return true;
}

}  // namespace detail

inline VirasoroOperator make_virasoro(int m, std::shared_ptr<const PartitionBasis> basis) {
  const int n_max = basis->truncation();
  if (std::abs(m) > n_max) throw ConfigError("virasoro_generator: |m| must not exceed the truncation");
  VirasoroOperator op{m, 1.0, basis, SparseOperator(basis->size())};
  for (std::size_t s = 0; s < basis->size(); ++s) {
    const int deg = basis->degree(s);
    const int target = deg - m;
    if (target < 0 || target > n_max) continue;
    std::map<std::size_t, double> acc;
    for (int j = -n_max - std::abs(m); j <= n_max + std::abs(m); ++j) {
      const int p = m - j, q = j;
      if (p == 0 || q == 0) continue;
      // Normal order: annihilator (positive index) acts first.
      const int first = std::max(p, q), second = std::min(p, q);
      auto st = basis->state(s);
      double amp = 0.5;
      if (!detail::apply_oscillator(first, st, amp)) continue;
      if (!detail::apply_oscillator(second, st, amp)) continue;
      const std::size_t r = basis->find(st);
      if (r == PartitionBasis::npos) continue;
      acc[r] += amp;
    }
    auto& col = op.matrix.column(s);
    for (const auto& [r, v] : acc)
      if (v != 0.0) col.emplace_back(r, v);
  }
  return op;
}

inline VirasoroOperator virasoro_generator(int m, int truncation) {
  return make_virasoro(m, std::make_shared<const PartitionBasis>(truncation));
}

/// Generators L_m over a shared basis, built on demand.
class FockSpace {
 public:
  explicit FockSpace(int truncation) : basis_(std::make_shared<const PartitionBasis>(truncation)) {}

  int truncation() const { return basis_->truncation(); }
  const PartitionBasis& basis() const { return *basis_; }

  const VirasoroOperator& L(int m) {
    auto it = cache_.find(m);
    if (it == cache_.end()) it = cache_.emplace(m, make_virasoro(m, basis_)).first;
    return it->second;
  }

 private:
  std::shared_ptr<const PartitionBasis> basis_;
  std::map<int, VirasoroOperator> cache_;
};

// ---------------------------------------------------------------------------
// Checks

using SparseVector = std::map<std::size_t, double>;

inline SparseOperator::Column to_column(const SparseVector& v) {
  SparseOperator::Column c;
  for (const auto& [i, x] : v)
    if (x != 0.0) c.emplace_back(i, x);
  return c;
}

/// (A B - B A) e_s plus extra terms, as a sparse vector.
inline SparseVector commutator_image(const VirasoroOperator& a, const VirasoroOperator& b, std::size_t s) {
  SparseVector out;
  a.matrix.apply_add(b.matrix.column(s), 1.0, out);
  b.matrix.apply_add(a.matrix.column(s), -1.0, out);
  return out;
}

inline double max_abs(const SparseVector& v) {
  double m = 0.0;
  for (const auto& [i, x] : v) m = std::max(m, std::abs(x));
  return m;
}

enum class BracketConvention { Standard, Printed, Neither, Both };

/// Residuals of the two bracket conventions on states of degree <= N-|m|-|n|.
///
/// Standard: [L_m, L_n] = (m-n) L_{m+n} + c/12 (m^3 - m) delta_{m+n,0} I
/// Printed:  [L_m, L_n] = (n-m) L_{m+n} + delta_{n,-m} n(n^2-1)/12 L_0
struct BracketCheck {
  double standard_residual = 0.0;
  double printed_residual = 0.0;
  BracketConvention satisfied = BracketConvention::Neither;
  std::size_t interior_states = 0;
};

inline BracketCheck virasoro_bracket_check(FockSpace& space, int m, int n, double tol = 1e-10) {
  const int cap = space.truncation();
  if (2 * std::abs(m) > cap || 2 * std::abs(n) > cap || 2 * std::abs(m + n) > cap)
    throw ConfigError("virasoro_bracket_check: truncation too small for these indices");
  const auto& lm = space.L(m);
  const auto& ln = space.L(n);
  const auto& lsum = space.L(m + n);
  const auto& l0 = space.L(0);
  const double c = lm.central_charge;
  const int interior_degree = cap - std::abs(m) - std::abs(n);
  const std::size_t end = space.basis().end_of_degree(interior_degree);
  BracketCheck out;
  out.interior_states = end;
  for (std::size_t s = 0; s < end; ++s) {
    const SparseVector comm = commutator_image(lm, ln, s);
    SparseVector standard = comm, printed = comm;
    for (const auto& [i, v] : lsum.matrix.column(s)) {
      standard[i] -= (m - n) * v;
      printed[i] -= (n - m) * v;
    }
    if (m + n == 0) {
      standard[s] -= c / 12.0 * (static_cast<double>(m) * m * m - m);
      for (const auto& [i, v] : l0.matrix.column(s)) printed[i] -= static_cast<double>(n) * (n * n - 1) / 12.0 * v;
    }
    out.standard_residual = std::max(out.standard_residual, max_abs(standard));
    out.printed_residual = std::max(out.printed_residual, max_abs(printed));
  }
  const bool std_ok = out.standard_residual <= tol, printed_ok = out.printed_residual <= tol;
  out.satisfied = std_ok && printed_ok ? BracketConvention::Both
                  : std_ok             ? BracketConvention::Standard
                  : printed_ok         ? BracketConvention::Printed
                                       : BracketConvention::Neither;
  return out;
}

inline BracketCheck virasoro_bracket_check(int m, int n, int truncation, double tol = 1e-10) {
  FockSpace space(truncation);
  return virasoro_bracket_check(space, m, n, tol);
}

/// <0| [L_m, L_{-m}] |0> - 2m <0|L_0|0>; equals c/12 (m^3 - m).
inline double vacuum_central_term(FockSpace& space, int m) {
  const SparseVector v = commutator_image(space.L(m), space.L(-m), 0);
  const auto it = v.find(0);
  const double bracket = it == v.end() ? 0.0 : it->second;
  return bracket - 2.0 * m * space.L(0).matrix.entry(0, 0);
}

/// max |[[La,Lb],Lc] + [[Lb,Lc],La] + [[Lc,La],Lb]| on degree <= N-|a|-|b|-|c|.
inline double jacobi_residual(FockSpace& space, int a, int b, int c) {
  const int interior_degree = space.truncation() - std::abs(a) - std::abs(b) - std::abs(c);
  if (interior_degree < 0) throw ConfigError("jacobi_residual: truncation too small");
  const auto& la = space.L(a);
  const auto& lb = space.L(b);
  const auto& lc = space.L(c);
  const std::size_t end = space.basis().end_of_degree(interior_degree);
  // [[X,Y],Z] e = X Y Z e - Y X Z e - Z X Y e + Z Y X e
  auto triple = [](const VirasoroOperator& x, const VirasoroOperator& y, const VirasoroOperator& z, std::size_t s,
                   SparseVector& out) {
    SparseVector yz, xz, xy, yx;
    y.matrix.apply_add(z.matrix.column(s), 1.0, yz);
    x.matrix.apply_add(z.matrix.column(s), 1.0, xz);
    x.matrix.apply_add(y.matrix.column(s), 1.0, xy);
    y.matrix.apply_add(x.matrix.column(s), 1.0, yx);
    x.matrix.apply_add(to_column(yz), 1.0, out);
    y.matrix.apply_add(to_column(xz), -1.0, out);
    z.matrix.apply_add(to_column(xy), -1.0, out);
    z.matrix.apply_add(to_column(yx), 1.0, out);
  };
  double worst = 0.0;
  for (std::size_t s = 0; s < end; ++s) {
    SparseVector acc;
    triple(la, lb, lc, s, acc);
    triple(lb, lc, la, s, acc);
    triple(lc, la, lb, s, acc);
    worst = std::max(worst, max_abs(acc));
  }
  return worst;
}

/// max |(L_m)^T - L_{-m}| over entries whose column has degree <= N - |m|.
inline double adjoint_residual(FockSpace& space, int m) {
  const auto& lm = space.L(m);
  const auto& lminus = space.L(-m);
  const int interior_degree = space.truncation() - std::abs(m);
  const std::size_t end = space.basis().end_of_degree(interior_degree);
  double worst = 0.0;
  for (std::size_t s = 0; s < end; ++s) {
    for (const auto& [r, v] : lm.matrix.column(s)) worst = std::max(worst, std::abs(v - lminus.matrix.entry(s, r)));
    for (const auto& [r, v] : lminus.matrix.column(s)) worst = std::max(worst, std::abs(v - lm.matrix.entry(s, r)));
  }
  return worst;
}

/// Eigenvalues of the diagonal L_0 with multiplicities, ascending.
inline std::vector<std::pair<long long, std::size_t>> l0_spectrum(FockSpace& space) {
  const auto& l0 = space.L(0);
  std::map<long long, std::size_t> counts;
  for (std::size_t s = 0; s < space.basis().size(); ++s) {
    for (const auto& [r, v] : l0.matrix.column(s))
      if (r != s && std::abs(v) > 1e-12) throw DomainError("l0_spectrum: L_0 is not diagonal");
    const double ev = l0.matrix.entry(s, s);
    const double rounded = std::round(ev);
    if (std::abs(ev - rounded) > 1e-9) throw DomainError("l0_spectrum: non-integral eigenvalue");
    ++counts[static_cast<long long>(rounded)];
  }
  return {counts.begin(), counts.end()};
}

/// sum_m (contribution of T to L_m) L_m restricted to |m| <= N.
inline SparseOperator field_operator(FockSpace& space, const LoopField& field) {
  const int cap = space.truncation();
  SparseOperator out(space.basis().size());
  for (std::size_t s = 0; s < space.basis().size(); ++s) {
    SparseVector acc;
    for (int m = -cap; m <= cap; ++m) {
      const double w = loop_mode_contribution(field, m);
      if (w == 0.0) continue;
      for (const auto& [r, v] : space.L(m).matrix.column(s)) acc[r] += w * v;
    }
    out.column(s) = to_column(acc);
  }
  return out;
}

}  // namespace sl2lab::fock
