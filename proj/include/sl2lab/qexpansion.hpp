#pragma once

// Exact q-expansions of level-one modular forms.

#include <algorithm>
#include <cstddef>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "sl2lab/errors.hpp"
#include "sl2lab/scalar.hpp"

namespace sl2lab::modular {

/// sum_{n <= M} a_n q^n with exact integer coefficients and weight k.
struct QExpansion {
  int weight = 0;
  std::vector<BigInt> coeffs;  // a_0 .. a_M

  std::size_t order() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  const BigInt& operator[](std::size_t n) const { return coeffs[n]; }

  static QExpansion constant_one(std::size_t order = 0) {
    QExpansion q{0, std::vector<BigInt>(order + 1, BigInt(0))};
    q.coeffs[0] = 1;
    return q;
  }

  friend bool operator==(const QExpansion&, const QExpansion&) = default;
};

/// Truncated product; weights add.
inline QExpansion operator*(const QExpansion& x, const QExpansion& y) {
  const std::size_t order = std::min(x.order(), y.order());
  QExpansion out{x.weight + y.weight, std::vector<BigInt>(order + 1, BigInt(0))};
  for (std::size_t i = 0; i <= order; ++i) {
    if (x.coeffs[i] == 0) continue;
    for (std::size_t j = 0; i + j <= order; ++j) out.coeffs[i + j] += x.coeffs[i] * y.coeffs[j];
  }
  return out;
}

inline QExpansion operator-(const QExpansion& x, const QExpansion& y) {
  if (x.weight != y.weight) throw ShapeMismatch("q-expansions of different weight");
  const std::size_t order = std::min(x.order(), y.order());
  QExpansion out{x.weight, std::vector<BigInt>(order + 1)};
  for (std::size_t i = 0; i <= order; ++i) out.coeffs[i] = x.coeffs[i] - y.coeffs[i];
  return out;
}

/// Bernoulli numbers B_0..B_n (B_1 = -1/2) from sum_{j<=m} C(m+1, j) B_j = 0.
inline std::vector<Rational> bernoulli_numbers(int n) {
  std::vector<Rational> b(static_cast<std::size_t>(n) + 1);
  b[0] = 1;
  for (int m = 1; m <= n; ++m) {
    Rational s = 0;
    BigInt binom = 1;  // C(m+1, j)
    for (int j = 0; j < m; ++j) {
      s += Rational(binom) * b[j];
      binom = binom * (m + 1 - j) / (j + 1);
    }
    b[m] = -s / Rational(m + 1);
  }
  return b;
}

/// sigma_p(n) = sum_{d | n} d^p.
inline BigInt divisor_sigma(std::size_t n, int p) {
  BigInt s = 0;
  for (std::size_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    s += boost::multiprecision::pow(BigInt(d), static_cast<unsigned>(p));
    const std::size_t e = n / d;
    if (e != d) s += boost::multiprecision::pow(BigInt(e), static_cast<unsigned>(p));
  }
  return s;
}

/// E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n. Weights whose constant -2k/B_k is
/// not an integer (k = 12 and beyond except 14) are rejected.
inline QExpansion eisenstein_q(int k, std::size_t order) {
  if (order < 1) throw ConfigError("eisenstein_q: order must be >= 1");
  if (k < 4 || k % 2 != 0) throw ConfigError("eisenstein_q: weight must be even and >= 4");
  const Rational constant = Rational(-2 * k) / bernoulli_numbers(k)[static_cast<std::size_t>(k)];
  if (denominator(constant) != 1) throw ConfigError("eisenstein_q: weight " + std::to_string(k) + " has non-integral coefficients");
  const BigInt c = numerator(constant);
  QExpansion e{k, std::vector<BigInt>(order + 1)};
  e.coeffs[0] = 1;
  for (std::size_t n = 1; n <= order; ++n) e.coeffs[n] = c * divisor_sigma(n, k - 1);
  return e;
}

/// Delta = (E_4^3 - E_6^2)/1728.
inline QExpansion delta_q(std::size_t order) {
  const auto e4 = eisenstein_q(4, order);
  const auto e6 = eisenstein_q(6, order);
  const QExpansion num = e4 * e4 * e4 - e6 * e6;
  QExpansion out{12, std::vector<BigInt>(order + 1)};
  for (std::size_t n = 0; n <= order; ++n) {
    BigInt q, r;
    boost::multiprecision::divide_qr(num.coeffs[n], BigInt(1728), q, r);
    if (r != 0) throw std::logic_error("delta_q: inexact division by 1728");
    out.coeffs[n] = q;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text format: optional "# weight k" header, then one "n coefficient" per line.

inline void write_qexpansion(std::ostream& os, const QExpansion& f) {
  os << "# weight " << f.weight << '\n';
  for (std::size_t n = 0; n < f.coeffs.size(); ++n) os << n << ' ' << f.coeffs[n] << '\n';
}

inline QExpansion read_qexpansion(std::istream& is) {
  QExpansion f;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string key;
      if (hs >> key && key == "weight" && !(hs >> f.weight)) throw ConfigError("bad weight header", lineno);
      continue;
    }
    std::istringstream ls(line);
    std::size_t n = 0;
    std::string coeff;
    if (!(ls >> n >> coeff)) throw ConfigError("expected 'n coefficient'", lineno);
    if (n != f.coeffs.size()) throw ConfigError("coefficient index out of sequence", lineno);
    try {
      f.coeffs.emplace_back(coeff);
    } catch (const std::exception&) {
      throw ConfigError("coefficient is not an integer: " + coeff, lineno);
    }
  }
  return f;
}

}  // namespace sl2lab::modular
