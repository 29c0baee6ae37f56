#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <type_traits>

#include <boost/multiprecision/cpp_int.hpp>

namespace sl2lab {

using Complex = std::complex<double>;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Magnitude of a scalar as a double, for residual reporting.
inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const Complex& x) { return std::abs(x); }
inline double magnitude(const Rational& x) { return std::abs(x.convert_to<double>()); }
inline double magnitude(std::int64_t x) { return std::abs(static_cast<double>(x)); }

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational> || std::is_integral_v<T>;

}  // namespace sl2lab
