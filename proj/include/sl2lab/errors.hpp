#pragma once

#include <stdexcept>
#include <string>

namespace sl2lab {

/// Argument outside the domain of a map (Im z <= 0, y <= 0, a <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Point where a formula degenerates (theta in pi*Z, a = 1, ...).
class SingularPoint : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Parabolic (trace +-2, not central) input to the endoscopy classifier.
class NotRegularSemisimple : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Bad sizes, truncation orders or configuration values.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what, int line = 0)
      : std::invalid_argument(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Operands with incompatible shapes or labels.
class ShapeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A truncated series or quadrature could not certify the requested accuracy.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ratio requested at a point where the denominator is numerically zero.
class IllConditioned : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sl2lab
