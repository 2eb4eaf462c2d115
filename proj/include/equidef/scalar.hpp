#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace equidef {

using Rational = mpq_class;

enum class Backend { exact, floating };

std::string_view to_string(Backend backend);
Backend parse_backend(std::string_view text);

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BackendMismatch : public GeometryError {
 public:
  BackendMismatch() : GeometryError("backend mismatch between operands") {}
};

/// Parses "p", "p/q", "-p/q" or a finite decimal such as "0.125" into an exact rational.
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& q);
/// num/den in lowest terms.
Rational ratio(long num, long den);

/// A coordinate value: an exact rational or a double, tagged by backend.
///
/// Arithmetic between the two backends is refused rather than coerced.
class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  explicit Scalar(Rational q) : value_(std::move(q)) { std::get<Rational>(value_).canonicalize(); }
  /// From a rational already in lowest terms (any result of GMP arithmetic).
  static Scalar canonical(Rational q) {
    Scalar s;
    s.value_ = std::move(q);
    return s;
  }
  explicit Scalar(double v);

  static Scalar exact(long num, long den = 1);
  static Scalar zero(Backend backend);

  Backend backend() const { return value_.index() == 0 ? Backend::exact : Backend::floating; }
  bool is_exact() const { return value_.index() == 0; }

  const Rational& rational() const;
  double to_double() const;
  int sign() const;

  Scalar abs() const;
  Scalar scaled(const Rational& factor) const;

  friend Scalar operator+(const Scalar& lhs, const Scalar& rhs);
  friend Scalar operator-(const Scalar& lhs, const Scalar& rhs);
  friend Scalar operator*(const Scalar& lhs, const Scalar& rhs);
  friend Scalar operator/(const Scalar& lhs, const Scalar& rhs);
  Scalar operator-() const;

  /// Structural equality: same backend and bitwise-equal value (no tolerance).
  friend bool operator==(const Scalar& lhs, const Scalar& rhs);
  /// Strict ordering; both operands must share a backend.
  friend bool operator<(const Scalar& lhs, const Scalar& rhs);

  std::string to_string() const;

 private:
  std::variant<Rational, double> value_;
};

}  // namespace equidef
