#pragma once

#include "equidef/scalar.hpp"

#include <string>

namespace equidef {

/// A point of the coordinate plane. Both coordinates share one backend.
struct Point {
  Scalar x;
  Scalar y;

  Point() = default;
  Point(Scalar px, Scalar py);

  static Point exact(const Rational& px, const Rational& py) { return {Scalar(px), Scalar(py)}; }
  static Point floating(double px, double py) { return {Scalar(px), Scalar(py)}; }

  Backend backend() const { return x.backend(); }

  /// Same point converted to the float backend (identity if already float).
  Point to_floating() const;

  friend Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
  Point scaled(const Rational& factor) const { return {x.scaled(factor), y.scaled(factor)}; }

  /// Structural (tolerance-free) equality.
  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }

  std::string to_string() const;
};

/// a + t(b - a); exact on the rational backend.
Point affine_combination(const Point& a, const Point& b, const Rational& t);

inline Point midpoint(const Point& a, const Point& b) { return affine_combination(a, b, Rational(1, 2)); }

/// (b - a) x (c - a)
Scalar cross(const Point& a, const Point& b, const Point& c);

}  // namespace equidef
