#include "equidef/point.hpp"

namespace equidef {

Point::Point(Scalar px, Scalar py) : x(std::move(px)), y(std::move(py)) {
  if (x.backend() != y.backend()) throw BackendMismatch();
}

Point Point::to_floating() const {
  if (!x.is_exact()) return *this;
  return floating(x.to_double(), y.to_double());
}

std::string Point::to_string() const { return "(" + x.to_string() + "," + y.to_string() + ")"; }

Point affine_combination(const Point& a, const Point& b, const Rational& t) {
  return a + (b - a).scaled(t);
}

Scalar cross(const Point& a, const Point& b, const Point& c) {
  const Point u = b - a;
  const Point v = c - a;
  return u.x * v.y - u.y * v.x;
}

}  // namespace equidef
