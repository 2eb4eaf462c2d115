#include "equidef/oracles.hpp"

#include <algorithm>
#include <cmath>

namespace equidef {

Rational inverse_power_of_two(int k) {
  if (k < 0) throw RelationError("negative dyadic exponent");
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(k));
  return Rational(mpz_class(1), den);
}

namespace {

// |u x v| and u . v tested with a scale-aware tolerance on the float backend.
bool cross_is_zero(const Space& space, const Point& a, const Point& b, const Point& c) {
  const Scalar cr = cross(a, b, c);
  if (space.is_exact()) return cr.sign() == 0;
  const double scale = std::max(1.0, distance(space, a, b).to_double() * distance(space, a, c).to_double());
  return std::abs(cr.to_double()) <= space.tolerance() * scale;
}

}  // namespace

bool oracle_equiv2(const Space& space, const Point& a, const Point& b, const Point& c, const Point& d) {
  return scaled_equidistant(space, a, b, Rational(2), c, d);
}

bool oracle_phi0(const Space& space, const Point& a, const Point& b, const Point& x) {
  return equidistant(space, x, a, x, b) && scaled_equidistant(space, a, b, Rational(2), x, a);
}

bool oracle_midpoint(const Space& space, const Point& a, const Point& b, const Point& c) {
  return !space.same_point(a, c) && space.same_point(midpoint(a, c), b);
}

bool oracle_alpha(const Space& space, int n, const Point& a, const Point& b, const Point& x) {
  if (n < 1) throw RelationError("ALPHA index must be >= 1");
  return !space.same_point(a, b) && space.same_point(x, affine_combination(a, b, Rational(n)));
}

bool oracle_beta(const Space& space, int k, const Point& a, const Point& b, const Point& y) {
  if (k < 1) throw RelationError("BETA index must be >= 1");
  return !space.same_point(a, b) && space.same_point(y, affine_combination(a, b, inverse_power_of_two(k)));
}

bool oracle_psi(const Space& space, int n, int k, const Point& a, const Point& b, const Point& c, const Point& d) {
  if (n < 1 || k < 1) throw RelationError("PSI indices must be >= 1");
  if (space.same_point(a, b) || space.same_point(c, d)) return false;
  const Distance unit = distance(space, a, b);
  const Distance gap = distance(space, c, d);
  const Rational step = inverse_power_of_two(k);
  // |R - r| = (n - 1) 2^-k u and R + r = (n + 1) 2^-k u
  return compare_scaled(space, gap, Rational((n - 1) * step), unit) >= 0 &&
         compare_scaled(space, gap, Rational((n + 1) * step), unit) <= 0;
}

bool oracle_gamma(const Space& space, const Point& a, const Point& b, const Point& c) {
  if (space.same_point(a, b) || space.same_point(b, c) || space.same_point(a, c)) return false;
  const LengthTerm terms[] = {{Rational(1), distance(space, a, b)},
                              {Rational(1), distance(space, b, c)},
                              {Rational(-1), distance(space, a, c)}};
  return sign_of_combination(space, terms) == 0;
}

bool oracle_between(const Space& space, const Point& a, const Point& b, const Point& c) {
  if (space.same_point(a, c)) return space.same_point(a, b);
  if (space.same_point(a, b) || space.same_point(b, c)) return true;
  if (!cross_is_zero(space, a, b, c)) return false;
  // collinear: b is between iff t = (b-a).(c-a) / |c-a|^2 lies in [0,1]
  const Point u = b - a;
  const Point v = c - a;
  const Scalar dot = u.x * v.x + u.y * v.y;
  const Scalar len2 = v.x * v.x + v.y * v.y;
  if (space.is_exact()) return dot.sign() >= 0 && !(len2 < dot);
  const double slack = space.tolerance() * std::max(1.0, len2.to_double());
  return dot.to_double() >= -slack && dot.to_double() <= len2.to_double() + slack;
}

bool oracle_delta(const Space& space, int n, const Point& a, const Point& b, const Point& c) {
  if (n < 1) throw RelationError("DELTA index must be >= 1");
  return compare_scaled(space, distance(space, a, c), Rational(n), distance(space, a, b)) <= 0;
}

bool oracle_distinct(const Space& space, const Point& a, const Point& b) { return !space.same_point(a, b); }

bool oracle_le(const Space& space, const Point& a, const Point& b, const Point& c, const Point& d) {
  return compare_scaled(space, distance(space, a, b), Rational(1), distance(space, c, d)) <= 0;
}

bool oracle_collinear(const Space& space, const Point& a, const Point& b, const Point& c) {
  return cross_is_zero(space, a, b, c);
}

bool oracle_parallelogram(const Space& space, const Point& a, const Point& b, const Point& c, const Point& d) {
  return space.same_point(b - a + d, c) && !oracle_collinear(space, a, b, c);
}

bool has_oracle(const RelationId& id) { return !(id.kind == RelationKind::phi && id.index(0) >= 1); }

bool evaluate_oracle(const Space& space, const RelationId& id, std::span<const Point> args) {
  std::vector<const Point*> ptrs;
  for (const auto& p : args) ptrs.push_back(&p);
  return evaluate_oracle(space, id, std::span<const Point* const>(ptrs));
}

bool evaluate_oracle(const Space& space, const RelationId& id, std::span<const Point* const> ptrs) {
  if (static_cast<int>(ptrs.size()) != id.arity()) {
    throw RelationError(id.to_string() + " expects " + std::to_string(id.arity()) + " points");
  }
  auto p = [&](std::size_t i) -> const Point& { return *ptrs[i]; };
  switch (id.kind) {
    case RelationKind::equiv2: return oracle_equiv2(space, p(0), p(1), p(2), p(3));
    case RelationKind::phi:
      if (!has_oracle(id)) throw RelationError(id.to_string() + " has no closed-form oracle");
      return oracle_phi0(space, p(0), p(1), p(2));
    case RelationKind::midpoint: return oracle_midpoint(space, p(0), p(1), p(2));
    case RelationKind::alpha: return oracle_alpha(space, id.index(0), p(0), p(1), p(2));
    case RelationKind::beta: return oracle_beta(space, id.index(0), p(0), p(1), p(2));
    case RelationKind::psi: return oracle_psi(space, id.index(0), id.index(1), p(0), p(1), p(2), p(3));
    case RelationKind::gamma: return oracle_gamma(space, p(0), p(1), p(2));
    case RelationKind::between: return oracle_between(space, p(0), p(1), p(2));
    case RelationKind::delta: return oracle_delta(space, id.index(0), p(0), p(1), p(2));
    case RelationKind::neq: return oracle_distinct(space, p(0), p(1));
    case RelationKind::le: return oracle_le(space, p(0), p(1), p(2), p(3));
    case RelationKind::collinear: return oracle_collinear(space, p(0), p(1), p(2));
    case RelationKind::parallelogram: return oracle_parallelogram(space, p(0), p(1), p(2), p(3));
  }
  throw RelationError("unhandled relation");
}

}  // namespace equidef
