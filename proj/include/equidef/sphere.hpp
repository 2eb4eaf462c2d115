#pragma once

#include "equidef/space.hpp"

#include <vector>

namespace equidef {

class NoIntersection : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class SolverError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

/// Raised when an exact construction would have an irrational result.
class ExactRefused : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

/// True iff |R - r| <= d(c,d) <= R + r, the condition under which the spheres
/// S(c,R) and S(d,r) meet in a two-dimensional normed plane.
bool spheres_meet(const Space& space, const Point& c, const Distance& big_r, const Point& d, const Distance& small_r);

/// A point e with d(c,e) = R and d(d,e) = r.
///
/// L1/Linf: walk the polygonal sphere S(c,R) counterclockwise from the +x
/// direction, splitting each edge where d(., d) changes slope; the first root
/// is returned (exact rationals on the exact backend). L2 (float): closed form,
/// left of the directed line c->d. Lp (float): bisection on the angle.
/// The result is re-checked against both constraints with the distance op.
Point sphere_intersection_point(const Space& space, const Point& c, const Distance& big_r, const Point& d,
                                const Distance& small_r);

/// Every intersection point the solver finds: all edge-walk roots for L1/Linf,
/// both sides of c->d for L2, one point for Lp. The first entry is
/// sphere_intersection_point's answer; all entries are re-verified.
std::vector<Point> sphere_intersection_points(const Space& space, const Point& c, const Distance& big_r,
                                              const Point& d, const Distance& small_r);

}  // namespace equidef
