#pragma once

#include "equidef/relation.hpp"
#include "equidef/space.hpp"

#include <span>

namespace equidef {

/// 2^-k as an exact rational.
Rational inverse_power_of_two(int k);

// Analytic meaning of each relation of the definitional tower, computed from
// coordinates and distances. These are the ground truth that formula
// evaluation is compared against.

/// d(a,b) = 2 d(c,d)
bool oracle_equiv2(const Space& space, const Point& a, const Point& b, const Point& c, const Point& d);
/// x is a metric midpoint of a,b: d(x,a) = d(x,b) and d(a,b) = 2 d(x,a).
bool oracle_phi0(const Space& space, const Point& a, const Point& b, const Point& x);
/// a + c = 2b with a != c. Affine, so the norm plays no role.
bool oracle_midpoint(const Space& space, const Point& a, const Point& b, const Point& c);
/// a != b and x = a + n(b - a)
bool oracle_alpha(const Space& space, int n, const Point& a, const Point& b, const Point& x);
/// a != b and y = a + 2^-k (b - a)
bool oracle_beta(const Space& space, int k, const Point& a, const Point& b, const Point& y);
/// a != b, c != d and some e has d(c,e) = n 2^-k d(a,b), d(d,e) = 2^-k d(a,b).
/// In a normed plane the two spheres meet iff |R - r| <= d(c,d) <= R + r.
bool oracle_psi(const Space& space, int n, int k, const Point& a, const Point& b, const Point& c, const Point& d);
/// a, b, c pairwise distinct and d(a,b) + d(b,c) = d(a,c)
bool oracle_gamma(const Space& space, const Point& a, const Point& b, const Point& c);
/// b = a + t(c - a) for some t in [0,1]; endpoints allowed.
bool oracle_between(const Space& space, const Point& a, const Point& b, const Point& c);
/// d(a,c) <= n d(a,b)
bool oracle_delta(const Space& space, int n, const Point& a, const Point& b, const Point& c);
bool oracle_distinct(const Space& space, const Point& a, const Point& b);
/// d(a,b) <= d(c,d)
bool oracle_le(const Space& space, const Point& a, const Point& b, const Point& c, const Point& d);
bool oracle_collinear(const Space& space, const Point& a, const Point& b, const Point& c);
/// abcd is a nondegenerate parallelogram: b - a = c - d and a, b, c not collinear.
bool oracle_parallelogram(const Space& space, const Point& a, const Point& b, const Point& c, const Point& d);

/// False only for PHI(n) with n >= 1, which has no closed-form meaning.
bool has_oracle(const RelationId& id);

/// Dispatches to the oracle for `id`; `args` must have the relation's arity.
bool evaluate_oracle(const Space& space, const RelationId& id, std::span<const Point> args);
bool evaluate_oracle(const Space& space, const RelationId& id, std::span<const Point* const> args);

}  // namespace equidef
