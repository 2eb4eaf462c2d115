#pragma once

#include "equidef/schema.hpp"
#include "equidef/universe.hpp"

#include <map>
#include <string>
#include <vector>

namespace equidef {

/// Adds all pairwise affine midpoints, `depth` times over. depth >= 1.
Universe close_midpoints(const Space& space, const std::vector<Point>& points, int depth,
                         std::size_t cap = Universe::kDefaultCap);

/// a + i(b - a) for i = 0..n and a + 2^-j (b - a) for j = 0..k. Requires a != b.
Universe close_for_alpha_beta(const Space& space, const Point& a, const Point& b, int n, int k);

/// Inputs plus u = a + n 2^-k (b - a), v = a + 2^-k (b - a), and, when the
/// annulus condition holds, a point e with d(c,e) = d(a,u) and d(d,e) = d(a,v).
Universe close_for_psi(const Space& space, const Point& a, const Point& b, const Point& c, const Point& d, int n,
                       int k);

struct DeltaClosure {
  Universe universe;
  int chain_length = 0;   // length of the natural chain x -> z
  bool complete = true;   // false when the natural chain needs more than nMax steps
};

/// Chains from x to z whose steps all have length d(x,y): the natural chain
/// (full steps along the segment, the remainder by a two-step detour) and, for
/// every j <= nMax with d(x,z) <= j d(x,y), a chain of exactly j steps.
DeltaClosure close_for_delta(const Space& space, const Point& x, const Point& y, const Point& z, int n_max);

/// Analytic counterexample points for the universal parts of EQUIV2, LE, NEQ:
/// EQUIV2(a,b,c,d): mid(a,b) and mid(a, mid(a,b)); LE(a,b,c,d): mid(c,d);
/// NEQ(x,y): a point beyond chain_max d(x,y) from x.
Universe add_refuters(const Space& space, const RelationId& id, const std::vector<Point>& points, int chain_max = 8);

struct ClosureSpec {
  RelationId id;
  std::vector<Point> inputs;  // the relation's arguments, in order
  TruncationParams trunc;
  int midpoint_depth = 1;     // PHI(n >= 1) scaffolding only
  bool refuters = true;
  int max_rounds = 6;         // guard/witness fixpoint rounds for EQUIV2 and LE
  std::size_t cap = Universe::kDefaultCap;
};

struct ClosureResult {
  Universe universe;
  bool complete = true;
  std::vector<std::string> notes;
};

/// A universe over which evaluating `spec.id` as formula (lower layers as
/// oracles) agrees with evaluation over the whole plane.
ClosureResult close_for(const Space& space, const ClosureSpec& spec);

/// `inputs` plus close_for of every schema reference in `f` outside quantifier
/// scope whose indices are literals and whose terms are bound by `valuation`.
ClosureResult close_for_formula(const Space& space, const Formula& f, const std::map<std::string, Point>& valuation,
                                const TruncationParams& trunc);

}  // namespace equidef
