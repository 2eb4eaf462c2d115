#include "equidef/closure.hpp"

#include "equidef/oracles.hpp"
#include "equidef/sphere.hpp"

#include <limits>

namespace equidef {

namespace {

Scalar exact_length(const Distance& d) {
  try {
    return d.to_scalar();
  } catch (const ExactRefused&) {
    throw;
  } catch (const GeometryError& e) {
    throw ExactRefused(e.what());
  }
}

// p + (num / den) v
Point offset(const Point& p, const Point& v, const Distance& num, const Distance& den) {
  const Scalar ratio = exact_length(num) / exact_length(den);
  return {p.x + ratio * v.x, p.y + ratio * v.y};
}

// The point at distance `len` from p in the direction of q (or +x when p == q).
Point toward(const Space& space, const Point& p, const Point& q, const Distance& len) {
  if (space.same_point(p, q)) return {p.x + exact_length(len), p.y};
  return offset(p, q - p, len, distance(space, p, q));
}

Point rot90(const Point& v) { return {-v.y, v.x}; }

void require_arity(const ClosureSpec& spec) {
  if (static_cast<int>(spec.inputs.size()) != spec.id.arity()) {
    throw RelationError(spec.id.to_string() + " closure expects " + std::to_string(spec.id.arity()) + " input points");
  }
}

bool has_witness(const Universe& u, const auto& pred) {
  for (const auto& p : u.points()) {
    if (pred(p)) return true;
  }
  return false;
}

// Candidate with the least cost (new guards left without a witness); first wins ties.
Point pick_witness(const std::vector<Point>& candidates, const auto& cost) {
  std::size_t best = 0;
  std::size_t best_cost = std::numeric_limits<std::size_t>::max();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const std::size_t c = cost(candidates[i]);
    if (c < best_cost) {
      best = i;
      best_cost = c;
      if (c == 0) break;
    }
  }
  return candidates[best];
}

// Guard/witness fixpoint for EQUIV2's (Axy)(guard -> (Ez) ...).
void close_equiv2_guards(const Space& space, const Point& a, const Point& b, const Point& c, const Point& d,
                         ClosureResult& out, int max_rounds) {
  Universe& u = out.universe;
  for (int round = 0; round < max_rounds; ++round) {
    std::vector<Point> fresh;
    const std::size_t n = u.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point& x = u[i];
      if (!equidistant(space, x, a, x, b)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const Point& y = u[j];
        if (!equidistant(space, y, a, y, x)) continue;
        const Distance r = distance(space, x, y);
        auto ok = [&](const Point& z) {
          return compare_scaled(space, distance(space, z, c), Rational(1), r) == 0 &&
                 compare_scaled(space, distance(space, z, d), Rational(1), r) == 0;
        };
        if (has_witness(u, ok)) continue;
        bool pending = false;
        for (const auto& z : fresh) pending = pending || ok(z);
        if (pending) continue;
        if (!spheres_meet(space, c, r, d, r)) {
          out.notes.push_back("guard (" + x.to_string() + ", " + y.to_string() + ") has no witness");
          return;
        }
        auto cost = [&](const Point& z) {
          auto served = [&](const Distance& rr) {
            auto fits = [&](const Point& w) {
              return compare_scaled(space, distance(space, w, c), Rational(1), rr) == 0 &&
                     compare_scaled(space, distance(space, w, d), Rational(1), rr) == 0;
            };
            if (fits(z) || has_witness(u, fits)) return true;
            for (const auto& w : fresh) {
              if (fits(w)) return true;
            }
            return false;
          };
          std::size_t open = 0;
          const bool z_guard = equidistant(space, z, a, z, b);
          for (const auto& g : u.points()) {
            if (equidistant(space, g, a, g, b) && equidistant(space, z, a, z, g) && !served(distance(space, g, z))) ++open;
            if (z_guard && equidistant(space, g, a, g, z) && !served(distance(space, z, g))) ++open;
          }
          if (z_guard && !served(distance(space, z, z))) ++open;
          return open;
        };
        fresh.push_back(pick_witness(sphere_intersection_points(space, c, r, d, r), cost));
      }
    }
    if (fresh.empty()) return;
    for (const auto& z : fresh) u.add(z, Provenance::sphere_witness);
  }
  out.complete = false;
  out.notes.push_back("EQUIV2 guard closure did not reach a fixpoint");
}

// Guard/witness fixpoint for LE's (Am)(cm = dm -> (Es) ab = cs & cm = sm).
void close_le_guards(const Space& space, const Point& a, const Point& b, const Point& c, const Point& d,
                     ClosureResult& out, int max_rounds) {
  Universe& u = out.universe;
  const Distance len = distance(space, a, b);
  for (int round = 0; round < max_rounds; ++round) {
    std::vector<Point> fresh;
    const std::size_t n = u.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point& m = u[i];
      if (!equidistant(space, c, m, d, m)) continue;
      const Distance r = distance(space, c, m);
      auto ok = [&](const Point& s) {
        return compare_scaled(space, distance(space, c, s), Rational(1), len) == 0 &&
               compare_scaled(space, distance(space, s, m), Rational(1), r) == 0;
      };
      if (has_witness(u, ok)) continue;
      bool pending = false;
      for (const auto& s : fresh) pending = pending || ok(s);
      if (pending) continue;
      if (!spheres_meet(space, c, len, m, r)) {
        out.notes.push_back("guard " + m.to_string() + " has no witness");
        return;
      }
      auto cost = [&](const Point& s) -> std::size_t { return equidistant(space, c, s, d, s) ? 1 : 0; };
      fresh.push_back(pick_witness(sphere_intersection_points(space, c, len, m, r), cost));
    }
    if (fresh.empty()) return;
    for (const auto& s : fresh) u.add(s, Provenance::sphere_witness);
  }
  out.complete = false;
  out.notes.push_back("LE guard closure did not reach a fixpoint");
}

// Appends a chain of exactly `steps` steps of length rho from p to z, or
// nothing when d(p,z) > steps * rho.
void exact_chain(const Space& space, Point p, const Point& z, const Distance& rho, int steps, Universe& u) {
  if (compare_scaled(space, distance(space, p, z), Rational(steps), rho) > 0) return;
  if (steps == 1) return;  // only z itself, already present
  while (steps > 2) {
    // step toward z, overshooting when closer than rho
    p = toward(space, p, z, rho);
    u.add(p, Provenance::chain_closure);
    --steps;
  }
  const Point apex = sphere_intersection_point(space, p, rho, z, rho);
  u.add(apex, Provenance::chain_closure);
}

}  // namespace

Universe close_midpoints(const Space& space, const std::vector<Point>& points, int depth, std::size_t cap) {
  if (depth < 1) throw GeometryError("midpoint closure depth must be >= 1");
  Universe u(space, cap);
  u.add_all(points, Provenance::input);
  for (int level = 0; level < depth; ++level) {
    const std::size_t n = u.size();
    std::vector<Point> fresh;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) fresh.push_back(midpoint(u[i], u[j]));
    }
    for (const auto& p : fresh) u.add(p, Provenance::midpoint_closure);
  }
  return u;
}

Universe close_for_alpha_beta(const Space& space, const Point& a, const Point& b, int n, int k) {
  if (space.same_point(a, b)) throw GeometryError("alpha/beta closure needs a != b");
  Universe u(space);
  u.add(a, Provenance::input);
  u.add(b, Provenance::input);
  for (int i = 2; i <= n; ++i) u.add(affine_combination(a, b, Rational(i)), Provenance::midpoint_closure);
  for (int j = 1; j <= k; ++j) u.add(affine_combination(a, b, inverse_power_of_two(j)), Provenance::midpoint_closure);
  return u;
}

Universe close_for_psi(const Space& space, const Point& a, const Point& b, const Point& c, const Point& d, int n,
                       int k) {
  Universe u(space);
  u.add_all({a, b, c, d}, Provenance::input);
  if (space.same_point(a, b)) return u;
  const Rational step = inverse_power_of_two(k);
  const Point v = affine_combination(a, b, step);
  const Point w = affine_combination(a, b, Rational(n) * step);
  u.add(v, Provenance::midpoint_closure);
  for (int j = 1; j < k; ++j) u.add(affine_combination(a, b, inverse_power_of_two(j)), Provenance::midpoint_closure);
  for (int i = 2; i <= n; ++i) u.add(affine_combination(a, b, Rational(i) * step), Provenance::midpoint_closure);
  if (!oracle_psi(space, n, k, a, b, c, d)) return u;
  const Distance big_r = distance(space, a, w);
  const Distance small_r = distance(space, a, v);
  if (!spheres_meet(space, c, big_r, d, small_r)) return u;
  u.add(sphere_intersection_point(space, c, big_r, d, small_r), Provenance::sphere_witness);
  return u;
}

DeltaClosure close_for_delta(const Space& space, const Point& x, const Point& y, const Point& z, int n_max) {
  if (space.same_point(x, y)) throw GeometryError("delta closure needs x != y");
  DeltaClosure out{Universe(space), 0, true};
  Universe& u = out.universe;
  u.add_all({x, y, z}, Provenance::input);
  const Distance rho = distance(space, x, y);
  const Distance total = distance(space, x, z);

  // natural chain: floor(D / rho) full steps, then a detour if anything is left
  int full = 0;
  while (compare_scaled(space, total, Rational(full + 1), rho) >= 0) ++full;
  const bool exact_fit = compare_scaled(space, total, Rational(full), rho) == 0;
  const bool detour = !exact_fit || full == 0;
  out.chain_length = detour ? full + 2 : full;
  out.complete = out.chain_length <= n_max;
  if (out.complete) {
    Point p = x;
    for (int i = 1; i <= full; ++i) {
      p = toward(space, x, z, rho.scaled(Rational(i)));
      u.add(p, Provenance::chain_closure);
    }
    if (detour) u.add(sphere_intersection_point(space, p, rho, z, rho), Provenance::chain_closure);
  }
  for (int j = 2; j <= n_max; ++j) exact_chain(space, x, z, rho, j, u);
  return out;
}

Universe add_refuters(const Space& space, const RelationId& id, const std::vector<Point>& points, int chain_max) {
  if (static_cast<int>(points.size()) != id.arity()) {
    throw RelationError(id.to_string() + " refuters expect " + std::to_string(id.arity()) + " points");
  }
  Universe u(space);
  u.add_all(points, Provenance::input);
  switch (id.kind) {
    case RelationKind::equiv2: {
      const Point x = midpoint(points[0], points[1]);
      u.add(x, Provenance::refuter);
      u.add(midpoint(points[0], x), Provenance::refuter);
      break;
    }
    case RelationKind::le: u.add(midpoint(points[2], points[3]), Provenance::refuter); break;
    case RelationKind::neq: {
      const Point& x = points[0];
      const Point& y = points[1];
      if (space.same_point(x, y)) {
        u.add(Point{x.x + space.point(1, 0).x, x.y}, Provenance::refuter);
      } else {
        u.add(affine_combination(x, y, Rational(25 * chain_max)), Provenance::refuter);
      }
      break;
    }
    default: throw RelationError("no refuters are defined for " + id.to_string());
  }
  return u;
}

ClosureResult close_for(const Space& space, const ClosureSpec& spec) {
  require_arity(spec);
  ClosureResult out{Universe(space, spec.cap), true, {}};
  Universe& u = out.universe;
  const auto& p = spec.inputs;
  u.add_all(p, Provenance::input);
  switch (spec.id.kind) {
    case RelationKind::equiv2: {
      if (spec.refuters) u.merge(add_refuters(space, spec.id, p));
      const Distance r = distance(space, p[2], p[3]);
      if (spheres_meet(space, p[0], r, p[1], r)) {
        u.add(sphere_intersection_point(space, p[0], r, p[1], r), Provenance::sphere_witness);
      } else {
        out.notes.push_back("no point e with ae = cd = be");
      }
      close_equiv2_guards(space, p[0], p[1], p[2], p[3], out, spec.max_rounds);
      break;
    }
    case RelationKind::phi:
      if (spec.id.index(0) >= 1) {
        u.merge(close_midpoints(space, p, spec.midpoint_depth, spec.cap));
        out.complete = false;
        out.notes.push_back("PHI(n>=1) closure is midpoint scaffolding only");
      }
      break;
    case RelationKind::midpoint: u.add(midpoint(p[0], p[2]), Provenance::midpoint_closure); break;
    case RelationKind::alpha:
      if (!space.same_point(p[0], p[1])) u.merge(close_for_alpha_beta(space, p[0], p[1], spec.id.index(0), 1));
      break;
    case RelationKind::beta:
      if (!space.same_point(p[0], p[1])) u.merge(close_for_alpha_beta(space, p[0], p[1], 1, spec.id.index(0)));
      break;
    case RelationKind::psi:
      u.merge(close_for_psi(space, p[0], p[1], p[2], p[3], spec.id.index(0), spec.id.index(1)));
      break;
    case RelationKind::between:
      if (!space.same_point(p[0], p[2])) {
        const int parts = 1 << spec.trunc.b_depth;
        for (int j = 1; j < parts; ++j) {
          u.add(affine_combination(p[0], p[2], ratio(j, parts)), Provenance::midpoint_closure);
        }
      }
      break;
    case RelationKind::delta:
      if (!space.same_point(p[0], p[1])) {
        auto d = close_for_delta(space, p[0], p[1], p[2], spec.id.index(0));
        u.merge(d.universe);
      }
      break;
    case RelationKind::neq: {
      // a probe point at distance d(x,y) from x (any other point when x == y)
      const Point& x = p[0];
      const Point& y = p[1];
      if (space.same_point(x, y)) {
        u.add(Point{x.x + space.point(1, 0).x, x.y}, Provenance::refuter);
      } else {
        u.add(x + rot90(y - x), Provenance::refuter);
      }
      break;
    }
    case RelationKind::le:
      if (spec.refuters) u.merge(add_refuters(space, spec.id, p));
      close_le_guards(space, p[0], p[1], p[2], p[3], out, spec.max_rounds);
      break;
    case RelationKind::gamma:
    case RelationKind::collinear:
    case RelationKind::parallelogram: break;
  }
  return out;
}

namespace {

void collect(const Space& space, const FormulaNode& f, const std::map<std::string, Point>& val,
             const TruncationParams& trunc, ClosureResult& out) {
  if (f.kind == NodeKind::schema_ref) {
    std::vector<int> idx;
    for (const auto& e : f.index_args) {
      if (e->op != IndexExprNode::Op::literal) return;
      idx.push_back(static_cast<int>(e->value));
    }
    std::vector<Point> args;
    for (const auto& t : f.terms) {
      if (!t.is_var()) {
        args.push_back(space.convert(*t.constant));
        continue;
      }
      auto it = val.find(t.name);
      if (it == val.end()) return;
      args.push_back(it->second);
    }
    const RelationId id(f.relation, idx);
    if (!has_expansion(id)) return;
    ClosureSpec spec{id, args, trunc};
    ClosureResult cl = close_for(space, spec);
    out.universe.merge(cl.universe);
    out.complete = out.complete && cl.complete;
    out.notes.insert(out.notes.end(), cl.notes.begin(), cl.notes.end());
    return;
  }
  if (f.kind == NodeKind::exists || f.kind == NodeKind::forall) return;
  for (const auto& c : f.children) collect(space, *c, val, trunc, out);
}

}  // namespace

ClosureResult close_for_formula(const Space& space, const Formula& f, const std::map<std::string, Point>& valuation,
                                const TruncationParams& trunc) {
  ClosureResult out{Universe(space), true, {}};
  for (const auto& [n, p] : valuation) out.universe.add(p, Provenance::input);
  collect(space, *f, valuation, trunc, out);
  return out;
}

}  // namespace equidef
