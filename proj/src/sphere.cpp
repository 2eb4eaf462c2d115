#include "equidef/sphere.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

namespace equidef {

bool spheres_meet(const Space& space, const Point& c, const Distance& big_r, const Point& d, const Distance& small_r) {
  const Distance gap = distance(space, c, d);
  const LengthTerm outer[] = {{Rational(1), gap}, {Rational(-1), big_r}, {Rational(-1), small_r}};
  const LengthTerm inner1[] = {{Rational(1), big_r}, {Rational(-1), small_r}, {Rational(-1), gap}};
  const LengthTerm inner2[] = {{Rational(1), small_r}, {Rational(-1), big_r}, {Rational(-1), gap}};
  return sign_of_combination(space, outer) <= 0 && sign_of_combination(space, inner1) <= 0 &&
         sign_of_combination(space, inner2) <= 0;
}

namespace {

template <typename T>
struct Vec {
  T x;
  T y;
};

template <typename T>
T absval(const T& v) {
  return v < 0 ? T(-v) : v;
}

template <typename T>
T poly_norm(NormSpec::Kind kind, const T& x, const T& y) {
  const T ax = absval(x);
  const T ay = absval(y);
  if (kind == NormSpec::Kind::l1) return T(ax + ay);
  return ax < ay ? ay : ax;
}

// Counterclockwise boundary of the L1/Linf sphere of radius r, starting on the +x axis.
template <typename T>
std::vector<Vec<T>> polygon(NormSpec::Kind kind, const Vec<T>& c, const T& r) {
  std::vector<Vec<T>> offsets;
  if (kind == NormSpec::Kind::l1) {
    offsets = {{r, T(0)}, {T(0), r}, {T(-r), T(0)}, {T(0), T(-r)}, {r, T(0)}};
  } else {
    offsets = {{r, T(0)}, {r, r}, {T(-r), r}, {T(-r), T(-r)}, {r, T(-r)}, {r, T(0)}};
  }
  for (auto& v : offsets) {
    v.x = c.x + v.x;
    v.y = c.y + v.y;
  }
  return offsets;
}

double to_double_value(const Rational& q) { return q.get_d(); }
double to_double_value(double v) { return v; }

template <typename T>
struct WalkResult {
  std::optional<Vec<T>> root;
  std::vector<Vec<T>> roots;
  Vec<T> best{};
  double best_residual = 0.0;
};

template <typename T>
WalkResult<T> edge_walk(NormSpec::Kind kind, const Vec<T>& c, const T& big_r, const Vec<T>& d, const T& small_r) {
  WalkResult<T> result;
  result.best_residual = std::numeric_limits<double>::infinity();
  const auto verts = polygon(kind, c, big_r);

  auto residual_at = [&](const Vec<T>& p) { return T(poly_norm(kind, T(p.x - d.x), T(p.y - d.y)) - small_r); };
  auto lerp = [](const Vec<T>& p, const Vec<T>& q, const T& t) {
    return Vec<T>{T(p.x + t * (q.x - p.x)), T(p.y + t * (q.y - p.y))};
  };

  for (std::size_t e = 0; e + 1 < verts.size(); ++e) {
    const Vec<T>& p = verts[e];
    const Vec<T>& q = verts[e + 1];
    const T ex0 = p.x - d.x;
    const T ey0 = p.y - d.y;
    const T exs = q.x - p.x;
    const T eys = q.y - p.y;

    // The norm of (ex, ey) is linear between zeros of ex, ey, ex - ey, ex + ey.
    std::vector<T> ts{T(0), T(1)};
    auto add_zero = [&](const T& v0, const T& slope) {
      if (slope == 0) return;
      const T t = -v0 / slope;
      if (0 < t && t < 1) ts.push_back(t);
    };
    add_zero(ex0, exs);
    add_zero(ey0, eys);
    add_zero(T(ex0 - ey0), T(exs - eys));
    add_zero(T(ex0 + ey0), T(exs + eys));
    std::sort(ts.begin(), ts.end(), [](const T& a, const T& b) { return a < b; });

    std::vector<T> fs;
    fs.reserve(ts.size());
    for (const auto& t : ts) {
      const Vec<T> at = lerp(p, q, t);
      fs.push_back(residual_at(at));
      const double res = std::abs(to_double_value(fs.back()));
      if (res < result.best_residual) {
        result.best_residual = res;
        result.best = at;
      }
    }
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (fs[i] == 0) {
        result.roots.push_back(lerp(p, q, ts[i]));
      } else if (i + 1 < ts.size() && ((fs[i] < 0 && fs[i + 1] > 0) || (fs[i] > 0 && fs[i + 1] < 0))) {
        const T t = ts[i] + (ts[i + 1] - ts[i]) * fs[i] / (fs[i] - fs[i + 1]);
        result.roots.push_back(lerp(p, q, t));
      }
    }
  }
  if (!result.roots.empty()) result.root = result.roots.front();
  return result;
}

void verify_witness(const Space& space, const Point& c, const Distance& big_r, const Point& d, const Distance& small_r,
                    const Point& e) {
  const bool ok = compare_scaled(space, distance(space, c, e), Rational(1), big_r) == 0 &&
                  compare_scaled(space, distance(space, d, e), Rational(1), small_r) == 0;
  if (!ok) {
    throw SolverError("sphere intersection witness " + e.to_string() + " fails re-verification (R=" +
                      big_r.to_string() + ", r=" + small_r.to_string() + ")");
  }
}

Point l2_closed_form(const Space& space, const Point& c, double big_r, const Point& d, double small_r) {
  const double cx = c.x.to_double(), cy = c.y.to_double();
  const double vx = d.x.to_double() - cx, vy = d.y.to_double() - cy;
  const double gap = std::hypot(vx, vy);
  if (gap == 0.0) return Point::floating(cx + big_r, cy);
  const double along = (big_r * big_r - small_r * small_r + gap * gap) / (2.0 * gap);
  double h2 = big_r * big_r - along * along;
  if (h2 < 0.0) {
    if (-h2 > space.tolerance() * std::max(1.0, big_r * big_r) * 4.0) {
      throw SolverError("circle intersection discriminant negative beyond tolerance");
    }
    h2 = 0.0;
  }
  const double h = std::sqrt(h2);
  return Point::floating(cx + (along * vx - h * vy) / gap, cy + (along * vy + h * vx) / gap);
}

Point lp_bisection(const Space& space, const Point& c, double big_r, const Point& d, double small_r) {
  const double cx = c.x.to_double(), cy = c.y.to_double();
  const double vx = d.x.to_double() - cx, vy = d.y.to_double() - cy;
  auto on_sphere = [&](double theta) {
    const Point dir = Point::floating(std::cos(theta), std::sin(theta));
    const double scale = big_r / norm_of(space, dir).to_double();
    return Point::floating(cx + scale * std::cos(theta), cy + scale * std::sin(theta));
  };
  auto residual = [&](double theta) { return distance(space, on_sphere(theta), d).to_double() - small_r; };

  if (big_r == 0.0) return c;
  double lo = (vx == 0.0 && vy == 0.0) ? 0.0 : std::atan2(vy, vx);
  double hi = lo + std::numbers::pi;
  double flo = residual(lo);
  if (flo > 0.0 && !space.nearly_equal(flo + small_r, small_r)) {
    throw SolverError("Lp bisection: residual positive at the near point");
  }
  for (int iter = 0; iter < 200 && hi - lo > 1e-16; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double fm = residual(mid);
    if (!std::isfinite(fm)) throw SolverError("Lp bisection produced a non-finite residual");
    if (fm <= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return on_sphere(lo);
}

}  // namespace

std::vector<Point> sphere_intersection_points(const Space& space, const Point& c, const Distance& big_r,
                                              const Point& d, const Distance& small_r) {
  if (c.backend() != space.backend() || d.backend() != space.backend()) throw BackendMismatch();
  if (!spheres_meet(space, c, big_r, d, small_r)) {
    throw NoIntersection("spheres S(" + c.to_string() + "," + big_r.to_string() + ") and S(" + d.to_string() + "," +
                         small_r.to_string() + ") do not meet");
  }

  const auto kind = space.norm().kind;
  std::vector<Point> out;
  if (space.is_exact()) {
    if (kind == NormSpec::Kind::l2) {
      throw ExactRefused("L2 sphere intersection is generally irrational; use the float backend");
    }
    const Vec<Rational> vc{c.x.rational(), c.y.rational()};
    const Vec<Rational> vd{d.x.rational(), d.y.rational()};
    auto walk = edge_walk<Rational>(kind, vc, big_r.rational(), vd, small_r.rational());
    if (!walk.root) throw SolverError("edge walk found no crossing despite the annulus condition");
    for (const auto& r : walk.roots) out.push_back(Point::exact(r.x, r.y));
  } else if (kind == NormSpec::Kind::l1 || kind == NormSpec::Kind::linf) {
    const Vec<double> vc{c.x.to_double(), c.y.to_double()};
    const Vec<double> vd{d.x.to_double(), d.y.to_double()};
    auto walk = edge_walk<double>(kind, vc, big_r.to_double(), vd, small_r.to_double());
    if (walk.roots.empty()) walk.roots.push_back(walk.best);
    for (const auto& r : walk.roots) out.push_back(Point::floating(r.x, r.y));
  } else if (kind == NormSpec::Kind::l2) {
    out.push_back(l2_closed_form(space, c, big_r.to_double(), d, small_r.to_double()));
    out.push_back(l2_closed_form(space, d, small_r.to_double(), c, big_r.to_double()));
  } else {
    out.push_back(lp_bisection(space, c, big_r.to_double(), d, small_r.to_double()));
  }
  verify_witness(space, c, big_r, d, small_r, out.front());
  std::vector<Point> checked{out.front()};
  for (std::size_t i = 1; i < out.size(); ++i) {
    try {
      verify_witness(space, c, big_r, d, small_r, out[i]);
    } catch (const SolverError&) {
      continue;
    }
    if (std::none_of(checked.begin(), checked.end(), [&](const Point& q) { return space.same_point(q, out[i]); })) {
      checked.push_back(out[i]);
    }
  }
  return checked;
}

Point sphere_intersection_point(const Space& space, const Point& c, const Distance& big_r, const Point& d,
                                const Distance& small_r) {
  return sphere_intersection_points(space, c, big_r, d, small_r).front();
}

}  // namespace equidef
