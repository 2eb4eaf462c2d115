#include "equidef/sampler.hpp"

#include "equidef/oracles.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace equidef {

Point Isometry::apply(const Point& p) const {
  if (sgn(m12) == 0 && sgn(m21) == 0) return {p.x.scaled(m11), p.y.scaled(m22)};
  if (sgn(m11) == 0 && sgn(m22) == 0) return {p.y.scaled(m12), p.x.scaled(m21)};
  return {p.x.scaled(m11) + p.y.scaled(m12), p.x.scaled(m21) + p.y.scaled(m22)};
}

std::string Isometry::to_string() const {
  return "[" + format_rational(m11) + " " + format_rational(m12) + "; " + format_rational(m21) + " " +
         format_rational(m22) + "]";
}

namespace {

std::vector<Isometry> build_generators(bool l2) {
  std::vector<Isometry> out;
  for (int swap = 0; swap < 2; ++swap) {
    for (int sx : {1, -1}) {
      for (int sy : {1, -1}) {
        Isometry m;
        if (swap) {
          m = {0, Rational(sx), Rational(sy), 0};
        } else {
          m = {Rational(sx), 0, 0, Rational(sy)};
        }
        out.push_back(m);
      }
    }
  }
  if (l2) {
    const std::pair<Rational, Rational> triples[] = {{Rational(3, 5), Rational(4, 5)},
                                                     {Rational(5, 13), Rational(12, 13)},
                                                     {Rational(8, 17), Rational(15, 17)}};
    for (const auto& [c, s] : triples) {
      out.push_back({c, -s, s, c});   // rotation
      out.push_back({c, s, s, -c});   // reflection
    }
  }
  return out;
}

}  // namespace

const std::vector<Isometry>& isometry_generators(const NormSpec& norm) {
  static const std::vector<Isometry> l2 = build_generators(true);
  static const std::vector<Isometry> other = build_generators(false);
  return norm.kind == NormSpec::Kind::l2 ? l2 : other;
}

Sampler::Sampler(std::uint64_t seed) : seed_(seed), engine_(seed) {}

long Sampler::integer(long lo, long hi) {
  // rejection sampling on raw engine output keeps draws identical across standard libraries
  const unsigned long long span = static_cast<unsigned long long>(hi - lo) + 1ULL;
  const unsigned long long limit = std::numeric_limits<unsigned long long>::max() -
                                   std::numeric_limits<unsigned long long>::max() % span;
  unsigned long long r;
  do {
    r = engine_();
  } while (r >= limit);
  return lo + static_cast<long>(r % span);
}

bool Sampler::coin(double p) { return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p; }

Rational Sampler::rational(int range) {
  static const long dens[] = {1, 2, 3, 4, 5, 8};
  const long q = dens[integer(0, 5)];
  Rational r(integer(-range * q, range * q), q);
  r.canonicalize();
  return r;
}

Rational Sampler::dyadic(int range, int level) {
  const long q = 1L << level;
  Rational r(integer(-range * q, range * q), q);
  r.canonicalize();
  return r;
}

Point Sampler::point(const Space& space, int range) { return space.point(rational(range), rational(range)); }

Point Sampler::direction(const Space& space, int range) {
  while (true) {
    Point v = point(space, range);
    if (!space.same_point(v, space.point(0, 0))) return v;
  }
}

Isometry Sampler::isometry(const NormSpec& norm) { return pick(isometry_generators(norm)); }

Point Sampler::vector_of_length(const Space& space, const Rational& length) {
  const long sx = coin() ? 1 : -1;
  const long sy = coin() ? 1 : -1;
  switch (space.norm().kind) {
    case NormSpec::Kind::l1: {
      const long q = integer(1, 8);
      const Rational s(integer(0, q), q);
      return space.point(sx * length * s, sy * length * (1 - s));
    }
    case NormSpec::Kind::linf: {
      const long q = integer(1, 8);
      const Rational s(integer(-q, q), q);
      if (coin()) return space.point(sx * length, length * s);
      return space.point(length * s, sy * length);
    }
    case NormSpec::Kind::l2: {
      const Rational t(integer(-12, 12), integer(1, 6));
      const Rational den = 1 + t * t;
      return space.point(sx * length * (1 - t * t) / den, length * 2 * t / den);
    }
    case NormSpec::Kind::lp: break;
  }
  const Point w = direction(space).to_floating();
  const double scale = length.get_d() / distance(space, space.point(0, 0), w).to_double();
  return Point::floating(w.x.to_double() * scale, w.y.to_double() * scale);
}

Point Sampler::congruent_vector(const Space& space, const Point& v) {
  if (space.is_exact() && coin()) {
    if (auto len = norm_of(space, v).exact_value()) return vector_of_length(space, *len);
  }
  if (!space.is_exact() && space.norm().kind == NormSpec::Kind::l2 && coin()) {
    const double th = static_cast<double>(integer(0, 1 << 20)) * (2 * std::numbers::pi / (1 << 20));
    const double x = v.x.to_double(), y = v.y.to_double();
    return Point::floating(std::cos(th) * x - std::sin(th) * y, std::sin(th) * x + std::cos(th) * y);
  }
  return space.convert(isometry(space.norm()).apply(v));
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

Point add_scaled(const Point& a, const Point& v, const Rational& t) { return a + v.scaled(t); }

}  // namespace

std::vector<Point> Sampler::rational_l2_triangle(const Space& space) {
  auto unit = [&]() {
    // (1 - t^2, 2t) / (1 + t^2), squared as a complex number
    const Rational t(integer(-12, 12), integer(1, 6));
    const Rational den = 1 + t * t;
    const Rational c = (1 - t * t) / den;
    const Rational s = 2 * t / den;
    return std::make_pair(Rational(c * c - s * s), Rational(2 * c * s));
  };
  while (true) {
    const Point o = point(space, 6);
    const Rational r(integer(1, 12), integer(1, 3));
    std::vector<Point> pts;
    for (int i = 0; i < 3; ++i) {
      auto [c, s] = unit();
      pts.push_back(o + space.point(r * c, r * s));
    }
    if (!space.same_point(pts[0], pts[1]) && !space.same_point(pts[1], pts[2]) && !space.same_point(pts[0], pts[2])) {
      return pts;
    }
  }
}

std::vector<Point> Sampler::instance(const Space& space, const RelationId& id, int b_depth) {
  const NormSpec& norm = space.norm();
  const Point a = point(space);
  const Point b = point(space);
  const Point c = point(space);
  const Point d = point(space);
  const long mode = integer(0, 9);
  const Isometry iso = isometry(norm);
  auto image = [&](const Point& v) { return iso.apply(v); };

  switch (id.kind) {
    case RelationKind::equiv2: {
      // d(a,b) = q d(c,d) with q = 2 most of the time
      if (mode == 0) return {a, a, c, c};
      if (mode == 1) return {a, a, c, d};
      if (mode >= 7) return {a, b, c, d};
      static const std::vector<Rational> qs = {2, 2, 2, Rational(3, 2), Rational(5, 2), 1, Rational(9, 4)};
      const Rational q = pick(qs);
      return {a, add_scaled(a, image(d - c), q), c, d};
    }
    case RelationKind::phi: {
      if (mode <= 4) return {a, b, midpoint(a, b)};
      if (mode <= 6) return {a, b, midpoint(a, b) + space.point(0, rational(1))};
      return {a, b, c};
    }
    case RelationKind::midpoint: {
      if (mode <= 5) return {a, midpoint(a, c), c};
      if (mode == 6) return {a, a, a};
      return {a, b, c};
    }
    case RelationKind::alpha:
    case RelationKind::beta: {
      const int n = id.index(0);
      const Rational t = id.kind == RelationKind::alpha ? Rational(n) : inverse_power_of_two(n);
      if (mode <= 4) return {a, b, affine_combination(a, b, t)};
      if (mode == 5) return {a, a, a};
      if (mode == 6) return {a, b, affine_combination(a, b, -t)};
      if (mode == 7) return {a, b, affine_combination(a, b, t + pick(std::vector<Rational>{1, -1, Rational(1, 2)}))};
      if (mode == 8) return {a, b, affine_combination(a, b, t) + space.point(0, Rational(1, 4))};
      return {a, b, c};
    }
    case RelationKind::psi: {
      const int n = id.index(0);
      const Rational step = inverse_power_of_two(id.index(1));
      if (mode == 0) return {a, a, c, d};
      if (mode == 1) return {a, b, c, c};
      if (mode == 2) return {a, b, c, d};
      // d(c,d) = t d(a,b) around the annulus bounds (n-1) 2^-k and (n+1) 2^-k
      const std::vector<Rational> ts = {Rational(n - 1) * step, Rational(n + 1) * step, Rational(n) * step,
                                        Rational(n - 1) * step - step / 4, Rational(n + 1) * step + step / 4,
                                        Rational(n + 1) * step - step / 8, step / 2};
      Rational t = pick(ts);
      if (t <= 0) t = step;
      return {a, b, c, add_scaled(c, image(b - a), t)};
    }
    case RelationKind::gamma:
    case RelationKind::between:
    case RelationKind::collinear: {
      if (a == c || space.same_point(a, c)) return {a, a, a};
      if (mode <= 3) {
        // on the segment, often on the dyadic grid
        const Rational t = coin(0.5) ? ratio(integer(0, 1L << (b_depth + 1)), 1L << (b_depth + 1)) : rational(1);
        Rational tt = t < 0 ? Rational(-t) : t;
        if (tt > 1) tt = 1 / tt;
        return {a, affine_combination(a, c, tt), c};
      }
      if (mode == 4) return {a, affine_combination(a, c, pick(std::vector<Rational>{-1, 2, Rational(5, 3), Rational(-1, 4)})), c};
      if (mode == 5) {
        // metric but not affine betweenness in L1/Linf: (0,0), (2,1), (4,0) scaled and moved
        const Rational s = ratio(integer(1, 4), integer(1, 2));
        const Point o = a;
        const Point v1 = image(space.point(2 * s, s));
        const Point v2 = image(space.point(4 * s, 0));
        return {o, o + v1, o + v2};
      }
      if (mode == 6) return {a, a, c};
      if (mode == 7) return {a, c, c};
      if (mode == 8) return {a, affine_combination(a, c, Rational(1, 2)) + space.point(0, Rational(1, 8)), c};
      return {a, b, c};
    }
    case RelationKind::delta: {
      const int n = id.index(0);
      if (mode == 0) return {a, a, c};
      if (mode == 1) return {a, a, a};
      if (mode == 2) return {a, b, c};
      if (mode == 3) return {a, b, a};
      const std::vector<Rational> ts = {Rational(n), Rational(n) - Rational(1, 2), Rational(n) + Rational(1, 4),
                                        Rational(n - 1), Rational(1, 3), Rational(n + 1)};
      return {a, b, add_scaled(a, image(b - a), pick(ts))};
    }
    case RelationKind::neq: {
      if (mode <= 4) return {a, a};
      return {a, b};
    }
    case RelationKind::le: {
      if (mode == 0) return {a, a, c, d};
      if (mode == 1) return {a, b, c, c};
      if (mode == 2) return {a, b, c, d};
      const std::vector<Rational> ts = {1, Rational(1, 2), 2, Rational(3, 4), Rational(5, 4), Rational(9, 10)};
      return {a, b, c, add_scaled(c, image(b - a), pick(ts))};
    }
    case RelationKind::parallelogram: {
      if (mode <= 5) return {a, b, c, a + c - b};
      if (mode == 6) return {a, affine_combination(a, c, 2), c, affine_combination(a, c, 3)};
      return {a, b, c, d};
    }
  }
  return {a, b, c};
}

}  // namespace equidef
