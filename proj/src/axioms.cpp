#include "equidef/axioms.hpp"

#include "equidef/closure.hpp"
#include "equidef/eval.hpp"
#include "equidef/oracles.hpp"
#include "equidef/sphere.hpp"

namespace equidef {

namespace {

using Named = std::vector<std::pair<std::string, Point>>;

Scalar length_scalar(const Distance& d) {
  try {
    return d.to_scalar();
  } catch (const ExactRefused&) {
    throw;
  } catch (const GeometryError& e) {
    throw ExactRefused(e.what());
  }
}

Point times(const Point& v, const Scalar& s) { return {v.x * s, v.y * s}; }

// v * num / den
Point stretch(const Point& v, const Distance& num, const Distance& den) {
  return times(v, length_scalar(num) / length_scalar(den));
}

Distance length_of(const Space& space, const Rational& r) {
  if (!space.is_exact()) return Distance::approx(r.get_d());
  if (space.norm().kind == NormSpec::Kind::l2) return Distance::exact_squared(r * r);
  return Distance::exact(r);
}

Point rot90(const Point& v) { return {-v.y, v.x}; }

bool parallel(const Space& space, const Point& p, const Point& q, const Point& r, const Point& s) {
  const Scalar c = cross(space.point(0, 0), q - p, s - r);
  if (space.is_exact()) return c.sign() == 0;
  return space.nearly_equal(c.to_double(), 0.0);
}

// Intersection of the lines p1p2 and q1q2, which must not be parallel.
Point line_intersection(const Point& p1, const Point& p2, const Point& q1, const Point& q2) {
  const Point u = p2 - p1;
  const Point v = q2 - q1;
  const Point w = q1 - p1;
  const Scalar den = u.x * v.y - u.y * v.x;
  const Scalar t = (w.x * v.y - w.y * v.x) / den;
  return p1 + times(u, t);
}

Rational positive_rational(Sampler& s, int range) {
  while (true) {
    Rational r = s.rational(range);
    if (sgn(r) < 0) r = -r;
    if (sgn(r) > 0) return r;
  }
}

AxiomReport start(char axiom, const Space& space, const Sampler& s) {
  AxiomReport r;
  r.axiom = axiom;
  r.norm = space.norm().name();
  r.backend = std::string(to_string(space.backend()));
  r.tolerance = space.tolerance();
  r.seed = s.seed();
  return r;
}

void violation(AxiomReport& r, std::string clause, Named pts, std::string note = {}) {
  r.violations.push_back({std::move(clause), std::move(pts), std::move(note)});
}

void witness(AxiomReport& r, const AxiomOptions& opt, std::string clause, Named pts) {
  ++r.witnesses_verified;
  if (r.witnesses.size() < opt.keep_witnesses) r.witnesses.push_back({std::move(clause), std::move(pts), {}});
}

Rational ceil_of(const Rational& t) {
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
  return Rational(c);
}

std::vector<Point> triangle(const Space& space, Sampler& s) {
  auto t = s.rational_l2_triangle(space);
  for (std::size_t i = t.size(); i > 1; --i) std::swap(t[i - 1], t[static_cast<std::size_t>(s.integer(0, static_cast<long>(i) - 1))]);
  return t;
}

bool rational_sides_needed(const Space& space) { return space.is_exact() && space.norm().kind == NormSpec::Kind::l2; }

}  // namespace

void AxiomReport::merge(const AxiomReport& o) {
  samples += o.samples;
  checked += o.checked;
  skipped += o.skipped;
  not_applicable += o.not_applicable;
  incomplete += o.incomplete;
  witnesses_verified += o.witnesses_verified;
  formula_checks += o.formula_checks;
  max_chain = std::max(max_chain, o.max_chain);
  violations.insert(violations.end(), o.violations.begin(), o.violations.end());
  witnesses.insert(witnesses.end(), o.witnesses.begin(), o.witnesses.end());
  notes.insert(notes.end(), o.notes.begin(), o.notes.end());
}

Point transport(const Space& space, const Point& a, const Point& b, const Point& c) {
  if (space.same_point(a, c)) throw GeometryError("segment transport needs a != c");
  return a + stretch(a - c, distance(space, a, b), distance(space, a, c));
}

AxiomReport check_axiom_a(const Space& space, Sampler& s, const AxiomOptions& opt) {
  AxiomReport r = start('a', space, s);
  for (std::size_t i = 0; i < opt.samples; ++i) {
    ++r.samples;
    const long mode = s.integer(0, 5);
    const Point a = s.point(space);
    const Point b = mode == 0 ? a : s.point(space);
    const Point c = s.point(space);
    const Point e = s.point(space);
    const Point d = mode == 5 ? s.point(space) : c + s.congruent_vector(space, b - a);
    const Point f = mode == 4 ? s.point(space) : e + s.congruent_vector(space, b - a);
    ++r.checked;
    if (!equidistant(space, a, b, b, a)) violation(r, "ab = ba", {{"a", a}, {"b", b}});
    if (equidistant(space, a, b, c, d) && equidistant(space, a, b, e, f) && !equidistant(space, c, d, e, f)) {
      violation(r, "ab = cd & ab = ef -> cd = ef", {{"a", a}, {"b", b}, {"c", c}, {"d", d}, {"e", e}, {"f", f}});
    }
    if (!equidistant(space, a, a, b, b)) violation(r, "aa = bb", {{"a", a}, {"b", b}});
    if (equidistant(space, a, b, c, c) && !space.same_point(a, b)) {
      violation(r, "ab = cc -> a = b", {{"a", a}, {"b", b}, {"c", c}});
    }
  }
  return r;
}

AxiomReport check_axiom_b(const Space& space, Sampler& s, const AxiomOptions& opt) {
  AxiomReport r = start('b', space, s);
  for (std::size_t i = 0; i < opt.samples; ++i) {
    ++r.samples;
    Point a, b, c;
    if (rational_sides_needed(space)) {
      auto t = triangle(space, s);
      a = t[0], b = t[1], c = t[2];
      const long mode = s.integer(0, 9);
      if (mode == 0) c = a;
      if (mode == 1) b = a;
    } else {
      a = s.point(space), b = s.point(space), c = s.point(space);
      const long mode = s.integer(0, 9);
      if (mode == 0) c = a;
      if (mode == 1) b = a;
      if (mode == 2) b = c;
    }
    if (space.same_point(a, c)) {
      ++r.skipped;
      continue;
    }
    ++r.checked;
    const Point d = transport(space, a, b, c);
    const Named pts = {{"a", a}, {"b", b}, {"c", c}, {"d", d}};
    if (!oracle_between(space, c, a, d)) violation(r, "B(cad)", pts);
    if (!equidistant(space, a, b, a, d)) violation(r, "ab = ad", pts);
    // a second construction from c, then other points of the same ray
    const Distance ab = distance(space, a, b), ac = distance(space, a, c);
    std::vector<Point> es;
    if (space.is_exact()) {
      const Rational rab = *ab.exact_value(), rac = *ac.exact_value();
      es.push_back(c + (a - c).scaled((rac + rab) / rac));
      for (const Rational& q : {Rational(1, 2), Rational(9, 8), Rational(2), ratio(s.integer(0, 16), 8)}) {
        es.push_back(a + (a - c).scaled(q * rab / rac));
      }
    } else {
      const double rab = ab.to_double(), rac = ac.to_double();
      es.push_back(c + times(a - c, Scalar((rac + rab) / rac)));
      for (double q : {0.5, 1.125, 2.0, s.integer(0, 16) / 8.0}) es.push_back(a + times(a - c, Scalar(q * rab / rac)));
    }
    bool unique = true;
    for (const auto& e : es) {
      if (oracle_between(space, c, a, e) && equidistant(space, a, b, a, e) && !space.same_point(d, e)) {
        unique = false;
        violation(r, "a != c & B(cae) & ab = ae -> d = e", {{"a", a}, {"b", b}, {"c", c}, {"d", d}, {"e", e}});
      }
    }
    if (!space.same_point(d, es.front())) {
      unique = false;
      violation(r, "second construction differs", {{"a", a}, {"b", b}, {"c", c}, {"d", d}, {"e", es.front()}});
    }
    if (unique && oracle_between(space, c, a, d) && equidistant(space, a, b, a, d)) witness(r, opt, "d", pts);
  }
  return r;
}

AxiomReport check_axiom_c(const Space& space, Sampler& s, const AxiomOptions& opt) {
  AxiomReport r = start('c', space, s);
  for (std::size_t i = 0; i < opt.samples; ++i) {
    ++r.samples;
    const Point a = s.point(space);
    const Point b = s.point(space);
    const Point c = s.point(space);
    if (space.same_point(a, b) || oracle_collinear(space, a, b, c)) {
      ++r.skipped;
      continue;
    }
    const Point d = a + b - c;
    if (!parallel(space, a, c, b, d) || !parallel(space, a, d, b, c)) {
      violation(r, "construction: ac || bd and ad || bc", {{"a", a}, {"b", b}, {"c", c}, {"d", d}});
      continue;
    }
    ++r.checked;
    const Point m = line_intersection(a, b, c, d);
    if (!equidistant(space, m, a, m, b)) violation(r, "ma = mb", {{"a", a}, {"b", b}, {"c", c}, {"d", d}, {"m", m}});
  }
  return r;
}

AxiomReport check_axiom_d(const Space& space, Sampler& s, const AxiomOptions& opt) {
  AxiomReport r = start('d', space, s);
  for (std::size_t i = 0; i < opt.samples; ++i) {
    ++r.samples;
    const Point a = s.point(space);
    const Point b = s.point(space);
    const Point c = s.point(space);
    if (oracle_collinear(space, a, b, c)) {
      ++r.skipped;
      continue;
    }
    const Point d = a + c - b;
    const Named pts = {{"a", a}, {"b", b}, {"c", c}, {"d", d}};
    if (!parallel(space, a, b, c, d) || !parallel(space, b, c, a, d) || !oracle_parallelogram(space, a, b, c, d)) {
      violation(r, "construction: abcd parallelogram", pts);
      continue;
    }
    ++r.checked;
    if (!equidistant(space, a, b, c, d)) violation(r, "ab = cd", pts);
    if (!equidistant(space, b, c, a, d)) violation(r, "bc = ad", pts);
  }
  return r;
}

AxiomReport check_axiom_e(const Space& space, Sampler& s, const AxiomOptions& opt) {
  AxiomReport r = start('e', space, s);
  for (std::size_t i = 0; i < opt.samples; ++i) {
    ++r.samples;
    const Point o = s.point(space);
    const Point v = space.is_exact() ? s.vector_of_length(space, positive_rational(s, 6)) : s.direction(space);
    const Point a = o + v;
    const Point a2 = o + s.congruent_vector(space, v);
    if (oracle_collinear(space, o, a, a2)) {
      ++r.skipped;
      continue;
    }
    Rational t = s.rational(4);
    if (sgn(t) == 0) t = Rational(3, 2);
    const Point b = affine_combination(o, a, t);
    const Point b2 = line_intersection(o, a2, b, b + (a2 - a));
    const Named pts = {{"o", o}, {"a", a}, {"a'", a2}, {"b", b}, {"b'", b2}};
    if (!oracle_collinear(space, o, a, b) || !oracle_collinear(space, o, a2, b2) || !parallel(space, a, a2, b, b2) ||
        !equidistant(space, o, a, o, a2)) {
      violation(r, "construction: L(oab) & L(oa'b') & aa' || bb' & oa = oa'", pts);
      continue;
    }
    ++r.checked;
    if (!equidistant(space, o, b, o, b2)) violation(r, "ob = ob'", pts);
  }
  return r;
}

AxiomReport check_axiom_f(const Space& space, Sampler& s, const AxiomOptions& opt) {
  AxiomReport r = start('f', space, s);
  for (std::size_t i = 0; i < opt.samples; ++i) {
    ++r.samples;
    Point a, b, c;
    if (rational_sides_needed(space)) {
      auto t = triangle(space, s);
      a = t[0], b = t[1], c = t[2];
    } else {
      a = s.point(space), b = s.point(space), c = s.point(space);
    }
    const long mode = s.integer(0, 9);
    if (mode == 0) a = b;
    if (mode == 1) a = space.is_exact() ? affine_combination(b, c, s.rational(2)) : affine_combination(b, c, Rational(3, 2));
    if (mode == 2) c = a;
    if (space.same_point(b, c)) {
      ++r.skipped;
      continue;
    }
    const Distance bc = distance(space, b, c);
    const Point dir = c - b;
    const Point a2 = b + stretch(dir, distance(space, b, a), bc);
    const Point c2 = a2 + stretch(dir, distance(space, a, c), bc);
    const Named pts = {{"a", a}, {"b", b}, {"c", c}, {"a'", a2}, {"c'", c2}};
    const bool guard = (oracle_between(space, b, a2, c) || oracle_between(space, b, c, a2)) &&
                       equidistant(space, b, a, b, a2) && oracle_between(space, b, a2, c2) &&
                       equidistant(space, a2, c2, a, c);
    if (!guard) {
      violation(r, "construction: premises", pts);
      continue;
    }
    ++r.checked;
    if (!oracle_between(space, b, c, c2)) violation(r, "B(bcc')", pts);
  }
  return r;
}

AxiomReport check_axiom_g(const Space& input_space, Sampler& s, const AxiomOptions& opt) {
  const bool twin = rational_sides_needed(input_space);
  const Space space = twin ? input_space.to_floating() : input_space;
  AxiomReport r = start('g', space, s);
  if (twin) r.notes.push_back("run on the float backend: the apex of an L2 triangle is irrational");
  for (std::size_t i = 0; i < opt.samples; ++i) {
    ++r.samples;
    Rational p = positive_rational(s, 6), q = positive_rational(s, 6), d;
    const long mode = s.integer(0, 9);
    if (mode == 0) d = p + q;
    else if (mode == 1) d = p == q ? p : abs(Rational(p - q));
    else if (mode == 2) d = p + q + positive_rational(s, 2);
    else if (mode == 3) p = q = d = 1;
    else d = positive_rational(s, 6);
    if (d > p + q || d < abs(Rational(p - q))) {
      ++r.not_applicable;
      continue;
    }
    ++r.checked;
    const Point u = s.point(space);
    const Point v = u + s.vector_of_length(space, d);
    const Named base = {{"u", u}, {"v", v}};
    Point w;
    try {
      w = sphere_intersection_point(space, u, length_of(space, p), v, length_of(space, q));
    } catch (const GeometryError& e) {
      violation(r, "triangle exists", base, e.what());
      continue;
    }
    const Named pts = {{"u", u}, {"v", v}, {"w", w}};
    const bool ok = compare_scaled(space, distance(space, u, v), 1, length_of(space, d)) == 0 &&
                    compare_scaled(space, distance(space, u, w), 1, length_of(space, p)) == 0 &&
                    compare_scaled(space, distance(space, v, w), 1, length_of(space, q)) == 0;
    if (!ok) {
      violation(r, "sides uw = p, vw = q, uv = r", pts,
                "p=" + format_rational(p) + " q=" + format_rational(q) + " r=" + format_rational(d));
      continue;
    }
    witness(r, opt, "triangle p=" + format_rational(p) + " q=" + format_rational(q) + " r=" + format_rational(d), pts);
  }
  return r;
}

AxiomReport check_axiom_h(const Space& space, Sampler& s, const AxiomOptions& opt) {
  AxiomReport r = start('h', space, s);
  const bool twin = rational_sides_needed(space);
  const Space fspace = twin ? space.to_floating() : space;
  if (twin) r.notes.push_back("defining formula evaluated on the float backend");
  Evaluator evaluator(fspace, opt.trunc, ImplMap::layer(RelationKind::le));
  const RelationId le{RelationKind::le, {}};
  for (std::size_t i = 0; i < opt.samples; ++i) {
    ++r.samples;
    const Point a = s.point(space);
    const Point b = s.point(space);
    const Point c = s.point(space);
    Point d = s.point(space);
    const long mode = s.integer(0, 5);
    if (mode == 0) d = c + s.congruent_vector(space, b - a);
    if (mode == 1) d = c;
    if (mode == 2) d = c + s.congruent_vector(space, (b - a).scaled(Rational(1, 2)));
    const Named pts = {{"a", a}, {"b", b}, {"c", c}, {"d", d}};
    ++r.checked;
    const bool ab_cd = oracle_le(space, a, b, c, d);
    if (!ab_cd && !oracle_le(space, c, d, a, b)) violation(r, "ab <= cd | cd <= ab", pts);
    if (opt.formula_stride == 0 || i % opt.formula_stride != 0) continue;
    const std::vector<Point> in = {fspace.convert(a), fspace.convert(b), fspace.convert(c), fspace.convert(d)};
    const bool oracle = oracle_le(fspace, in[0], in[1], in[2], in[3]);
    ClosureResult cl = close_for(fspace, ClosureSpec{le, in, opt.trunc});
    const bool formula = evaluator.eval_relation(le, in, cl.universe);
    ++r.formula_checks;
    if (formula == oracle) continue;
    if (!cl.complete) {
      ++r.incomplete;
      continue;
    }
    violation(r, "defining formula of <= agrees with d(a,b) <= d(c,d)", pts,
              std::string("formula ") + (formula ? "true" : "false") + ", oracle " + (oracle ? "true" : "false"));
  }
  return r;
}

int archimedean_chain_length(const Space& space, const Point& a, const Point& b, const Point& x1, const Point& d,
                             int chain_cap) {
  if (space.same_point(a, b)) throw GeometryError("Archimedean chain needs a != b");
  const Point v = b - a;
  if (!oracle_collinear(space, x1, x1 + v, d)) return -1;
  if (!space.same_point(x1, d) && !oracle_between(space, x1, d, x1 + v) && !oracle_between(space, x1, x1 + v, d)) {
    return -1;
  }
  Point x = x1;
  for (int n = 2; n <= chain_cap; ++n) {
    x = x + v;
    if (oracle_between(space, x1, d, x)) return n;
  }
  return 0;
}

AxiomReport check_axiom_i(const Space& space, Sampler& s, const AxiomOptions& opt) {
  if (opt.chain_cap < 2) throw GeometryError("chain cap must be at least 2");
  AxiomReport r = start('i', space, s);
  for (std::size_t i = 0; i < opt.samples; ++i) {
    ++r.samples;
    const Point a = s.point(space);
    const Point b = s.point(space);
    if (space.same_point(a, b)) {
      ++r.skipped;
      continue;
    }
    const Point x1 = s.point(space);
    const Point v = b - a;
    const long mode = s.integer(0, 19);
    Rational t;
    if (mode == 0) t = 0;
    else if (mode <= 5) t = s.integer(1, 12);
    else if (mode == 6) t = -positive_rational(s, 4);
    else if (mode == 7) t = opt.chain_cap + s.integer(0, 8);
    else t = abs(s.rational(12));
    Point d = affine_combination(x1, x1 + v, t);
    if (mode == 8) d = d + rot90(v).scaled(Rational(1, 4));
    const Named base = {{"a", a}, {"b", b}, {"x1", x1}, {"d", d}};
    const int n = archimedean_chain_length(space, a, b, x1, d, opt.chain_cap);
    if (n < 0) {
      ++r.not_applicable;
      continue;
    }
    if (n == 0) {
      ++r.incomplete;
      continue;
    }
    ++r.checked;
    r.max_chain = std::max(r.max_chain, n);
    // rebuild and re-validate the chain with its parallelogram rungs
    const Point w = rot90(v);
    std::vector<Point> xs = {x1}, ys = {x1 + w};
    for (int k = 1; k <= n; ++k) {
      xs.push_back(xs.back() + v);
      ys.push_back(xs.back() + w);
    }
    bool ok = equidistant(space, xs[0], xs[1], a, b) &&
              (oracle_between(space, xs[0], xs[1], d) || oracle_between(space, xs[0], d, xs[1])) &&
              oracle_between(space, xs[0], d, xs[static_cast<std::size_t>(n - 1)]);
    for (int k = 0; ok && k + 1 < n; ++k) {
      const auto uk = static_cast<std::size_t>(k);
      ok = oracle_parallelogram(space, xs[uk], xs[uk + 1], ys[uk + 1], ys[uk]) &&
           oracle_parallelogram(space, ys[uk], ys[uk + 1], xs[uk + 2], xs[uk + 1]);
    }
    Named pts = base;
    for (int k = 0; k < n; ++k) pts.emplace_back("x" + std::to_string(k + 1), xs[static_cast<std::size_t>(k)]);
    if (!ok) {
      violation(r, "chain constraints", pts);
      continue;
    }
    if (Rational(n) > ceil_of(t) + 2) {
      violation(r, "n <= ceil(t) + 2", pts, "n=" + std::to_string(n) + " t=" + format_rational(t));
      continue;
    }
    witness(r, opt, "n=" + std::to_string(n) + " t=" + format_rational(t), pts);
  }
  return r;
}

AxiomReport check_axiom(char axiom, const Space& space, Sampler& sampler, const AxiomOptions& opt) {
  switch (axiom) {
    case 'a': return check_axiom_a(space, sampler, opt);
    case 'b': return check_axiom_b(space, sampler, opt);
    case 'c': return check_axiom_c(space, sampler, opt);
    case 'd': return check_axiom_d(space, sampler, opt);
    case 'e': return check_axiom_e(space, sampler, opt);
    case 'f': return check_axiom_f(space, sampler, opt);
    case 'g': return check_axiom_g(space, sampler, opt);
    case 'h': return check_axiom_h(space, sampler, opt);
    case 'i': return check_axiom_i(space, sampler, opt);
    default: break;
  }
  throw GeometryError(std::string("unknown axiom '") + axiom + "'");
}

std::vector<AxiomReport> check_axioms(const Space& space, std::uint64_t seed, const AxiomOptions& opt,
                                      const std::string& which) {
  std::vector<AxiomReport> out;
  for (char ax : which) {
    if (ax < 'a' || ax > 'i') throw GeometryError(std::string("unknown axiom '") + ax + "'");
    Sampler s(stream_seed(seed, static_cast<std::uint64_t>(ax - 'a')));
    out.push_back(check_axiom(ax, space, s, opt));
  }
  return out;
}

}  // namespace equidef
