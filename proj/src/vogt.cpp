#include "equidef/vogt.hpp"

#include "equidef/oracles.hpp"

#include <cmath>

namespace equidef {

namespace {

Point lift(const Point& p, Backend backend) {
  if (p.backend() == backend) return p;
  if (backend == Backend::floating) return p.to_floating();
  throw BackendMismatch();
}

Point linear_apply(const Rational& m11, const Rational& m12, const Rational& m21, const Rational& m22,
                   const Point& p) {
  return {p.x.scaled(m11) + p.y.scaled(m12), p.x.scaled(m21) + p.y.scaled(m22)};
}

// Inverse of a nonsingular 2x2 matrix, applied to p.
Point linear_solve(const Rational& m11, const Rational& m12, const Rational& m21, const Rational& m22,
                   const Point& p) {
  const Rational det = m11 * m22 - m12 * m21;
  return linear_apply(m22 / det, -m12 / det, -m21 / det, m11 / det, p);
}

std::optional<Rational> rational_cbrt(const Rational& q) {
  auto root = [](const mpz_class& z) -> std::optional<mpz_class> {
    mpz_class r;
    if (mpz_root(r.get_mpz_t(), z.get_mpz_t(), 3) == 0) return std::nullopt;
    return r;
  };
  auto n = root(q.get_num());
  auto d = root(q.get_den());
  if (!n || !d) return std::nullopt;
  return Rational(*n, *d);
}

const Isometry& generator(const NormSpec& norm, int index) {
  return isometry_generators(norm).at(static_cast<std::size_t>(index));
}

std::string fmt(const Point& p) { return p.to_string(); }

Point draw_segment_point(Sampler& s, const Point& a, const Point& c) {
  const long mode = s.integer(0, 5);
  if (mode == 0) return a;
  if (mode == 1) return c;
  Rational t = mode <= 3 ? s.dyadic(1, 4) : s.rational(1);
  if (t < 0) t = -t;
  return affine_combination(a, c, t);
}

}  // namespace

std::string_view to_string(MapSpec::Kind kind) {
  switch (kind) {
    case MapSpec::Kind::translation: return "translation";
    case MapSpec::Kind::linear: return "linear";
    case MapSpec::Kind::similarity: return "similarity";
    case MapSpec::Kind::nonlinear: return "nonlinear";
    case MapSpec::Kind::composition: return "composition";
  }
  return "?";
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::bidirectional: return "bidirectional-preserving";
    case Classification::forward_only: return "forward-only";
    case Classification::violating: return "violating";
  }
  return "?";
}

MapSpec MapSpec::make_translation(const Point& v) {
  MapSpec m;
  m.kind = Kind::translation;
  m.translation = v;
  return m;
}

MapSpec MapSpec::make_linear(Rational a, Rational b, Rational c, Rational d) {
  MapSpec m;
  m.kind = Kind::linear;
  m.m11 = std::move(a), m.m12 = std::move(b), m.m21 = std::move(c), m.m22 = std::move(d);
  return m;
}

MapSpec MapSpec::make_similarity(int isometry, Rational scale, const Point& translation) {
  MapSpec m;
  m.kind = Kind::similarity;
  m.isometry = isometry;
  m.scale = std::move(scale);
  m.translation = translation;
  return m;
}

MapSpec MapSpec::make_nonlinear(std::string family, std::vector<Rational> params) {
  MapSpec m;
  m.kind = Kind::nonlinear;
  m.family = std::move(family);
  m.params = std::move(params);
  return m;
}

MapSpec MapSpec::compose(std::vector<MapSpec> parts) {
  MapSpec m;
  m.kind = Kind::composition;
  m.parts = std::move(parts);
  return m;
}

void MapSpec::validate(const NormSpec& norm) const {
  switch (kind) {
    case Kind::translation: return;
    case Kind::linear:
      if (m11 * m22 - m12 * m21 == 0) throw GeometryError("singular linear map");
      return;
    case Kind::similarity: {
      if (sgn(scale) <= 0) throw GeometryError("similarity scale must be positive");
      const auto& gens = isometry_generators(norm);
      if (isometry < 0 || isometry >= static_cast<int>(gens.size())) {
        throw GeometryError("isometry index " + std::to_string(isometry) + " out of range for " + norm.name());
      }
      return;
    }
    case Kind::nonlinear:
      if (family == "cube_x") return;
      if (family == "constant") {
        if (params.size() != 2) throw GeometryError("constant map needs two parameters");
        return;
      }
      throw GeometryError("unknown map family '" + family + "'");
    case Kind::composition:
      if (parts.empty()) throw GeometryError("empty composition");
      for (const auto& p : parts) p.validate(norm);
      return;
  }
}

std::string MapSpec::describe() const {
  if (!name.empty()) return name;
  switch (kind) {
    case Kind::translation: return "translation" + fmt(translation);
    case Kind::linear:
      return "linear[" + format_rational(m11) + " " + format_rational(m12) + "; " + format_rational(m21) + " " +
             format_rational(m22) + "]";
    case Kind::similarity:
      return "similarity(iso=" + std::to_string(isometry) + ", scale=" + format_rational(scale) + ", t=" +
             fmt(translation) + ")";
    case Kind::nonlinear: {
      std::string out = family;
      if (!params.empty()) {
        out += "(";
        for (std::size_t i = 0; i < params.size(); ++i) out += (i ? "," : "") + format_rational(params[i]);
        out += ")";
      }
      return out;
    }
    case Kind::composition: {
      std::string out = "compose(";
      for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? ", " : "") + parts[i].describe();
      return out + ")";
    }
  }
  return "?";
}

Point apply_map(const MapSpec& spec, const NormSpec& norm, const Point& p) {
  switch (spec.kind) {
    case MapSpec::Kind::translation: return p + lift(spec.translation, p.backend());
    case MapSpec::Kind::linear: return linear_apply(spec.m11, spec.m12, spec.m21, spec.m22, p);
    case MapSpec::Kind::similarity: {
      const Isometry& iso = generator(norm, spec.isometry);
      return iso.apply(p).scaled(spec.scale) + lift(spec.translation, p.backend());
    }
    case MapSpec::Kind::nonlinear:
      if (spec.family == "cube_x") return {p.x * p.x * p.x, p.y};
      if (spec.family == "constant") {
        return lift(Point::exact(spec.params.at(0), spec.params.at(1)), p.backend());
      }
      throw GeometryError("unknown map family '" + spec.family + "'");
    case MapSpec::Kind::composition: {
      Point q = p;
      for (auto it = spec.parts.rbegin(); it != spec.parts.rend(); ++it) q = apply_map(*it, norm, q);
      return q;
    }
  }
  return p;
}

std::optional<Point> apply_inverse(const MapSpec& spec, const NormSpec& norm, const Point& p) {
  switch (spec.kind) {
    case MapSpec::Kind::translation: return p - lift(spec.translation, p.backend());
    case MapSpec::Kind::linear: return linear_solve(spec.m11, spec.m12, spec.m21, spec.m22, p);
    case MapSpec::Kind::similarity: {
      const Isometry& iso = generator(norm, spec.isometry);
      const Point q = (p - lift(spec.translation, p.backend())).scaled(1 / spec.scale);
      return linear_solve(iso.m11, iso.m12, iso.m21, iso.m22, q);
    }
    case MapSpec::Kind::nonlinear:
      if (spec.family == "cube_x") {
        if (!p.x.is_exact()) return Point(Scalar(std::cbrt(p.x.to_double())), p.y);
        if (auto r = rational_cbrt(p.x.rational())) return Point(Scalar(*r), p.y);
      }
      return std::nullopt;
    case MapSpec::Kind::composition: {
      Point q = p;
      for (const auto& part : spec.parts) {
        auto r = apply_inverse(part, norm, q);
        if (!r) return std::nullopt;
        q = *r;
      }
      return q;
    }
  }
  return std::nullopt;
}

Classification PreservationReport::classification() const {
  if (forward_violations > 0) return Classification::violating;
  if (backward_violations > 0) return Classification::forward_only;
  return Classification::bidirectional;
}

void PreservationReport::merge(const PreservationReport& o) {
  quadruples += o.quadruples;
  equidistant_before += o.equidistant_before;
  equidistant_after += o.equidistant_after;
  triples += o.triples;
  forward_violations += o.forward_violations;
  backward_violations += o.backward_violations;
  b_violations += o.b_violations;
  if (!forward_witness) forward_witness = o.forward_witness;
  if (!backward_witness) backward_witness = o.backward_witness;
  if (!b_witness) b_witness = o.b_witness;
}

namespace {

PreservationReport start(const Space& space, const MapSpec& spec, const Sampler& s) {
  spec.validate(space.norm());
  PreservationReport r;
  r.map = spec.describe();
  r.norm = space.norm().name();
  r.backend = std::string(to_string(space.backend()));
  r.seed = s.seed();
  return r;
}

PreservationWitness make_witness(const Space& space, std::string category, std::vector<Point> pts,
                                 std::vector<Point> imgs) {
  PreservationWitness w{std::move(category), std::move(pts), std::move(imgs), {}, {}};
  if (w.category == "between") {
    w.before = "B holds";
    w.after = "B fails";
  } else {
    w.before = distance(space, w.points[0], w.points[1]).to_string() + " vs " +
               distance(space, w.points[2], w.points[3]).to_string();
    w.after = distance(space, w.images[0], w.images[1]).to_string() + " vs " +
              distance(space, w.images[2], w.images[3]).to_string();
  }
  return w;
}

}  // namespace

PreservationReport check_equidistance_preservation(const Space& space, const MapSpec& spec, Sampler& s,
                                                   std::size_t n) {
  PreservationReport r = start(space, spec, s);
  const NormSpec& norm = space.norm();
  for (std::size_t i = 0; i < n; ++i) {
    const long mode = s.integer(0, 9);
    std::vector<Point> q(4);
    bool built = false;
    if (mode >= 5 && mode <= 7) {
      // equal image lengths, pulled back through the inverse
      const Point fx = s.point(space), fy = s.point(space), fu = s.point(space);
      const Point fv = fu + s.congruent_vector(space, fy - fx);
      auto x = apply_inverse(spec, norm, fx), y = apply_inverse(spec, norm, fy);
      auto u = apply_inverse(spec, norm, fu), v = apply_inverse(spec, norm, fv);
      if (x && y && u && v) {
        q = {*x, *y, *u, *v};
        built = true;
      }
    }
    if (!built) {
      q[0] = s.point(space);
      q[1] = mode == 8 ? q[0] : s.point(space);
      q[2] = s.point(space);
      q[3] = mode == 8 ? q[2] : mode == 9 ? s.point(space) : q[2] + s.congruent_vector(space, q[1] - q[0]);
    }
    std::vector<Point> img;
    for (const auto& p : q) img.push_back(space.convert(apply_map(spec, norm, p)));
    ++r.quadruples;
    const bool before = equidistant(space, q[0], q[1], q[2], q[3]);
    const bool after = equidistant(space, img[0], img[1], img[2], img[3]);
    r.equidistant_before += before;
    r.equidistant_after += after;
    if (before && !after) {
      ++r.forward_violations;
      if (!r.forward_witness) r.forward_witness = make_witness(space, "forward", q, img);
    }
    if (after && !before) {
      ++r.backward_violations;
      if (!r.backward_witness) r.backward_witness = make_witness(space, "backward", q, img);
    }
  }
  return r;
}

PreservationReport check_b_preservation(const Space& space, const MapSpec& spec, Sampler& s, std::size_t n) {
  PreservationReport r = start(space, spec, s);
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = s.point(space);
    const Point c = s.integer(0, 19) == 0 ? a : s.point(space);
    const Point b = draw_segment_point(s, a, c);
    if (!oracle_between(space, a, b, c)) continue;
    ++r.triples;
    const std::vector<Point> pts = {a, b, c};
    std::vector<Point> img;
    for (const auto& p : pts) img.push_back(space.convert(apply_map(spec, space.norm(), p)));
    if (!oracle_between(space, img[0], img[1], img[2])) {
      ++r.b_violations;
      if (!r.b_witness) r.b_witness = make_witness(space, "between", pts, img);
    }
  }
  return r;
}

bool witness_holds(const Space& space, const PreservationWitness& w) {
  if (w.category == "between") {
    return w.points.size() == 3 && w.images.size() == 3 && oracle_between(space, w.points[0], w.points[1], w.points[2]) &&
           !oracle_between(space, w.images[0], w.images[1], w.images[2]);
  }
  if (w.points.size() != 4 || w.images.size() != 4) return false;
  const bool before = equidistant(space, w.points[0], w.points[1], w.points[2], w.points[3]);
  const bool after = equidistant(space, w.images[0], w.images[1], w.images[2], w.images[3]);
  if (w.category == "forward") return before && !after;
  if (w.category == "backward") return after && !before;
  return false;
}

std::vector<PreservationReport> run_vogt_experiment(const VogtConfig& config) {
  std::vector<PreservationReport> out;
  std::uint64_t stream = 0;
  for (const auto& norm : config.norms) {
    const Space space = Space::make(norm, config.backend, config.tolerance);
    std::vector<MapSpec> maps;
    if (config.similarities) maps = similarity_family(norm);
    maps.insert(maps.end(), config.maps.begin(), config.maps.end());
    for (const auto& map : maps) {
      Sampler s(stream_seed(config.seed, stream++));
      PreservationReport r = check_equidistance_preservation(space, map, s, config.quadruples);
      r.merge(check_b_preservation(space, map, s, config.triples));
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<MapSpec> similarity_family(const NormSpec& norm) {
  const std::vector<Rational> scales = {Rational(1, 2), 1, 2, 3};
  const std::vector<Point> shifts = {Point::exact(0, 0), Point::exact(1, -2), Point::exact(Rational(5, 2), Rational(7, 3))};
  const int gens = static_cast<int>(isometry_generators(norm).size());
  std::vector<MapSpec> out;
  for (const auto& sc : scales) {
    for (int g = 0; g < gens; ++g) {
      for (const auto& t : shifts) out.push_back(MapSpec::make_similarity(g, sc, t));
    }
  }
  return out;
}

}  // namespace equidef
