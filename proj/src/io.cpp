#include "equidef/io.hpp"

#include <fstream>

namespace equidef {

namespace {

Rational rational_from_json(const Json& j) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.dump());
    if (j.is_number()) return parse_rational(j.dump());
  } catch (const std::exception& e) {
    throw FormatError(std::string("bad rational: ") + e.what());
  }
  throw FormatError("expected a rational, got " + j.dump());
}

Json rational_to_json(const Rational& q) { return format_rational(q); }

Json scalar_to_json(const Scalar& s) {
  if (s.is_exact()) return format_rational(s.rational());
  return s.to_double();
}

Scalar scalar_from_json(const Json& j, const Space& space) {
  if (space.is_exact()) return Scalar(rational_from_json(j));
  if (j.is_number()) return Scalar(j.get<double>());
  return Scalar(rational_from_json(j).get_d());
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

Json named_points(const std::vector<std::pair<std::string, Point>>& pts) {
  Json out = Json::array();
  for (const auto& [name, p] : pts) {
    Json rec = to_json(p);
    rec["name"] = name;
    out.push_back(std::move(rec));
  }
  return out;
}

Json points_array(const std::vector<Point>& pts) {
  Json out = Json::array();
  for (const auto& p : pts) out.push_back(to_json(p));
  return out;
}

Json to_json(const PreservationWitness& w) {
  return {{"category", w.category}, {"points", points_array(w.points)}, {"images", points_array(w.images)},
          {"before", w.before}, {"after", w.after}};
}

Json to_json(const Instantiation& i) {
  Json out = {{"clause", i.clause}, {"points", named_points(i.points)}};
  if (!i.note.empty()) out["note"] = i.note;
  return out;
}

}  // namespace

Json to_json(const Point& p) { return {{"x", scalar_to_json(p.x)}, {"y", scalar_to_json(p.y)}}; }

Point point_from_json(const Json& j, const Space& space) {
  if (j.is_array() && j.size() == 2) return {scalar_from_json(j[0], space), scalar_from_json(j[1], space)};
  return {scalar_from_json(field(j, "x"), space), scalar_from_json(field(j, "y"), space)};
}

std::vector<NamedPoint> points_from_json(const Json& j, const Space& space) {
  const Json& arr = j.is_object() ? field(j, "points") : j;
  if (!arr.is_array()) throw FormatError("expected an array of point records");
  std::vector<NamedPoint> out;
  for (const auto& rec : arr) {
    std::string name;
    if (rec.is_object() && rec.contains("name")) name = rec.at("name").get<std::string>();
    out.push_back({name, point_from_json(rec, space)});
  }
  return out;
}

Json points_to_json(const std::vector<NamedPoint>& pts) {
  Json out = Json::array();
  for (const auto& np : pts) {
    Json rec = to_json(np.point);
    if (!np.name.empty()) rec["name"] = np.name;
    out.push_back(std::move(rec));
  }
  return out;
}

Json to_json(const NormSpec& norm) {
  if (norm.kind == NormSpec::Kind::lp) return {{"lp", format_rational(norm.p)}};
  return norm.name();
}

NormSpec norm_from_json(const Json& j) {
  try {
    if (j.is_string()) return NormSpec::parse(j.get<std::string>());
    if (j.is_object() && j.contains("lp")) return NormSpec::lp(rational_from_json(j.at("lp")));
  } catch (const FormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw FormatError(e.what());
  }
  throw FormatError("bad norm " + j.dump());
}

Json to_json(const Space& space) {
  return {{"norm", to_json(space.norm())},
          {"backend", std::string(to_string(space.backend()))},
          {"tolerance", space.tolerance()}};
}

Space space_from_json(const Json& j) {
  const NormSpec norm = norm_from_json(field(j, "norm"));
  const Backend backend = j.contains("backend") ? parse_backend(j.at("backend").get<std::string>()) : Backend::exact;
  const double tol = j.contains("tolerance") ? j.at("tolerance").get<double>() : Space::kDefaultTolerance;
  return Space::make(norm, backend, tol);
}

Json to_json(const TruncationParams& t) {
  return {{"K", t.K},
          {"N", t.N},
          {"b_depth", t.b_depth},
          {"chain_max", t.chain_max},
          {"phi_depth", t.phi_depth},
          {"adaptive_n", t.adaptive_n},
          {"b_mode", std::string(to_string(t.b_mode))}};
}

TruncationParams trunc_from_json(const Json& j, TruncationParams t) {
  if (j.contains("K")) t.K = j.at("K").get<int>();
  if (j.contains("N")) t.N = j.at("N").get<int>();
  if (j.contains("b_depth")) t.b_depth = j.at("b_depth").get<int>();
  if (j.contains("chain_max")) t.chain_max = j.at("chain_max").get<int>();
  if (j.contains("phi_depth")) t.phi_depth = j.at("phi_depth").get<int>();
  if (j.contains("adaptive_n")) t.adaptive_n = j.at("adaptive_n").get<bool>();
  if (j.contains("b_mode")) t.b_mode = parse_b_mode(j.at("b_mode").get<std::string>());
  return t;
}

Json to_json(const Universe& u, bool complete, const std::vector<std::string>& notes) {
  Json pts = Json::array();
  for (std::size_t i = 0; i < u.size(); ++i) {
    Json rec = to_json(u[i]);
    rec["provenance"] = std::string(to_string(u.provenance(i)));
    pts.push_back(std::move(rec));
  }
  return {{"space", to_json(u.space())}, {"points", pts}, {"complete", complete}, {"notes", notes}};
}

Universe universe_from_json(const Json& j, const Space& space) {
  const Json& arr = j.is_object() ? field(j, "points") : j;
  if (!arr.is_array()) throw FormatError("expected an array of universe records");
  Universe u(space);
  for (const auto& rec : arr) {
    Provenance tag = Provenance::input;
    if (rec.is_object() && rec.contains("provenance")) {
      try {
        tag = parse_provenance(rec.at("provenance").get<std::string>());
      } catch (const std::exception& e) {
        throw FormatError(e.what());
      }
    }
    u.add(point_from_json(rec, space), tag);
  }
  return u;
}

Json to_json(const LayerReport& r) {
  Json cxs = Json::array();
  for (const auto& cx : r.counterexamples) {
    Json uni = Json::array();
    for (const auto& [p, tag] : cx.universe) {
      Json rec = to_json(p);
      rec["provenance"] = std::string(to_string(tag));
      uni.push_back(std::move(rec));
    }
    cxs.push_back({{"inputs", points_array(cx.inputs)},
                   {"universe", uni},
                   {"formula", cx.formula},
                   {"oracle", cx.oracle},
                   {"note", cx.note}});
  }
  return {{"relation", r.relation},
          {"norm", r.norm},
          {"backend", r.backend},
          {"tolerance", r.tolerance},
          {"trunc", to_json(r.trunc)},
          {"seed", r.seed},
          {"samples", r.samples},
          {"agreements", r.agreements},
          {"band_cases", r.band_cases},
          {"incomplete_closures", r.incomplete_closures},
          {"max_universe", r.max_universe},
          {"formula_true", r.formula_true},
          {"oracle_true", r.oracle_true},
          {"counterexamples", cxs},
          {"passed", r.passed()}};
}

Json to_json(const AxiomReport& r) {
  Json viol = Json::array();
  for (const auto& v : r.violations) viol.push_back(to_json(v));
  Json wit = Json::array();
  for (const auto& w : r.witnesses) wit.push_back(to_json(w));
  return {{"axiom", std::string(1, r.axiom)},
          {"norm", r.norm},
          {"backend", r.backend},
          {"tolerance", r.tolerance},
          {"seed", r.seed},
          {"samples", r.samples},
          {"checked", r.checked},
          {"skipped", r.skipped},
          {"not_applicable", r.not_applicable},
          {"incomplete", r.incomplete},
          {"witnesses_verified", r.witnesses_verified},
          {"formula_checks", r.formula_checks},
          {"max_chain", r.max_chain},
          {"violations", viol},
          {"witnesses", wit},
          {"notes", r.notes},
          {"passed", r.passed()}};
}

Json to_json(const PreservationReport& r) {
  Json out = {{"map", r.map},
              {"norm", r.norm},
              {"backend", r.backend},
              {"seed", r.seed},
              {"quadruples", r.quadruples},
              {"equidistant_before", r.equidistant_before},
              {"equidistant_after", r.equidistant_after},
              {"triples", r.triples},
              {"forward_violations", r.forward_violations},
              {"backward_violations", r.backward_violations},
              {"b_violations", r.b_violations},
              {"classification", std::string(to_string(r.classification()))},
              {"b_preserving", r.b_preserving()}};
  out["forward_witness"] = r.forward_witness ? to_json(*r.forward_witness) : Json(nullptr);
  out["backward_witness"] = r.backward_witness ? to_json(*r.backward_witness) : Json(nullptr);
  out["b_witness"] = r.b_witness ? to_json(*r.b_witness) : Json(nullptr);
  return out;
}

Json to_json(const MapSpec& m) {
  Json out = {{"kind", std::string(to_string(m.kind))}};
  if (!m.name.empty()) out["name"] = m.name;
  switch (m.kind) {
    case MapSpec::Kind::translation: out["translation"] = to_json(m.translation); break;
    case MapSpec::Kind::linear:
      out["matrix"] = {rational_to_json(m.m11), rational_to_json(m.m12), rational_to_json(m.m21),
                       rational_to_json(m.m22)};
      break;
    case MapSpec::Kind::similarity:
      out["isometry"] = m.isometry;
      out["scale"] = rational_to_json(m.scale);
      out["translation"] = to_json(m.translation);
      break;
    case MapSpec::Kind::nonlinear: {
      out["family"] = m.family;
      Json ps = Json::array();
      for (const auto& q : m.params) ps.push_back(rational_to_json(q));
      out["params"] = ps;
      break;
    }
    case MapSpec::Kind::composition: {
      Json parts = Json::array();
      for (const auto& p : m.parts) parts.push_back(to_json(p));
      out["parts"] = parts;
      break;
    }
  }
  return out;
}

MapSpec map_from_json(const Json& j) {
  const Space exact = Space::exact(NormSpec::l2());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    MapSpec m;
    if (s == "shear") m = MapSpec::make_linear(1, 1, 0, 1);
    else if (s == "anisotropic") m = MapSpec::make_linear(2, 0, 0, 1);
    else if (s == "identity") m = MapSpec::make_linear(1, 0, 0, 1);
    else if (s == "cube_x") m = MapSpec::make_nonlinear("cube_x");
    else throw FormatError("unknown map name '" + s + "'");
    m.name = s;
    return m;
  }
  const std::string kind = field(j, "kind").get<std::string>();
  MapSpec m;
  if (kind == "translation") {
    m = MapSpec::make_translation(point_from_json(field(j, "translation"), exact));
  } else if (kind == "linear") {
    const Json& a = field(j, "matrix");
    if (!a.is_array() || a.size() != 4) throw FormatError("linear map needs a 4-entry matrix");
    m = MapSpec::make_linear(rational_from_json(a[0]), rational_from_json(a[1]), rational_from_json(a[2]),
                             rational_from_json(a[3]));
  } else if (kind == "similarity") {
    const Point t = j.contains("translation") ? point_from_json(j.at("translation"), exact) : Point::exact(0, 0);
    m = MapSpec::make_similarity(j.value("isometry", 0), j.contains("scale") ? rational_from_json(j.at("scale")) : 1,
                                 t);
  } else if (kind == "nonlinear") {
    std::vector<Rational> ps;
    if (j.contains("params")) {
      for (const auto& q : j.at("params")) ps.push_back(rational_from_json(q));
    }
    m = MapSpec::make_nonlinear(field(j, "family").get<std::string>(), ps);
  } else if (kind == "composition") {
    std::vector<MapSpec> parts;
    for (const auto& p : field(j, "parts")) parts.push_back(map_from_json(p));
    m = MapSpec::compose(parts);
  } else {
    throw FormatError("unknown map kind '" + kind + "'");
  }
  if (j.contains("name")) m.name = j.at("name").get<std::string>();
  return m;
}

VogtConfig vogt_config_from_json(const Json& j) {
  VogtConfig c;
  if (j.contains("maps")) {
    for (const auto& m : j.at("maps")) {
      if (m.is_string() && m.get<std::string>() == "similarities") {
        c.similarities = true;
        continue;
      }
      c.maps.push_back(map_from_json(m));
    }
  }
  if (j.contains("similarities")) c.similarities = c.similarities || j.at("similarities").get<bool>();
  if (j.contains("norms")) {
    for (const auto& n : j.at("norms")) c.norms.push_back(norm_from_json(n));
  } else {
    c.norms = {NormSpec::l2()};
  }
  if (j.contains("backend")) c.backend = parse_backend(j.at("backend").get<std::string>());
  if (j.contains("tolerance")) c.tolerance = j.at("tolerance").get<double>();
  if (j.contains("quadruples")) c.quadruples = j.at("quadruples").get<std::size_t>();
  if (j.contains("triples")) c.triples = j.at("triples").get<std::size_t>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out << text;
}

}  // namespace equidef
