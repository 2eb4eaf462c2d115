#include "equidef/axioms.hpp"
#include "equidef/closure.hpp"
#include "equidef/eval.hpp"
#include "equidef/io.hpp"
#include "equidef/oracles.hpp"
#include "equidef/parser.hpp"
#include "equidef/verify.hpp"
#include "equidef/vogt.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace equidef;

namespace {

Space make_space(const std::string& norm, const std::string& backend, double tolerance) {
  return Space::make(NormSpec::parse(norm), parse_backend(backend), tolerance);
}

TruncationParams make_trunc(const std::string& trunc_json) {
  return trunc_json.empty() ? TruncationParams{} : trunc_from_json(Json::parse(trunc_json));
}

std::vector<Point> make_points(const std::string& points_json, const Space& space) {
  std::vector<Point> out;
  for (auto& np : points_from_json(Json::parse(points_json), space)) out.push_back(np.point);
  return out;
}

bool oracle(const std::string& relation, const std::string& points, const std::string& norm,
            const std::string& backend, double tol) {
  const Space space = make_space(norm, backend, tol);
  const RelationId id = RelationId::parse(relation);
  const auto pts = make_points(points, space);
  if (static_cast<int>(pts.size()) != id.arity()) throw RelationError(id.to_string() + ": wrong number of points");
  return evaluate_oracle(space, id, std::span<const Point>(pts));
}

std::string distance_of(const std::string& points, const std::string& norm, const std::string& backend, double tol) {
  const Space space = make_space(norm, backend, tol);
  const auto pts = make_points(points, space);
  if (pts.size() != 2) throw GeometryError("distance needs two points");
  return distance(space, pts[0], pts[1]).to_string();
}

py::tuple eval_formula(const std::string& formula, const std::string& bindings, const std::string& universe,
                       const std::map<std::string, std::string>& impl, const std::string& norm,
                       const std::string& backend, double tol, const std::string& trunc_json) {
  const Space space = make_space(norm, backend, tol);
  const TruncationParams trunc = make_trunc(trunc_json);
  const Formula f = parse_formula(formula);
  Valuation val;
  const Json b = Json::parse(bindings);
  for (auto it = b.begin(); it != b.end(); ++it) val[it.key()] = point_from_json(it.value(), space);
  for (const auto& n : free_vars_in_order(f)) {
    if (!val.count(n)) throw EvalError("unbound variable '" + n + "'");
  }
  ClosureResult cl = universe.empty() ? close_for_formula(space, f, val, trunc)
                                      : ClosureResult{universe_from_json(Json::parse(universe), space)};
  Universe& u = cl.universe;
  for (const auto& [n, p] : val) u.add(p, Provenance::input);
  const bool complete = cl.complete;
  ImplMap m = ImplMap::all_oracle();
  for (const auto& [rel, how] : impl) m.apply(rel + "=" + how);
  Evaluator ev(space, trunc, m);
  Trace trace;
  const bool value = ev.eval(f, u, val, &trace);
  Json tr = Json::array();
  for (const auto& e : trace.entries) {
    Json bj = Json::object();
    for (const auto& [n, p] : e.bindings) bj[n] = to_json(p);
    tr.push_back({{"role", e.role}, {"bindings", bj}});
  }
  return py::make_tuple(value, tr.dump(), complete);
}

std::string closure(const std::string& relation, const std::string& points, const std::string& norm,
                    const std::string& backend, double tol, const std::string& trunc_json) {
  const Space space = make_space(norm, backend, tol);
  const RelationId id = RelationId::parse(relation);
  ClosureSpec spec{id, make_points(points, space), make_trunc(trunc_json)};
  const ClosureResult r = close_for(space, spec);
  Json j = to_json(r.universe, r.complete, r.notes);
  j["relation"] = id.to_string();
  return dump(j);
}

std::string verify(const std::string& relation, const std::string& norm, const std::string& backend, double tol,
                   std::size_t samples, std::uint64_t seed, const std::string& trunc_json) {
  const RelationId id = RelationId::parse(relation);
  const Space space =
      backend == "auto" ? preferred_space(NormSpec::parse(norm), id, tol) : make_space(norm, backend, tol);
  Sampler sampler(seed);
  return dump(to_json(verify_layer(id, space, sampler, make_trunc(trunc_json), samples)));
}

std::string axioms(const std::string& which, const std::string& norm, const std::string& backend, double tol,
                   std::size_t samples, std::uint64_t seed, int chain_cap) {
  const Space space = make_space(norm, backend, tol);
  AxiomOptions opt;
  opt.samples = samples;
  opt.chain_cap = chain_cap;
  Json arr = Json::array();
  for (const auto& r : check_axioms(space, seed, opt, which)) arr.push_back(to_json(r));
  return dump(arr);
}

std::string vogt(const std::string& config_json) {
  const VogtConfig cfg = vogt_config_from_json(Json::parse(config_json));
  Json arr = Json::array();
  for (const auto& r : run_vogt_experiment(cfg)) arr.push_back(to_json(r));
  return dump(arr);
}

}  // namespace

PYBIND11_MODULE(_equidef, m) {
  m.doc() = "equidistance definitional tower: oracles, bounded evaluation, harnesses";

  py::register_exception<GeometryError>(m, "GeometryError", PyExc_ValueError);
  py::register_exception<RelationError>(m, "RelationError", PyExc_ValueError);
  py::register_exception<EvalError>(m, "EvalError", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      PyErr_SetString(PyExc_SyntaxError, e.what());
    }
  });

  m.def("oracle", &oracle);
  m.def("distance", &distance_of);
  m.def("eval_formula", &eval_formula);
  m.def("parse_print", [](const std::string& text) { return print_formula(parse_formula(text)); });
  m.def("expand", [](const std::string& relation, const std::string& trunc_json) {
    return print_formula(expand_schema(RelationId::parse(relation), make_trunc(trunc_json)));
  });
  m.def("closure", &closure);
  m.def("verify_layer", &verify);
  m.def("check_axioms", &axioms);
  m.def("vogt", &vogt);
}
