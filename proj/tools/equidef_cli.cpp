#include "equidef/axioms.hpp"
#include "equidef/closure.hpp"
#include "equidef/eval.hpp"
#include "equidef/io.hpp"
#include "equidef/oracles.hpp"
#include "equidef/parser.hpp"
#include "equidef/verify.hpp"
#include "equidef/vogt.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace equidef;

namespace {

constexpr int kTrue = 0;
constexpr int kFalse = 1;
constexpr int kError = 2;

struct SpaceOpts {
  std::string norm = "l2";
  std::string backend = "exact";
  double tolerance = Space::kDefaultTolerance;

  Space make() const { return Space::make(NormSpec::parse(norm), parse_backend(backend), tolerance); }
};

struct TruncOpts {
  TruncationParams t;
  std::string mode = "repaired";
  bool fixed_n = false;

  TruncationParams make() const {
    TruncationParams out = t;
    out.b_mode = parse_b_mode(mode);
    out.adaptive_n = !fixed_n;
    out.validate();
    return out;
  }
};

void add_space(CLI::App* app, SpaceOpts& o, bool allow_auto = false) {
  app->add_option("--norm", o.norm, "l1, l2, linf or lp:P with rational P > 1")->capture_default_str();
  app->add_option("--backend", o.backend,
                  allow_auto ? "exact, float or auto (float only where exact constructions are refused)"
                             : "exact or float")
      ->capture_default_str();
  app->add_option("--tolerance", o.tolerance, "float comparison tolerance")->capture_default_str();
}

void add_trunc(CLI::App* app, TruncOpts& o) {
  app->add_option("--depth-K", o.t.K, "conjunction bound K of GAMMA")->capture_default_str();
  app->add_option("--depth-N", o.t.N, "disjunction bound N of GAMMA (with --no-adaptive-n)")->capture_default_str();
  app->add_option("--depth-B", o.t.b_depth, "conjunction bound of B")->capture_default_str();
  app->add_option("--chain-max", o.t.chain_max, "disjunction bound of NEQ")->capture_default_str();
  app->add_option("--phi-depth", o.t.phi_depth, "conjunction bound of M")->capture_default_str();
  app->add_flag("--no-adaptive-n", o.fixed_n, "use N instead of the adaptive per-query bound")->capture_default_str();
  app->add_option("--mode", o.mode, "B mode: repaired or strict-paper")->capture_default_str();
}

std::string read_text_or_inline(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) {
    std::ifstream in(arg);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  return arg;
}

// "0,0 1,0 3/2,0" or "0,0;1,0", or a JSON points file.
std::vector<NamedPoint> read_points(const std::string& arg, const Space& space) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) return points_from_json(read_json_file(arg), space);
  std::string text = arg;
  for (char& ch : text) {
    if (ch == ';') ch = ' ';
  }
  std::istringstream in(text);
  std::vector<NamedPoint> out;
  std::string tok;
  while (in >> tok) {
    const auto comma = tok.find(',');
    if (comma == std::string::npos) throw FormatError("bad point '" + tok + "', expected x,y");
    const Rational x = parse_rational(tok.substr(0, comma));
    const Rational y = parse_rational(tok.substr(comma + 1));
    out.push_back({"", space.point(x, y)});
  }
  return out;
}

void emit(const Json& report, const std::string& output) {
  if (output.empty()) {
    std::cout << dump(report);
  } else {
    write_text_file(output, dump(report));
  }
}

ImplMap implementation(const std::string& base, const std::vector<RelationKind>& referenced,
                       const std::vector<std::string>& overrides) {
  ImplMap impl;
  if (base == "formula") {
    impl = ImplMap::all_formula();
  } else if (base == "oracle") {
    impl = ImplMap::all_oracle();
  } else if (base == "layer") {
    impl = ImplMap::all_oracle();
    for (RelationKind k : referenced) {
      if (k != RelationKind::parallelogram) impl.set(k, Impl::formula);
    }
  } else {
    throw EvalError("unknown --impl-default '" + base + "'");
  }
  for (const auto& o : overrides) impl.apply(o);
  return impl;
}

struct EvalOpts {
  std::string formula;
  std::string points;
  std::string universe = "auto";
  std::string impl_default = "layer";
  std::vector<std::string> impl;
  bool explain = false;
  std::string output;
};

int cmd_eval(const EvalOpts& o, const SpaceOpts& so, const TruncOpts& to) {
  const Space space = so.make();
  const TruncationParams trunc = to.make();
  const Formula f = parse_formula(read_text_or_inline(o.formula));
  const auto names = free_vars_in_order(f);
  const std::vector<NamedPoint> pts = o.points.empty() ? std::vector<NamedPoint>{} : read_points(o.points, space);

  Valuation val;
  std::size_t next = 0;
  for (const auto& np : pts) {
    if (!np.name.empty()) val[np.name] = np.point;
  }
  for (const auto& np : pts) {
    if (!np.name.empty()) continue;
    while (next < names.size() && val.count(names[next])) ++next;
    if (next == names.size()) throw EvalError("more points than free variables");
    val[names[next++]] = np.point;
  }
  for (const auto& n : names) {
    if (!val.count(n)) throw EvalError("unbound variable '" + n + "'");
  }

  ClosureResult cl = o.universe == "auto" ? close_for_formula(space, f, val, trunc)
                                          : ClosureResult{universe_from_json(read_json_file(o.universe), space)};
  Universe& u = cl.universe;
  for (const auto& [n, p] : val) u.add(p, Provenance::input);
  const bool complete = cl.complete;
  const auto& notes = cl.notes;

  const ImplMap impl = implementation(o.impl_default, referenced_relations(f), o.impl);
  Evaluator ev(space, trunc, impl);
  Trace trace;
  const bool value = ev.eval(f, u, val, o.explain ? &trace : nullptr);

  std::cout << (value ? "true" : "false") << "\n";
  if (o.explain) {
    for (const auto& e : trace.entries) {
      std::cout << e.role << ":";
      for (const auto& [n, p] : e.bindings) std::cout << " " << n << "=" << p.to_string();
      std::cout << "\n";
    }
    std::cout << "universe: " << u.size() << " points" << (complete ? "" : " (closure incomplete)") << "\n";
  }
  for (const auto& n : notes) std::cerr << "note: " << n << "\n";
  if (!o.output.empty()) {
    Json bindings = Json::object();
    for (const auto& [n, p] : val) bindings[n] = to_json(p);
    Json tr = Json::array();
    for (const auto& e : trace.entries) {
      Json b = Json::object();
      for (const auto& [n, p] : e.bindings) b[n] = to_json(p);
      tr.push_back({{"role", e.role}, {"bindings", b}});
    }
    emit({{"formula", print_formula(f)},
          {"value", value},
          {"space", to_json(space)},
          {"trunc", to_json(trunc)},
          {"impl", impl.to_string()},
          {"bindings", bindings},
          {"universe_size", u.size()},
          {"closure_complete", complete},
          {"trace", tr}},
         o.output);
  }
  return value ? kTrue : kFalse;
}

struct VerifyOpts {
  std::string relation;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  std::string sampler = "default";
  std::string output;
};

int cmd_verify(const VerifyOpts& o, const SpaceOpts& so, const TruncOpts& to) {
  const RelationId id = RelationId::parse(o.relation);
  const TruncationParams trunc = to.make();
  const Space space = so.backend == "auto" ? preferred_space(NormSpec::parse(so.norm), id, so.tolerance) : so.make();
  InstanceSource source;
  if (o.sampler == "midpoint") {
    if (id.arity() != 3) throw RelationError("--sampler midpoint needs a ternary relation");
    source = [](Sampler& s, const Space& sp, const RelationId&) {
      const Point a = s.point(sp), c = s.point(sp);
      return std::vector<Point>{a, midpoint(a, c), c};
    };
  } else if (o.sampler != "default") {
    throw RelationError("unknown --sampler '" + o.sampler + "'");
  }
  Sampler sampler(o.seed);
  const LayerReport r = verify_layer(id, space, sampler, trunc, o.samples, source);
  const Json j = to_json(r);
  if (o.output.empty()) {
    std::cout << dump(j);
  } else {
    emit(j, o.output);
    std::cout << r.relation << " " << r.norm << " " << r.backend << ": " << r.agreements << "/" << r.samples
              << " agree, " << r.band_cases << " band, " << r.counterexamples.size() << " counterexamples\n";
  }
  return r.passed() ? kTrue : kFalse;
}

struct AxiomOpts {
  std::string axioms = "abcdefghi";
  std::size_t samples = 1000;
  int chain_cap = 64;
  std::size_t formula_stride = 50;
  std::uint64_t seed = 0;
  std::string output;
};

int cmd_axioms(const AxiomOpts& o, const SpaceOpts& so, const TruncOpts& to) {
  const Space space = so.make();
  AxiomOptions opt;
  opt.samples = o.samples;
  opt.chain_cap = o.chain_cap;
  opt.formula_stride = o.formula_stride;
  opt.trunc = to.make();
  const auto reports = check_axioms(space, o.seed, opt, o.axioms);
  Json arr = Json::array();
  bool ok = true;
  for (const auto& r : reports) {
    arr.push_back(to_json(r));
    ok = ok && r.passed();
    if (!o.output.empty()) {
      std::cout << "axiom (" << r.axiom << ") " << r.norm << " " << r.backend << ": " << r.checked << " checked, "
                << r.violations.size() << " violations, " << r.witnesses_verified << " witnesses\n";
    }
  }
  emit({{"seed", o.seed}, {"space", to_json(space)}, {"reports", arr}, {"passed", ok}}, o.output);
  return ok ? kTrue : kFalse;
}

struct VogtOpts {
  std::string maps;
  std::vector<std::string> map_names;
  std::vector<std::string> norms;
  std::string backend = "exact";
  std::size_t quadruples = 1000;
  std::size_t triples = 1000;
  std::uint64_t seed = 0;
  std::string output;
};

int cmd_vogt(const VogtOpts& o, bool seed_given) {
  VogtConfig cfg;
  if (!o.maps.empty()) cfg = vogt_config_from_json(read_json_file(o.maps));
  for (const auto& n : o.map_names) {
    if (n == "similarities") {
      cfg.similarities = true;
    } else {
      cfg.maps.push_back(map_from_json(Json(n)));
    }
  }
  if (!o.norms.empty()) {
    cfg.norms.clear();
    for (const auto& n : o.norms) cfg.norms.push_back(NormSpec::parse(n));
  }
  if (cfg.norms.empty()) cfg.norms = {NormSpec::l2()};
  if (o.maps.empty() || o.backend != "exact") cfg.backend = parse_backend(o.backend);
  if (o.maps.empty() || o.quadruples != 1000) cfg.quadruples = o.quadruples;
  if (o.maps.empty() || o.triples != 1000) cfg.triples = o.triples;
  if (seed_given) cfg.seed = o.seed;

  const auto reports = run_vogt_experiment(cfg);
  Json arr = Json::array();
  bool vogt_holds = true;
  bool witnesses_ok = true;
  for (const auto& r : reports) {
    arr.push_back(to_json(r));
    const Space space = Space::make(NormSpec::parse(r.norm), parse_backend(r.backend), cfg.tolerance);
    if (r.classification() == Classification::bidirectional && !r.b_preserving()) vogt_holds = false;
    for (const auto* w : {&r.forward_witness, &r.backward_witness, &r.b_witness}) {
      if (*w && !witness_holds(space, **w)) witnesses_ok = false;
    }
  }
  Json maps = Json::array();
  for (const auto& m : cfg.maps) maps.push_back(to_json(m));
  Json norms = Json::array();
  for (const auto& n : cfg.norms) norms.push_back(to_json(n));
  emit({{"seed", cfg.seed},
        {"config",
         {{"maps", maps},
          {"similarities", cfg.similarities},
          {"norms", norms},
          {"backend", std::string(to_string(cfg.backend))},
          {"quadruples", cfg.quadruples},
          {"triples", cfg.triples}}},
        {"reports", arr},
        {"weak_vogt_holds", vogt_holds},
        {"witnesses_verified", witnesses_ok}},
       o.output);
  if (!o.output.empty()) {
    for (const auto& r : reports) {
      std::cout << r.map << " " << r.norm << ": " << to_string(r.classification())
                << (r.b_preserving() ? ", B preserved" : ", B violated") << "\n";
    }
  }
  return vogt_holds && witnesses_ok ? kTrue : kFalse;
}

struct ClosureOpts {
  std::string relation;
  std::string points;
  int midpoint_depth = 1;
  int max_rounds = 6;
  std::string output;
};

int cmd_closure(const ClosureOpts& o, const SpaceOpts& so, const TruncOpts& to) {
  const Space space = so.make();
  const RelationId id = RelationId::parse(o.relation);
  std::vector<Point> inputs;
  for (const auto& np : read_points(o.points, space)) inputs.push_back(np.point);
  ClosureSpec spec{id, inputs, to.make()};
  spec.midpoint_depth = o.midpoint_depth;
  spec.max_rounds = o.max_rounds;
  const ClosureResult r = close_for(space, spec);
  Json j = to_json(r.universe, r.complete, r.notes);
  j["relation"] = id.to_string();
  emit(j, o.output);
  return r.complete ? kTrue : kFalse;
}

int cmd_expand(const std::string& relation, const TruncOpts& to, bool pretty) {
  const RelationId id = RelationId::parse(relation);
  const Formula f = expand_schema(id, to.make());
  std::cout << print_formula(f) << "\n";
  if (pretty) {
    std::cerr << "parameters:";
    for (const auto& p : schema_parameters(id)) std::cerr << " " << p;
    std::cerr << "\nnodes: " << formula_size(f) << "\n";
  }
  return kTrue;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equidef: definitions of betweenness, midpoint and inequality from equidistance"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "equidef 0.1.0");

  SpaceOpts so;
  TruncOpts to;

  EvalOpts eo;
  auto* eval = app.add_subcommand("eval", "evaluate a formula on points over a finite universe");
  eval->add_option("--formula", eo.formula, "formula text or file")->required();
  eval->add_option("--points", eo.points, "points file (JSON) or inline 'x,y x,y ...' bound in order of first occurrence");
  eval->add_option("--universe", eo.universe, "universe file, or auto (inputs plus relation closures)")
      ->capture_default_str();
  eval->add_option("--impl-default", eo.impl_default,
                   "layer (referenced relations as formula, others as oracle), formula or oracle")
      ->capture_default_str();
  eval->add_option("--impl", eo.impl, "override, e.g. PSI=oracle (repeatable)");
  eval->add_flag("--explain", eo.explain, "print witness/refuter bindings")->capture_default_str();
  eval->add_option("--output", eo.output, "write a JSON report");
  add_space(eval, so);
  add_trunc(eval, to);

  std::string expand_rel;
  bool expand_pretty = false;
  auto* expand = app.add_subcommand("expand", "print the truncated defining formula of a relation");
  expand->add_option("--relation", expand_rel, "relation id, e.g. GAMMA or PSI:2,1")->required();
  expand->add_flag("--stats", expand_pretty, "print parameters and size to stderr")->capture_default_str();
  add_trunc(expand, to);

  VerifyOpts vo;
  SpaceOpts vso;
  vso.backend = "auto";
  auto* verify = app.add_subcommand("verify-layer", "compare a relation's formula with its oracle on samples");
  verify->add_option("--relation", vo.relation, "relation id, e.g. GAMMA, BETA:3, B")->required();
  verify->add_option("--samples", vo.samples, "number of sampled instances")->capture_default_str();
  verify->add_option("--seed", vo.seed, "PRNG seed")->required();
  verify->add_option("--sampler", vo.sampler, "default or midpoint (a, mid(a,c), c)")->capture_default_str();
  verify->add_option("--output", vo.output, "write the JSON report here instead of stdout");
  add_space(verify, vso, true);
  add_trunc(verify, to);

  AxiomOpts ao;
  auto* axioms = app.add_subcommand("check-axioms", "check the congruence axioms (a)-(i) in a coordinate model");
  axioms->add_option("--axioms", ao.axioms, "letters of the axioms to check")->capture_default_str();
  axioms->add_option("--samples", ao.samples, "instantiations per axiom")->capture_default_str();
  axioms->add_option("--chain-cap", ao.chain_cap, "longest Archimedean chain tried")->capture_default_str();
  axioms->add_option("--formula-stride", ao.formula_stride,
                     "axiom (h): evaluate the defining formula of <= every k-th sample (0: never)")
      ->capture_default_str();
  axioms->add_option("--seed", ao.seed, "PRNG seed")->required();
  axioms->add_option("--output", ao.output, "write the JSON report here instead of stdout");
  add_space(axioms, so);
  add_trunc(axioms, to);

  VogtOpts go;
  auto* vogt = app.add_subcommand("vogt", "test equidistance and betweenness preservation of plane maps");
  vogt->add_option("--maps", go.maps, "experiment config file (JSON)");
  vogt->add_option("--map", go.map_names, "similarities, shear, anisotropic, identity or cube_x (repeatable)");
  vogt->add_option("--norms", go.norms, "norms to test (repeatable); default l2 or the config's");
  vogt->add_option("--backend", go.backend, "exact or float")->capture_default_str();
  vogt->add_option("--quadruples", go.quadruples, "quadruples per map and norm")->capture_default_str();
  vogt->add_option("--triples", go.triples, "betweenness triples per map and norm")->capture_default_str();
  auto* vogt_seed = vogt->add_option("--seed", go.seed, "PRNG seed (required unless the config has one)");
  vogt->add_option("--output", go.output, "write the JSON report here instead of stdout");

  ClosureOpts co;
  auto* closure = app.add_subcommand("closure", "build the witness/refuter-closed universe of a relation");
  closure->add_option("--relation", co.relation, "relation id")->required();
  closure->add_option("--points", co.points, "points file (JSON) or inline 'x,y x,y ...'")->required();
  closure->add_option("--midpoint-depth", co.midpoint_depth, "midpoint scaffolding depth for PHI")
      ->capture_default_str();
  closure->add_option("--max-rounds", co.max_rounds, "guard/witness fixpoint rounds")->capture_default_str();
  closure->add_option("--output", co.output, "write the universe here instead of stdout");
  add_space(closure, so);
  add_trunc(closure, to);

  auto* version = app.add_subcommand("version", "print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }

  try {
    if (*eval) return cmd_eval(eo, so, to);
    if (*expand) return cmd_expand(expand_rel, to, expand_pretty);
    if (*verify) return cmd_verify(vo, vso, to);
    if (*axioms) return cmd_axioms(ao, so, to);
    if (*vogt) {
      if (!*vogt_seed && go.maps.empty()) throw CLI::RequiredError("--seed");
      return cmd_vogt(go, static_cast<bool>(*vogt_seed));
    }
    if (*closure) return cmd_closure(co, so, to);
    if (*version) {
      std::cout << "equidef 0.1.0\n";
      return kTrue;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
