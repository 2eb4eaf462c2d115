#include "equidef/eval.hpp"

#include "equidef/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

namespace equidef {

ImplMap ImplMap::all_oracle() {
  ImplMap m;
  for (const auto& info : all_relations()) m.set(info.kind, Impl::oracle);
  return m;
}

ImplMap ImplMap::all_formula() {
  ImplMap m;
  for (const auto& info : all_relations()) m.set(info.kind, Impl::formula);
  m.set(RelationKind::parallelogram, Impl::oracle);
  return m;
}

ImplMap ImplMap::layer(RelationKind kind) {
  ImplMap m = all_oracle();
  m.set(kind, Impl::formula);
  return m;
}

ImplMap& ImplMap::set(RelationKind kind, Impl impl) {
  if (kind == RelationKind::parallelogram && impl == Impl::formula) {
    throw EvalError("PARALLELOGRAM has no defining formula");
  }
  entries_[kind] = impl;
  return *this;
}

ImplMap& ImplMap::erase(RelationKind kind) {
  entries_.erase(kind);
  return *this;
}

ImplMap& ImplMap::apply(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) throw EvalError("expected REL=oracle|formula, got '" + std::string(assignment) + "'");
  const RelationKind kind = relation_kind_from_name(assignment.substr(0, eq));
  const std::string_view what = assignment.substr(eq + 1);
  if (what == "oracle") return set(kind, Impl::oracle);
  if (what == "formula") return set(kind, Impl::formula);
  throw EvalError("expected oracle or formula, got '" + std::string(what) + "'");
}

Impl ImplMap::get(RelationKind kind) const {
  auto it = entries_.find(kind);
  if (it == entries_.end()) throw EvalError("missing impl entry for " + std::string(relation_info(kind).name));
  return it->second;
}

void ImplMap::validate(const std::vector<RelationKind>& roots) const {
  std::set<RelationKind> seen;
  std::vector<std::pair<RelationKind, RelationKind>> stack;
  for (auto r : roots) stack.emplace_back(r, r);
  while (!stack.empty()) {
    auto [kind, parent] = stack.back();
    stack.pop_back();
    if (!seen.insert(kind).second) continue;
    if (!contains(kind)) {
      std::string msg = "missing impl entry for " + std::string(relation_info(kind).name);
      if (parent != kind) msg += " (required by " + std::string(relation_info(parent).name) + ")";
      throw EvalError(msg);
    }
    // PHI(n >= 1) is always expanded, so its dependencies are needed regardless.
    if (get(kind) == Impl::formula || kind == RelationKind::phi) {
      for (auto dep : schema_dependencies(kind)) stack.emplace_back(dep, kind);
    }
  }
}

std::string ImplMap::to_string() const {
  std::string out;
  for (const auto& [kind, impl] : entries_) {
    if (!out.empty()) out += ',';
    out += relation_info(kind).name;
    out += impl == Impl::oracle ? "=oracle" : "=formula";
  }
  return out;
}

namespace {

void collect_relations(const FormulaNode& f, std::set<RelationKind>& out) {
  if (f.kind == NodeKind::schema_ref) out.insert(f.relation);
  for (const auto& c : f.children) collect_relations(*c, out);
}

void flatten_conjuncts(const Formula& f, std::vector<Formula>& out) {
  if (f->kind == NodeKind::conjunction) {
    for (const auto& c : f->children) flatten_conjuncts(c, out);
  } else {
    out.push_back(f);
  }
}

}  // namespace

std::vector<RelationKind> referenced_relations(const Formula& f) {
  std::set<RelationKind> kinds;
  collect_relations(*f, kinds);
  return {kinds.begin(), kinds.end()};
}

struct Evaluator::Plan {
  enum class Mode { exists, forall_guarded, forall_plain };
  Mode mode = Mode::exists;
  std::vector<std::string> order;
  std::vector<Formula> conjuncts;
  std::vector<std::vector<std::size_t>> checks;  // checks[i]: conjuncts complete once order[0..i) are bound
  Formula leaf;                                  // conclusion (guarded) or body (plain)
};

struct Evaluator::Context {
  const Universe* universe = nullptr;
  std::vector<std::pair<const std::string*, const Point*>> env;
  std::size_t frame = 0;
  std::vector<std::pair<const std::string*, long>> indices;
  std::size_t index_frame = 0;
  std::vector<long> n_override;
  std::deque<Point> constants;
  std::map<const Term*, const Point*> constant_cache;
  Trace* trace = nullptr;
  int quantifier_depth = 0;
  int schema_depth = 0;

  const Point* lookup(const std::string& name) const {
    for (std::size_t i = env.size(); i > frame; --i) {
      if (*env[i - 1].first == name) return env[i - 1].second;
    }
    return nullptr;
  }

  const Point& term(const Term& t, const Space& space) {
    if (t.is_var()) {
      const Point* p = lookup(t.name);
      if (!p) throw EvalError("unbound variable '" + t.name + "'");
      return *p;
    }
    auto it = constant_cache.find(&t);
    if (it != constant_cache.end()) return *it->second;
    constants.push_back(space.convert(*t.constant));
    constant_cache.emplace(&t, &constants.back());
    return constants.back();
  }

  bool recording() const { return trace && quantifier_depth == 0 && schema_depth == 0; }
};

Evaluator::Evaluator(Space space, TruncationParams trunc, ImplMap impl)
    : space_(std::move(space)), trunc_(trunc), impl_(std::move(impl)) {
  trunc_.validate();
}

Evaluator::~Evaluator() = default;

const Evaluator::Expansion& Evaluator::expansion_entry(const RelationId& id) {
  auto it = expansions_.find(id);
  if (it != expansions_.end()) return it->second;
  ++stats_.expansions;
  return expansions_.emplace(id, Expansion{expand_schema(id, trunc_), schema_parameters(id)}).first->second;
}

const Formula& Evaluator::expansion(const RelationId& id) { return expansion_entry(id).body; }

long Evaluator::gamma_n_bound(const Point& a, const Point& b, const Point& c) const {
  if (!trunc_.adaptive_n || space_.same_point(a, b)) return trunc_.N;
  const Distance unit = distance(space_, a, b);
  const Distance target = distance(space_, b, c).scaled(Rational(mpz_class(1) << trunc_.K, 1));
  // smallest m >= 0 with m * d(a,b) >= 2^K d(b,c)
  long m = static_cast<long>(std::ceil(target.to_double() / unit.to_double()));
  if (m < 0) m = 0;
  while (m > 0 && compare_scaled(space_, target, Rational(m - 1), unit) <= 0) --m;
  while (compare_scaled(space_, target, Rational(m), unit) > 0) ++m;
  return m + 2;
}

long Evaluator::eval_index(const Context& ctx, const IndexExpr& e) const {
  switch (e->op) {
    case IndexExprNode::Op::literal: return e->value;
    case IndexExprNode::Op::variable:
      for (std::size_t i = ctx.indices.size(); i > ctx.index_frame; --i) {
        if (*ctx.indices[i - 1].first == e->name) return ctx.indices[i - 1].second;
      }
      throw EvalError("unbound index variable '" + e->name + "'");
    default: break;
  }
  const long lhs = eval_index(ctx, e->lhs);
  const long rhs = eval_index(ctx, e->rhs);
  switch (e->op) {
    case IndexExprNode::Op::add: return lhs + rhs;
    case IndexExprNode::Op::sub: return lhs - rhs;
    case IndexExprNode::Op::mul: return lhs * rhs;
    case IndexExprNode::Op::pow: {
      if (rhs < 0 || rhs > 40 || std::abs(lhs) > 1024) throw EvalError("index power out of range");
      long out = 1;
      for (long i = 0; i < rhs; ++i) out *= lhs;
      return out;
    }
    default: break;
  }
  throw EvalError("bad index expression");
}

const Evaluator::Plan& Evaluator::plan_for(const FormulaNode& f) {
  auto it = plans_.find(&f);
  if (it != plans_.end()) return *it->second;

  auto plan = std::make_unique<Plan>();
  const Formula& body = f.children[0];
  if (f.kind == NodeKind::exists) {
    plan->mode = Plan::Mode::exists;
    flatten_conjuncts(body, plan->conjuncts);
  } else if (body->kind == NodeKind::implication) {
    plan->mode = Plan::Mode::forall_guarded;
    flatten_conjuncts(body->children[0], plan->conjuncts);
    plan->leaf = body->children[1];
  } else {
    plan->mode = Plan::Mode::forall_plain;
    plan->leaf = body;
  }

  const std::set<std::string> quantified(f.vars.begin(), f.vars.end());
  std::vector<std::set<std::string>> needs;
  for (const auto& c : plan->conjuncts) {
    std::set<std::string> s;
    for (const auto& v : c->free_vars) {
      if (quantified.count(v)) s.insert(v);
    }
    needs.push_back(std::move(s));
  }

  std::set<std::string> bound;
  std::vector<bool> placed(plan->conjuncts.size(), false);
  auto complete_now = [&](std::vector<std::size_t>& out) {
    for (std::size_t i = 0; i < needs.size(); ++i) {
      if (placed[i]) continue;
      if (std::includes(bound.begin(), bound.end(), needs[i].begin(), needs[i].end())) {
        placed[i] = true;
        out.push_back(i);
      }
    }
  };
  plan->checks.emplace_back();
  complete_now(plan->checks.back());

  std::vector<std::string> remaining;
  for (const auto& v : f.vars) {
    if (std::find(remaining.begin(), remaining.end(), v) == remaining.end()) remaining.push_back(v);
  }
  while (!remaining.empty()) {
    std::size_t best = 0;
    std::pair<int, int> best_score{-1, -1};
    for (std::size_t r = 0; r < remaining.size(); ++r) {
      const auto& var = remaining[r];
      int completes = 0;
      int touches = 0;
      for (std::size_t i = 0; i < needs.size(); ++i) {
        if (placed[i] || !needs[i].count(var)) continue;
        bool all = true;
        bool linked = false;
        for (const auto& w : needs[i]) {
          if (w == var) continue;
          if (bound.count(w)) {
            linked = true;
          } else {
            all = false;
          }
        }
        if (all) ++completes;
        if (linked) ++touches;
      }
      const std::pair<int, int> score{completes, touches};
      if (score > best_score) {
        best_score = score;
        best = r;
      }
    }
    plan->order.push_back(remaining[best]);
    bound.insert(remaining[best]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
    plan->checks.emplace_back();
    complete_now(plan->checks.back());
  }
  return *plans_.emplace(&f, std::move(plan)).first->second;
}

bool Evaluator::eval(const Formula& f, const Universe& universe, const Valuation& valuation, Trace* trace) {
  if (universe.space().backend() != space_.backend()) throw BackendMismatch();
  impl_.validate(referenced_relations(f));
  if (std::none_of(pinned_.begin(), pinned_.end(), [&](const Formula& g) { return g.get() == f.get(); })) {
    pinned_.push_back(f);
  }
  Context ctx;
  ctx.universe = &universe;
  ctx.trace = trace;
  std::vector<Point> values;
  values.reserve(valuation.size());
  for (const auto& [name, p] : valuation) values.push_back(space_.convert(p));
  std::size_t i = 0;
  for (const auto& [name, p] : valuation) ctx.env.emplace_back(&name, &values[i++]);
  return eval_node(ctx, *f);
}

bool Evaluator::eval_relation(const RelationId& id, std::span<const Point> args, const Universe& universe,
                              Trace* trace) {
  if (static_cast<int>(args.size()) != id.arity()) {
    throw RelationError(id.to_string() + " expects " + std::to_string(id.arity()) + " points");
  }
  impl_.validate({id.kind});
  Context ctx;
  ctx.universe = &universe;
  ctx.trace = trace;
  std::vector<Point> values;
  for (const auto& p : args) values.push_back(space_.convert(p));
  std::vector<const Point*> ptrs;
  for (const auto& p : values) ptrs.push_back(&p);
  return eval_relation_in(ctx, id, std::move(ptrs));
}

bool Evaluator::eval_node(Context& ctx, const FormulaNode& f) {
  ++stats_.nodes;
  switch (f.kind) {
    case NodeKind::atom_equi:
      return equidistant(space_, ctx.term(f.terms[0], space_), ctx.term(f.terms[1], space_),
                         ctx.term(f.terms[2], space_), ctx.term(f.terms[3], space_));
    case NodeKind::atom_eq: return space_.same_point(ctx.term(f.terms[0], space_), ctx.term(f.terms[1], space_));
    case NodeKind::negation: return !eval_node(ctx, *f.children[0]);
    case NodeKind::conjunction:
      for (const auto& c : f.children) {
        if (!eval_node(ctx, *c)) return false;
      }
      return true;
    case NodeKind::disjunction:
      for (const auto& c : f.children) {
        if (eval_node(ctx, *c)) return true;
      }
      return false;
    case NodeKind::implication: return !eval_node(ctx, *f.children[0]) || eval_node(ctx, *f.children[1]);
    case NodeKind::exists:
    case NodeKind::forall: return eval_quantifier(ctx, f);
    case NodeKind::big_and:
    case NodeKind::big_or: {
      const bool conjunctive = f.kind == NodeKind::big_and;
      long last = trunc_.bound(f.bound);
      if (f.bound == TruncBound::n_levels && !ctx.n_override.empty()) last = ctx.n_override.back();
      const std::string* var = &f.vars[0];
      ctx.indices.emplace_back(var, 0);
      bool result = conjunctive;
      for (long i = f.from; i <= last; ++i) {
        ctx.indices.back().second = i;
        if (eval_node(ctx, *f.children[0]) != conjunctive) {
          result = !conjunctive;
          break;
        }
      }
      ctx.indices.pop_back();
      return result;
    }
    case NodeKind::schema_ref: return eval_schema(ctx, f);
  }
  throw EvalError("unhandled node");
}

bool Evaluator::eval_quantifier(Context& ctx, const FormulaNode& f) {
  const Plan& plan = plan_for(f);
  const auto& points = ctx.universe->points();
  const bool record = ctx.recording();
  const std::size_t base = ctx.env.size();
  ++ctx.quantifier_depth;

  // Returns true when the search stopped early: a witness for exists, a
  // counterexample for forall.
  auto check = [&](std::size_t level) {
    for (std::size_t c : plan.checks[level]) {
      if (!eval_node(ctx, *plan.conjuncts[c])) return false;
    }
    return true;
  };
  auto leaf = [&]() {
    if (plan.mode == Plan::Mode::exists) return true;
    return !eval_node(ctx, *plan.leaf);
  };
  bool stopped = false;
  if (check(0)) {
    if (plan.order.empty()) {
      stopped = leaf();
    } else {
      std::vector<std::size_t> cursor(plan.order.size(), 0);
      for (const auto& v : plan.order) ctx.env.emplace_back(&v, nullptr);
      std::size_t level = 0;
      while (true) {
        if (cursor[level] == points.size()) {
          cursor[level] = 0;
          if (level == 0) break;
          --level;
          continue;
        }
        ctx.env[base + level].second = &points[cursor[level]++];
        if (!check(level + 1)) continue;
        if (level + 1 < plan.order.size()) {
          ++level;
          continue;
        }
        if (leaf()) {
          stopped = true;
          break;
        }
      }
      if (stopped && record && ctx.trace->entries.size() < ctx.trace->limit) {
        TraceEntry entry;
        entry.role = f.kind == NodeKind::exists ? "witness" : "refuter";
        for (std::size_t i = 0; i < plan.order.size(); ++i) {
          entry.bindings.emplace_back(plan.order[i], *ctx.env[base + i].second);
        }
        ctx.trace->entries.push_back(std::move(entry));
      }
      ctx.env.resize(base);
    }
  }
  --ctx.quantifier_depth;
  return f.kind == NodeKind::exists ? stopped : !stopped;
}

bool Evaluator::eval_schema(Context& ctx, const FormulaNode& f) {
  std::vector<int> idx;
  for (const auto& e : f.index_args) {
    const long value = eval_index(ctx, e);
    if (value < 0 || value > (1L << 30)) throw EvalError("index out of range: " + std::to_string(value));
    idx.push_back(static_cast<int>(value));
  }
  const RelationId id(f.relation, std::move(idx));
  std::vector<const Point*> args;
  for (const auto& t : f.terms) args.push_back(&ctx.term(t, space_));
  return eval_relation_in(ctx, id, std::move(args));
}

bool Evaluator::eval_relation_in(Context& ctx, const RelationId& id, std::vector<const Point*> args) {
  const bool as_formula = !has_oracle(id) || impl_.get(id.kind) == Impl::formula;
  if (!as_formula) {
    ++stats_.oracle_calls;
    return evaluate_oracle(space_, id, std::span<const Point* const>(args));
  }
  const Expansion& entry = expansion_entry(id);
  const Formula& body = entry.body;
  const auto& names = entry.params;
  const std::size_t saved_frame = ctx.frame;
  const std::size_t saved_index_frame = ctx.index_frame;
  const std::size_t base = ctx.env.size();
  for (std::size_t i = 0; i < names.size(); ++i) ctx.env.emplace_back(&names[i], args[i]);
  ctx.frame = base;
  ctx.index_frame = ctx.indices.size();
  const bool adaptive = id.kind == RelationKind::gamma;
  if (adaptive) ctx.n_override.push_back(gamma_n_bound(*args[0], *args[1], *args[2]));
  ++ctx.schema_depth;
  bool result = false;
  try {
    result = eval_node(ctx, *body);
  } catch (...) {
    --ctx.schema_depth;
    if (adaptive) ctx.n_override.pop_back();
    ctx.env.resize(base);
    ctx.frame = saved_frame;
    ctx.index_frame = saved_index_frame;
    throw;
  }
  --ctx.schema_depth;
  if (adaptive) ctx.n_override.pop_back();
  ctx.env.resize(base);
  ctx.frame = saved_frame;
  ctx.index_frame = saved_index_frame;
  return result;
}

bool eval(const Formula& f, const Space& space, const Universe& universe, const Valuation& valuation,
          const TruncationParams& trunc, const ImplMap& impl, Trace* trace) {
  Evaluator evaluator(space, trunc, impl);
  return evaluator.eval(f, universe, valuation, trace);
}

}  // namespace equidef
