#pragma once

#include "equidef/schema.hpp"
#include "equidef/universe.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace equidef {

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Whether a schema reference is answered by its oracle or by evaluating its
/// defining formula.
enum class Impl { oracle, formula };

class ImplMap {
 public:
  ImplMap() = default;

  static ImplMap all_oracle();
  /// Every relation as formula, except PARALLELOGRAM which has none.
  static ImplMap all_formula();
  /// `kind` as formula, every other relation as oracle.
  static ImplMap layer(RelationKind kind);

  ImplMap& set(RelationKind kind, Impl impl);
  ImplMap& erase(RelationKind kind);
  /// Applies "PSI=oracle" or "B=formula".
  ImplMap& apply(std::string_view assignment);

  bool contains(RelationKind kind) const { return entries_.count(kind) > 0; }
  /// Throws EvalError when no entry exists.
  Impl get(RelationKind kind) const;

  /// Checks that every relation reachable from `roots` through formula
  /// expansions has an entry.
  void validate(const std::vector<RelationKind>& roots) const;

  std::string to_string() const;

 private:
  std::map<RelationKind, Impl> entries_;
};

using Valuation = std::map<std::string, Point>;

/// Bindings of an outermost quantifier that decided the result: a witness for
/// a true existential, a counterexample for a false universal.
struct TraceEntry {
  std::string role;  // "witness" or "refuter"
  std::vector<std::pair<std::string, Point>> bindings;
};

struct Trace {
  std::vector<TraceEntry> entries;
  std::size_t limit = 16;
};

struct EvalStats {
  std::uint64_t nodes = 0;
  std::uint64_t oracle_calls = 0;
  std::uint64_t expansions = 0;
};

/// Bounded model checker: quantifiers range over a finite universe, countable
/// conjunctions and disjunctions over the truncated index ranges, and schema
/// references dispatch through the ImplMap.
///
/// Expansions and quantifier plans are cached, so one evaluator should be
/// reused across queries with the same space, truncation and ImplMap.
class Evaluator {
 public:
  Evaluator(Space space, TruncationParams trunc, ImplMap impl);
  ~Evaluator();
  Evaluator(const Evaluator&) = delete;
  Evaluator& operator=(const Evaluator&) = delete;

  const Space& space() const { return space_; }
  const TruncationParams& trunc() const { return trunc_; }
  const ImplMap& impl() const { return impl_; }
  const EvalStats& stats() const { return stats_; }

  bool eval(const Formula& f, const Universe& universe, const Valuation& valuation, Trace* trace = nullptr);

  /// Evaluates the relation on `args` according to the ImplMap.
  bool eval_relation(const RelationId& id, std::span<const Point> args, const Universe& universe,
                     Trace* trace = nullptr);

  /// Cached expansion of `id` under this evaluator's truncation.
  const Formula& expansion(const RelationId& id);

  /// The per-query bound used for GAMMA's disjunction over n:
  /// ceil(2^K d(b,c) / d(a,b)) + 2 when adaptive, else N.
  long gamma_n_bound(const Point& a, const Point& b, const Point& c) const;

 private:
  struct Plan;
  struct Context;
  struct Expansion {
    Formula body;
    std::vector<std::string> params;
  };
  friend struct Context;

  bool eval_node(Context& ctx, const FormulaNode& f);
  bool eval_quantifier(Context& ctx, const FormulaNode& f);
  bool eval_schema(Context& ctx, const FormulaNode& f);
  bool eval_relation_in(Context& ctx, const RelationId& id, std::vector<const Point*> args);
  const Expansion& expansion_entry(const RelationId& id);
  const Plan& plan_for(const FormulaNode& f);
  long eval_index(const Context& ctx, const IndexExpr& e) const;

  Space space_;
  TruncationParams trunc_;
  ImplMap impl_;
  EvalStats stats_;
  std::map<RelationId, Expansion> expansions_;
  std::unordered_map<const FormulaNode*, std::unique_ptr<Plan>> plans_;
  std::vector<Formula> pinned_;  // keeps planned user formulas alive
};

/// One-shot convenience wrapper.
bool eval(const Formula& f, const Space& space, const Universe& universe, const Valuation& valuation,
          const TruncationParams& trunc, const ImplMap& impl, Trace* trace = nullptr);

/// Relation kinds referenced anywhere in `f`.
std::vector<RelationKind> referenced_relations(const Formula& f);

}  // namespace equidef
