#pragma once

#include "equidef/point.hpp"
#include "equidef/relation.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace equidef {

/// A term: a point variable or a point constant (exact rational coordinates).
struct Term {
  std::string name;                 // empty for constants
  std::optional<Point> constant;    // set for constants

  static Term var(std::string name) { return Term{std::move(name), std::nullopt}; }
  static Term point(Point p) { return Term{{}, std::move(p)}; }
  bool is_var() const { return !constant.has_value(); }

  friend bool operator==(const Term& a, const Term& b);
};

/// Integer expression for the index arguments of schema references, e.g. n + 2^k.
struct IndexExprNode;
using IndexExpr = std::shared_ptr<const IndexExprNode>;

struct IndexExprNode {
  enum class Op { literal, variable, add, sub, mul, pow };
  Op op = Op::literal;
  long value = 0;
  std::string name;
  IndexExpr lhs;
  IndexExpr rhs;
};

IndexExpr index_literal(long value);
IndexExpr index_var(std::string name);
IndexExpr index_binary(IndexExprNode::Op op, IndexExpr lhs, IndexExpr rhs);
bool equal(const IndexExpr& a, const IndexExpr& b);

/// Which truncation bound limits a countable conjunction/disjunction.
enum class TruncBound { k_levels, n_levels, b_depth, chain_max, phi_depth };

std::string_view to_string(TruncBound bound);
std::optional<TruncBound> parse_trunc_bound(std::string_view text);

enum class NodeKind {
  atom_equi,   // t1 t2 == t3 t4
  atom_eq,     // t1 = t2
  negation,
  conjunction,
  disjunction,
  implication,
  exists,
  forall,
  big_and,     // countable conjunction over an index variable
  big_or,      // countable disjunction over an index variable
  schema_ref,  // (rel NAME idx... terms...)
};

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

/// Immutable formula node. Free point variables are computed once, at construction.
struct FormulaNode {
  NodeKind kind = NodeKind::conjunction;
  std::vector<Term> terms;
  std::vector<Formula> children;
  std::vector<std::string> vars;  // quantified variables, or the index variable of big_and/big_or
  long from = 1;
  TruncBound bound = TruncBound::k_levels;
  RelationKind relation = RelationKind::equiv2;
  std::vector<IndexExpr> index_args;

  std::vector<std::string> free_vars;  // sorted, unique
};

Formula equi(Term a, Term b, Term c, Term d);
Formula eq(Term a, Term b);
Formula negate(Formula f);
Formula conj(std::vector<Formula> parts);
Formula disj(std::vector<Formula> parts);
Formula implies(Formula lhs, Formula rhs);
Formula exists(std::vector<std::string> vars, Formula body);
Formula forall(std::vector<std::string> vars, Formula body);
Formula big_and(std::string index, long from, TruncBound bound, Formula body);
Formula big_or(std::string index, long from, TruncBound bound, Formula body);
Formula schema_ref(RelationKind kind, std::vector<IndexExpr> index_args, std::vector<Term> terms);
/// Convenience for a reference with literal indices and variable terms.
Formula ref(const RelationId& id, const std::vector<std::string>& vars);

/// Structural equality.
bool equal(const Formula& a, const Formula& b);

/// Free point variables in order of first occurrence.
std::vector<std::string> free_vars_in_order(const Formula& f);

/// Number of nodes, for reporting.
std::size_t formula_size(const Formula& f);

}  // namespace equidef
