#include "equidef/formula.hpp"

#include <algorithm>

namespace equidef {

bool operator==(const Term& a, const Term& b) {
  if (a.is_var() != b.is_var()) return false;
  if (a.is_var()) return a.name == b.name;
  return *a.constant == *b.constant;
}

IndexExpr index_literal(long value) {
  auto node = std::make_shared<IndexExprNode>();
  node->op = IndexExprNode::Op::literal;
  node->value = value;
  return node;
}

IndexExpr index_var(std::string name) {
  auto node = std::make_shared<IndexExprNode>();
  node->op = IndexExprNode::Op::variable;
  node->name = std::move(name);
  return node;
}

IndexExpr index_binary(IndexExprNode::Op op, IndexExpr lhs, IndexExpr rhs) {
  auto node = std::make_shared<IndexExprNode>();
  node->op = op;
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);
  return node;
}

bool equal(const IndexExpr& a, const IndexExpr& b) {
  if (a->op != b->op) return false;
  switch (a->op) {
    case IndexExprNode::Op::literal: return a->value == b->value;
    case IndexExprNode::Op::variable: return a->name == b->name;
    default: return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
  }
}

std::string_view to_string(TruncBound bound) {
  switch (bound) {
    case TruncBound::k_levels: return "K";
    case TruncBound::n_levels: return "N";
    case TruncBound::b_depth: return "Bdepth";
    case TruncBound::chain_max: return "chainMax";
    case TruncBound::phi_depth: return "phiDepth";
  }
  return "?";
}

std::optional<TruncBound> parse_trunc_bound(std::string_view text) {
  for (auto b : {TruncBound::k_levels, TruncBound::n_levels, TruncBound::b_depth, TruncBound::chain_max,
                 TruncBound::phi_depth}) {
    if (to_string(b) == text) return b;
  }
  return std::nullopt;
}

namespace {

void add_term_vars(std::vector<std::string>& out, const std::vector<Term>& terms) {
  for (const auto& t : terms) {
    if (t.is_var()) out.push_back(t.name);
  }
}

void normalize(std::vector<std::string>& vars) {
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
}

Formula finish(FormulaNode node) {
  std::vector<std::string> fv;
  add_term_vars(fv, node.terms);
  for (const auto& child : node.children) fv.insert(fv.end(), child->free_vars.begin(), child->free_vars.end());
  normalize(fv);
  if (node.kind == NodeKind::exists || node.kind == NodeKind::forall) {
    std::erase_if(fv, [&](const std::string& v) {
      return std::find(node.vars.begin(), node.vars.end(), v) != node.vars.end();
    });
  }
  node.free_vars = std::move(fv);
  return std::make_shared<const FormulaNode>(std::move(node));
}

Formula with_terms(NodeKind kind, std::vector<Term> terms) {
  FormulaNode node;
  node.kind = kind;
  node.terms = std::move(terms);
  return finish(std::move(node));
}

Formula with_children(NodeKind kind, std::vector<Formula> children) {
  FormulaNode node;
  node.kind = kind;
  node.children = std::move(children);
  return finish(std::move(node));
}

Formula quantifier(NodeKind kind, std::vector<std::string> vars, Formula body) {
  if (vars.empty()) throw RelationError("quantifier without variables");
  FormulaNode node;
  node.kind = kind;
  node.vars = std::move(vars);
  node.children = {std::move(body)};
  return finish(std::move(node));
}

Formula countable(NodeKind kind, std::string index, long from, TruncBound bound, Formula body) {
  FormulaNode node;
  node.kind = kind;
  node.vars = {std::move(index)};
  node.from = from;
  node.bound = bound;
  node.children = {std::move(body)};
  return finish(std::move(node));
}

}  // namespace

Formula equi(Term a, Term b, Term c, Term d) {
  return with_terms(NodeKind::atom_equi, {std::move(a), std::move(b), std::move(c), std::move(d)});
}

Formula eq(Term a, Term b) { return with_terms(NodeKind::atom_eq, {std::move(a), std::move(b)}); }

Formula negate(Formula f) { return with_children(NodeKind::negation, {std::move(f)}); }

Formula conj(std::vector<Formula> parts) { return with_children(NodeKind::conjunction, std::move(parts)); }

Formula disj(std::vector<Formula> parts) { return with_children(NodeKind::disjunction, std::move(parts)); }

Formula implies(Formula lhs, Formula rhs) {
  return with_children(NodeKind::implication, {std::move(lhs), std::move(rhs)});
}

Formula exists(std::vector<std::string> vars, Formula body) {
  return quantifier(NodeKind::exists, std::move(vars), std::move(body));
}

Formula forall(std::vector<std::string> vars, Formula body) {
  return quantifier(NodeKind::forall, std::move(vars), std::move(body));
}

Formula big_and(std::string index, long from, TruncBound bound, Formula body) {
  return countable(NodeKind::big_and, std::move(index), from, bound, std::move(body));
}

Formula big_or(std::string index, long from, TruncBound bound, Formula body) {
  return countable(NodeKind::big_or, std::move(index), from, bound, std::move(body));
}

Formula schema_ref(RelationKind kind, std::vector<IndexExpr> index_args, std::vector<Term> terms) {
  const auto& info = relation_info(kind);
  if (static_cast<int>(index_args.size()) != info.index_count || static_cast<int>(terms.size()) != info.arity) {
    throw RelationError("arity mismatch for " + std::string(info.name) + ": expected " +
                        std::to_string(info.index_count) + " index argument(s) and " + std::to_string(info.arity) +
                        " term(s), got " + std::to_string(index_args.size()) + " and " + std::to_string(terms.size()));
  }
  FormulaNode node;
  node.kind = NodeKind::schema_ref;
  node.relation = kind;
  node.index_args = std::move(index_args);
  node.terms = std::move(terms);
  return finish(std::move(node));
}

Formula ref(const RelationId& id, const std::vector<std::string>& vars) {
  std::vector<IndexExpr> idx;
  for (int i : id.indices) idx.push_back(index_literal(i));
  std::vector<Term> terms;
  for (const auto& v : vars) terms.push_back(Term::var(v));
  return schema_ref(id.kind, std::move(idx), std::move(terms));
}

bool equal(const Formula& a, const Formula& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind || a->terms != b->terms || a->vars != b->vars || a->from != b->from ||
      a->children.size() != b->children.size() || a->index_args.size() != b->index_args.size()) {
    return false;
  }
  if ((a->kind == NodeKind::big_and || a->kind == NodeKind::big_or) && a->bound != b->bound) return false;
  if (a->kind == NodeKind::schema_ref && a->relation != b->relation) return false;
  for (std::size_t i = 0; i < a->index_args.size(); ++i) {
    if (!equal(a->index_args[i], b->index_args[i])) return false;
  }
  for (std::size_t i = 0; i < a->children.size(); ++i) {
    if (!equal(a->children[i], b->children[i])) return false;
  }
  return true;
}

namespace {

void collect_in_order(const FormulaNode& f, std::vector<std::string>& bound, std::vector<std::string>& out) {
  auto seen = [](const std::vector<std::string>& v, const std::string& x) {
    return std::find(v.begin(), v.end(), x) != v.end();
  };
  for (const auto& t : f.terms) {
    if (t.is_var() && !seen(bound, t.name) && !seen(out, t.name)) out.push_back(t.name);
  }
  const bool binds = f.kind == NodeKind::exists || f.kind == NodeKind::forall;
  if (binds) bound.insert(bound.end(), f.vars.begin(), f.vars.end());
  for (const auto& c : f.children) collect_in_order(*c, bound, out);
  if (binds) bound.resize(bound.size() - f.vars.size());
}

}  // namespace

std::vector<std::string> free_vars_in_order(const Formula& f) {
  std::vector<std::string> bound, out;
  collect_in_order(*f, bound, out);
  return out;
}

std::size_t formula_size(const Formula& f) {
  std::size_t n = 1;
  for (const auto& c : f->children) n += formula_size(c);
  return n;
}

}  // namespace equidef
