#pragma once

#include "equidef/formula.hpp"
#include "equidef/sampler.hpp"

#include <string>
#include <vector>

namespace equidef::testing {

// Random well-formed formulas for parse/print round trips.
class FormulaGen {
 public:
  explicit FormulaGen(Sampler& s) : s_(s) {}

  Formula formula(int depth) {
    const long pick = depth <= 0 ? s_.integer(0, 2) : s_.integer(0, 10);
    switch (pick) {
      case 0: return equi(term(), term(), term(), term());
      case 1: return eq(term(), term());
      case 2: return schema();
      case 3: return negate(formula(depth - 1));
      case 4: return conj(parts(depth));
      case 5: return disj(parts(depth));
      case 6: return implies(formula(depth - 1), formula(depth - 1));
      case 7: return exists(binders(), formula(depth - 1));
      case 8: return forall(binders(), formula(depth - 1));
      case 9: return big_and(index_name(), s_.integer(0, 3), bound(), formula(depth - 1));
      default: return big_or(index_name(), s_.integer(0, 3), bound(), formula(depth - 1));
    }
  }

 private:
  std::vector<Formula> parts(int depth) {
    std::vector<Formula> out;
    const long n = s_.integer(2, 3);
    for (long i = 0; i < n; ++i) out.push_back(formula(depth - 1));
    return out;
  }

  Term term() {
    if (s_.integer(0, 9) == 0) return Term::point(Point::exact(s_.rational(), s_.rational()));
    static const std::vector<std::string> names = {"a", "b", "c", "d", "x", "y", "z1", "m_2"};
    return Term::var(s_.pick(names));
  }

  std::vector<std::string> binders() {
    static const std::vector<std::string> names = {"e", "u", "v", "w", "z"};
    std::vector<std::string> out = {s_.pick(names)};
    if (s_.coin()) out.push_back(out.front() + "2");
    return out;
  }

  std::string index_name() {
    static const std::vector<std::string> names = {"n", "k", "j"};
    return s_.pick(names);
  }

  TruncBound bound() {
    static const std::vector<TruncBound> all = {TruncBound::k_levels, TruncBound::n_levels, TruncBound::b_depth,
                                                TruncBound::chain_max, TruncBound::phi_depth};
    return s_.pick(all);
  }

  IndexExpr index(int depth) {
    const long pick = depth <= 0 ? s_.integer(0, 1) : s_.integer(0, 5);
    if (pick == 0) return index_literal(s_.integer(0, 12));
    if (pick == 1) return index_var(index_name());
    static const std::vector<IndexExprNode::Op> ops = {IndexExprNode::Op::add, IndexExprNode::Op::sub,
                                                       IndexExprNode::Op::mul, IndexExprNode::Op::pow};
    return index_binary(s_.pick(ops), index(depth - 1), index(depth - 1));
  }

  Formula schema() {
    const auto& info = s_.pick(all_relations());
    std::vector<IndexExpr> idx;
    for (int i = 0; i < info.index_count; ++i) idx.push_back(index(2));
    std::vector<Term> terms;
    for (int i = 0; i < info.arity; ++i) terms.push_back(term());
    return schema_ref(info.kind, std::move(idx), std::move(terms));
  }

  Sampler& s_;
};

}  // namespace equidef::testing
