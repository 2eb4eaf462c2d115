#include "equidef/schema.hpp"

namespace equidef {

std::string_view to_string(BMode mode) { return mode == BMode::strict_paper ? "strict-paper" : "repaired"; }

BMode parse_b_mode(std::string_view text) {
  if (text == "strict-paper" || text == "strict") return BMode::strict_paper;
  if (text == "repaired") return BMode::repaired;
  throw RelationError("unknown B mode '" + std::string(text) + "' (expected strict-paper or repaired)");
}

void TruncationParams::validate() const {
  if (K < 1 || N < 1 || b_depth < 1) throw RelationError("K, N and Bdepth must be >= 1");
  if (chain_max < 2) throw RelationError("chainMax must be >= 2");
  if (phi_depth < 0) throw RelationError("phiDepth must be >= 0");
  if (K > 30 || b_depth > 12) throw RelationError("K <= 30 and Bdepth <= 12 are supported");
}

long TruncationParams::bound(TruncBound which) const {
  switch (which) {
    case TruncBound::k_levels: return K;
    case TruncBound::n_levels: return N;
    case TruncBound::b_depth: return b_depth;
    case TruncBound::chain_max: return chain_max;
    case TruncBound::phi_depth: return phi_depth;
  }
  return 0;
}

namespace {

Term v(const std::string& name) { return Term::var(name); }

std::string indexed(const char* stem, int i) { return stem + std::to_string(i); }

Formula rel(RelationKind kind, std::vector<std::string> args) { return ref(RelationId(kind), args); }

Formula rel(RelationKind kind, int index, std::vector<std::string> args) { return ref(RelationId(kind, {index}), args); }

Formula all_of(std::vector<Formula> parts) { return parts.size() == 1 ? parts[0] : conj(std::move(parts)); }

Formula exists_if(std::vector<std::string> vars, Formula body) {
  return vars.empty() ? body : exists(std::move(vars), std::move(body));
}

Formula neq(const std::string& x, const std::string& y) { return rel(RelationKind::neq, {x, y}); }

Formula mid(const std::string& a, const std::string& b, const std::string& c) {
  return rel(RelationKind::midpoint, {a, b, c});
}

// ab =_2 cd: (Ee) ae = cd & be = cd & (Axy)(xa = xb & ya = yx -> (Ez) zc = xy & zd = xy)
Formula equiv2() {
  Formula witness = exists({"e"}, conj({equi(v("a"), v("e"), v("c"), v("d")), equi(v("b"), v("e"), v("c"), v("d"))}));
  Formula guard = conj({equi(v("x"), v("a"), v("x"), v("b")), equi(v("y"), v("a"), v("y"), v("x"))});
  Formula answer = exists({"z"}, conj({equi(v("z"), v("c"), v("x"), v("y")), equi(v("z"), v("d"), v("x"), v("y"))}));
  return conj({witness, forall({"x", "y"}, implies(guard, answer))});
}

Formula phi(int n) {
  Formula phi0 = conj({equi(v("x"), v("a"), v("x"), v("b")), rel(RelationKind::equiv2, {"a", "b", "x", "a"})});
  if (n == 0) return phi0;
  auto phi0_at = [](const std::string& x) { return rel(RelationKind::phi, 0, {"a", "b", x}); };
  Formula body = exists({"x1", "x2", "y"}, conj({phi0_at("x1"), phi0_at("x2"), rel(RelationKind::equiv2, {"x", "y", "x3", "x"}),
                                                 rel(RelationKind::le, {"x", "y", "x1", "x2"})}));
  return conj({rel(RelationKind::phi, n - 1, {"a", "b", "x"}), forall({"x3"}, implies(phi0_at("x3"), body))});
}

Formula midpoint_schema() {
  auto phi_n = schema_ref(RelationKind::phi, {index_var("n")}, {v("a"), v("c"), v("b")});
  return conj({neq("a", "c"), big_and("n", 0, TruncBound::phi_depth, phi_n)});
}

// s_{-1} = a, s_0 = b, s_1 .. s_{n-2} = x1 .. x_{n-2}, s_{n-1} = x
Formula alpha(int n) {
  if (n == 1) return conj({neq("a", "b"), eq(v("x"), v("b"))});
  auto s = [n](int j) -> std::string {
    if (j == -1) return "a";
    if (j == 0) return "b";
    if (j == n - 1) return "x";
    return indexed("x", j);
  };
  std::vector<std::string> vars;
  for (int j = 1; j <= n - 2; ++j) vars.push_back(indexed("x", j));
  std::vector<Formula> chain;
  for (int j = 1; j <= n - 1; ++j) chain.push_back(mid(s(j - 2), s(j - 1), s(j)));
  return conj({neq("a", "b"), exists_if(vars, all_of(chain))});
}

Formula beta(int k) {
  auto y = [k](int i) { return i == k ? std::string("y") : indexed("y", i); };
  std::vector<std::string> vars;
  for (int i = 1; i < k; ++i) vars.push_back(y(i));
  std::vector<Formula> chain{mid("a", y(1), "b")};
  for (int i = 1; i < k; ++i) chain.push_back(mid("a", y(i + 1), y(i)));
  return conj({neq("a", "b"), exists_if(vars, all_of(chain))});
}

Formula psi(int n, int k) {
  Formula body = conj({equi(v("c"), v("e"), v("a"), v("u")), equi(v("d"), v("e"), v("a"), v("v")),
                       rel(RelationKind::beta, k, {"a", "b", "v"}), rel(RelationKind::alpha, n, {"a", "v", "u"})});
  return conj({neq("a", "b"), neq("c", "d"), exists({"e", "u", "v"}, body)});
}

Formula gamma() {
  auto n = index_var("n");
  auto k = index_var("k");
  auto shifted = index_binary(IndexExprNode::Op::add, n,
                              index_binary(IndexExprNode::Op::pow, index_literal(2), k));
  Formula pair = conj({schema_ref(RelationKind::psi, {n, k}, {v("a"), v("b"), v("b"), v("c")}),
                       schema_ref(RelationKind::psi, {shifted, k}, {v("a"), v("b"), v("a"), v("c")})});
  return big_and("k", 1, TruncBound::k_levels, big_or("n", 1, TruncBound::n_levels, pair));
}

Formula between(const TruncationParams& trunc) {
  std::vector<Formula> levels;
  for (int n = 1; n <= trunc.b_depth; ++n) {
    const int count = (1 << n) - 1;
    auto m = [count](int i) -> std::string {
      if (i == 0) return "a";
      if (i == count + 1) return "c";
      return indexed("m", i);
    };
    std::vector<std::string> vars;
    std::vector<Formula> parts;
    for (int i = 1; i <= count; ++i) {
      vars.push_back(m(i));
      parts.push_back(mid(m(i - 1), m(i), m(i + 1)));
    }
    std::vector<Formula> options;
    for (int i = 0; i <= count; ++i) options.push_back(rel(RelationKind::gamma, {m(i), "b", m(i + 1)}));
    if (trunc.b_mode == BMode::repaired) {
      for (int i = 1; i <= count; ++i) options.push_back(eq(v("b"), v(m(i))));
    }
    parts.push_back(disj(std::move(options)));
    levels.push_back(exists(std::move(vars), conj(std::move(parts))));
  }
  return disj({eq(v("a"), v("b")), eq(v("b"), v("c")), all_of(std::move(levels))});
}

Formula delta(int n) {
  auto z = [](int i) { return indexed("z", i); };
  std::vector<std::string> vars;
  for (int i = 1; i < n; ++i) vars.push_back(z(i));
  std::vector<Formula> steps;
  for (int i = 0; i < n; ++i) steps.push_back(equi(v(z(i)), v(z(i + 1)), v("z0"), v("x")));
  return exists_if(vars, all_of(std::move(steps)));
}

Formula distinct() {
  auto d = schema_ref(RelationKind::delta, {index_var("n")}, {v("x"), v("y"), v("z")});
  return forall({"z"}, big_or("n", 2, TruncBound::chain_max, d));
}

// ab <= cd: (Am)(Es) cm = dm -> ab = cs & cm = sm
Formula le() {
  Formula answer = exists({"s"}, conj({equi(v("a"), v("b"), v("c"), v("s")), equi(v("c"), v("m"), v("s"), v("m"))}));
  return forall({"m"}, implies(equi(v("c"), v("m"), v("d"), v("m")), answer));
}

Formula collinear() {
  return disj({rel(RelationKind::between, {"a", "b", "c"}), rel(RelationKind::between, {"b", "c", "a"}),
               rel(RelationKind::between, {"c", "a", "b"})});
}

}  // namespace

std::vector<std::string> schema_parameters(const RelationId& id) {
  switch (id.kind) {
    case RelationKind::equiv2:
    case RelationKind::psi:
    case RelationKind::le:
    case RelationKind::parallelogram: return {"a", "b", "c", "d"};
    case RelationKind::phi:
    case RelationKind::alpha: return {"a", "b", "x"};
    case RelationKind::beta: return {"a", "b", "y"};
    case RelationKind::midpoint:
    case RelationKind::gamma:
    case RelationKind::between:
    case RelationKind::collinear: return {"a", "b", "c"};
    case RelationKind::delta: return {"z0", "x", indexed("z", id.index(0))};
    case RelationKind::neq: return {"x", "y"};
  }
  return {};
}

bool has_expansion(const RelationId& id) { return id.kind != RelationKind::parallelogram; }

Formula expand_schema(const RelationId& id, const TruncationParams& trunc) {
  switch (id.kind) {
    case RelationKind::equiv2: return equiv2();
    case RelationKind::phi: return phi(id.index(0));
    case RelationKind::midpoint: return midpoint_schema();
    case RelationKind::alpha: return alpha(id.index(0));
    case RelationKind::beta: return beta(id.index(0));
    case RelationKind::psi: return psi(id.index(0), id.index(1));
    case RelationKind::gamma: return gamma();
    case RelationKind::between:
      trunc.validate();
      return between(trunc);
    case RelationKind::delta: return delta(id.index(0));
    case RelationKind::neq: return distinct();
    case RelationKind::le: return le();
    case RelationKind::collinear: return collinear();
    case RelationKind::parallelogram: break;
  }
  throw RelationError(id.to_string() + " has no defining formula");
}

std::vector<RelationKind> schema_dependencies(RelationKind kind) {
  using K = RelationKind;
  switch (kind) {
    case K::equiv2: return {};
    case K::phi: return {K::phi, K::equiv2, K::le};
    case K::midpoint: return {K::neq, K::phi};
    case K::alpha:
    case K::beta: return {K::neq, K::midpoint};
    case K::psi: return {K::neq, K::beta, K::alpha};
    case K::gamma: return {K::psi};
    case K::between: return {K::midpoint, K::gamma};
    case K::delta: return {};
    case K::neq: return {K::delta};
    case K::le: return {};
    case K::collinear: return {K::between};
    case K::parallelogram: return {};
  }
  return {};
}

}  // namespace equidef
