#include "equidef/parser.hpp"

#include <cctype>
#include <charconv>

namespace equidef {

ParseError::ParseError(const std::string& message, int line, int column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

struct Sexp {
  bool is_list = false;
  std::string atom;
  std::vector<Sexp> items;
  int line = 1;
  int column = 1;
};

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  Sexp read_top() {
    skip_space();
    if (at_end()) throw ParseError("empty formula", line_, column_);
    Sexp result = read();
    skip_space();
    if (!at_end()) throw ParseError("unexpected trailing input", line_, column_);
    return result;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (!at_end()) {
      const char ch = text_[pos_];
      if (ch == ';') {
        while (!at_end() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        advance();
      } else {
        break;
      }
    }
  }

  Sexp read() {
    skip_space();
    if (at_end()) throw ParseError("unexpected end of input", line_, column_);
    Sexp node;
    node.line = line_;
    node.column = column_;
    const char ch = text_[pos_];
    if (ch == ')') throw ParseError("unexpected ')'", line_, column_);
    if (ch == '(') {
      node.is_list = true;
      advance();
      while (true) {
        skip_space();
        if (at_end()) throw ParseError("unbalanced '(' opened here", node.line, node.column);
        if (text_[pos_] == ')') {
          advance();
          break;
        }
        node.items.push_back(read());
      }
      return node;
    }
    while (!at_end()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ';') break;
      node.atom.push_back(c);
      advance();
    }
    return node;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

[[noreturn]] void fail(const Sexp& at, const std::string& message) { throw ParseError(message, at.line, at.column); }

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')) return false;
  }
  return true;
}

std::optional<long> as_integer(const std::string& s) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

const std::string& head_of(const Sexp& s) {
  if (!s.is_list || s.items.empty() || s.items[0].is_list) fail(s, "expected a form like (head ...)");
  return s.items[0].atom;
}

Term to_term(const Sexp& s) {
  if (!s.is_list) {
    if (!is_identifier(s.atom)) fail(s, "expected a variable name, got '" + s.atom + "'");
    return Term::var(s.atom);
  }
  if (head_of(s) != "pt" || s.items.size() != 3 || s.items[1].is_list || s.items[2].is_list) {
    fail(s, "expected a point constant (pt x y)");
  }
  try {
    return Term::point(Point::exact(parse_rational(s.items[1].atom), parse_rational(s.items[2].atom)));
  } catch (const GeometryError& e) {
    fail(s, e.what());
  }
}

IndexExpr to_index(const Sexp& s) {
  if (!s.is_list) {
    if (auto v = as_integer(s.atom)) return index_literal(*v);
    if (is_identifier(s.atom)) return index_var(s.atom);
    fail(s, "expected an index expression, got '" + s.atom + "'");
  }
  const std::string& op = head_of(s);
  if (s.items.size() != 3) fail(s, "index operator '" + op + "' takes two operands");
  IndexExprNode::Op code;
  if (op == "+") {
    code = IndexExprNode::Op::add;
  } else if (op == "-") {
    code = IndexExprNode::Op::sub;
  } else if (op == "*") {
    code = IndexExprNode::Op::mul;
  } else if (op == "^") {
    code = IndexExprNode::Op::pow;
  } else {
    fail(s, "unknown index operator '" + op + "'");
  }
  return index_binary(code, to_index(s.items[1]), to_index(s.items[2]));
}

Formula to_formula(const Sexp& s);

std::vector<Term> terms_of(const Sexp& s, std::size_t first, std::size_t count) {
  if (s.items.size() != first + count) {
    fail(s, "'" + head_of(s) + "' expects " + std::to_string(count) + " term(s), got " +
                std::to_string(s.items.size() - first));
  }
  std::vector<Term> out;
  for (std::size_t i = first; i < s.items.size(); ++i) out.push_back(to_term(s.items[i]));
  return out;
}

std::vector<std::string> var_list(const Sexp& s) {
  if (!s.is_list || s.items.empty()) fail(s, "expected a non-empty variable list (x ...)");
  std::vector<std::string> vars;
  for (const auto& item : s.items) {
    if (item.is_list || !is_identifier(item.atom)) fail(item, "expected a variable name");
    vars.push_back(item.atom);
  }
  return vars;
}

Formula to_countable(const Sexp& s, bool conjunctive) {
  // (bigand k [from] [bound] body)
  if (s.items.size() < 3 || s.items.size() > 5) fail(s, "expected (" + head_of(s) + " var [from] [bound] body)");
  const Sexp& var = s.items[1];
  if (var.is_list || !is_identifier(var.atom)) fail(var, "expected an index variable");
  long from = 1;
  TruncBound bound = conjunctive ? TruncBound::k_levels : TruncBound::n_levels;
  for (std::size_t i = 2; i + 1 < s.items.size(); ++i) {
    const Sexp& opt = s.items[i];
    if (opt.is_list) fail(opt, "expected a start index or a bound name");
    if (auto v = as_integer(opt.atom); v && i == 2) {
      from = *v;
    } else if (auto b = parse_trunc_bound(opt.atom)) {
      bound = *b;
    } else {
      fail(opt, "expected a start index or one of K, N, Bdepth, chainMax, phiDepth");
    }
  }
  Formula body = to_formula(s.items.back());
  return conjunctive ? big_and(var.atom, from, bound, std::move(body)) : big_or(var.atom, from, bound, std::move(body));
}

Formula to_schema_ref(const Sexp& s) {
  if (s.items.size() < 2 || s.items[1].is_list) fail(s, "expected (rel NAME idx... terms...)");
  RelationKind kind;
  try {
    kind = relation_kind_from_name(s.items[1].atom);
  } catch (const RelationError& e) {
    fail(s.items[1], e.what());
  }
  const auto& info = relation_info(kind);
  const std::size_t expected = 2 + static_cast<std::size_t>(info.index_count + info.arity);
  if (s.items.size() != expected) {
    fail(s, "arity mismatch: " + std::string(info.name) + " takes " + std::to_string(info.index_count) +
                " index argument(s) and " + std::to_string(info.arity) + " term(s)");
  }
  std::vector<IndexExpr> idx;
  for (int i = 0; i < info.index_count; ++i) idx.push_back(to_index(s.items[2 + static_cast<std::size_t>(i)]));
  std::vector<Term> terms;
  for (std::size_t i = 2 + static_cast<std::size_t>(info.index_count); i < s.items.size(); ++i) {
    terms.push_back(to_term(s.items[i]));
  }
  return schema_ref(kind, std::move(idx), std::move(terms));
}

Formula to_formula(const Sexp& s) {
  const std::string& head = head_of(s);
  if (head == "equi") {
    auto t = terms_of(s, 1, 4);
    return equi(t[0], t[1], t[2], t[3]);
  }
  if (head == "=") {
    auto t = terms_of(s, 1, 2);
    return eq(t[0], t[1]);
  }
  if (head == "and" || head == "or") {
    std::vector<Formula> parts;
    for (std::size_t i = 1; i < s.items.size(); ++i) parts.push_back(to_formula(s.items[i]));
    return head == "and" ? conj(std::move(parts)) : disj(std::move(parts));
  }
  if (head == "not") {
    if (s.items.size() != 2) fail(s, "'not' takes one formula");
    return negate(to_formula(s.items[1]));
  }
  if (head == "implies") {
    if (s.items.size() != 3) fail(s, "'implies' takes two formulas");
    return implies(to_formula(s.items[1]), to_formula(s.items[2]));
  }
  if (head == "exists" || head == "forall") {
    if (s.items.size() != 3) fail(s, "expected (" + head + " (vars...) body)");
    auto vars = var_list(s.items[1]);
    auto body = to_formula(s.items[2]);
    return head == "exists" ? exists(std::move(vars), std::move(body)) : forall(std::move(vars), std::move(body));
  }
  if (head == "bigand") return to_countable(s, true);
  if (head == "bigor") return to_countable(s, false);
  if (head == "rel") return to_schema_ref(s);
  fail(s.items[0], "unknown form '" + head + "'");
}

void print_to(std::string& out, const Formula& f);

void print_list(std::string& out, std::string_view head, const std::vector<Formula>& parts) {
  out += '(';
  out += head;
  for (const auto& p : parts) {
    out += ' ';
    print_to(out, p);
  }
  out += ')';
}

void print_to(std::string& out, const Formula& f) {
  switch (f->kind) {
    case NodeKind::atom_equi:
    case NodeKind::atom_eq: {
      out += f->kind == NodeKind::atom_equi ? "(equi" : "(=";
      for (const auto& t : f->terms) out += ' ' + print_term(t);
      out += ')';
      return;
    }
    case NodeKind::negation: print_list(out, "not", f->children); return;
    case NodeKind::conjunction: print_list(out, "and", f->children); return;
    case NodeKind::disjunction: print_list(out, "or", f->children); return;
    case NodeKind::implication: print_list(out, "implies", f->children); return;
    case NodeKind::exists:
    case NodeKind::forall: {
      out += f->kind == NodeKind::exists ? "(exists (" : "(forall (";
      for (std::size_t i = 0; i < f->vars.size(); ++i) {
        if (i) out += ' ';
        out += f->vars[i];
      }
      out += ") ";
      print_to(out, f->children[0]);
      out += ')';
      return;
    }
    case NodeKind::big_and:
    case NodeKind::big_or: {
      const bool conjunctive = f->kind == NodeKind::big_and;
      out += conjunctive ? "(bigand " : "(bigor ";
      out += f->vars[0];
      const TruncBound default_bound = conjunctive ? TruncBound::k_levels : TruncBound::n_levels;
      if (f->from != 1 || f->bound != default_bound) out += ' ' + std::to_string(f->from);
      if (f->bound != default_bound) {
        out += ' ';
        out += to_string(f->bound);
      }
      out += ' ';
      print_to(out, f->children[0]);
      out += ')';
      return;
    }
    case NodeKind::schema_ref: {
      out += "(rel ";
      out += relation_info(f->relation).name;
      for (const auto& i : f->index_args) out += ' ' + print_index(i);
      for (const auto& t : f->terms) out += ' ' + print_term(t);
      out += ')';
      return;
    }
  }
}

}  // namespace

Formula parse_formula(std::string_view text) {
  Reader reader(text);
  const Sexp top = reader.read_top();
  try {
    return to_formula(top);
  } catch (const RelationError& e) {
    throw ParseError(e.what(), top.line, top.column);
  }
}

std::string print_term(const Term& t) {
  if (t.is_var()) return t.name;
  return "(pt " + t.constant->x.to_string() + " " + t.constant->y.to_string() + ")";
}

std::string print_index(const IndexExpr& e) {
  switch (e->op) {
    case IndexExprNode::Op::literal: return std::to_string(e->value);
    case IndexExprNode::Op::variable: return e->name;
    case IndexExprNode::Op::add: return "(+ " + print_index(e->lhs) + " " + print_index(e->rhs) + ")";
    case IndexExprNode::Op::sub: return "(- " + print_index(e->lhs) + " " + print_index(e->rhs) + ")";
    case IndexExprNode::Op::mul: return "(* " + print_index(e->lhs) + " " + print_index(e->rhs) + ")";
    case IndexExprNode::Op::pow: return "(^ " + print_index(e->lhs) + " " + print_index(e->rhs) + ")";
  }
  return "?";
}

std::string print_formula(const Formula& f) {
  std::string out;
  print_to(out, f);
  return out;
}

}  // namespace equidef
