#pragma once

#include "equidef/formula.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace equidef {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Parses the formula DSL:
///
///   (equi a b c d)  (= a b)  (not f)  (and f...)  (or f...)  (implies f g)
///   (exists (x...) f)  (forall (x...) f)
///   (bigand k [from] [bound] f)  (bigor n [from] [bound] f)
///   (rel NAME idx... t...)
///
/// Terms are identifiers or point constants (pt x y) with rational coordinates.
/// Index arguments are integers, index variables, or (+ - * ^) expressions.
/// `bound` names the truncation parameter: K, N, Bdepth, chainMax, phiDepth
/// (default K for bigand, N for bigor); `from` defaults to 1.
Formula parse_formula(std::string_view text);

std::string print_formula(const Formula& f);
std::string print_index(const IndexExpr& e);
std::string print_term(const Term& t);

}  // namespace equidef
