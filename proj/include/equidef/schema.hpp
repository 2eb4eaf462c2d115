#pragma once

#include "equidef/formula.hpp"

#include <string>
#include <vector>

namespace equidef {

/// How the final disjunction of B is read.
///
/// strict_paper: the literal definition; b must be metrically between two
/// consecutive chain points, which fails whenever b is itself a chain point.
/// repaired: additionally accepts b equal to a chain point.
enum class BMode { strict_paper, repaired };

std::string_view to_string(BMode mode);
BMode parse_b_mode(std::string_view text);

/// Finite bounds for the countable conjunctions and disjunctions.
struct TruncationParams {
  int K = 6;            // conjunction over k (GAMMA)
  int N = 64;           // disjunction over n (GAMMA), unless adaptive
  int b_depth = 2;      // conjunction over n (B)
  int chain_max = 8;    // disjunction over n (NEQ)
  int phi_depth = 2;    // conjunction over n (M)
  bool adaptive_n = true;
  BMode b_mode = BMode::repaired;

  /// Throws RelationError unless every bound is in range.
  void validate() const;
  long bound(TruncBound which) const;
};

/// Names of the argument variables of the expansion of `id`, in order.
std::vector<std::string> schema_parameters(const RelationId& id);

/// True when `id` has a defining formula (everything except PARALLELOGRAM).
bool has_expansion(const RelationId& id);

/// The defining formula of `id` over the variables schema_parameters(id).
/// Lower layers appear as schema references; the countable conjunctions and
/// disjunctions stay symbolic except for B, whose chain length depends on n
/// and is unrolled up to trunc.b_depth.
Formula expand_schema(const RelationId& id, const TruncationParams& trunc = {});

/// Relations referenced by the expansion of `kind`.
std::vector<RelationKind> schema_dependencies(RelationKind kind);

}  // namespace equidef
