#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace equidef {

enum class RelationKind {
  equiv2,
  phi,
  midpoint,
  alpha,
  beta,
  psi,
  gamma,
  between,
  delta,
  neq,
  le,
  collinear,
  parallelogram,
};

class RelationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RelationInfo {
  RelationKind kind;
  std::string_view name;
  int index_count;
  int arity;
  int min_index;  // lower bound shared by every index argument
};

const RelationInfo& relation_info(RelationKind kind);
const std::vector<RelationInfo>& all_relations();
/// Looks up "EQUIV2", "PHI", "M", ..., throws RelationError when unknown.
RelationKind relation_kind_from_name(std::string_view name);

/// A relation of the definitional tower together with its index arguments,
/// e.g. PSI(2,1) or BETA(3).
struct RelationId {
  RelationKind kind = RelationKind::equiv2;
  std::vector<int> indices;

  RelationId() = default;
  RelationId(RelationKind k, std::vector<int> idx = {});

  /// Parses "GAMMA", "PSI:2,1", "BETA:3".
  static RelationId parse(std::string_view text);

  std::string_view name() const { return relation_info(kind).name; }
  int arity() const { return relation_info(kind).arity; }
  int index(std::size_t i) const { return indices.at(i); }
  std::string to_string() const;

  friend bool operator==(const RelationId&, const RelationId&) = default;
  friend auto operator<=>(const RelationId&, const RelationId&) = default;
};

}  // namespace equidef
