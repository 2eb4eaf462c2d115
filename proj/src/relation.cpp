#include "equidef/relation.hpp"

#include <algorithm>
#include <charconv>

namespace equidef {

const std::vector<RelationInfo>& all_relations() {
  static const std::vector<RelationInfo> table = {
      {RelationKind::equiv2, "EQUIV2", 0, 4, 0},
      {RelationKind::phi, "PHI", 1, 3, 0},
      {RelationKind::midpoint, "M", 0, 3, 0},
      {RelationKind::alpha, "ALPHA", 1, 3, 1},
      {RelationKind::beta, "BETA", 1, 3, 1},
      {RelationKind::psi, "PSI", 2, 4, 1},
      {RelationKind::gamma, "GAMMA", 0, 3, 0},
      {RelationKind::between, "B", 0, 3, 0},
      {RelationKind::delta, "DELTA", 1, 3, 1},
      {RelationKind::neq, "NEQ", 0, 2, 0},
      {RelationKind::le, "LE", 0, 4, 0},
      {RelationKind::collinear, "COLLINEAR", 0, 3, 0},
      {RelationKind::parallelogram, "PARALLELOGRAM", 0, 4, 0},
  };
  return table;
}

const RelationInfo& relation_info(RelationKind kind) {
  const auto& table = all_relations();
  return table.at(static_cast<std::size_t>(kind));
}

RelationKind relation_kind_from_name(std::string_view name) {
  for (const auto& info : all_relations()) {
    if (info.name == name) return info.kind;
  }
  throw RelationError("unknown relation '" + std::string(name) + "'");
}

RelationId::RelationId(RelationKind k, std::vector<int> idx) : kind(k), indices(std::move(idx)) {
  const auto& info = relation_info(kind);
  if (static_cast<int>(indices.size()) != info.index_count) {
    throw RelationError(std::string(info.name) + " takes " + std::to_string(info.index_count) + " index argument(s), got " +
                        std::to_string(indices.size()));
  }
  for (int i : indices) {
    if (i < info.min_index) {
      throw RelationError("invalid index " + std::to_string(i) + " for " + std::string(info.name) + " (minimum " +
                          std::to_string(info.min_index) + ")");
    }
  }
}

RelationId RelationId::parse(std::string_view text) {
  const auto colon = text.find(':');
  const RelationKind kind = relation_kind_from_name(text.substr(0, colon));
  std::vector<int> idx;
  if (colon != std::string_view::npos) {
    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view part = rest.substr(0, comma);
      int value = 0;
      auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
      if (ec != std::errc() || ptr != part.data() + part.size()) {
        throw RelationError("malformed index '" + std::string(part) + "' in '" + std::string(text) + "'");
      }
      idx.push_back(value);
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }
  return RelationId(kind, std::move(idx));
}

std::string RelationId::to_string() const {
  std::string out(name());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    out += (i == 0 ? ':' : ',');
    out += std::to_string(indices[i]);
  }
  return out;
}

}  // namespace equidef
