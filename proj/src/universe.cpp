#include "equidef/universe.hpp"

namespace equidef {

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::input: return "input";
    case Provenance::midpoint_closure: return "midpoint-closure";
    case Provenance::chain_closure: return "chain-closure";
    case Provenance::sphere_witness: return "sphere-witness";
    case Provenance::refuter: return "refuter";
  }
  return "?";
}

Provenance parse_provenance(std::string_view text) {
  for (auto p : {Provenance::input, Provenance::midpoint_closure, Provenance::chain_closure,
                 Provenance::sphere_witness, Provenance::refuter}) {
    if (to_string(p) == text) return p;
  }
  throw GeometryError("unknown provenance tag '" + std::string(text) + "'");
}

Universe::Universe(Space space, std::size_t cap) : space_(std::move(space)), cap_(cap) {}

std::optional<std::size_t> Universe::find(const Point& p) const {
  if (space_.is_exact()) {
    if (!p.x.is_exact() || !p.y.is_exact()) throw BackendMismatch();
    auto it = exact_index_.find({p.x.rational(), p.y.rational()});
    if (it == exact_index_.end()) return std::nullopt;
    return it->second;
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (space_.same_point(points_[i], p)) return i;
  }
  return std::nullopt;
}

bool Universe::add(const Point& p, Provenance tag) {
  const Point q = space_.convert(p);
  if (find(q)) return false;
  if (points_.size() >= cap_) {
    throw UniverseOverflow("universe size cap of " + std::to_string(cap_) + " points exceeded");
  }
  if (space_.is_exact()) exact_index_.emplace(std::make_pair(q.x.rational(), q.y.rational()), points_.size());
  points_.push_back(q);
  tags_.push_back(tag);
  return true;
}

void Universe::add_all(const std::vector<Point>& pts, Provenance tag) {
  for (const auto& p : pts) add(p, tag);
}

void Universe::merge(const Universe& other) {
  for (std::size_t i = 0; i < other.size(); ++i) add(other[i], other.provenance(i));
}

}  // namespace equidef
