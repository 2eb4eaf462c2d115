#pragma once

#include "equidef/space.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace equidef {

enum class Provenance { input, midpoint_closure, chain_closure, sphere_witness, refuter };

std::string_view to_string(Provenance p);
Provenance parse_provenance(std::string_view text);

class UniverseOverflow : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

/// Finite carrier of the bounded quantifiers: an ordered, duplicate-free set of
/// points (under the space's point identity), each tagged with where it came from.
class Universe {
 public:
  static constexpr std::size_t kDefaultCap = 10000;

  explicit Universe(Space space, std::size_t cap = kDefaultCap);

  const Space& space() const { return space_; }
  std::size_t cap() const { return cap_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Point>& points() const { return points_; }
  Provenance provenance(std::size_t i) const { return tags_[i]; }

  std::optional<std::size_t> find(const Point& p) const;
  bool contains(const Point& p) const { return find(p).has_value(); }

  /// Adds `p` (converted to the space's backend) unless an identical point is
  /// present. Returns true when the universe grew. Throws UniverseOverflow at the cap.
  bool add(const Point& p, Provenance tag);
  void add_all(const std::vector<Point>& pts, Provenance tag);
  void merge(const Universe& other);

 private:
  Space space_;
  std::size_t cap_;
  std::vector<Point> points_;
  std::vector<Provenance> tags_;
  std::map<std::pair<Rational, Rational>, std::size_t> exact_index_;
};

}  // namespace equidef
