#pragma once

#include "equidef/relation.hpp"
#include "equidef/space.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace equidef {

/// A linear isometry of the norm with rational entries, acting as
/// (x, y) -> (m11 x + m12 y, m21 x + m22 y).
struct Isometry {
  Rational m11 = 1, m12 = 0, m21 = 0, m22 = 1;
  Point apply(const Point& p) const;
  std::string to_string() const;
};

/// Generators of the norm's linear isometry group used by the samplers:
/// the 8 signed coordinate permutations for every norm, plus rotations by
/// (3/5,4/5), (5/13,12/13), (8/17,15/17) and their reflections for L2.
const std::vector<Isometry>& isometry_generators(const NormSpec& norm);

/// Seeded source of rational points and relation instances. Every draw comes
/// from one mt19937_64 stream, so equal seeds give equal sequences.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }
  std::mt19937_64& engine() { return engine_; }

  long integer(long lo, long hi);
  bool coin(double p = 0.5);
  template <typename T>
  const T& pick(const std::vector<T>& items) {
    return items[static_cast<std::size_t>(integer(0, static_cast<long>(items.size()) - 1))];
  }

  /// p/q with q in {1,2,3,4,5,8} and |p/q| <= range.
  Rational rational(int range = 8);
  /// j / 2^level with |value| <= range.
  Rational dyadic(int range, int level);
  Point point(const Space& space, int range = 8);
  /// A nonzero displacement.
  Point direction(const Space& space, int range = 4);
  Isometry isometry(const NormSpec& norm);
  /// A displacement of norm exactly `length` in a random direction. Rational
  /// for L1, Linf and L2 (Pythagorean directions); normalized doubles for Lp.
  Point vector_of_length(const Space& space, const Rational& length);
  /// A vector with the same norm as v, usually in another direction: a
  /// rescaled random direction when the length is rational, a random rotation
  /// on float L2, an isometry generator otherwise.
  Point congruent_vector(const Space& space, const Point& v);

  /// Arguments for `id`, biased toward instances on both sides of the
  /// relation's boundary (constructed positives, near misses, degenerate
  /// cases, plain random points).
  std::vector<Point> instance(const Space& space, const RelationId& id, int b_depth = 2);

  /// Pairwise-distinct L2 triangle o, p, q whose three side lengths are rational:
  /// p = o + R w1^2, q = o + R' w2^2 with w rational unit complex numbers.
  std::vector<Point> rational_l2_triangle(const Space& space);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Seed of the index-th independent stream of a run (splitmix64 finalizer).
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace equidef
