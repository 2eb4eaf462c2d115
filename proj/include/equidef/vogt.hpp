#pragma once

#include "equidef/sampler.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace equidef {

/// A self-map of the plane.
///
/// Affine kinds act exactly on rational points. `similarity` is
/// p -> scale * iso(p) + translation with iso one of isometry_generators(norm).
/// Named nonlinear families: "cube_x" (x,y) -> (x^3, y) and "constant"
/// (x,y) -> (c1, c2) with params {c1, c2}.
struct MapSpec {
  enum class Kind { translation, linear, similarity, nonlinear, composition };
  Kind kind = Kind::translation;
  std::string name;
  Point translation;
  Rational m11 = 1, m12 = 0, m21 = 0, m22 = 1;
  int isometry = 0;
  Rational scale = 1;
  std::string family;
  std::vector<Rational> params;
  /// Applied right to left: parts.back() first.
  std::vector<MapSpec> parts;

  static MapSpec make_translation(const Point& v);
  static MapSpec make_linear(Rational m11, Rational m12, Rational m21, Rational m22);
  static MapSpec make_similarity(int isometry, Rational scale, const Point& translation);
  static MapSpec make_nonlinear(std::string family, std::vector<Rational> params = {});
  static MapSpec compose(std::vector<MapSpec> parts);

  /// Throws GeometryError for a nonpositive scale, singular linear part or unknown family.
  void validate(const NormSpec& norm) const;
  std::string describe() const;
};

std::string_view to_string(MapSpec::Kind kind);

Point apply_map(const MapSpec& spec, const NormSpec& norm, const Point& p);

/// Inverse image when the map is affine and invertible.
std::optional<Point> apply_inverse(const MapSpec& spec, const NormSpec& norm, const Point& p);

struct PreservationWitness {
  std::string category;
  std::vector<Point> points;
  std::vector<Point> images;
  std::string before;
  std::string after;
};

enum class Classification { bidirectional, forward_only, violating };
std::string_view to_string(Classification c);

struct PreservationReport {
  std::string map;
  std::string norm;
  std::string backend;
  std::uint64_t seed = 0;
  std::size_t quadruples = 0;
  std::size_t equidistant_before = 0;
  std::size_t equidistant_after = 0;
  std::size_t triples = 0;
  std::size_t forward_violations = 0;
  std::size_t backward_violations = 0;
  std::size_t b_violations = 0;
  std::optional<PreservationWitness> forward_witness;
  std::optional<PreservationWitness> backward_witness;
  std::optional<PreservationWitness> b_witness;

  /// Sampling only ever proves violations; `bidirectional` means none found.
  Classification classification() const;
  bool b_preserving() const { return b_violations == 0; }
  void merge(const PreservationReport& other);
};

/// Checks xy = uv -> f(x)f(y) = f(u)f(v) and the converse on n quadruples,
/// most of them constructed with xy = uv (or with equal image lengths, via the
/// inverse, for invertible maps).
PreservationReport check_equidistance_preservation(const Space& space, const MapSpec& spec, Sampler& sampler,
                                                   std::size_t n);

/// Checks B(abc) -> B(f(a)f(b)f(c)) on n triples with b on the segment ac.
PreservationReport check_b_preservation(const Space& space, const MapSpec& spec, Sampler& sampler, std::size_t n);

/// Recomputes the distances / betweenness behind a witness.
bool witness_holds(const Space& space, const PreservationWitness& w);

struct VogtConfig {
  std::vector<MapSpec> maps;
  /// Also run similarity_family(norm) for every norm, before `maps`.
  bool similarities = false;
  std::vector<NormSpec> norms;
  Backend backend = Backend::exact;
  double tolerance = 1e-9;
  std::size_t quadruples = 1000;
  std::size_t triples = 1000;
  std::uint64_t seed = 0;
};

/// One combined report per (map, norm), each from its own derived stream;
/// norm-major order.
std::vector<PreservationReport> run_vogt_experiment(const VogtConfig& config);

/// scale in {1/2, 1, 2, 3} x every isometry generator x 3 fixed translations.
std::vector<MapSpec> similarity_family(const NormSpec& norm);

}  // namespace equidef
