#pragma once

#include "equidef/sampler.hpp"
#include "equidef/schema.hpp"

#include <string>
#include <utility>
#include <vector>

namespace equidef {

/// A named instantiation of an axiom's variables.
struct Instantiation {
  std::string clause;
  std::vector<std::pair<std::string, Point>> points;
  std::string note;
};

/// Result of checking one congruence axiom in a coordinate model.
///
/// Every sample is exactly one of: checked (possibly producing violations),
/// skipped (degenerate draw excluded by the axiom's guards), not applicable
/// (premises of an existential axiom fail) or incomplete (a bounded search
/// gave up without a verdict).
struct AxiomReport {
  char axiom = 'a';
  std::string norm;
  std::string backend;
  double tolerance = 0.0;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::size_t checked = 0;
  std::size_t skipped = 0;
  std::size_t not_applicable = 0;
  std::size_t incomplete = 0;
  /// Witnesses built for existential axioms that re-validated.
  std::size_t witnesses_verified = 0;
  /// Axiom (h): samples on which the defining formula of <= was compared with the oracle.
  std::size_t formula_checks = 0;
  /// Axiom (i): largest chain length needed.
  int max_chain = 0;
  std::vector<Instantiation> violations;
  /// The first few witness constructions, for inspection.
  std::vector<Instantiation> witnesses;
  std::vector<std::string> notes;

  bool passed() const { return violations.empty(); }
  /// Adds the counters and lists of another report on the same axiom and space.
  void merge(const AxiomReport& other);
};

struct AxiomOptions {
  std::size_t samples = 1000;
  int chain_cap = 64;
  /// Axiom (h): the defining formula is evaluated on every k-th sample (0 disables).
  std::size_t formula_stride = 50;
  TruncationParams trunc;
  /// Witness constructions kept per report.
  std::size_t keep_witnesses = 3;
};

/// ab = ba; ab = cd & ab = ef -> cd = ef; aa = bb; ab = cc -> a = b.
AxiomReport check_axiom_a(const Space& space, Sampler& sampler, const AxiomOptions& opt);
/// Segment transport: d on the ray from a away from c with ad = ab, unique on that ray.
/// On exact L2 the draws are rational-sided triangles so that d stays rational.
AxiomReport check_axiom_b(const Space& space, Sampler& sampler, const AxiomOptions& opt);
/// The affine midpoint of ab (diagonal intersection of a parallelogram on ab) is equidistant from a and b.
AxiomReport check_axiom_c(const Space& space, Sampler& sampler, const AxiomOptions& opt);
/// Opposite sides of a parallelogram are congruent.
AxiomReport check_axiom_d(const Space& space, Sampler& sampler, const AxiomOptions& opt);
/// A parallel to the base of an isosceles triangle cuts off an isosceles triangle.
AxiomReport check_axiom_e(const Space& space, Sampler& sampler, const AxiomOptions& opt);
/// (B(ba'c) | B(bca')) & ba = ba' & B(ba'c') & a'c' = ac -> B(bcc').
AxiomReport check_axiom_f(const Space& space, Sampler& sampler, const AxiomOptions& opt);
/// A triangle with sides p, q, r exists whenever |p - q| <= r <= p + q.
/// Exact L2 runs on the float twin of the space (the apex is irrational in general).
AxiomReport check_axiom_g(const Space& space, Sampler& sampler, const AxiomOptions& opt);
/// Totality of <=, plus the defining formula of <= against its oracle on a
/// refuter-closed universe. The formula part of exact L2 runs on the float twin.
AxiomReport check_axiom_h(const Space& space, Sampler& sampler, const AxiomOptions& opt);
/// Archimedean axiom with translate chains x_{i+1} = x_i + (b - a) and rungs
/// y_i = x_i + w; the least n <= chain_cap with B(x_1 d x_n) must satisfy
/// n <= ceil(t) + 2 where d = x_1 + t (b - a).
AxiomReport check_axiom_i(const Space& space, Sampler& sampler, const AxiomOptions& opt);

AxiomReport check_axiom(char axiom, const Space& space, Sampler& sampler, const AxiomOptions& opt);
/// Axioms a..i in order, each from its own stream derived from `seed`.
std::vector<AxiomReport> check_axioms(const Space& space, std::uint64_t seed, const AxiomOptions& opt,
                                      const std::string& which = "abcdefghi");

/// Axiom (i) for one configuration: the least n in [2, chain_cap] such that the
/// chain of length n reaches d, 0 when none does, -1 when d is not on the ray
/// x_1 + t (b - a), t >= 0.
int archimedean_chain_length(const Space& space, const Point& a, const Point& b, const Point& x1, const Point& d,
                             int chain_cap);

/// Segment transport construction: a + (d(a,b) / d(a,c)) (a - c). Requires a != c.
Point transport(const Space& space, const Point& a, const Point& b, const Point& c);

}  // namespace equidef
