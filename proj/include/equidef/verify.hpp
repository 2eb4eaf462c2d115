#pragma once

#include "equidef/closure.hpp"
#include "equidef/eval.hpp"
#include "equidef/sampler.hpp"

#include <functional>
#include <string>
#include <vector>

namespace equidef {

struct Counterexample {
  std::vector<Point> inputs;
  std::vector<std::pair<Point, Provenance>> universe;
  bool formula = false;
  bool oracle = false;
  std::string note;
};

/// Outcome of comparing a relation's truncated formula (lower layers as
/// oracles) with its own oracle.
///
/// Every sample lands in exactly one bucket: agreement, truncation band
/// (formula true, oracle false, and the inputs inside the derived error band
/// of the truncation), or counterexample.
struct LayerReport {
  std::string relation;
  std::string norm;
  std::string backend;
  double tolerance = 0.0;
  TruncationParams trunc;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::size_t agreements = 0;
  std::size_t band_cases = 0;
  std::size_t incomplete_closures = 0;
  std::size_t max_universe = 0;
  std::size_t formula_true = 0;
  std::size_t oracle_true = 0;
  std::vector<Counterexample> counterexamples;

  bool passed() const { return counterexamples.empty(); }
};

using InstanceSource = std::function<std::vector<Point>(Sampler&, const Space&, const RelationId&)>;

/// Default source: Sampler::instance.
InstanceSource default_instances(int b_depth);

/// True when formula-true/oracle-false on these inputs is explained by the
/// truncation alone: for GAMMA, |d(a,c) - d(a,b) - d(b,c)| <= 2^(1-K) d(a,b);
/// for B, b lies within 2^-(Bdepth+1) d(a,c) of a point of the finest chain.
bool in_truncation_band(const Space& space, const RelationId& id, const std::vector<Point>& inputs,
                        const TruncationParams& trunc);

/// Evaluates `id` as formula with every other relation as oracle, over
/// witness/refuter-closed universes of `samples` sampled inputs, and compares
/// with the oracle of `id`. PHI(n >= 1) has no oracle and is refused.
LayerReport verify_layer(const RelationId& id, const Space& space, Sampler& sampler, const TruncationParams& trunc,
                         std::size_t samples, const InstanceSource& source = {});

/// The backend on which verify_layer can run for this norm: exact unless the
/// closure needs L2 sphere witnesses (EQUIV2, PSI, DELTA, LE) or the norm is Lp.
Space preferred_space(const NormSpec& norm, const RelationId& id, double tolerance = Space::kDefaultTolerance);

}  // namespace equidef
