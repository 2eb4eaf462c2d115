#include "equidef/verify.hpp"

#include "equidef/oracles.hpp"
#include "equidef/sphere.hpp"

namespace equidef {

InstanceSource default_instances(int b_depth) {
  return [b_depth](Sampler& s, const Space& space, const RelationId& id) { return s.instance(space, id, b_depth); };
}

bool in_truncation_band(const Space& space, const RelationId& id, const std::vector<Point>& p,
                        const TruncationParams& trunc) {
  switch (id.kind) {
    case RelationKind::gamma: {
      const Point &a = p[0], &b = p[1], &c = p[2];
      if (space.same_point(a, b) || space.same_point(b, c) || space.same_point(a, c)) return false;
      const Rational slack = inverse_power_of_two(trunc.K - 1);
      const Distance ab = distance(space, a, b);
      const Distance bc = distance(space, b, c);
      const Distance ac = distance(space, a, c);
      const LengthTerm over[] = {{Rational(1), ac}, {Rational(-1) - slack, ab}, {Rational(-1), bc}};
      const LengthTerm under[] = {{Rational(-1), ac}, {Rational(1) - slack, ab}, {Rational(1), bc}};
      return sign_of_combination(space, over) <= 0 && sign_of_combination(space, under) <= 0;
    }
    case RelationKind::between: {
      const Point &a = p[0], &b = p[1], &c = p[2];
      const Distance span = distance(space, a, c);
      const int parts = 1 << trunc.b_depth;
      const Rational radius = inverse_power_of_two(trunc.b_depth + 1);
      for (int j = 0; j <= parts; ++j) {
        const Point m = affine_combination(a, c, ratio(j, parts));
        if (compare_scaled(space, distance(space, m, b), radius, span) <= 0) return true;
      }
      return false;
    }
    default: return false;
  }
}

Space preferred_space(const NormSpec& norm, const RelationId& id, double tolerance) {
  if (norm.kind == NormSpec::Kind::lp) return Space::floating(norm, tolerance);
  if (norm.kind == NormSpec::Kind::l2) {
    switch (id.kind) {
      case RelationKind::equiv2:
      case RelationKind::psi:
      case RelationKind::delta:
      case RelationKind::le: return Space::floating(norm, tolerance);
      default: break;
    }
  }
  return Space::exact(norm);
}

LayerReport verify_layer(const RelationId& id, const Space& space, Sampler& sampler, const TruncationParams& trunc,
                         std::size_t samples, const InstanceSource& source) {
  if (!has_oracle(id)) throw RelationError(id.to_string() + " has no oracle and cannot be verified");
  if (!has_expansion(id)) throw RelationError(id.to_string() + " has no defining formula");
  trunc.validate();

  LayerReport report;
  report.relation = id.to_string();
  report.norm = space.norm().name();
  report.backend = std::string(to_string(space.backend()));
  report.tolerance = space.tolerance();
  report.trunc = trunc;
  report.seed = sampler.seed();

  const InstanceSource draw = source ? source : default_instances(trunc.b_depth);
  Evaluator evaluator(space, trunc, ImplMap::layer(id.kind));
  for (std::size_t i = 0; i < samples; ++i) {
    std::vector<Point> inputs = draw(sampler, space, id);
    for (auto& q : inputs) q = space.convert(q);
    ++report.samples;
    const bool oracle = evaluate_oracle(space, id, inputs);
    ClosureSpec spec{id, inputs, trunc};
    std::string note;
    bool formula = false;
    ClosureResult closure{Universe(space), true, {}};
    try {
      closure = close_for(space, spec);
      formula = evaluator.eval_relation(id, inputs, closure.universe);
    } catch (const ExactRefused&) {
      throw;
    } catch (const GeometryError& e) {
      note = std::string("closure failed: ") + e.what();
      closure.complete = false;
    }
    if (!closure.complete) ++report.incomplete_closures;
    report.max_universe = std::max(report.max_universe, closure.universe.size());
    report.formula_true += formula ? 1 : 0;
    report.oracle_true += oracle ? 1 : 0;
    if (formula == oracle && note.empty()) {
      ++report.agreements;
      continue;
    }
    if (formula && !oracle && in_truncation_band(space, id, inputs, trunc)) {
      ++report.band_cases;
      continue;
    }
    Counterexample cx;
    cx.inputs = inputs;
    for (std::size_t j = 0; j < closure.universe.size(); ++j) {
      cx.universe.emplace_back(closure.universe[j], closure.universe.provenance(j));
    }
    cx.formula = formula;
    cx.oracle = oracle;
    for (const auto& n : closure.notes) note += (note.empty() ? "" : "; ") + n;
    cx.note = note;
    report.counterexamples.push_back(std::move(cx));
  }
  return report;
}

}  // namespace equidef
