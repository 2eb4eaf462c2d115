// One pass/fail line per acceptance criterion. Optional arguments select
// criteria by number: `equidef_acceptance 3 5`.

#include "../support/formula_gen.hpp"
#include "equidef/axioms.hpp"
#include "equidef/closure.hpp"
#include "equidef/eval.hpp"
#include "equidef/io.hpp"
#include "equidef/oracles.hpp"
#include "equidef/parser.hpp"
#include "equidef/verify.hpp"
#include "equidef/vogt.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace equidef;

namespace {

const std::vector<NormSpec> kNorms = {NormSpec::l1(), NormSpec::l2(), NormSpec::linf()};

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (pass) detail << "FAILED: " << why << "; ";
    pass = false;
  }
};

// Independent coordinate re-derivations. Lengths are kept as (value, squared).

struct Len {
  Rational v;
  bool sq;
};

Len len(const NormSpec& n, const Point& a, const Point& b) {
  const Rational dx = abs(a.x.rational() - b.x.rational());
  const Rational dy = abs(a.y.rational() - b.y.rational());
  switch (n.kind) {
    case NormSpec::Kind::l1: return {dx + dy, false};
    case NormSpec::Kind::linf: return {dx > dy ? dx : dy, false};
    default: return {dx * dx + dy * dy, true};
  }
}

// sign of d1 - q d2
int cmp(const Len& d1, const Rational& q, const Len& d2) {
  const Rational lhs = d1.v;
  const Rational rhs = d1.sq ? Rational(q * q * d2.v) : Rational(q * d2.v);
  return sgn(Rational(lhs - rhs));
}

bool same(const Point& a, const Point& b) {
  return a.x.rational() == b.x.rational() && a.y.rational() == b.y.rational();
}

Point lin(const Point& a, const Point& b, const Rational& t) {
  return Point::exact(a.x.rational() + t * (b.x.rational() - a.x.rational()),
                      a.y.rational() + t * (b.y.rational() - a.y.rational()));
}

Rational cross3(const Point& a, const Point& b, const Point& c) {
  return (b.x.rational() - a.x.rational()) * (c.y.rational() - a.y.rational()) -
         (b.y.rational() - a.y.rational()) * (c.x.rational() - a.x.rational());
}

Rational pow2inv(int k) {
  Rational q(1, mpz_class(1) << k);
  q.canonicalize();
  return q;
}

bool ref_gamma(const NormSpec& n, const Point& a, const Point& b, const Point& c) {
  if (same(a, b) || same(b, c) || same(a, c)) return false;
  const Len ab = len(n, a, b), bc = len(n, b, c), ac = len(n, a, c);
  if (!ab.sq) return ab.v + bc.v == ac.v;
  const Rational t = ac.v - ab.v - bc.v;
  return t >= 0 && t * t == 4 * ab.v * bc.v;
}

// b = a + t (c - a) solved for t from one coordinate, then checked on both.
bool ref_between(const Point& a, const Point& b, const Point& c) {
  if (same(a, c)) return same(a, b);
  const Rational dx = c.x.rational() - a.x.rational(), dy = c.y.rational() - a.y.rational();
  const Rational t = dx != 0 ? Rational((b.x.rational() - a.x.rational()) / dx)
                             : Rational((b.y.rational() - a.y.rational()) / dy);
  return t >= 0 && t <= 1 && same(lin(a, c, t), b);
}

bool reference(const NormSpec& n, const RelationId& id, const std::vector<Point>& p) {
  switch (id.kind) {
    case RelationKind::equiv2: return cmp(len(n, p[0], p[1]), 2, len(n, p[2], p[3])) == 0;
    case RelationKind::phi:
      return cmp(len(n, p[2], p[0]), 1, len(n, p[2], p[1])) == 0 &&
             cmp(len(n, p[0], p[1]), 2, len(n, p[2], p[0])) == 0;
    case RelationKind::midpoint:
      return !same(p[0], p[2]) && same(lin(p[0], p[2], Rational(1, 2)), p[1]);
    case RelationKind::alpha: return !same(p[0], p[1]) && same(lin(p[0], p[1], id.index(0)), p[2]);
    case RelationKind::beta: return !same(p[0], p[1]) && same(lin(p[0], p[1], pow2inv(id.index(0))), p[2]);
    case RelationKind::psi: {
      if (same(p[0], p[1]) || same(p[2], p[3])) return false;
      const Rational unit = pow2inv(id.index(1));
      const Len ab = len(n, p[0], p[1]), cd = len(n, p[2], p[3]);
      return cmp(cd, (id.index(0) - 1) * unit, ab) >= 0 && cmp(cd, (id.index(0) + 1) * unit, ab) <= 0;
    }
    case RelationKind::gamma: return ref_gamma(n, p[0], p[1], p[2]);
    case RelationKind::between: return ref_between(p[0], p[1], p[2]);
    case RelationKind::delta: return cmp(len(n, p[0], p[2]), id.index(0), len(n, p[0], p[1])) <= 0;
    case RelationKind::neq: return !same(p[0], p[1]);
    case RelationKind::le: return cmp(len(n, p[0], p[1]), 1, len(n, p[2], p[3])) <= 0;
    case RelationKind::collinear: return cross3(p[0], p[1], p[2]) == 0;
    case RelationKind::parallelogram:
      return same(Point::exact(p[1].x.rational() - p[0].x.rational(), p[1].y.rational() - p[0].y.rational()),
                  Point::exact(p[2].x.rational() - p[3].x.rational(), p[2].y.rational() - p[3].y.rational())) &&
             cross3(p[0], p[1], p[2]) != 0;
  }
  return false;
}

RelationId random_id(Sampler& s, RelationKind kind) {
  switch (kind) {
    case RelationKind::phi: return RelationId(kind, {0});
    case RelationKind::alpha: return RelationId(kind, {static_cast<int>(s.integer(1, 6))});
    case RelationKind::beta: return RelationId(kind, {static_cast<int>(s.integer(1, 4))});
    case RelationKind::psi:
      return RelationId(kind, {static_cast<int>(s.integer(1, 8)), static_cast<int>(s.integer(1, 4))});
    case RelationKind::delta: return RelationId(kind, {static_cast<int>(s.integer(1, 8))});
    default: return RelationId(kind);
  }
}

void criterion1(Outcome& o) {
  std::size_t total = 0, mismatches = 0;
  for (const auto& norm : kNorms) {
    const Space space = Space::exact(norm);
    for (const auto& info : all_relations()) {
      Sampler s(stream_seed(101, static_cast<std::uint64_t>(info.kind) * 8 + static_cast<std::uint64_t>(norm.kind)));
      for (int i = 0; i < 10000; ++i) {
        const RelationId id = random_id(s, info.kind);
        const auto pts = s.instance(space, id);
        ++total;
        if (evaluate_oracle(space, id, std::span<const Point>(pts)) != reference(norm, id, pts)) {
          if (mismatches++ == 0) {
            std::ostringstream m;
            m << norm.name() << " " << id.to_string();
            for (const auto& p : pts) m << " " << p.to_string();
            o.fail(m.str());
          }
        }
      }
    }
  }
  o.detail << total << " instances (10^4 per relation per norm), " << mismatches << " mismatches";
}

std::vector<Point> equality_triple(Sampler& s, const Space& space) {
  const Point a = s.point(space);
  Point c = s.point(space);
  while (same(a, c)) c = s.point(space);
  const Rational tc = ratio(s.integer(1, 15), 16);
  if (space.norm().kind == NormSpec::Kind::l1 && s.coin()) {
    const Rational uc = ratio(s.integer(1, 15), 16);
    const Point b = Point::exact(a.x.rational() + tc * (c.x.rational() - a.x.rational()),
                                 a.y.rational() + uc * (c.y.rational() - a.y.rational()));
    return {a, b, c};
  }
  if (space.norm().kind == NormSpec::Kind::linf && s.coin()) {
    // b off the segment with d(a,b) = t d(a,c), d(b,c) = (1-t) d(a,c)
    const Rational dx = c.x.rational() - a.x.rational(), dy = c.y.rational() - a.y.rational();
    const bool major_x = abs(dx) >= abs(dy);
    const Rational L = major_x ? abs(dx) : abs(dy);
    const Rational h = major_x ? dy : dx;
    const Rational lo = std::max(Rational(-tc * L), Rational(h - (1 - tc) * L));
    const Rational hi = std::min(Rational(tc * L), Rational(h + (1 - tc) * L));
    const Rational w = ratio(s.integer(0, 4), 4);
    const Rational minor = lo + w * (hi - lo);
    const Rational major = tc * (major_x ? dx : dy);
    return {a, major_x ? Point::exact(a.x.rational() + major, a.y.rational() + minor)
                       : Point::exact(a.x.rational() + minor, a.y.rational() + major),
            c};
  }
  return {a, lin(a, c, tc), c};
}

void criterion2(Outcome& o) {
  std::size_t true_count = 0, sampled = 0, bound_violations = 0, eq_triples = 0, eq_failures = 0, per_k = 0;
  for (const auto& norm : kNorms) {
    const Space space = Space::exact(norm);
    TruncationParams t;
    t.K = 6;
    Evaluator ev(space, t, ImplMap::layer(RelationKind::gamma));
    Universe empty(space);
    Sampler s(stream_seed(202, static_cast<std::uint64_t>(norm.kind)));
    const RelationId gamma(RelationKind::gamma);
    for (int i = 0; i < 3000; ++i) {
      const auto p = s.instance(space, gamma);
      if (same(p[0], p[1]) || same(p[1], p[2]) || same(p[0], p[2])) continue;
      ++sampled;
      if (!ev.eval_relation(gamma, p, empty)) continue;
      ++true_count;
      const Distance ab = distance(space, p[0], p[1]), bc = distance(space, p[1], p[2]),
                     ac = distance(space, p[0], p[2]);
      // |ac - ab - bc| <= ab / 32
      const std::vector<LengthTerm> over = {{1, ac}, {Rational(-33, 32), ab}, {-1, bc}};
      const std::vector<LengthTerm> under = {{-1, ac}, {Rational(31, 32), ab}, {1, bc}};
      if (sign_of_combination(space, over) > 0 || sign_of_combination(space, under) > 0) {
        if (bound_violations++ == 0) o.fail(norm.name() + " " + p[0].to_string() + p[1].to_string() + p[2].to_string());
      }
    }
    // exact-equality triples: true at K = 10, hence at every K <= 10; each K checked on the first 50
    TruncationParams t10;
    t10.K = 10;
    Evaluator ev10(space, t10, ImplMap::layer(RelationKind::gamma));
    Sampler e(stream_seed(203, static_cast<std::uint64_t>(norm.kind)));
    for (int i = 0; i < 1000; ++i) {
      const auto p = equality_triple(e, space);
      if (!ref_gamma(norm, p[0], p[1], p[2])) {
        o.fail("constructed triple not metrically between");
        continue;
      }
      ++eq_triples;
      bool ok = ev10.eval_relation(gamma, p, empty);
      if (i < 50) {
        for (int k = 1; k <= 10 && ok; ++k) {
          TruncationParams tk;
          tk.K = k;
          Evaluator evk(space, tk, ImplMap::layer(RelationKind::gamma));
          ok = evk.eval_relation(gamma, p, empty);
          ++per_k;
        }
      }
      if (!ok && eq_failures++ == 0) o.fail("GAMMA false on equality triple " + norm.name());
    }
  }
  o.detail << sampled << " distinct triples, " << true_count << " GAMMA(K=6) true, " << bound_violations
           << " bound violations; " << eq_triples << " equality triples, " << eq_failures << " false at K<=10 ("
           << per_k << " per-K evaluations)";
}

void criterion3(Outcome& o) {
  const Space l2 = Space::exact(NormSpec::l2());
  Sampler s(303);
  std::size_t n = 0, mismatches = 0;
  const RelationId gamma(RelationKind::gamma);
  while (n < 10000) {
    const auto p = s.coin(0.5) ? s.instance(l2, gamma) : s.instance(l2, RelationId(RelationKind::between));
    if (same(p[0], p[1]) || same(p[1], p[2]) || same(p[0], p[2])) continue;
    ++n;
    if (oracle_gamma(l2, p[0], p[1], p[2]) != oracle_between(l2, p[0], p[1], p[2])) ++mismatches;
  }
  if (mismatches) o.fail("L2 gamma/B mismatch");
  const Space linf = Space::exact(NormSpec::linf());
  const std::vector<Point> t = {Point::exact(0, 0), Point::exact(2, 1), Point::exact(4, 0)};
  const bool g = oracle_gamma(linf, t[0], t[1], t[2]);
  const bool b = oracle_between(linf, t[0], t[1], t[2]);
  TruncationParams tp;
  tp.b_depth = 1;
  tp.b_mode = BMode::repaired;
  const RelationId bid(RelationKind::between);
  const ClosureResult cl = close_for(linf, ClosureSpec{bid, t, tp});
  Evaluator ev(linf, tp, ImplMap::layer(RelationKind::between));
  const bool tb = ev.eval_relation(bid, t, cl.universe);
  if (!g || b || tb) o.fail("Linf discrimination triple");
  o.detail << n << " L2 triples, " << mismatches << " mismatches; Linf (0,0),(2,1),(4,0): gamma=" << g
           << " B=" << b << " truncated B=" << tb;
}

void criterion4(Outcome& o) {
  const Space l2 = Space::exact(NormSpec::l2());
  const Point a = Point::exact(0, 0), c = Point::exact(4, 0);
  const std::vector<Point> t = {a, midpoint(a, c), c};
  const RelationId bid(RelationKind::between);
  auto truncated = [&](BMode mode) {
    TruncationParams tp;
    tp.b_mode = mode;
    const ClosureResult cl = close_for(l2, ClosureSpec{bid, t, tp});
    Evaluator ev(l2, tp, ImplMap::layer(RelationKind::between));
    return ev.eval_relation(bid, t, cl.universe);
  };
  const bool strict = truncated(BMode::strict_paper);
  const bool repaired = truncated(BMode::repaired);
  const bool oracle = oracle_between(l2, t[0], t[1], t[2]);
  if (strict || !oracle || !repaired) o.fail("midpoint triple");

  TruncationParams tp;
  tp.b_depth = 3;
  const InstanceSource base = default_instances(tp.b_depth);
  std::size_t dyadic = 0;
  const InstanceSource source = [&](Sampler& s, const Space& sp, const RelationId& id) {
    if (s.coin(0.5)) return base(s, sp, id);
    const Point p = s.point(sp);
    Point q = s.point(sp);
    while (same(p, q)) q = s.point(sp);
    const int level = static_cast<int>(s.integer(0, 3));
    ++dyadic;
    return std::vector<Point>{p, lin(p, q, ratio(s.integer(0, 1L << level), 1L << level)), q};
  };
  Sampler s(404);
  const LayerReport r = verify_layer(bid, l2, s, tp, 10000, source);
  if (!r.passed() || r.band_cases != 0) o.fail("repaired B disagrees with oracle");
  o.detail << "strict=" << strict << " repaired=" << repaired << " oracle=" << oracle << "; repaired B on "
           << r.samples << " L2 samples (" << dyadic << " dyadic-grid b): " << r.agreements << " agree, "
           << r.band_cases << " band, " << r.counterexamples.size() << " counterexamples";
}

void criterion5(Outcome& o) {
  std::vector<std::pair<RelationId, int>> ids = {{RelationId(RelationKind::equiv2), 2},
                                                 {RelationId(RelationKind::gamma), 2},
                                                 {RelationId(RelationKind::neq), 2},
                                                 {RelationId(RelationKind::le), 2}};
  for (int k = 1; k <= 4; ++k) ids.push_back({RelationId(RelationKind::beta, {k}), 2});
  for (int n = 1; n <= 6; ++n) ids.push_back({RelationId(RelationKind::alpha, {n}), 2});
  for (int n = 1; n <= 8; ++n) {
    for (int k = 1; k <= 4; ++k) ids.push_back({RelationId(RelationKind::psi, {n, k}), 2});
  }
  for (int n = 1; n <= 8; ++n) ids.push_back({RelationId(RelationKind::delta, {n}), 2});
  for (int d = 1; d <= 3; ++d) ids.push_back({RelationId(RelationKind::between), d});
  std::size_t runs = 0, samples = 0, band = 0, cx = 0, float_runs = 0, clean = 0, delta1 = 0, delta1_explained = 0;
  for (const auto& norm : kNorms) {
    for (const auto& [id, depth] : ids) {
      const Space space = preferred_space(norm, id);
      TruncationParams tp;
      tp.b_depth = depth;
      Sampler s(stream_seed(505, runs));
      const LayerReport r = verify_layer(id, space, s, tp, 1000);
      ++runs;
      samples += r.samples;
      band += r.band_cases;
      cx += r.counterexamples.size();
      if (!space.is_exact()) ++float_runs;
      if (r.passed()) {
        ++clean;
        continue;
      }
      o.fail(norm.name() + " " + id.to_string() +
             (id.kind == RelationKind::between ? " Bdepth=" + std::to_string(depth) : std::string()));
      if (id.kind == RelationKind::delta && id.index(0) == 1) {
        // a one-step chain reaches exactly the sphere d(x,z) = d(x,y)
        for (const auto& c : r.counterexamples) {
          ++delta1;
          const auto& p = c.inputs;
          if (!c.formula && c.oracle &&
              compare_scaled(space, distance(space, p[0], p[2]), 1, distance(space, p[0], p[1])) < 0) {
            ++delta1_explained;
          }
        }
      }
    }
  }
  o.detail << runs << " layer runs x 1000 samples (" << float_runs << " on float L2), " << clean << " runs clean, "
           << samples << " samples, " << band << " band cases, " << cx << " counterexamples";
  if (delta1) {
    o.detail << " (" << delta1 << " from DELTA:1, " << delta1_explained
             << " of them formula false / oracle true with d(a,c) < d(a,b): the one-step chain formula reads "
                "d(a,c) = d(a,b))";
  }
}

void criterion6(Outcome& o) {
  std::size_t checked = 0, violations = 0, witnesses = 0;
  int max_chain = 0;
  for (const auto& norm : kNorms) {
    const Space space = Space::exact(norm);
    for (char ax : std::string("abcdefghi")) {
      const bool existential = ax == 'b' || ax == 'g' || ax == 'i';
      AxiomOptions opt;
      opt.samples = existential ? 1000 : 100000;
      opt.formula_stride = 500;
      const auto reports = check_axioms(space, 606, opt, std::string(1, ax));
      const AxiomReport& r = reports.front();
      checked += r.checked;
      violations += r.violations.size();
      if (!r.passed()) o.fail(std::string("axiom (") + ax + ") " + norm.name() + ": " + r.violations.front().clause);
      if (existential) {
        witnesses += r.witnesses_verified;
        if (r.witnesses_verified != r.checked || r.checked == 0) {
          o.fail(std::string("axiom (") + ax + ") " + norm.name() + " unverified witnesses");
        }
      }
      if (ax == 'i') max_chain = std::max(max_chain, r.max_chain);
    }
  }
  o.detail << checked << " checked instantiations, " << violations << " violations, " << witnesses
           << " verified witnesses for (b),(g),(i), longest Archimedean chain " << max_chain;
}

void criterion7(Outcome& o) {
  VogtConfig cfg;
  cfg.similarities = true;
  cfg.norms = kNorms;
  cfg.quadruples = 10000;
  cfg.triples = 10000;
  cfg.seed = 707;
  std::size_t maps = 0, eq_viol = 0, b_viol = 0;
  for (const auto& r : run_vogt_experiment(cfg)) {
    ++maps;
    eq_viol += r.forward_violations + r.backward_violations;
    b_viol += r.b_violations;
    if (r.classification() != Classification::bidirectional || !r.b_preserving()) o.fail(r.map + " " + r.norm);
  }
  VogtConfig bad;
  bad.maps = {MapSpec::make_linear(1, 1, 0, 1), MapSpec::make_linear(2, 0, 0, 1)};
  bad.norms = {NormSpec::l2()};
  bad.quadruples = 1000;
  bad.triples = 1000;
  bad.seed = 708;
  const Space l2 = Space::exact(NormSpec::l2());
  std::size_t witnessed = 0;
  for (const auto& r : run_vogt_experiment(bad)) {
    const auto& w = r.forward_witness ? r.forward_witness : r.backward_witness;
    if (r.classification() == Classification::violating && w && witness_holds(l2, *w)) {
      ++witnessed;
    } else {
      o.fail(r.map + " without a verified witness");
    }
  }
  o.detail << maps << " similarity runs (3 norms), " << eq_viol << " equidistance violations, " << b_viol
           << " B violations; " << witnessed << "/2 of shear, anisotropic witnessed in L2";
}

void criterion8(Outcome& o) {
  auto reports = [] {
    std::string out;
    const Space l1 = Space::exact(NormSpec::l1());
    Sampler s(808);
    out += dump(to_json(verify_layer(RelationId(RelationKind::gamma), l1, s, {}, 200)));
    AxiomOptions opt;
    opt.samples = 300;
    for (const auto& r : check_axioms(Space::exact(NormSpec::linf()), 808, opt)) out += dump(to_json(r));
    VogtConfig cfg;
    cfg.similarities = true;
    cfg.maps = {MapSpec::make_linear(1, 1, 0, 1)};
    cfg.norms = {NormSpec::l2()};
    cfg.quadruples = 100;
    cfg.triples = 100;
    cfg.seed = 808;
    for (const auto& r : run_vogt_experiment(cfg)) out += dump(to_json(r));
    const ClosureResult c = close_for(l1, ClosureSpec{RelationId::parse("EQUIV2"),
                                                      {Point::exact(0, 0), Point::exact(3, 1), Point::exact(1, 1),
                                                       Point::exact(Rational(5, 2), 1)},
                                                      {}});
    out += dump(to_json(c.universe, c.complete, c.notes));
    return out;
  };
  const std::string first = reports(), second = reports();
  if (first != second) o.fail("reports differ between identical runs");

  Sampler s(809);
  equidef::testing::FormulaGen gen(s);
  std::size_t fixpoints = 0;
  for (int i = 0; i < 1000; ++i) {
    const Formula f = parse_formula(print_formula(gen.formula(5)));
    const std::string once = print_formula(f);
    const Formula g = parse_formula(once);
    if (print_formula(g) == once && equal(f, g)) {
      ++fixpoints;
    } else if (fixpoints == static_cast<std::size_t>(i)) {
      o.fail("round trip: " + once);
    }
  }
  o.detail << "identical runs byte-equal (" << first.size() << " bytes); " << fixpoints
           << "/1000 parse-print-parse fixpoints";
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"oracle ground truth", criterion1},
      {"gamma truncation bound", criterion2},
      {"strict-convexity discrimination", criterion3},
      {"strict-paper B gap and repaired B", criterion4},
      {"layer verification", criterion5},
      {"axiom suite", criterion6},
      {"Vogt harness", criterion7},
      {"determinism and round trip", criterion8},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::stoi(argv[i]));
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int number = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(number)) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (number == 1 && secs >= 60) o.fail("runtime over 60 s");
    all = all && o.pass;
    std::cout << "criterion " << number << ": " << (o.pass ? "PASS" : "FAIL") << " [" << criteria[i].first << "] "
              << o.detail.str() << " (" << std::fixed;
    std::cout.precision(1);
    std::cout << secs << " s)" << std::endl;
  }
  return all ? 0 : 1;
}
