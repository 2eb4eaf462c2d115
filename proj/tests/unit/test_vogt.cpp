#include "common.hpp"

#include "equidef/io.hpp"
#include "equidef/oracles.hpp"
#include "equidef/vogt.hpp"

using namespace equidef;
using namespace equidef::testing;

TEST(Vogt, ApplyMap) {
  const NormSpec n = NormSpec::l2();
  EXPECT_EQ(apply_map(MapSpec::make_translation(P(1, 2)), n, P(0, 0)), P(1, 2));
  EXPECT_EQ(apply_map(MapSpec::make_similarity(0, 2, P(0, 0)), n, P(1, 1)), P(2, 2));
  const MapSpec shear = MapSpec::make_linear(1, 1, 0, 1);
  EXPECT_EQ(apply_map(shear, n, P(1, 1)), P(2, 1));
  EXPECT_EQ(apply_inverse(shear, n, P(2, 1)), P(1, 1));
  EXPECT_EQ(apply_map(MapSpec::make_nonlinear("cube_x"), n, P(2, 1)), P(8, 1));
  EXPECT_FALSE(apply_inverse(MapSpec::make_nonlinear("constant", {1, 2}), n, P(1, 2)).has_value());
  const MapSpec comp = MapSpec::compose({MapSpec::make_translation(P(1, 0)), MapSpec::make_similarity(0, 3, P(0, 0))});
  EXPECT_EQ(apply_map(comp, n, P(1, 1)), P(4, 3));
  EXPECT_THROW(MapSpec::make_linear(1, 1, 1, 1).validate(n), GeometryError);
  EXPECT_THROW(MapSpec::make_similarity(0, 0, P(0, 0)).validate(n), GeometryError);
}

TEST(Vogt, ShearWitness) {
  const Space s = l2();
  const PreservationWitness w{"forward", {P(0, 0), P(1, 0), P(0, 0), P(0, 1)}, {P(0, 0), P(1, 0), P(0, 0), P(1, 1)},
                              "", ""};
  EXPECT_TRUE(witness_holds(s, w));
  Sampler sm(1);
  const auto r = check_equidistance_preservation(s, MapSpec::make_linear(1, 1, 0, 1), sm, 1000);
  EXPECT_EQ(r.classification(), Classification::violating);
  ASSERT_TRUE(r.forward_witness.has_value());
  EXPECT_TRUE(witness_holds(s, *r.forward_witness));
}

TEST(Vogt, LinfSignedPermutation) {
  const Space s = linf();
  // (x,y) -> (y,-x)
  Sampler sm(2);
  const auto r = check_equidistance_preservation(s, MapSpec::make_linear(0, 1, -1, 0), sm, 2000);
  EXPECT_EQ(r.forward_violations + r.backward_violations, 0u);
  EXPECT_EQ(r.classification(), Classification::bidirectional);
}

TEST(Vogt, SimilaritiesPreserve) {
  for (const NormSpec& n : {NormSpec::l1(), NormSpec::l2(), NormSpec::linf()}) {
    const Space s = Space::exact(n);
    for (const MapSpec& m : similarity_family(n)) {
      Sampler sm(stream_seed(4, m.isometry));
      PreservationReport r = check_equidistance_preservation(s, m, sm, 40);
      r.merge(check_b_preservation(s, m, sm, 40));
      EXPECT_EQ(r.classification(), Classification::bidirectional) << m.describe();
      EXPECT_TRUE(r.b_preserving()) << m.describe();
    }
  }
}

TEST(Vogt, CubeX) {
  const Space s = l2();
  const MapSpec cube = MapSpec::make_nonlinear("cube_x");
  EXPECT_TRUE(oracle_between(s, apply_map(cube, s.norm(), P(-1, 0)), apply_map(cube, s.norm(), P(0, 0)),
                             apply_map(cube, s.norm(), P(1, 0))));
  Sampler sm(6);
  const auto r = check_equidistance_preservation(s, cube, sm, 1000);
  EXPECT_EQ(r.classification(), Classification::violating);
}

TEST(Vogt, ExperimentSummary) {
  VogtConfig empty;
  empty.norms = {NormSpec::l2()};
  EXPECT_TRUE(run_vogt_experiment(empty).empty());

  VogtConfig cfg;
  cfg.maps = {MapSpec::make_linear(1, 1, 0, 1), MapSpec::make_linear(2, 0, 0, 1)};
  cfg.norms = {NormSpec::l2()};
  cfg.quadruples = 1000;
  cfg.triples = 100;
  cfg.seed = 12;
  const auto reports = run_vogt_experiment(cfg);
  ASSERT_EQ(reports.size(), 2u);
  for (const auto& r : reports) {
    EXPECT_EQ(r.classification(), Classification::violating) << r.map;
    EXPECT_TRUE(r.forward_witness || r.backward_witness) << r.map;
  }
  EXPECT_EQ(dump(to_json(reports[0])), dump(to_json(run_vogt_experiment(cfg)[0])));
}
