#include "common.hpp"

#include "equidef/oracles.hpp"
#include "equidef/sampler.hpp"

using namespace equidef;
using namespace equidef::testing;

TEST(Oracle, Equiv2) {
  EXPECT_TRUE(oracle_equiv2(l2(), P(0, 0), P(4, 0), P(1, 1), P(3, 1)));
  EXPECT_TRUE(oracle_equiv2(l2(), P(2, 2), P(2, 2), P(5, 1), P(5, 1)));
  EXPECT_FALSE(oracle_equiv2(l1(), P(0, 0), P(1, 2), P(0, 0), P(1, 1)));
}

TEST(Oracle, Midpoint) {
  EXPECT_TRUE(oracle_midpoint(l2(), P(0, 0), P(1, 1), P(2, 2)));
  EXPECT_FALSE(oracle_midpoint(l2(), P(1, 1), P(1, 1), P(1, 1)));
  EXPECT_FALSE(oracle_midpoint(l2(), P(0, 0), P(1, 0), P(4, 0)));
}

TEST(Oracle, AlphaBeta) {
  EXPECT_TRUE(oracle_alpha(l2(), 1, P(0, 0), P(1, 2), P(1, 2)));
  EXPECT_TRUE(oracle_alpha(l2(), 3, P(0, 0), P(1, 0), P(3, 0)));
  EXPECT_FALSE(oracle_alpha(l2(), 2, P(0, 0), P(1, 0), P(-2, 0)));
  EXPECT_TRUE(oracle_beta(l2(), 1, P(0, 0), P(2, 0), P(1, 0)));
  EXPECT_TRUE(oracle_beta(l2(), 2, P(0, 0), P(4, 4), P(1, 1)));
  EXPECT_FALSE(oracle_beta(l2(), 1, P(3, 3), P(3, 3), P(3, 3)));
}

TEST(Oracle, Psi) {
  EXPECT_TRUE(oracle_psi(l2(), 2, 1, P(0, 0), P(1, 0), P(0, 0), P(0, 1)));
  EXPECT_FALSE(oracle_psi(l2(), 2, 1, P(0, 0), P(1, 0), P(0, 1), P(0, 1)));
  EXPECT_FALSE(oracle_psi(l2(), 2, 1, P(0, 0), P(1, 0), P(0, 0), P(10, 0)));
}

TEST(Oracle, GammaAndBetween) {
  EXPECT_TRUE(oracle_gamma(l2(), P(0, 0), P(1, 0), P(3, 0)));
  EXPECT_TRUE(oracle_gamma(linf(), P(0, 0), P(2, 1), P(4, 0)));
  EXPECT_FALSE(oracle_gamma(l2(), P(0, 0), P(1, 1), P(2, 0)));
  EXPECT_TRUE(oracle_between(l2(), P(1, 1), P(1, 1), P(3, 0)));
  EXPECT_FALSE(oracle_between(linf(), P(0, 0), P(2, 1), P(4, 0)));
  EXPECT_FALSE(oracle_between(l2(), P(0, 0), P(5, 0), P(3, 0)));
}

TEST(Oracle, DeltaDistinctLe) {
  EXPECT_TRUE(oracle_delta(l2(), 2, P(0, 0), P(1, 0), P(2, 0)));
  EXPECT_TRUE(oracle_delta(l2(), 1, P(0, 0), P(1, 0), P(0, 0)));
  EXPECT_FALSE(oracle_delta(l1(), 3, P(0, 0), P(1, 0), P(4, 0)));
  EXPECT_FALSE(oracle_distinct(l2(), P(0, 0), P(0, 0)));
  EXPECT_TRUE(oracle_distinct(l2(), P(0, 0), Q("1/3", "0")));
  EXPECT_FALSE(oracle_distinct(l2f(), Point::floating(0, 0), Point::floating(1e-12, 0)));
  EXPECT_TRUE(oracle_le(l2(), P(0, 0), P(1, 1), P(5, 5), P(6, 6)));
  EXPECT_TRUE(oracle_le(l2(), P(0, 0), P(1, 0), P(0, 0), P(2, 0)));
  EXPECT_FALSE(oracle_le(l2(), P(0, 0), P(3, 0), P(0, 0), P(2, 0)));
}

TEST(Oracle, CollinearParallelogram) {
  EXPECT_TRUE(oracle_collinear(l2(), P(0, 0), P(1, 1), P(2, 2)));
  EXPECT_TRUE(oracle_parallelogram(l2(), P(0, 0), P(1, 0), P(1, 1), P(0, 1)));
  EXPECT_FALSE(oracle_parallelogram(l2(), P(0, 0), P(1, 0), P(2, 0), P(3, 0)));
}

TEST(Oracle, Dispatch) {
  const std::vector<Point> pts = {P(0, 0), P(1, 0), P(3, 0)};
  EXPECT_TRUE(evaluate_oracle(l2(), RelationId::parse("GAMMA"), pts));
  EXPECT_TRUE(evaluate_oracle(l2(), RelationId::parse("ALPHA:3"), pts));
  EXPECT_FALSE(has_oracle(RelationId::parse("PHI:2")));
  EXPECT_TRUE(has_oracle(RelationId::parse("PHI:0")));
  EXPECT_THROW(RelationId::parse("FOO"), RelationError);
}

// In L2, metric and affine betweenness coincide for distinct points.
TEST(Oracle, StrictConvexityL2) {
  Sampler s(17);
  const Space sp = l2();
  int mismatches = 0;
  for (int i = 0; i < 2000; ++i) {
    const auto t = s.instance(sp, RelationId::parse("GAMMA"));
    if (sp.same_point(t[0], t[1]) || sp.same_point(t[1], t[2]) || sp.same_point(t[0], t[2])) continue;
    if (oracle_gamma(sp, t[0], t[1], t[2]) != oracle_between(sp, t[0], t[1], t[2])) ++mismatches;
  }
  EXPECT_EQ(mismatches, 0);
}
