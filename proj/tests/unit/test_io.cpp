#include "common.hpp"

#include "equidef/io.hpp"

using namespace equidef;
using namespace equidef::testing;

TEST(Io, PointForms) {
  const Space s = l2();
  EXPECT_EQ(point_from_json(Json::parse(R"({"x":"3/2","y":-1})"), s), Q("3/2", "-1"));
  EXPECT_EQ(point_from_json(Json::parse(R"(["1/3", 0.5])"), s), Q("1/3", "1/2"));
  EXPECT_EQ(to_json(Q("-7/4", "2")).dump(), R"({"x":"-7/4","y":"2"})");
  EXPECT_THROW(point_from_json(Json::parse(R"({"x":"a"})"), s), std::exception);
}

TEST(Io, NamedPoints) {
  const auto pts = points_from_json(Json::parse(R"({"points":[{"name":"a","x":0,"y":0},[1,2]]})"), l1());
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_EQ(pts[0].name, "a");
  EXPECT_EQ(pts[1].point, P(1, 2));
  EXPECT_EQ(points_from_json(points_to_json(pts), l1())[0].name, "a");
}

TEST(Io, SpaceAndTrunc) {
  const Space s = space_from_json(to_json(Space::floating(NormSpec::lp(Rational(3, 2)), 1e-7)));
  EXPECT_EQ(s.norm(), NormSpec::lp(Rational(3, 2)));
  EXPECT_FALSE(s.is_exact());
  EXPECT_DOUBLE_EQ(s.tolerance(), 1e-7);
  TruncationParams t;
  t.K = 9;
  t.b_mode = BMode::strict_paper;
  t.adaptive_n = false;
  const TruncationParams u = trunc_from_json(to_json(t));
  EXPECT_EQ(u.K, 9);
  EXPECT_EQ(u.b_mode, BMode::strict_paper);
  EXPECT_FALSE(u.adaptive_n);
}

TEST(Io, UniverseRoundTrip) {
  const Space s = l1();
  Universe u(s);
  u.add(P(0, 0), Provenance::input);
  u.add(Q("1/2", "0"), Provenance::midpoint_closure);
  u.add(P(9, 9), Provenance::refuter);
  const Json j = to_json(u, false, {"capped"});
  const Universe v = universe_from_json(j, s);
  ASSERT_EQ(v.size(), 3u);
  EXPECT_EQ(v.provenance(1), Provenance::midpoint_closure);
  EXPECT_EQ(dump(to_json(v, false, {"capped"})), dump(j));
}

TEST(Io, MapsAndConfig) {
  const Json cfg = Json::parse(R"({"maps":["similarities","shear",{"kind":"linear","matrix":["2","0","0","1"]}],
                                   "norms":["l1","linf"],"seed":3,"quadruples":10})");
  const VogtConfig c = vogt_config_from_json(cfg);
  EXPECT_TRUE(c.similarities);
  EXPECT_EQ(c.maps.size(), 2u);
  EXPECT_EQ(c.norms.size(), 2u);
  EXPECT_EQ(c.seed, 3u);
  EXPECT_EQ(c.quadruples, 10u);
  for (const auto& m : c.maps) EXPECT_EQ(dump(to_json(map_from_json(to_json(m)))), dump(to_json(m)));
}

TEST(Io, DumpCanonical) {
  const Json j = Json::parse(R"({"b":1,"a":[1,2]})");
  EXPECT_EQ(dump(j), "{\n  \"a\": [\n    1,\n    2\n  ],\n  \"b\": 1\n}\n");
}
