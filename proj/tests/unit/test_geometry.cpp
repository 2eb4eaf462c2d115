#include "common.hpp"

#include "equidef/sphere.hpp"

#include <cmath>

using namespace equidef;
using namespace equidef::testing;

TEST(Distance, Examples) {
  EXPECT_EQ(distance(l2(), P(0, 0), P(3, 4)).to_string(), "5");
  EXPECT_EQ(distance(l1(), P(0, 0), P(3, 4)).to_string(), "7");
  EXPECT_TRUE(distance(linf(), P(1, 1), P(1, 1)).is_zero());
  EXPECT_EQ(distance(l2(), P(0, 0), P(1, 1)).to_string(), "sqrt(2)");
  EXPECT_NEAR(distance(l2f(), Point::floating(0, 0), Point::floating(3, 4)).to_double(), 5.0, 1e-12);
}

TEST(Distance, LpFloatOnly) {
  EXPECT_THROW(Space::exact(NormSpec::lp(3)), GeometryError);
  const Space s = Space::floating(NormSpec::lp(3));
  EXPECT_NEAR(distance(s, Point::floating(0, 0), Point::floating(1, 1)).to_double(), std::cbrt(2.0), 1e-12);
}

TEST(Equidistant, Examples) {
  EXPECT_TRUE(equidistant(l2(), P(0, 0), P(0, 5), P(3, 4), P(0, 0)));
  for (const Space& s : {l1(), l2(), linf()}) EXPECT_TRUE(equidistant(s, P(2, 3), P(2, 3), P(-1, 7), P(-1, 7)));
  EXPECT_TRUE(equidistant(linf(), P(0, 0), P(2, 1), P(0, 0), P(1, 2)));
  EXPECT_FALSE(equidistant(l1(), P(0, 0), P(1, 2), P(0, 0), P(1, 1)));
}

TEST(Equidistant, IrrationalL2Exact) {
  // sqrt(2) + sqrt(8) = sqrt(18)
  const Space s = l2();
  const std::vector<LengthTerm> terms = {{1, distance(s, P(0, 0), P(1, 1))},
                                         {1, distance(s, P(1, 1), P(3, 3))},
                                         {-1, distance(s, P(0, 0), P(3, 3))}};
  EXPECT_EQ(sign_of_combination(s, terms), 0);
  EXPECT_TRUE(equidistant(s, P(0, 0), P(1, 2), P(0, 0), P(2, 1)));
  EXPECT_FALSE(equidistant(s, P(0, 0), P(1, 2), P(0, 0), P(2, 2)));
}

TEST(ScaledEquidistant, Examples) {
  EXPECT_TRUE(scaled_equidistant(l2(), P(0, 0), P(4, 0), 2, P(1, 1), P(3, 1)));
  EXPECT_TRUE(scaled_equidistant(l2(), P(1, 1), P(1, 1), 0, P(5, 0), P(-3, 2)));
  EXPECT_FALSE(scaled_equidistant(l2(), P(1, 1), P(2, 1), 0, P(5, 0), P(-3, 2)));
  EXPECT_TRUE(scaled_equidistant(l1(), P(0, 0), P(1, 0), Rational(1, 2), P(0, 0), P(1, 1)));
}

TEST(AffineCombination, Examples) {
  const Point a = Q("1/3", "2"), b = Q("-4", "5/7");
  EXPECT_EQ(affine_combination(a, b, 0), a);
  EXPECT_EQ(affine_combination(a, b, 1), b);
  EXPECT_EQ(affine_combination(P(0, 0), P(1, 0), 3), P(3, 0));
  EXPECT_EQ(midpoint(P(0, 0), P(3, 1)), Q("3/2", "1/2"));
}

TEST(Scalar, CanonicalRationals) {
  EXPECT_EQ(ratio(8, 10), Rational(4, 5));
  EXPECT_EQ(Point::exact(ratio(2, 4), 0).scaled(ratio(6, 3)), P(1, 0));
  EXPECT_EQ(format_rational(parse_rational("0.125")), "1/8");
  EXPECT_EQ(format_rational(parse_rational("-6/4")), "-3/2");
}

TEST(Scalar, BackendMismatchRefused) {
  EXPECT_THROW((void)(Scalar(Rational(1)) + Scalar(1.0)), BackendMismatch);
}

TEST(FloatSpace, ToleranceIdentification) {
  const Space s = l2f();
  EXPECT_TRUE(s.same_point(Point::floating(1, 1), Point::floating(1 + 1e-12, 1)));
  EXPECT_FALSE(s.same_point(Point::floating(1, 1), Point::floating(1 + 1e-6, 1)));
}

TEST(Sphere, TangentL2) {
  const Space s = l2f();
  const Point e = sphere_intersection_point(s, Point::floating(0, 0), Distance::approx(1), Point::floating(2, 0),
                                            Distance::approx(1));
  EXPECT_NEAR(e.x.to_double(), 1.0, 1e-9);
  EXPECT_NEAR(e.y.to_double(), 0.0, 1e-6);
}

TEST(Sphere, L1EdgeWalkExact) {
  const Space s = l1();
  const Point e = sphere_intersection_point(s, P(0, 0), Distance::exact(2), P(2, 0), Distance::exact(2));
  EXPECT_EQ(distance(s, P(0, 0), e).to_string(), "2");
  EXPECT_EQ(distance(s, P(2, 0), e).to_string(), "2");
  const auto all = sphere_intersection_points(s, P(0, 0), Distance::exact(2), P(2, 0), Distance::exact(2));
  EXPECT_GE(all.size(), 2u);
  for (const auto& p : all) EXPECT_TRUE(equidistant(s, P(0, 0), p, P(2, 0), p));
}

TEST(Sphere, LinfExact) {
  const Space s = linf();
  const Point e = sphere_intersection_point(s, P(0, 0), Distance::exact(3), Q("1", "1/2"), Distance::exact(2));
  EXPECT_EQ(distance(s, P(0, 0), e).to_string(), "3");
  EXPECT_EQ(distance(s, Q("1", "1/2"), e).to_string(), "2");
}

TEST(Sphere, NoIntersection) {
  EXPECT_THROW(sphere_intersection_point(l2f(), Point::floating(0, 0), Distance::approx(1), Point::floating(5, 0),
                                         Distance::approx(1)),
               NoIntersection);
  EXPECT_THROW(
      sphere_intersection_point(l1(), P(0, 0), Distance::exact(1), P(5, 0), Distance::exact(1)), NoIntersection);
}

TEST(Sphere, LpFloat) {
  const Space s = Space::floating(NormSpec::lp(Rational(3, 2)));
  const Point c = Point::floating(0, 0), d = Point::floating(1, 0.5);
  const Point e = sphere_intersection_point(s, c, Distance::approx(1.5), d, Distance::approx(1.0));
  EXPECT_NEAR(distance(s, c, e).to_double(), 1.5, 1e-8);
  EXPECT_NEAR(distance(s, d, e).to_double(), 1.0, 1e-8);
}
