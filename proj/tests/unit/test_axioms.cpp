#include "common.hpp"

#include "equidef/axioms.hpp"
#include "equidef/oracles.hpp"
#include "equidef/sphere.hpp"

using namespace equidef;
using namespace equidef::testing;

TEST(Axioms, TransportExample) {
  const Point d = transport(l2(), P(0, 0), P(0, 2), P(1, 0));
  EXPECT_EQ(d, P(-2, 0));
  EXPECT_TRUE(oracle_between(l2(), P(1, 0), P(0, 0), d));
  EXPECT_TRUE(equidistant(l2(), P(0, 0), P(0, 2), P(0, 0), d));
}

TEST(Axioms, ArchimedeanExamples) {
  const Space s = l2();
  EXPECT_EQ(archimedean_chain_length(s, P(0, 0), P(1, 0), P(0, 0), Q("7/2", "0"), 64), 5);
  EXPECT_EQ(archimedean_chain_length(s, P(0, 0), P(1, 0), P(0, 0), P(0, 0), 64), 2);
  EXPECT_EQ(archimedean_chain_length(s, P(0, 0), P(1, 0), P(0, 0), Q("7/2", "0"), 3), 0);
  EXPECT_EQ(archimedean_chain_length(s, P(0, 0), P(1, 0), P(0, 0), P(-1, 0), 64), -1);
}

TEST(Axioms, HomothetyExample) {
  // o=(0,0), a=(2,0), a'=(0,2), b=(3,0) -> b'=(0,3)
  const Space s = l1();
  EXPECT_TRUE(equidistant(s, P(0, 0), P(2, 0), P(0, 0), P(0, 2)));
  EXPECT_TRUE(equidistant(s, P(0, 0), P(3, 0), P(0, 0), P(0, 3)));
  for (const Space& sp : {l1(), l2(), linf()}) EXPECT_TRUE(equidistant(sp, P(1, 2), P(0, 0), P(1, 2), P(2, 4)));
}

TEST(Axioms, AllPassSmall) {
  for (const Space& s : {l1(), l2(), linf(), l2f()}) {
    AxiomOptions opt;
    opt.samples = 150;
    for (const auto& r : check_axioms(s, 42, opt)) {
      EXPECT_TRUE(r.passed()) << r.axiom << " " << r.norm << " " << r.backend;
      EXPECT_EQ(r.checked + r.skipped + r.not_applicable + r.incomplete, r.samples) << r.axiom;
    }
  }
}

TEST(Axioms, ExistentialWitnesses) {
  AxiomOptions opt;
  opt.samples = 200;
  for (char ax : std::string("bgi")) {
    Sampler s(stream_seed(3, ax));
    const AxiomReport r = check_axiom(ax, l1(), s, opt);
    EXPECT_GT(r.witnesses_verified, 0u) << ax;
    EXPECT_TRUE(r.passed()) << ax;
  }
}

TEST(Axioms, Deterministic) {
  AxiomOptions opt;
  opt.samples = 100;
  const auto a = check_axioms(linf(), 9, opt, "bfi");
  const auto b = check_axioms(linf(), 9, opt, "bfi");
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].checked, b[i].checked);
    EXPECT_EQ(a[i].max_chain, b[i].max_chain);
  }
  EXPECT_THROW(check_axioms(linf(), 9, opt, "z"), GeometryError);
}

TEST(Axioms, TriangleConstruction) {
  const Space s = l2f();
  const Point a = Point::floating(0, 0), b = Point::floating(1, 0);
  const Point c = sphere_intersection_point(s, a, Distance::approx(1), b, Distance::approx(1));
  EXPECT_NEAR(distance(s, a, c).to_double(), 1, 1e-9);
  EXPECT_NEAR(distance(s, b, c).to_double(), 1, 1e-9);
  EXPECT_FALSE(spheres_meet(s, a, Distance::approx(1), b, Distance::approx(3)));
}
