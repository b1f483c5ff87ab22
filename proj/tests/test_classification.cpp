#include <catch2/catch_amalgamated.hpp>

#include "gentle/classification.hpp"
#include "gentle/generate.hpp"
#include "gentle/transforms.hpp"
#include "support/fixtures.hpp"
#include "support/random_gentle.hpp"

using namespace gentle;

namespace {

AagInvariant points(std::vector<std::tuple<int, int, int>> pts) {
  AagInvariant f;
  for (auto [p, q, m] : pts) f.add(p, q, m);
  return f;
}

}  // namespace

TEST_CASE("class A decomposition") {
  auto d1 = decompose_class_A(points({{4, 2, 1}}));
  REQUIRE(d1);
  CHECK(d1->m == 0);
  CHECK(d1->p == 2);

  auto d2 = decompose_class_A(points({{0, 3, 1}, {3, 0, 1}}));
  REQUIRE(d2);
  CHECK(d2->m == 1);
  CHECK(d2->p == 0);

  CHECK(!decompose_class_A(points({{4, 5, 1}, {2, 1, 1}})));
  CHECK(!decompose_class_A(points({{0, 3, 1}})));
  CHECK(!decompose_class_A(points({{1, 1, 2}})));
}

TEST_CASE("class A-tilde decomposition") {
  auto d1 = decompose_class_A_tilde(points({{0, 3, 1}, {3, 3, 1}, {2, 1, 1}}));
  REQUIRE(d1);
  CHECK(d1->m1 == 0);
  CHECK(d1->m2 == 1);
  CHECK(d1->p == 3);
  CHECK(d1->q == 1);

  auto d2 = decompose_class_A_tilde(points({{1, 1, 2}}));
  REQUIRE(d2);
  CHECK(*d2 == ClassDecompositionAtilde{0, 0, 1, 1});

  CHECK(!decompose_class_A_tilde(points({{4, 5, 1}, {2, 1, 1}})));
  CHECK(!decompose_class_A_tilde(points({{4, 2, 1}})));
  CHECK(!decompose_class_A_tilde(points({{0, 3, 1}, {3, 0, 1}})));
}

TEST_CASE("the two decompositions never both apply") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    GentleQuiver g = testsupport::random_gentle_quiver(12, seed);
    AagInvariant f = aag_invariant(g);
    CHECK(!(decompose_class_A(f) && decompose_class_A_tilde(f)));
  }
}

TEST_CASE("gorenstein dimension from maximal antipaths") {
  CHECK(gorenstein_dimension(fixtures::linear3()) == GorensteinDimension::exactly(1));
  CHECK(gorenstein_dimension(fixtures::cycle3()) == GorensteinDimension::exactly(0));
  CHECK(gorenstein_dimension(fixtures::linear3_rel()) ==
        GorensteinDimension::exactly(2));
  CHECK(gorenstein_dimension(fixtures::tailed_cycle()) ==
        GorensteinDimension::exactly(3));
}

TEST_CASE("classify the fixtures") {
  SECTION("cycle3") {
    Classification c = classify(fixtures::cycle3());
    CHECK(c.oneCycle);
    REQUIRE(c.classA);
    CHECK(*c.classA == ClassDecompositionA{1, 0});
    CHECK(!c.classAtilde);
    REQUIRE(c.clusterTilted);
    CHECK(*c.clusterTilted == ClusterTiltedType::TypeA);
    CHECK(c.gorenstein == GorensteinDimension::exactly(0));
  }
  SECTION("tailed_cycle is out of class") {
    Classification c = classify(fixtures::tailed_cycle());
    CHECK(c.oneCycle);
    CHECK(!c.classA);
    CHECK(!c.classAtilde);
    CHECK(!c.clusterTilted);
    REQUIRE(c.typeAtilde.has_value());
    CHECK(!*c.typeAtilde);
  }
  SECTION("tailed_cycle_completed") {
    Classification c = classify(fixtures::tailed_cycle_completed());
    REQUIRE(c.classAtilde);
    CHECK(*c.classAtilde == ClassDecompositionAtilde{0, 1, 3, 1});
    CHECK(!c.clusterTilted);  // the untouched tail relations are not in triangles
    CHECK(c.gorenstein == GorensteinDimension::exactly(3));
  }
  SECTION("linear3 is tree type") {
    Classification c = classify(fixtures::linear3());
    CHECK(c.treeType);
    REQUIRE(c.classA);
    CHECK(*c.classA == ClassDecompositionA{0, 2});
    REQUIRE(c.clusterTilted);  // hereditary type A counts as cluster tilted (m = 0)
    CHECK(*c.clusterTilted == ClusterTiltedType::TypeA);
  }
  SECTION("kronecker") {
    Classification c = classify(fixtures::kronecker());
    CHECK(c.oneCycle);
    REQUIRE(c.typeAtilde.has_value());
    CHECK(*c.typeAtilde);
    REQUIRE(c.classAtilde);
    CHECK(*c.classAtilde == ClassDecompositionAtilde{0, 0, 1, 1});
  }
  SECTION("typeAtilde flag is absent off the 1-cycle case") {
    Classification c = classify(fixtures::linear3());
    CHECK(!c.typeAtilde.has_value());
  }
}

TEST_CASE("derived equivalence verdicts") {
  SECTION("unequal invariants separate") {
    CHECK(derived_equivalent(fixtures::linear3(), fixtures::cycle3()) ==
          EquivalenceVerdict::NotEquivalent);
  }
  SECTION("a reflection image stays equivalent in class") {
    GentleQuiver h = reflect(fixtures::linear3_rel(), "3");
    CHECK(derived_equivalent(fixtures::linear3(), h) ==
          EquivalenceVerdict::EquivalentInClass);
  }
  SECTION("completion of the model is equivalent to the full cycle") {
    auto res = complete_relations(fixtures::linear3_rel(), {{"b", "a"}});
    REQUIRE(std::holds_alternative<GentleQuiver>(res));
    CHECK(derived_equivalent(std::get<GentleQuiver>(res), fixtures::cycle3()) ==
          EquivalenceVerdict::EquivalentInClass);
  }
  SECTION("equal invariants outside the classes stay inconclusive") {
    CHECK(derived_equivalent(fixtures::tailed_cycle(), fixtures::tailed_cycle()) ==
          EquivalenceVerdict::InconclusiveEqualInvariant);
  }
}

TEST_CASE("cluster tilted verdicts stay consistent across generated instances") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto doc = generate_random_instance(InstanceClass::A, 3 + int(seed % 8), 0.7, seed);
    GentleQuiver g = std::get<GentleQuiver>(validate_gentle(doc.body));
    Classification c = classify(g);  // throws if the two decision routes disagree
    CHECK(c.classA.has_value());
    if (c.clusterTilted) CHECK(c.gorenstein.at_most(1));
  }
}
