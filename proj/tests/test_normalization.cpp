#include <catch2/catch_amalgamated.hpp>
#include <limits>
#include <map>

#include "gentle/generate.hpp"
#include "gentle/normalization.hpp"
#include "support/fixtures.hpp"

using namespace gentle;

namespace {

GentleQuiver four_cycle_with_triangle() {
  QuiverWithRelations q;
  q.vertices = {"v1", "v2", "v3", "v4"};
  q.arrows = {{"c1", "v1", "v2"},
              {"c2", "v2", "v3"},
              {"c3", "v3", "v4"},
              {"c4", "v1", "v4"},
              {"g", "v3", "v1"}};
  q.relations = {{"c2", "c1"}, {"g", "c2"}, {"c1", "g"}};
  return std::get<GentleQuiver>(validate_gentle(q));
}

GentleQuiver from_doc(const QuiverDocument& doc) {
  return std::get<GentleQuiver>(validate_gentle(doc.body));
}

void check_measure_log(const std::vector<MeasureSnapshot>& log) {
  for (std::size_t i = 1; i < log.size(); ++i) {
    if (log[i].phase != log[i - 1].phase) continue;
    const MeasureSnapshot& a = log[i - 1];
    const MeasureSnapshot& b = log[i];
    auto key = [](const MeasureSnapshot& s) {
      // nullopt encodes infinity; map it above any finite value
      auto inf = [](const std::optional<int>& v) {
        return v ? *v : std::numeric_limits<int>::max();
      };
      return std::make_tuple(s.r, inf(s.n), inf(s.m), s.s, inf(s.k));
    };
    INFO("snapshot " << i << " in phase " << b.phase);
    CHECK(key(b) < key(a));
  }
}

}  // namespace

TEST_CASE("branch relations and their measures") {
  SECTION("linear3_rel") {
    auto brs = branch_relations_with_measure(fixtures::linear3_rel());
    REQUIRE(brs.size() == 1);
    CHECK(brs.front().first == Relation{"b", "a"});
    CHECK(brs.front().second == 1);
  }
  SECTION("cycle3 has none") {
    CHECK(branch_relations_with_measure(fixtures::cycle3()).empty());
  }
  SECTION("tailed_cycle") {
    auto brs = branch_relations_with_measure(fixtures::tailed_cycle());
    REQUIRE(brs.size() == 2);
    std::map<Relation, int> m;
    for (const auto& [rel, n] : brs) m[rel] = n;
    CHECK(m.at(Relation{"x2", "x4"}) == 6);  // x2 is a cycle arrow, nothing splits off
    CHECK(m.at(Relation{"x5", "x6"}) == 1);  // only the tip beyond x5
  }
}

TEST_CASE("normalize_A on linear3_rel") {
  NormalizationResult res = normalize_A(fixtures::linear3_rel());
  REQUIRE(res.trace.steps.size() == 1);
  CHECK(res.trace.steps.front() == RewriteStep::reflect("3"));
  QuiverWithRelations expected;
  expected.vertices = {"1", "2", "3"};
  expected.arrows = {{"a", "1", "3"}, {"b", "3", "2"}};
  CHECK(structurally_equal(res.final.presentation(), expected));
  CHECK(verify_trace(res.trace).ok);
  check_measure_log(res.measureLog);
}

TEST_CASE("normalize_A on cycle3 is a no-op") {
  NormalizationResult res = normalize_A(fixtures::cycle3());
  CHECK(res.trace.steps.empty());
  CHECK(structurally_equal(res.final.presentation(),
                           fixtures::presentation("cycle3")));
}

TEST_CASE("normalize_A rejects out-of-class input") {
  CHECK_THROWS_AS(normalize_A(fixtures::tailed_cycle()), std::invalid_argument);
  CHECK_THROWS_AS(normalize_A(fixtures::kronecker()), std::invalid_argument);
}

TEST_CASE("normalize_A on generated class A instances") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    auto doc = generate_random_instance(InstanceClass::A, 4 + int(seed % 6), 0.5, seed);
    GentleQuiver g = from_doc(doc);
    AagInvariant f = aag_invariant(g);
    NormalizationResult res = normalize_A(g);
    INFO("seed " << seed);
    CHECK(aag_invariant(res.final) == f);
    Classification c = classify(res.final);
    REQUIRE(c.clusterTilted);
    CHECK(*c.clusterTilted == ClusterTiltedType::TypeA);
    CHECK(verify_trace(res.trace).ok);
    check_measure_log(res.measureLog);
    CHECK(normalize_A(res.final).trace.steps.empty());  // idempotence
  }
}

TEST_CASE("normalize_A_tilde on the completed tailed cycle") {
  GentleQuiver g = fixtures::tailed_cycle_completed();
  AagInvariant f = aag_invariant(g);
  NormalizationResult res = normalize_A_tilde(g);
  CHECK(aag_invariant(res.final) == f);
  Classification c = classify(res.final);
  REQUIRE(c.clusterTilted);
  CHECK(*c.clusterTilted == ClusterTiltedType::TypeAtilde);
  CHECK(verify_trace(res.trace).ok);
  check_measure_log(res.measureLog);
  CHECK(normalize_A_tilde(res.final).trace.steps.empty());
}

TEST_CASE("normalize_A_tilde is a no-op on a cluster tilted instance") {
  NormalizationResult res = normalize_A_tilde(four_cycle_with_triangle());
  CHECK(res.trace.steps.empty());
}

TEST_CASE("normalize_A_tilde on generated class A-tilde instances") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    auto doc =
        generate_random_instance(InstanceClass::Atilde, 4 + int(seed % 6), 0.5, seed);
    GentleQuiver g = from_doc(doc);
    AagInvariant f = aag_invariant(g);
    NormalizationResult res = normalize_A_tilde(g);
    INFO("seed " << seed << " instance " << doc.name);
    CHECK(aag_invariant(res.final) == f);
    Classification c = classify(res.final);
    REQUIRE(c.clusterTilted);
    CHECK(*c.clusterTilted == ClusterTiltedType::TypeAtilde);
    CHECK(verify_trace(res.trace).ok);
    check_measure_log(res.measureLog);
  }
}

TEST_CASE("trace verification") {
  SECTION("empty trace with equal endpoints") {
    GentleQuiver g = fixtures::linear3();
    CHECK(verify_trace(RewriteTrace{g, {}, g}).ok);
  }
  SECTION("final mismatch is reported past the last step") {
    GentleQuiver g = fixtures::linear3();
    GentleQuiver h = reflect(g, "3");
    TraceCheck chk = verify_trace(RewriteTrace{g, {}, h});
    CHECK(!chk.ok);
    CHECK(chk.step == 0);
  }
  SECTION("a forged illegal reflection fails with its index and reason") {
    NormalizationResult res = normalize_A(fixtures::linear3_rel());
    RewriteTrace forged = res.trace;
    forged.steps.push_back(RewriteStep::reflect("2"));  // illegal in the final quiver?
    TraceCheck chk = verify_trace(forged);
    CHECK(!chk.ok);
  }
  SECTION("precondition violations carry the failing step") {
    GentleQuiver g = fixtures::linear3_rel();
    RewriteTrace bad{g, {RewriteStep::reflect("2")}, g};
    TraceCheck chk = verify_trace(bad);
    REQUIRE(!chk.ok);
    CHECK(chk.step == 0);
    CHECK(chk.reason.find("precondition") != std::string::npos);
  }
}

TEST_CASE("free relations of the completed tailed cycle") {
  GentleQuiver g = fixtures::tailed_cycle_completed();
  auto fr = free_relations(g);
  std::sort(fr.begin(), fr.end());
  CHECK(fr == std::vector<Relation>{{"x1", "x2"}, {"x2", "x4"}});
}
