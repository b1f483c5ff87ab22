#include <catch2/catch_amalgamated.hpp>

#include "gentle/threads.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"
#include "support/random_gentle.hpp"

using namespace gentle;

namespace {

std::vector<Thread> sorted(std::vector<Thread> ts) {
  std::sort(ts.begin(), ts.end());
  return ts;
}

AagInvariant f_of(const char* name) { return aag_invariant(fixtures::quiver(name)); }

}  // namespace

TEST_CASE("maximal threads of linear3") {
  GentleQuiver g = fixtures::linear3();
  ThreadSets ts = enumerate_threads(g);
  CHECK(ts.paths == sorted({Thread::path({"b", "a"}), Thread::trivial_path("1", -1),
                            Thread::trivial_path("2", +1),
                            Thread::trivial_path("3", +1)}));
  CHECK(ts.antipaths ==
        sorted({Thread::antipath({"a"}), Thread::antipath({"b"}),
                Thread::trivial_antipath("1", -1), Thread::trivial_antipath("3", -1)}));
}

TEST_CASE("maximal threads of cycle3") {
  GentleQuiver g = fixtures::cycle3();
  ThreadSets ts = enumerate_threads(g);
  CHECK(ts.paths == sorted({Thread::path({"a"}), Thread::path({"b"}),
                            Thread::path({"c"})}));
  CHECK(ts.antipaths == sorted({Thread::trivial_antipath("1", -1),
                                Thread::trivial_antipath("2", -1),
                                Thread::trivial_antipath("3", -1)}));
}

TEST_CASE("maximal threads of the one-point quiver") {
  QuiverWithRelations q;
  q.vertices = {"x"};
  GentleQuiver g = std::get<GentleQuiver>(validate_gentle(q));
  ThreadSets ts = enumerate_threads(g);
  CHECK(ts.paths == sorted({Thread::trivial_path("x", +1), Thread::trivial_path("x", -1)}));
  CHECK(ts.antipaths == sorted({Thread::trivial_antipath("x", +1),
                                Thread::trivial_antipath("x", -1)}));
}

TEST_CASE("two-vertex single-arrow quiver has three maximal antipaths") {
  QuiverWithRelations q;
  q.vertices = {"1", "2"};
  q.arrows = {{"a", "1", "2"}};
  GentleQuiver g = std::get<GentleQuiver>(validate_gentle(q));
  ThreadSystem ts = build_thread_system(g);
  CHECK(ts.antipaths.size() == 3);
  CHECK(ts.cycle_arrows.empty());
  CHECK(aag_invariant(ts) == AagInvariant::point(3, 1));
}

TEST_CASE("thread system of cycle3") {
  ThreadSystem ts = build_thread_system(fixtures::cycle3());
  REQUIRE(ts.antipath_orbits.size() == 1);
  CHECK(ts.antipath_orbits.front().size() == 3);
  CHECK(ts.cycle_arrows == std::vector<ArrowId>{"a", "b", "c"});
  REQUIRE(ts.cycle_orbits.size() == 1);
  CHECK(ts.cycle_orbits.front().size() == 3);
  // Psi steps to the relation partner
  CHECK(ts.Psi.at("a") == "c");
  CHECK(ts.Psi.at("c") == "b");
  CHECK(ts.Psi.at("b") == "a");
}

TEST_CASE("thread system of linear3") {
  ThreadSystem ts = build_thread_system(fixtures::linear3());
  REQUIRE(ts.antipath_orbits.size() == 1);
  CHECK(ts.antipath_orbits.front().size() == 4);
  CHECK(ts.cycle_arrows.empty());
}

TEST_CASE("golden invariants") {
  CHECK(f_of("linear3") == AagInvariant::point(4, 2));
  CHECK(f_of("cycle3") == AagInvariant::point(0, 3) + AagInvariant::point(3, 0));
  CHECK(f_of("tailed_cycle") ==
        AagInvariant::point(4, 5) + AagInvariant::point(2, 1));
  CHECK(f_of("tailed_cycle_completed") ==
        AagInvariant::point(0, 3) + AagInvariant::point(3, 3) +
            AagInvariant::point(2, 1));
  CHECK(f_of("kronecker") == AagInvariant::point(1, 1, 2));
  CHECK(f_of("two_cycle") == AagInvariant::point(1, 2) + AagInvariant::point(1, 0));
}

TEST_CASE("sum identities on the fixtures") {
  for (const char* name : {"linear3", "cycle3", "tailed_cycle_completed"}) {
    SumIdentityReport r = check_sum_identities(fixtures::quiver(name));
    INFO(name);
    CHECK(r.ok);
  }
  SumIdentityReport r8 = check_sum_identities(fixtures::tailed_cycle_completed());
  CHECK(r8.pSum == 5);
  CHECK(r8.qSum == 7);
}

TEST_CASE("sum identities and |M| == |N| on random gentle quivers") {
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    GentleQuiver g = testsupport::random_gentle_quiver(12, seed);
    ThreadSets ts = enumerate_threads(g);
    INFO("seed " << seed);
    CHECK(ts.paths.size() == ts.antipaths.size());
    CHECK(check_sum_identities(g).ok);
  }
}

TEST_CASE("invariant does not depend on the sign assignment") {
  SECTION("all assignments of small quivers") {
    for (const char* name : {"linear3", "cycle3", "two_cycle", "kronecker"}) {
      QuiverWithRelations q = fixtures::presentation(name);
      AagInvariant expected = aag_invariant(fixtures::quiver(name));
      auto assignments = oracle::all_sign_assignments(q);
      REQUIRE(!assignments.empty());
      for (const auto& s : assignments) {
        GentleQuiver g = gentle_with_signs(q, s);
        CHECK(aag_invariant(g) == expected);
      }
    }
  }
  SECTION("randomized seeds on random quivers") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      GentleQuiver g = testsupport::random_gentle_quiver(10, seed);
      AagInvariant expected = aag_invariant(g);
      for (std::uint64_t flip = 1; flip <= 3; ++flip) {
        SignAssignment alt = compute_sign_assignment(g.presentation(), seed * 31 + flip);
        CHECK(aag_invariant(gentle_with_signs(g.presentation(), alt)) == expected);
      }
    }
  }
}

TEST_CASE("f(0,3) counts the size-three cycle orbits") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    GentleQuiver g = testsupport::random_gentle_quiver(10, seed);
    ThreadSystem ts = build_thread_system(g);
    int threes = 0;
    for (const auto& orbit : ts.cycle_orbits)
      if (orbit.size() == 3) ++threes;
    CHECK(aag_invariant(ts)(0, 3) == threes);
  }
}

TEST_CASE("library threads and invariant agree with the oracle on fixtures") {
  for (const char* name : {"linear3", "cycle3", "two_cycle", "kronecker",
                           "linear3_rel"}) {
    GentleQuiver g = fixtures::quiver(name);
    auto ts = enumerate_threads(g);
    auto ot = oracle::maximal_threads(g.presentation(), g.signs());
    INFO(name);
    CHECK(ts.paths == ot.paths);
    CHECK(ts.antipaths == ot.antipaths);
    CHECK(aag_invariant(g) == oracle::invariant(g.presentation(), g.signs()));
  }
}
