#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "templink/tau.hpp"
#include "testutil.hpp"

using namespace templink;
using namespace testutil;

TEST_CASE("resolving the theta curve") {
  Diagram g = theta();
  // both vertices drop the same edge -> a cycle of the other two
  auto d = resolve(g, {2, 2});
  REQUIRE(d.has_value());
  CHECK(d->crossings.empty());
  CHECK(d->free_loops == 1);
  // mismatched drops leave only open components
  CHECK(!resolve(g, {0, 1}).has_value());
  CHECK_THROWS_WITH_AS(resolve(g, {0}), doctest::Contains("ChoiceIncomplete"),
                       Error);
}

TEST_CASE("tau of the theta curve is three unknots") {
  TauSet t = tau_set(theta());
  CHECK(t.outcomes_total == 3);
  REQUIRE(t.set.size() == 1);
  CHECK(t.set[0].components == 1);
  CHECK(t.set[0].jones_forms == std::vector<Laurent>{Laurent::one()});
  REQUIRE(t.multiset.size() == 1);
  CHECK(t.multiset[0].second == 3);
}

TEST_CASE("tau of a vertex-free link is its own fingerprint") {
  TauSet t = tau_set(hopf());
  CHECK(t.outcomes_total == 1);
  REQUIRE(t.set.size() == 1);
  CHECK(t.set[0] == fingerprint(hopf()));
}

TEST_CASE("tau_alpha along one theta edge keeps two outcomes") {
  Diagram g = theta();
  std::string b_edge = g.edge_of_arc.at(2);
  TauSet t = tau_alpha(g, {b_edge});
  CHECK(t.outcomes_total == 2);
  REQUIRE(t.set.size() == 1);
  CHECK(t.set[0].components == 1);
  REQUIRE(t.set[0].marked.has_value());
  CHECK(t.set[0].marked->component_forms == std::vector<Laurent>{Laurent::one()});
}

TEST_CASE("tau_alpha for a disjoint marked loop keeps every outcome") {
  Diagram g = theta();
  g.marked_loops = 1;
  g.marked["a"] = {};
  TauSet t = tau_alpha(g, {});
  // the loop survives every resolution, even the one erasing all of theta
  CHECK(t.outcomes_total == 9);
  REQUIRE(t.set.size() == 2);
  for (const auto& fp : t.set) {
    REQUIRE(fp.marked.has_value());
    CHECK(fp.marked->component_forms == std::vector<Laurent>{Laurent::one()});
    if (fp.components == 2) CHECK(fp.marked->linking == std::vector<int>{0});
  }
}

TEST_CASE("unknown alpha edge rejected") {
  CHECK_THROWS_WITH_AS(tau_alpha(theta(), {"nope"}), doctest::Contains("NotAPath"),
                       Error);
}

TEST_CASE("vertex guard") {
  TauOptions opts;
  opts.max_vertices = 1;
  CHECK_THROWS_WITH_AS(tau_set(theta(), opts), doctest::Contains("GuardExceeded"),
                       Error);
}

TEST_CASE("comparison verdicts") {
  TauSet a = tau_set(theta());
  TauSet b = tau_set(theta());
  CHECK(compare_tau(a, b) == Verdict::Indistinguishable);
  TauSet c = tau_set(hopf());
  CHECK(compare_tau(a, c) == Verdict::Distinct);
}

TEST_CASE("serialization round trip and determinism across workers") {
  setenv("TEMPLINK_THREADS", "1", 1);
  TauSet t1 = tau_set(theta());
  setenv("TEMPLINK_THREADS", "3", 1);
  TauSet t3 = tau_set(theta());
  unsetenv("TEMPLINK_THREADS");
  CHECK(t1.serialize() == t3.serialize());
  TauSet back = TauSet::parse(t1.serialize());
  CHECK(back.serialize() == t1.serialize());
  CHECK(back.same_set(t1));
}

TEST_CASE("oracle routing leaves the set unchanged") {
  TauOptions oracle;
  oracle.fp.oracle = true;
  CHECK(tau_set(theta(), oracle).same_set(tau_set(theta())));
}
