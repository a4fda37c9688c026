#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "templink/ssf.hpp"
#include "testutil.hpp"

using namespace templink;
using namespace testutil;

namespace {

SsfInstance lorenz_with_disjoint_attractor() {
  TemplateSpec spec = catalog(0, 0);
  spec.attractors.push_back({"orbit", {}});
  return {spec};
}

Fingerprint strip_mark(Fingerprint fp) {
  fp.marked.reset();
  return fp;
}

}  // namespace

TEST_CASE("instance needs exactly one attractor") {
  SsfInstance none{catalog(0, 0)};
  CHECK_THROWS_WITH_AS(none.validate(), doctest::Contains("AttractorCountNotOne"),
                       Error);
  TemplateSpec two = catalog(0, 0);
  two.attractors.push_back({"a1", {}});
  two.attractors.push_back({"a2", {}});
  CHECK_THROWS_WITH_AS((SsfInstance{two}.validate()),
                       doctest::Contains("AttractorCountNotOne"), Error);
  lorenz_with_disjoint_attractor().validate();
}

TEST_CASE("ssf graph marks the attractor as a") {
  SsfInstance inst = lorenz_with_disjoint_attractor();
  Diagram g = ssf_graph(inst);
  CHECK(g.marked.count("a") == 1);
  CHECK(g.marked_loops == 1);
  CHECK(g.vertices.size() == boundary_graph(inst.spec).vertices.size());
  CHECK(SsfInstance::parse(inst.spec.serialize()).spec.serialize() ==
        inst.spec.serialize());
}

TEST_CASE("disjoint attractor laws") {
  SsfInstance inst = lorenz_with_disjoint_attractor();
  SsfReport rep = tau_attractor(inst);
  TauSet plain = tau_set(boundary_graph(catalog(0, 0)));

  // every outcome keeps the closed attractor
  CHECK(rep.tau_a.outcomes_total == rep.tau.outcomes_total);

  // erasing marks recovers the unmarked invariant
  std::vector<Fingerprint> stripped;
  for (const auto& fp : rep.tau_a.set) stripped.push_back(strip_mark(fp));
  std::sort(stripped.begin(), stripped.end());
  stripped.erase(std::unique(stripped.begin(), stripped.end()), stripped.end());
  std::vector<Fingerprint> tau_with_loop;  // tau of boundary plus the loop
  Diagram g = ssf_graph(inst);
  g.marked.clear();
  g.free_loops += g.marked_loops;
  g.marked_loops = 0;
  for (const auto& fp : tau_set(g).set) tau_with_loop.push_back(fp);
  CHECK(stripped == tau_with_loop);

  // each marked fingerprint is a plain one plus a split marked unknot
  for (const auto& fp : rep.tau_a.set) {
    REQUIRE(fp.marked.has_value());
    CHECK(fp.marked->component_forms == std::vector<Laurent>{Laurent::one()});
    for (int lk : fp.marked->linking) CHECK(lk == 0);
    // the all-erased resolution leaves just the marked unknot
    bool matched = fp.components == 1 &&
                   fp.jones_forms == std::vector<Laurent>{Laurent::one()};
    for (const auto& base : plain.set) {
      if (fp.components != base.components + 1) continue;
      std::vector<Laurent> forms;
      for (const auto& f : base.jones_forms) forms.push_back(Laurent::circle() * f);
      std::sort(forms.begin(), forms.end());
      forms.erase(std::unique(forms.begin(), forms.end()), forms.end());
      if (fp.jones_forms == forms) matched = true;
    }
    CHECK(matched);
  }
}

TEST_CASE("attractor threaded through an ear links the boundary") {
  TemplateSpec spec = catalog(0, 0);
  // one pass in front of the ear band, one behind: a circle threading it
  spec.attractors.push_back(
      {"orbit", {{"l", true, 1, 1, 0}, {"l", false, 2, 1, 0}}});
  SsfInstance inst{spec};
  SsfReport rep = tau_attractor(inst);
  CHECK(rep.tau_a.outcomes_total == rep.tau.outcomes_total);
  bool some_linking = false;
  for (const auto& fp : rep.tau_a.set) {
    REQUIRE(fp.marked.has_value());
    for (int lk : fp.marked->linking)
      if (lk != 0) some_linking = true;
  }
  CHECK(some_linking);
}

TEST_CASE("report serialization") {
  SsfReport rep = tau_attractor(lorenz_with_disjoint_attractor());
  auto j = rep.to_json();
  CHECK(j.contains("tau_a"));
  CHECK(j.contains("tau"));
  CHECK(TauSet::from_json(j["tau_a"]).serialize() == rep.tau_a.serialize());
}
