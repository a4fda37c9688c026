#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "templink/tau.hpp"
#include "templink/template_spec.hpp"
#include "testutil.hpp"

using namespace templink;
using namespace testutil;

TEST_CASE("catalog basics") {
  CHECK(nonorientable_count(catalog(0, 0)) == 0);
  CHECK(nonorientable_count(catalog(0, 1)) == 1);
  CHECK(nonorientable_count(catalog(1, 1)) == 2);
  CHECK(nonorientable_count(catalog(2, -2)) == 0);
  catalog(0, 0).validate();
}

TEST_CASE("spec round trip and validation errors") {
  TemplateSpec spec = catalog(1, -2);
  TemplateSpec back = TemplateSpec::parse(spec.serialize());
  CHECK(back.serialize() == spec.serialize());

  TemplateSpec dangling = catalog(0, 0);
  dangling.bands.pop_back();
  CHECK_THROWS_WITH_AS(dangling.validate(), doctest::Contains("PortUnmatched"),
                       Error);

  TemplateSpec doubled = catalog(0, 0);
  doubled.bands.push_back({"x", {"b1", "out"}, {"s1", "in"}, 0});
  CHECK_THROWS_WITH_AS(doubled.validate(), doctest::Contains("PortDoublyUsed"),
                       Error);

  TemplateSpec clash = catalog(0, 0);
  clash.crossings.push_back({"l", "l", 1, 1, 1});
  CHECK_THROWS_WITH_AS(clash.validate(), doctest::Contains("BadPosition"), Error);

  TemplateSpec ghost = catalog(0, 0);
  ghost.crossings.push_back({"zz", "l", 1, 2, 1});
  CHECK_THROWS_WITH_AS(ghost.validate(), doctest::Contains("UnknownBand"), Error);
}

TEST_CASE("boundary of the Lorenz-like catalog") {
  Diagram d = boundary_graph(catalog(0, 0));
  CHECK(d.vertices.size() == 2);
  CHECK(d.crossings.size() == 1);  // the single landing crossing
  CHECK(components(d).size() == 1);
  std::set<std::string> edges;
  for (const auto& [arc, e] : d.edge_of_arc) edges.insert(e);
  CHECK(edges.size() == 3);  // handcuff: two ears and the trunk

  CHECK(boundary_graph(catalog(1, 1)).crossings.size() == 3);
  CHECK(boundary_graph(catalog(2, -1)).crossings.size() == 4);
  CHECK(boundary_graph(catalog(1, 1)).vertices.size() == 2);
}

TEST_CASE("a declared band crossing doubles into four strand crossings") {
  TemplateSpec spec = catalog(0, 0);
  spec.crossings.push_back({"l", "t", 1, 1, 1});
  Diagram d = boundary_graph(spec);
  CHECK(d.crossings.size() == 1 + 4);
  d = boundary_graph(catalog(0, 0));
  CHECK(d.crossings.size() == 1);
}

TEST_CASE("boundary output is deterministic") {
  CHECK(boundary_graph(catalog(0, 1)).serialize() ==
        boundary_graph(catalog(0, 1)).serialize());
}

TEST_CASE("tau of the catalog boundaries") {
  TauSet t00 = tau_set(boundary_graph(catalog(0, 0)));
  CHECK(t00.outcomes_total == 5);
  REQUIRE(t00.set.size() == 2);
  CHECK(t00.set[0].components + t00.set[1].components == 3);  // unknot + 2-unlink
  for (const auto& fp : t00.set) {
    if (fp.components == 1)
      CHECK(fp.jones_forms == std::vector<Laurent>{Laurent::one()});
    else
      CHECK(fp.jones_forms == std::vector<Laurent>{Laurent::circle()});
  }

  TauSet t11 = tau_set(boundary_graph(catalog(1, 1)));
  CHECK(t11.outcomes_total == 3);
  REQUIRE(t11.set.size() == 1);
  CHECK(t11.set[0].components == 1);
  CHECK(t11.set[0].jones_forms == std::vector<Laurent>{Laurent::one()});

  CHECK(compare_tau(t00, t11) == Verdict::Distinct);

  TauSet t01 = tau_set(boundary_graph(catalog(0, 1)));
  CHECK(t01.same_set(t00));  // {unknot, two-component unlink}
}

TEST_CASE("switch move is an involution and preserves tau") {
  for (auto [m, n] : {std::pair{0, 0}, {0, 1}, {1, 1}}) {
    TemplateSpec spec = catalog(m, n);
    TemplateSpec once = switch_move(spec, "b1");
    CHECK(switch_move(once, "b1").serialize() == spec.serialize());
    TauSet before = tau_set(boundary_graph(spec));
    TauSet after = tau_set(boundary_graph(once));
    CHECK(before.same_set(after));
  }
  CHECK_THROWS_WITH_AS(switch_move(catalog(0, 0), "zz"),
                       doctest::Contains("UnknownBranchLine"), Error);
}

TEST_CASE("split move structure") {
  TemplateSpec spec = catalog(0, 0);
  TemplateSpec split = split_move(spec, "b1", "front");
  CHECK(split.branch_lines.size() == 2);
  CHECK(split.splitters.size() == 2);
  CHECK(boundary_graph(split).vertices.size() == 4);
  CHECK_THROWS_WITH_AS(split_move(spec, "zz", "front"),
                       doctest::Contains("UnknownBranchLine"), Error);
}

namespace {

// is `bigger` equal to `base` plus one split unknotted circle?
bool is_split_union_with_unknot(const Fingerprint& base, const Fingerprint& bigger) {
  if (bigger.components != base.components + 1) return false;
  std::vector<int> expect = base.linking;
  for (int i = 0; i < base.components; ++i) expect.push_back(0);
  std::sort(expect.begin(), expect.end());
  if (bigger.linking != expect) return false;
  std::vector<Laurent> forms;
  for (const auto& f : base.jones_forms) forms.push_back(Laurent::circle() * f);
  std::sort(forms.begin(), forms.end());
  forms.erase(std::unique(forms.begin(), forms.end()), forms.end());
  return bigger.jones_forms == forms;
}

}  // namespace

TEST_CASE("split move changes tau by at most one split unknot") {
  for (auto [m, n] : {std::pair{0, 0}, {0, 1}, {1, 1}}) {
    TauSet before = tau_set(boundary_graph(catalog(m, n)));
    TauSet after = tau_set(boundary_graph(split_move(catalog(m, n), "b1", "front")));
    std::vector<Fingerprint> added, removed;
    for (const auto& fp : after.set)
      if (std::find(before.set.begin(), before.set.end(), fp) == before.set.end())
        added.push_back(fp);
    for (const auto& fp : before.set)
      if (std::find(after.set.begin(), after.set.end(), fp) == after.set.end())
        removed.push_back(fp);
    CHECK(added.size() + removed.size() <= 1);
    for (const auto& fp : added) {
      bool matches = false;
      for (const auto& base : before.set)
        if (is_split_union_with_unknot(base, fp)) matches = true;
      CHECK(matches);
    }
  }
}

TEST_CASE("attractor components in the boundary graph") {
  TemplateSpec spec = catalog(0, 0);
  spec.attractors.push_back({"a1", {}});
  Diagram d = boundary_graph(spec);
  CHECK(d.marked_loops == 1);
  CHECK(d.marked.at("a1").empty());

  TemplateSpec ring = catalog(0, 0);
  ring.attractors.push_back(
      {"a1",
       {{"l", true, 1, 1, 0}, {"l", true, 2, -1, 0}}});
  Diagram g = boundary_graph(ring);
  CHECK(g.crossings.size() == 1 + 4);  // landing + two doubled events
  CHECK(!g.marked.at("a1").empty());
  CHECK(components(g).size() == 2);
}
