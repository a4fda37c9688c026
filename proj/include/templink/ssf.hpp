#pragma once

#include <string>

#include "templink/tau.hpp"
#include "templink/template_spec.hpp"

namespace templink {

// simple-Smale-flow instance: a template spec carrying exactly one attractor
struct SsfInstance {
  TemplateSpec spec;

  void validate() const;  // AttractorCountNotOne unless exactly one attractor
  static SsfInstance parse(const std::string& text);
};

// the spatial graph G = attractor ∪ boundary(T), attractor marked as "a"
Diagram ssf_graph(const SsfInstance& inst);

struct SsfReport {
  TauSet tau_a;  // marked invariant
  TauSet tau;    // unmarked invariant of the same graph
  nlohmann::json to_json(bool with_multiset = true) const;
  std::string serialize(bool with_multiset = true) const;
};

SsfReport tau_attractor(const SsfInstance& inst, const TauOptions& opts = {});

}  // namespace templink
