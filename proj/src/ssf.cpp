#include "templink/ssf.hpp"

namespace templink {

void SsfInstance::validate() const {
  spec.validate();
  if (spec.attractors.size() != 1)
    throw Error("AttractorCountNotOne",
                "a simple-Smale-flow instance carries exactly one attractor, got " +
                    std::to_string(spec.attractors.size()));
}

SsfInstance SsfInstance::parse(const std::string& text) {
  SsfInstance inst{TemplateSpec::parse(text)};
  inst.validate();
  return inst;
}

Diagram ssf_graph(const SsfInstance& inst) {
  inst.validate();
  Diagram g = boundary_graph(inst.spec);
  const std::string& id = inst.spec.attractors[0].id;
  auto node = g.marked.extract(id);
  node.key() = "a";
  g.marked.insert(std::move(node));
  return g;
}

SsfReport tau_attractor(const SsfInstance& inst, const TauOptions& opts) {
  Diagram g = ssf_graph(inst);
  SsfReport rep;
  rep.tau_a = tau_alpha(g, g.marked.at("a"), opts);
  Diagram unmarked = g;
  unmarked.marked.clear();
  // a bare-loop attractor stays a loop in the unmarked graph
  unmarked.free_loops += unmarked.marked_loops;
  unmarked.marked_loops = 0;
  rep.tau = tau_set(unmarked, opts);
  return rep;
}

nlohmann::json SsfReport::to_json(bool with_multiset) const {
  nlohmann::json j;
  j["tau_a"] = tau_a.to_json(with_multiset);
  j["tau"] = tau.to_json(with_multiset);
  return j;
}

std::string SsfReport::serialize(bool with_multiset) const {
  return to_json(with_multiset).dump();
}

}  // namespace templink
