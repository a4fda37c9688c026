#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "templink/diagram.hpp"
#include "templink/link_invariants.hpp"

namespace templink {

struct TauOptions {
  int max_vertices = 12;   // 3^V enumeration guard
  FingerprintOptions fp;   // bracket guard / oracle routing
  bool with_multiset = true;
};

struct TauSet {
  long long outcomes_total = 0;  // nonempty outcomes over all 3^V choices
  std::vector<Fingerprint> set;  // canonical order, no duplicates
  std::vector<std::pair<Fingerprint, long long>> multiset;

  bool same_set(const TauSet& o) const { return set == o.set; }
  nlohmann::json to_json(bool with_multiset = true) const;
  std::string serialize(bool with_multiset = true) const;
  static TauSet from_json(const nlohmann::json& j);
  static TauSet parse(const std::string& text);
};

// One vertex replacement choice per vertex: the slot whose edge is dropped
// (the other two incident arcs are joined). Open components are erased;
// returns the surviving link, or nullopt when nothing closed survives.
std::optional<Diagram> resolve(const Diagram& g, const std::vector<int>& choice);

// Kauffman invariant: fingerprints of all nonempty resolutions.
TauSet tau_set(const Diagram& g, const TauOptions& opts = {});

// Generalized invariant: keep only outcomes where every edge of alpha
// survives closed and every vertex interior to alpha pairs alpha's two ends;
// fingerprints carry alpha's component as the marked component.
TauSet tau_alpha(const Diagram& g, const std::vector<std::string>& alpha_edges,
                 const TauOptions& opts = {});

enum class Verdict { Distinct, Indistinguishable };
Verdict compare_tau(const TauSet& a, const TauSet& b);
std::string verdict_text(Verdict v);

}  // namespace templink
