#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "templink/diagram.hpp"
#include "templink/laurent.hpp"

namespace templink {

// Kauffman bracket normalized to <unknot> = 1, computed by memoized skein
// recursion with curl/bigon reduction between steps. Vertex-free input only.
Laurent kauffman_bracket(const Diagram& d, int guard = 24);

// Same value by brute force over all 2^n smoothing states. Slow reference.
Laurent oracle_statesum(const Diagram& d, int guard = 24);

// Sorted absolute pairwise linking numbers over all unordered component
// pairs (crossing-free loops contribute zeros).
std::vector<int> linking_profile(const Diagram& d);

// Writhe-normalized bracket, one value per orientation class, sorted with
// duplicates removed.
std::vector<Laurent> jones_canonical(const Diagram& d, int guard = 24,
                                     bool oracle = false);

struct FingerprintOptions {
  int guard = 24;
  bool oracle = false;  // route brackets through oracle_statesum
};

// Invariants of the marked component: its own Jones forms (identifying which
// component carries the mark), absolute linking numbers to every other
// component (sorted), and Jones forms of each two-component sublink
// {marked, other} (sorted).
struct MarkedData {
  std::vector<Laurent> component_forms;
  std::vector<int> linking;
  std::vector<std::vector<Laurent>> pair_forms;
  auto operator<=>(const MarkedData&) const = default;
};

struct Fingerprint {
  int components = 0;
  std::vector<int> linking;
  std::vector<Laurent> jones_forms;
  std::optional<MarkedData> marked;
  auto operator<=>(const Fingerprint&) const = default;

  nlohmann::json to_json() const;
  std::string serialize() const;
  static Fingerprint from_json(const nlohmann::json& j);
};

// Fingerprint of a link diagram; if mark names an entry of d.marked, that
// component's data is attached.
Fingerprint fingerprint(const Diagram& d,
                        const std::optional<std::string>& mark = {},
                        const FingerprintOptions& opts = {});

// Sublink spanned by the given strand indices (per link_strands order) plus
// the given numbers of crossing-free loops.
Diagram restrict_to_components(const Diagram& d, const std::set<int>& strands,
                               int loops = 0, int marked_loops = 0);

}  // namespace templink
