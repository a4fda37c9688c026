#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "templink/laurent.hpp"

namespace templink {

// Error with a stable machine-readable code. exit_status is what the CLI
// maps it to (1 = validation/usage, 2 = guard tripped).
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message, int exit_status = 1)
      : std::runtime_error(code + ": " + message),
        code_(std::move(code)),
        exit_status_(exit_status) {}
  const std::string& code() const { return code_; }
  int exit_status() const { return exit_status_; }

 private:
  std::string code_;
  int exit_status_;
};

// Crossing tuple: the four arc labels read counterclockwise starting from the
// incoming under-strand. Slots 0 and 2 are the under-strand, 1 and 3 the
// over-strand.
using CrossingTuple = std::array<int, 4>;
// Trivalent vertex: the three incident arc labels in counterclockwise order.
using VertexTuple = std::array<int, 3>;

// Planar-diagram code of a trivalent spatial graph (vertex-free diagrams are
// ordinary link diagrams). Every arc label appears exactly twice across
// crossings and vertices. Circles that meet no crossing are counted in
// free_loops (unmarked) / marked_loops (marked).
struct Diagram {
  std::vector<CrossingTuple> crossings;
  std::vector<VertexTuple> vertices;
  int free_loops = 0;
  int marked_loops = 0;
  std::map<int, std::string> edge_of_arc;                  // arc -> edge id
  std::map<std::string, std::vector<std::string>> marked;  // mark -> edge ids
                                                           // (empty list = a marked loop)

  bool is_link() const { return vertices.empty(); }
  bool operator==(const Diagram&) const = default;

  int total_loops() const { return free_loops + marked_loops; }

  void validate() const;       // throws Error on bad structure
  std::string serialize() const;
  static Diagram parse(const std::string& text);
};

// Connected component of the underlying spatial graph (arcs glued through
// crossings and at shared vertices). Loop components contributed by
// free_loops/marked_loops have empty edge sets.
struct ComponentInfo {
  std::set<std::string> edges;
  bool closed = true;
};
std::vector<ComponentInfo> components(const Diagram& d);

// One pass of a closed strand through a crossing: the slot it enters at.
struct StrandPass {
  int crossing = 0;
  int enter_slot = 0;
  bool operator==(const StrandPass&) const = default;
};
// Closed strand of a vertex-free diagram. arcs[i] is the arc entering
// passes[i]; the arc leaving passes[i] is arcs[(i+1) % n].
struct Strand {
  std::vector<int> arcs;
  std::vector<StrandPass> passes;
};
// Decompose a vertex-free diagram into closed strands (free loops excluded).
std::vector<Strand> link_strands(const Diagram& d);

// Deterministic canonical form: arcs relabeled in first-traversal order,
// tuples normalized and sorted. Byte-reproducible for equal inputs.
Diagram canonical(const Diagram& d);

// Apply an arc-label bijection.
Diagram relabel(const Diagram& d, const std::map<int, int>& bijection);

// Reduce by curl removal and cancelling-bigon removal, converting
// crossing-free circles to loops. bracket(input) = kink_factor * bracket(output).
struct SimplifyResult {
  Diagram diagram;
  Laurent kink_factor;
};
SimplifyResult simplify_traced(const Diagram& d);
Diagram simplify(const Diagram& d);

// Recompute a canonical edge partition (maximal strands between vertices).
std::map<int, std::string> compute_edges(const Diagram& d);

// Rebuild a vertex-free diagram from closed walks keeping only the listed
// crossings. Each walk is the ordered pass list of one closed curve; every
// kept crossing must be visited exactly twice in total. Walks with no kept
// pass become loops. Used by sublink extraction and vertex resolution.
struct RebuiltDiagram {
  std::vector<CrossingTuple> crossings;     // one per kept crossing, renumbered arcs
  std::vector<std::vector<int>> walk_arcs;  // new arcs per walk (empty = loop)
};
RebuiltDiagram rebuild_from_walks(const std::vector<std::vector<StrandPass>>& walks,
                                  const std::set<int>& kept);

namespace detail {
// Remove the listed crossings and re-join their arcs along the given pairs;
// label classes left with no occurrence become loops (marked loops when their
// edge carries a mark). Shared by simplify and the bracket skein step.
Diagram splice(const Diagram& d, const std::set<int>& removed,
               const std::vector<std::pair<int, int>>& joins);
}  // namespace detail

}  // namespace templink
