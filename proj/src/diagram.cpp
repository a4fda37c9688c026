#include "templink/diagram.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace templink {

namespace {

using nlohmann::json;

// union-find over arbitrary int labels, representative = smallest member
struct ArcDsu {
  std::map<int, int> parent;
  void add(int a) { parent.emplace(a, a); }
  int find(int a) {
    add(a);
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[b] = a;
  }
};

struct EdgeDsu {
  std::map<std::string, std::string> parent;
  void add(const std::string& e) { parent.emplace(e, e); }
  std::string find(std::string e) {
    add(e);
    while (parent[e] != e) e = parent[e] = parent[parent[e]];
    return e;
  }
  void unite(const std::string& a, const std::string& b) {
    auto ra = find(a), rb = find(b);
    if (ra == rb) return;
    if (rb < ra) std::swap(ra, rb);
    parent[rb] = ra;
  }
};

std::map<int, int> occurrences(const Diagram& d) {
  std::map<int, int> occ;
  for (const auto& c : d.crossings)
    for (int a : c) occ[a]++;
  for (const auto& v : d.vertices)
    for (int a : v) occ[a]++;
  return occ;
}

// rotate a crossing tuple by 0 or 2 (the two equivalent readings of an
// unoriented crossing), keeping the lexicographically smaller one
CrossingTuple normalize_crossing(const CrossingTuple& t) {
  CrossingTuple r{t[2], t[3], t[0], t[1]};
  return std::min(t, r);
}

VertexTuple normalize_vertex(const VertexTuple& t) {
  VertexTuple best = t;
  VertexTuple cur = t;
  for (int i = 0; i < 2; ++i) {
    cur = {cur[1], cur[2], cur[0]};
    best = std::min(best, cur);
  }
  return best;
}

}  // namespace

void Diagram::validate() const {
  if (free_loops < 0 || marked_loops < 0)
    throw Error("MalformedDocument", "negative loop count");
  auto occ = occurrences(*this);
  for (const auto& [arc, n] : occ) {
    if (arc <= 0) throw Error("MalformedDocument", "arc labels must be positive");
    if (n != 2)
      throw Error("LabelArity", "arc " + std::to_string(arc) + " appears " +
                                    std::to_string(n) + " times, expected 2");
  }
  if (edge_of_arc.size() != occ.size() ||
      !std::all_of(occ.begin(), occ.end(),
                   [&](const auto& p) { return edge_of_arc.count(p.first); }))
    throw Error("MalformedDocument", "edge map does not cover the arc set");

  // arcs that form one strand through a crossing channel must share an edge
  ArcDsu dsu;
  for (const auto& [arc, n] : occ) dsu.add(arc);
  for (const auto& c : crossings) {
    dsu.unite(c[0], c[2]);
    dsu.unite(c[1], c[3]);
  }
  std::map<int, std::string> edge_of_class;
  std::set<std::string> used;
  for (const auto& [arc, edge] : edge_of_arc) {
    int r = dsu.find(arc);
    auto it = edge_of_class.find(r);
    if (it == edge_of_class.end()) {
      if (!used.insert(edge).second)
        throw Error("MalformedDocument", "edge " + edge + " covers two strands");
      edge_of_class.emplace(r, edge);
    } else if (it->second != edge) {
      throw Error("MalformedDocument",
                  "arcs of one strand carry different edge ids");
    }
  }
  for (const auto& [name, edges] : marked) {
    if (edges.empty()) {
      if (marked_loops < 1)
        throw Error("MarkedComponentMissing",
                    "mark " + name + " names a loop but marked_loops is 0");
      continue;
    }
    for (const auto& e : edges)
      if (!used.count(e))
        throw Error("MarkedComponentMissing",
                    "mark " + name + " references unknown edge " + e);
  }
}

std::map<int, std::string> compute_edges(const Diagram& d) {
  ArcDsu dsu;
  auto occ = occurrences(d);
  for (const auto& [arc, n] : occ) dsu.add(arc);
  for (const auto& c : d.crossings) {
    dsu.unite(c[0], c[2]);
    dsu.unite(c[1], c[3]);
  }
  // name classes in first-appearance order, vertices before crossings
  std::map<int, std::string> name_of_class;
  int next = 1;
  auto touch = [&](int arc) {
    int r = dsu.find(arc);
    if (!name_of_class.count(r))
      name_of_class[r] = "e" + std::to_string(next++);
  };
  for (const auto& v : d.vertices)
    for (int a : v) touch(a);
  for (const auto& c : d.crossings)
    for (int a : c) touch(a);
  std::map<int, std::string> out;
  for (const auto& [arc, n] : occ) out[arc] = name_of_class[dsu.find(arc)];
  return out;
}

std::string Diagram::serialize() const {
  json j;
  j["crossings"] = json::array();
  for (const auto& c : crossings) j["crossings"].push_back(c);
  j["vertices"] = json::array();
  for (const auto& v : vertices) j["vertices"].push_back(v);
  j["free_loops"] = free_loops;
  std::map<std::string, std::vector<int>> edges;
  for (const auto& [arc, e] : edge_of_arc) edges[e].push_back(arc);
  j["edges"] = json::object();
  for (const auto& [e, arcs] : edges) j["edges"][e] = arcs;
  if (!marked.empty()) {
    j["marked"] = json::object();
    for (const auto& [name, es] : marked) j["marked"][name] = es;
  }
  if (marked_loops != 0) j["marked_loops"] = marked_loops;
  return j.dump();
}

Diagram Diagram::parse(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error("MalformedDocument", e.what());
  }
  if (!j.is_object()) throw Error("MalformedDocument", "expected a JSON object");
  static const std::set<std::string> allowed = {
      "crossings", "vertices", "free_loops", "edges", "marked", "marked_loops"};
  for (const auto& [key, val] : j.items())
    if (!allowed.count(key))
      throw Error("MalformedDocument", "unknown key \"" + key + "\"");

  Diagram d;
  auto arc_of = [](const json& v) {
    if (!v.is_number_integer() || v.get<long long>() <= 0)
      throw Error("MalformedDocument", "arc labels must be positive integers");
    return v.get<int>();
  };
  if (j.contains("crossings")) {
    if (!j["crossings"].is_array())
      throw Error("MalformedDocument", "\"crossings\" must be an array");
    for (const auto& t : j["crossings"]) {
      if (!t.is_array() || t.size() != 4)
        throw Error("BadTupleSize", "crossing tuples have 4 entries");
      d.crossings.push_back({arc_of(t[0]), arc_of(t[1]), arc_of(t[2]), arc_of(t[3])});
    }
  }
  if (j.contains("vertices")) {
    if (!j["vertices"].is_array())
      throw Error("MalformedDocument", "\"vertices\" must be an array");
    for (const auto& t : j["vertices"]) {
      if (!t.is_array() || t.size() != 3)
        throw Error("BadTupleSize", "vertex tuples have 3 entries");
      d.vertices.push_back({arc_of(t[0]), arc_of(t[1]), arc_of(t[2])});
    }
  }
  if (j.contains("free_loops")) {
    if (!j["free_loops"].is_number_integer() || j["free_loops"].get<long long>() < 0)
      throw Error("MalformedDocument", "\"free_loops\" must be a non-negative integer");
    d.free_loops = j["free_loops"].get<int>();
  }
  if (j.contains("marked_loops")) {
    if (!j["marked_loops"].is_number_integer() ||
        j["marked_loops"].get<long long>() < 0)
      throw Error("MalformedDocument", "\"marked_loops\" must be a non-negative integer");
    d.marked_loops = j["marked_loops"].get<int>();
  }
  if (j.contains("edges")) {
    if (!j["edges"].is_object())
      throw Error("MalformedDocument", "\"edges\" must be an object");
    for (const auto& [name, arcs] : j["edges"].items()) {
      if (!arcs.is_array())
        throw Error("MalformedDocument", "edge arc lists must be arrays");
      for (const auto& a : arcs) {
        int arc = arc_of(a);
        if (!d.edge_of_arc.emplace(arc, name).second)
          throw Error("MalformedDocument",
                      "arc " + std::to_string(arc) + " listed in two edges");
      }
    }
  } else {
    d.edge_of_arc = compute_edges(d);
  }
  if (j.contains("marked")) {
    if (!j["marked"].is_object())
      throw Error("MalformedDocument", "\"marked\" must be an object");
    for (const auto& [name, es] : j["marked"].items()) {
      if (!es.is_array())
        throw Error("MalformedDocument", "mark edge lists must be arrays");
      std::vector<std::string> ids;
      for (const auto& e : es) {
        if (!e.is_string())
          throw Error("MalformedDocument", "mark edge ids must be strings");
        ids.push_back(e.get<std::string>());
      }
      d.marked[name] = ids;
    }
  }
  d.validate();
  return d;
}

std::vector<ComponentInfo> components(const Diagram& d) {
  ArcDsu dsu;
  auto occ = occurrences(d);
  for (const auto& [arc, n] : occ) dsu.add(arc);
  for (const auto& c : d.crossings) {
    dsu.unite(c[0], c[2]);
    dsu.unite(c[1], c[3]);
  }
  for (const auto& v : d.vertices) {
    dsu.unite(v[0], v[1]);
    dsu.unite(v[1], v[2]);
  }
  std::map<int, ComponentInfo> by_class;
  for (const auto& [arc, n] : occ)
    by_class[dsu.find(arc)].edges.insert(d.edge_of_arc.at(arc));
  std::vector<ComponentInfo> out;
  for (auto& [r, info] : by_class) out.push_back(std::move(info));
  for (int i = 0; i < d.total_loops(); ++i) out.push_back({});
  return out;
}

std::vector<Strand> link_strands(const Diagram& d) {
  if (!d.is_link()) throw Error("DiagramHasVertices", "strand walk needs a link diagram");
  // both slot occurrences of every arc, in scan order
  std::map<int, std::vector<std::pair<int, int>>> occ;
  for (int c = 0; c < (int)d.crossings.size(); ++c)
    for (int s = 0; s < 4; ++s) occ[d.crossings[c][s]].push_back({c, s});

  std::vector<Strand> out;
  std::set<int> visited;
  for (const auto& [start_arc, places] : occ) {
    if (visited.count(start_arc)) continue;
    Strand str;
    int arc = start_arc;
    std::pair<int, int> pass = places[0];
    do {
      visited.insert(arc);
      str.arcs.push_back(arc);
      str.passes.push_back({pass.first, pass.second});
      int exit_slot = (pass.second + 2) % 4;
      arc = d.crossings[pass.first][exit_slot];
      const auto& two = occ.at(arc);
      pass = (two[0] == std::make_pair(pass.first, exit_slot)) ? two[1] : two[0];
    } while (!(arc == start_arc && pass == places[0]));
    out.push_back(std::move(str));
  }
  return out;
}

Diagram relabel(const Diagram& d, const std::map<int, int>& bijection) {
  Diagram out = d;
  auto map = [&](int a) { return bijection.at(a); };
  for (auto& c : out.crossings) c = {map(c[0]), map(c[1]), map(c[2]), map(c[3])};
  for (auto& v : out.vertices) v = {map(v[0]), map(v[1]), map(v[2])};
  out.edge_of_arc.clear();
  for (const auto& [arc, e] : d.edge_of_arc) out.edge_of_arc[map(arc)] = e;
  return out;
}

Diagram canonical(const Diagram& d) {
  Diagram cur = d;
  for (auto& c : cur.crossings) c = normalize_crossing(c);
  for (auto& v : cur.vertices) v = normalize_vertex(v);
  std::sort(cur.crossings.begin(), cur.crossings.end());
  std::sort(cur.vertices.begin(), cur.vertices.end());
  for (int iter = 0; iter < 10; ++iter) {
    std::map<int, int> next_label;
    auto touch = [&](int a) {
      if (!next_label.count(a)) {
        int n = (int)next_label.size() + 1;
        next_label[a] = n;
      }
    };
    for (const auto& v : cur.vertices)
      for (int a : v) touch(a);
    for (const auto& c : cur.crossings)
      for (int a : c) touch(a);
    Diagram next = relabel(cur, next_label);
    for (auto& c : next.crossings) c = normalize_crossing(c);
    for (auto& v : next.vertices) v = normalize_vertex(v);
    std::sort(next.crossings.begin(), next.crossings.end());
    std::sort(next.vertices.begin(), next.vertices.end());
    bool stable = next.crossings == cur.crossings && next.vertices == cur.vertices;
    cur = std::move(next);
    if (stable) break;
  }
  return cur;
}

namespace detail {

// Remove the given crossings and re-join their arcs along the listed pairs.
// Label classes left with no occurrence become loops (marked if an edge of
// theirs carries a mark). Shared by simplify and the bracket skein step.
Diagram splice(const Diagram& d, const std::set<int>& removed,
               const std::vector<std::pair<int, int>>& joins) {
  ArcDsu dsu;
  auto occ_before = occurrences(d);
  for (const auto& [arc, n] : occ_before) dsu.add(arc);
  for (const auto& [a, b] : joins) dsu.unite(a, b);

  Diagram nd;
  nd.free_loops = d.free_loops;
  nd.marked_loops = d.marked_loops;
  for (int c = 0; c < (int)d.crossings.size(); ++c) {
    if (removed.count(c)) continue;
    const auto& t = d.crossings[c];
    nd.crossings.push_back(
        {dsu.find(t[0]), dsu.find(t[1]), dsu.find(t[2]), dsu.find(t[3])});
  }
  for (const auto& v : d.vertices)
    nd.vertices.push_back({dsu.find(v[0]), dsu.find(v[1]), dsu.find(v[2])});

  // merged label classes merge the edges they belong to
  EdgeDsu edges;
  std::map<int, std::string> edge_of_class;
  for (const auto& [arc, e] : d.edge_of_arc) {
    edges.add(e);
    int r = dsu.find(arc);
    auto it = edge_of_class.find(r);
    if (it == edge_of_class.end())
      edge_of_class.emplace(r, e);
    else
      edges.unite(it->second, e);
  }

  std::map<int, int> occ_after;
  for (const auto& c : nd.crossings)
    for (int a : c) occ_after[a]++;
  for (const auto& v : nd.vertices)
    for (int a : v) occ_after[a]++;

  std::set<std::string> circled_edges;
  std::set<int> seen_class;
  for (const auto& [arc, n] : occ_before) {
    int r = dsu.find(arc);
    if (!seen_class.insert(r).second) continue;
    if (occ_after.count(r)) {
      nd.edge_of_arc[r] = edges.find(edge_of_class.at(r));
      continue;
    }
    std::string e = edges.find(edge_of_class.at(r));
    circled_edges.insert(e);
    bool is_marked = false;
    for (const auto& [name, ids] : d.marked)
      for (const auto& id : ids)
        if (edges.find(id) == e) is_marked = true;
    if (is_marked)
      nd.marked_loops++;
    else
      nd.free_loops++;
  }
  for (const auto& [name, ids] : d.marked) {
    std::vector<std::string> kept;
    for (const auto& id : ids) {
      std::string e = edges.find(id);
      if (circled_edges.count(e)) continue;
      if (std::find(kept.begin(), kept.end(), e) == kept.end()) kept.push_back(e);
    }
    nd.marked[name] = kept;
  }
  return nd;
}

}  // namespace detail

SimplifyResult simplify_traced(const Diagram& d) {
  Diagram cur = d;
  Laurent factor = Laurent::one();
  for (;;) {
    // first Reidemeister: a tuple repeating an arc in adjacent slots is a curl
    bool moved = false;
    for (int c = 0; c < (int)cur.crossings.size() && !moved; ++c) {
      const auto& t = cur.crossings[c];
      int kink = 0;
      if (t[0] == t[1] || t[2] == t[3])
        kink = 1;
      else if (t[1] == t[2] || t[3] == t[0])
        kink = -1;
      if (!kink) continue;
      factor *= Laurent::neg_a3_pow(kink);
      cur = detail::splice(cur, {c}, {{t[0], t[2]}, {t[1], t[3]}});
      moved = true;
    }
    if (moved) continue;

    // second Reidemeister: arc x over at both crossings, y under at both,
    // and the two crossings wind oppositely
    auto dir = [](int u, int o) { return (u + 1) % 4 == o; };
    for (int i = 0; i < (int)cur.crossings.size() && !moved; ++i) {
      for (int j = i + 1; j < (int)cur.crossings.size() && !moved; ++j) {
        const auto &a = cur.crossings[i], &b = cur.crossings[j];
        for (int oi : {1, 3}) {
          for (int oj : {1, 3}) {
            if (a[oi] != b[oj]) continue;
            for (int ui : {0, 2}) {
              for (int uj : {0, 2}) {
                if (a[ui] != b[uj] || a[ui] == a[oi]) continue;
                if (dir(ui, oi) == dir(uj, oj)) continue;
                cur = detail::splice(cur, {i, j},
                                     {{a[0], a[2]},
                                      {a[1], a[3]},
                                      {b[0], b[2]},
                                      {b[1], b[3]}});
                moved = true;
                if (moved) break;
              }
              if (moved) break;
            }
            if (moved) break;
          }
          if (moved) break;
        }
      }
    }
    if (!moved) break;
  }
  return {std::move(cur), std::move(factor)};
}

Diagram simplify(const Diagram& d) { return simplify_traced(d).diagram; }

RebuiltDiagram rebuild_from_walks(const std::vector<std::vector<StrandPass>>& walks,
                                  const std::set<int>& kept) {
  RebuiltDiagram out;
  std::map<int, CrossingTuple> tuples;
  std::map<int, std::array<bool, 4>> filled;
  for (int c : kept) {
    tuples[c] = {0, 0, 0, 0};
    filled[c] = {false, false, false, false};
  }
  int next_arc = 1;
  for (const auto& walk : walks) {
    std::vector<StrandPass> mine;
    for (const auto& p : walk)
      if (kept.count(p.crossing)) mine.push_back(p);
    std::vector<int> arcs;
    for (int k = 0; k < (int)mine.size(); ++k) arcs.push_back(next_arc++);
    for (int k = 0; k < (int)mine.size(); ++k) {
      const auto& p = mine[k];
      int in_arc = arcs[k];
      int out_arc = arcs[(k + 1) % arcs.size()];
      auto set = [&](int slot, int arc) {
        if (filled[p.crossing][slot])
          throw Error("MalformedDocument", "rebuild visits a crossing slot twice");
        tuples[p.crossing][slot] = arc;
        filled[p.crossing][slot] = true;
      };
      set(p.enter_slot, in_arc);
      set((p.enter_slot + 2) % 4, out_arc);
    }
    out.walk_arcs.push_back(std::move(arcs));
  }
  for (const auto& [c, f] : filled)
    if (!(f[0] && f[1] && f[2] && f[3]))
      throw Error("MalformedDocument", "rebuild left a crossing slot unfilled");
  for (const auto& [c, t] : tuples) out.crossings.push_back(t);
  return out;
}

}  // namespace templink
