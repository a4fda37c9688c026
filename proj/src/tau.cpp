#include "templink/tau.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <functional>
#include <map>
#include <thread>

namespace templink {

namespace {

using nlohmann::json;

// arc endpoint: a slot of a crossing (kind 0) or of a vertex (kind 1)
struct End {
  int kind, idx, slot;
  bool operator==(const End&) const = default;
};

struct Resolution {
  std::optional<Diagram> diagram;  // nullopt when nothing closed survives
  std::vector<std::set<std::string>> walk_edges;  // original edges, per closed walk
};

Resolution resolve_full(const Diagram& g, const std::vector<int>& choice) {
  if ((int)choice.size() != (int)g.vertices.size())
    throw Error("ChoiceIncomplete", "one replacement choice per vertex required");
  for (int c : choice)
    if (c < 0 || c > 2) throw Error("ChoiceIncomplete", "choices are 0, 1 or 2");

  std::map<int, std::vector<End>> ends;
  for (int c = 0; c < (int)g.crossings.size(); ++c)
    for (int s = 0; s < 4; ++s) ends[g.crossings[c][s]].push_back({0, c, s});
  for (int v = 0; v < (int)g.vertices.size(); ++v)
    for (int s = 0; s < 3; ++s) ends[g.vertices[v][s]].push_back({1, v, s});

  std::set<int> visited;
  // step from an arrival endpoint; returns false at a free end
  struct Next {
    bool open;
    int arc;
    End arrival;
    std::optional<StrandPass> pass;
  };
  auto advance = [&](const End& at) -> Next {
    int out_arc;
    End depart;
    std::optional<StrandPass> pass;
    if (at.kind == 0) {
      int s2 = (at.slot + 2) % 4;
      out_arc = g.crossings[at.idx][s2];
      depart = {0, at.idx, s2};
      pass = StrandPass{at.idx, at.slot};
    } else {
      if (choice[at.idx] == at.slot) return {true, 0, {}, {}};
      int s2 = 3 - at.slot - choice[at.idx];
      out_arc = g.vertices[at.idx][s2];
      depart = {1, at.idx, s2};
    }
    const auto& two = ends.at(out_arc);
    End arrival = (two[0] == depart) ? two[1] : two[0];
    return {false, out_arc, arrival, pass};
  };

  // erase open components: walk away from every dropped vertex slot
  for (int v = 0; v < (int)g.vertices.size(); ++v) {
    int s = choice[v];
    int arc = g.vertices[v][s];
    if (visited.count(arc)) continue;
    End depart{1, v, s};
    const auto& two = ends.at(arc);
    End at = (two[0] == depart) ? two[1] : two[0];
    visited.insert(arc);
    for (;;) {
      Next n = advance(at);
      if (n.open) break;
      visited.insert(n.arc);
      at = n.arrival;
    }
  }

  // remaining arcs form closed walks
  std::vector<std::vector<StrandPass>> walks;
  std::vector<std::set<std::string>> walk_edges;
  for (const auto& [start_arc, places] : ends) {
    if (visited.count(start_arc)) continue;
    std::vector<StrandPass> passes;
    std::set<std::string> edges;
    int arc = start_arc;
    End at = places[0];
    do {
      visited.insert(arc);
      edges.insert(g.edge_of_arc.at(arc));
      Next n = advance(at);
      if (n.open)
        throw Error("MalformedDocument", "closed walk reached a free end");
      if (n.pass) passes.push_back(*n.pass);
      arc = n.arc;
      at = n.arrival;
    } while (!(arc == start_arc && at == places[0]));
    walks.push_back(std::move(passes));
    walk_edges.push_back(std::move(edges));
  }

  std::map<int, int> pass_count;
  for (const auto& w : walks)
    for (const auto& p : w) pass_count[p.crossing]++;
  std::set<int> kept;
  for (const auto& [c, n] : pass_count)
    if (n == 2) kept.insert(c);
  auto rebuilt = rebuild_from_walks(walks, kept);

  auto mark_hits = [&](const std::set<std::string>& wedges) {
    std::set<std::string> names;
    for (const auto& [name, ids] : g.marked)
      for (const auto& id : ids)
        if (wedges.count(id)) names.insert(name);
    return names;
  };

  Diagram out;
  out.crossings = rebuilt.crossings;
  out.free_loops = g.free_loops;
  out.marked_loops = g.marked_loops;
  for (const auto& [name, ids] : g.marked)
    if (ids.empty()) out.marked[name] = {};
  for (int w = 0; w < (int)walks.size(); ++w) {
    auto hit = mark_hits(walk_edges[w]);
    if (rebuilt.walk_arcs[w].empty()) {
      if (hit.empty()) {
        out.free_loops++;
      } else {
        out.marked_loops++;
        for (const auto& name : hit) out.marked.emplace(name, std::vector<std::string>{});
      }
      continue;
    }
    std::string edge = "e" + std::to_string(w + 1);
    for (int a : rebuilt.walk_arcs[w]) out.edge_of_arc[a] = edge;
    for (const auto& name : hit) out.marked[name].push_back(edge);
  }

  Resolution res;
  res.walk_edges = std::move(walk_edges);
  if (!walks.empty() || out.total_loops() > 0) res.diagram = std::move(out);
  return res;
}

int thread_count() {
  if (const char* env = std::getenv("TEMPLINK_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? (int)hw : 1;
}

struct EnumResult {
  std::map<Fingerprint, long long> counts;
  long long nonempty = 0;
};

// enumerate choices [...] accepted by filter, fingerprint each nonempty
// resolution; workers share nothing and are merged in index order
TauSet enumerate_choices(
    const Diagram& g, const TauOptions& opts,
    const std::function<bool(const std::vector<int>&)>& filter,
    const std::function<bool(const Resolution&)>& outcome_filter,
    const std::optional<std::string>& mark) {
  int V = (int)g.vertices.size();
  if (V > opts.max_vertices)
    throw Error("GuardExceeded",
                "enumeration over 3^" + std::to_string(V) + " exceeds guard " +
                    std::to_string(opts.max_vertices),
                2);
  long long total = 1;
  for (int i = 0; i < V; ++i) total *= 3;

  int workers = std::min<long long>(thread_count(), total);
  std::vector<EnumResult> partial(workers);
  std::vector<std::exception_ptr> errors(workers);
  auto run = [&](int w) {
    try {
      std::vector<int> choice(V);
      for (long long idx = w; idx < total; idx += workers) {
        long long rest = idx;
        for (int v = 0; v < V; ++v) {
          choice[v] = rest % 3;
          rest /= 3;
        }
        if (filter && !filter(choice)) continue;
        Resolution res = resolve_full(g, choice);
        if (!res.diagram) continue;
        if (outcome_filter && !outcome_filter(res)) continue;
        Fingerprint fp = fingerprint(*res.diagram, mark, opts.fp);
        partial[w].counts[fp]++;
        partial[w].nonempty++;
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers <= 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::map<Fingerprint, long long> merged;
  TauSet out;
  for (int w = 0; w < workers; ++w) {
    for (const auto& [fp, n] : partial[w].counts) merged[fp] += n;
    out.outcomes_total += partial[w].nonempty;
  }
  for (const auto& [fp, n] : merged) {
    out.set.push_back(fp);
    if (opts.with_multiset) out.multiset.push_back({fp, n});
  }
  return out;
}

}  // namespace

std::optional<Diagram> resolve(const Diagram& g, const std::vector<int>& choice) {
  return resolve_full(g, choice).diagram;
}

TauSet tau_set(const Diagram& g, const TauOptions& opts) {
  return enumerate_choices(g, opts, nullptr, nullptr, std::nullopt);
}

TauSet tau_alpha(const Diagram& g, const std::vector<std::string>& alpha_edges,
                 const TauOptions& opts) {
  std::set<std::string> known;
  for (const auto& [arc, e] : g.edge_of_arc) known.insert(e);
  for (const auto& e : alpha_edges)
    if (!known.count(e))
      throw Error("NotAPath", "alpha references unknown edge " + e);
  std::set<std::string> alpha(alpha_edges.begin(), alpha_edges.end());
  if (alpha.empty() && g.marked_loops < 1)
    throw Error("NotAPath", "empty alpha requires a marked loop");

  Diagram g2 = g;
  g2.marked["__alpha"] = alpha_edges;

  // vertices where alpha has exactly two incident ends force their pairing
  std::vector<std::pair<int, int>> forced;  // (vertex, required dropped slot)
  for (int v = 0; v < (int)g.vertices.size(); ++v) {
    std::vector<int> slots;
    for (int s = 0; s < 3; ++s)
      if (alpha.count(g.edge_of_arc.at(g.vertices[v][s]))) slots.push_back(s);
    if (slots.size() == 2) forced.push_back({v, 3 - slots[0] - slots[1]});
  }
  auto filter = [&](const std::vector<int>& choice) {
    for (const auto& [v, drop] : forced)
      if (choice[v] != drop) return false;
    return true;
  };
  auto outcome_filter = [&](const Resolution& res) {
    for (const auto& e : alpha) {
      bool found = false;
      for (const auto& we : res.walk_edges)
        if (we.count(e)) found = true;
      if (!found) return false;
    }
    return true;
  };
  return enumerate_choices(g2, opts, filter, outcome_filter,
                           std::optional<std::string>("__alpha"));
}

Verdict compare_tau(const TauSet& a, const TauSet& b) {
  return a.same_set(b) ? Verdict::Indistinguishable : Verdict::Distinct;
}

std::string verdict_text(Verdict v) {
  if (v == Verdict::Distinct)
    return "distinct: the invariant sets differ, so the templates are not "
           "ambient isotopic";
  return "indistinguishable by implemented invariants: equal sets are "
         "necessary but not sufficient for ambient isotopy of the boundary "
         "graphs";
}

nlohmann::json TauSet::to_json(bool with_multiset) const {
  json j;
  j["outcomes_total"] = outcomes_total;
  j["set"] = json::array();
  for (const auto& fp : set) j["set"].push_back(fp.to_json());
  if (with_multiset) {
    j["multiset"] = json::array();
    for (const auto& [fp, n] : multiset)
      j["multiset"].push_back(json::array({fp.to_json(), n}));
  }
  return j;
}

std::string TauSet::serialize(bool with_multiset) const {
  return to_json(with_multiset).dump();
}

TauSet TauSet::from_json(const nlohmann::json& j) {
  try {
    TauSet t;
    t.outcomes_total = j.at("outcomes_total").get<long long>();
    for (const auto& fp : j.at("set")) t.set.push_back(Fingerprint::from_json(fp));
    if (j.contains("multiset"))
      for (const auto& row : j["multiset"])
        t.multiset.push_back(
            {Fingerprint::from_json(row.at(0)), row.at(1).get<long long>()});
    return t;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error("MalformedDocument", std::string("bad tau set: ") + e.what());
  }
}

TauSet TauSet::parse(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error("MalformedDocument", e.what());
  }
  return from_json(j);
}

}  // namespace templink
