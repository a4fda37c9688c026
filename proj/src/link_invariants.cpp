#include "templink/link_invariants.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace templink {

namespace {

using nlohmann::json;

Laurent bracket_rec(const Diagram& d, std::map<std::string, Laurent>& memo) {
  auto red = simplify_traced(d);
  const Diagram& r = red.diagram;
  if (r.crossings.empty()) {
    int n = r.total_loops();
    return n == 0 ? red.kink_factor
                  : red.kink_factor * Laurent::circle().pow(n - 1);
  }
  std::string key = canonical(r).serialize();
  auto it = memo.find(key);
  if (it != memo.end()) return red.kink_factor * it->second;

  const CrossingTuple t = r.crossings[0];
  Diagram a = detail::splice(r, {0}, {{t[0], t[1]}, {t[2], t[3]}});
  Diagram b = detail::splice(r, {0}, {{t[1], t[2]}, {t[3], t[0]}});
  Laurent val = Laurent::monomial(1, 1) * bracket_rec(a, memo) +
                Laurent::monomial(1, -1) * bracket_rec(b, memo);
  memo.emplace(std::move(key), val);
  return red.kink_factor * val;
}

// the two strand passes through each crossing, as (strand index, pass index)
std::vector<std::array<std::pair<int, int>, 2>> passes_by_crossing(
    const Diagram& d, const std::vector<Strand>& strands) {
  std::vector<std::array<std::pair<int, int>, 2>> out(d.crossings.size(),
                                                      {{{-1, -1}, {-1, -1}}});
  std::vector<int> seen(d.crossings.size(), 0);
  for (int s = 0; s < (int)strands.size(); ++s)
    for (int p = 0; p < (int)strands[s].passes.size(); ++p) {
      int c = strands[s].passes[p].crossing;
      out[c][seen[c]++] = {s, p};
    }
  return out;
}

// crossing sign once both strands are oriented; +1 iff the oriented incoming
// pair (under slot, over slot) is (0,3) or (2,1)
int crossing_sign(const Diagram& d, const std::vector<Strand>& strands,
                  const std::array<std::pair<int, int>, 2>& who,
                  const std::vector<int>& ori, int crossing) {
  int u_in = -1, o_in = -1;
  for (const auto& [s, p] : who) {
    int slot = strands[s].passes[p].enter_slot;
    if (ori[s] < 0) slot = (slot + 2) % 4;
    (slot % 2 == 0 ? u_in : o_in) = slot;
  }
  (void)d;
  (void)crossing;
  return ((u_in == 0 && o_in == 3) || (u_in == 2 && o_in == 1)) ? 1 : -1;
}

}  // namespace

Laurent kauffman_bracket(const Diagram& d, int guard) {
  if (!d.is_link())
    throw Error("DiagramHasVertices", "bracket is defined on link diagrams");
  auto red = simplify_traced(d);
  if ((int)red.diagram.crossings.size() > guard)
    throw Error("GuardExceeded",
                "bracket guard: " + std::to_string(red.diagram.crossings.size()) +
                    " crossings after reduction, limit " + std::to_string(guard),
                2);
  std::map<std::string, Laurent> memo;
  return bracket_rec(d, memo);
}

Laurent oracle_statesum(const Diagram& d, int guard) {
  if (!d.is_link())
    throw Error("DiagramHasVertices", "state sum is defined on link diagrams");
  int n = (int)d.crossings.size();
  if (n > guard)
    throw Error("TooLarge",
                "state sum over 2^" + std::to_string(n) + " states exceeds guard",
                2);
  if (n == 0)
    return d.total_loops() == 0 ? Laurent::one()
                                : Laurent::circle().pow(d.total_loops() - 1);
  Laurent total;
  for (long long state = 0; state < (1LL << n); ++state) {
    std::map<int, int> parent;
    std::function<int(int)> find = [&](int a) {
      parent.emplace(a, a);
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    auto unite = [&](int a, int b) {
      a = find(a);
      b = find(b);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    };
    int exp = 0;
    for (int c = 0; c < n; ++c) {
      const auto& t = d.crossings[c];
      for (int a : t) find(a);
      if (state >> c & 1) {  // B smoothing
        unite(t[1], t[2]);
        unite(t[3], t[0]);
        exp -= 1;
      } else {  // A smoothing
        unite(t[0], t[1]);
        unite(t[2], t[3]);
        exp += 1;
      }
    }
    std::set<int> classes;
    for (const auto& [a, p] : parent) classes.insert(find(a));
    int circles = (int)classes.size() + d.total_loops();
    total += Laurent::monomial(1, exp) * Laurent::circle().pow(circles - 1);
  }
  return total;
}

std::vector<int> linking_profile(const Diagram& d) {
  auto strands = link_strands(d);
  auto who = passes_by_crossing(d, strands);
  std::vector<int> ori(strands.size(), 1);
  std::map<std::pair<int, int>, int> pair_sum;
  for (int c = 0; c < (int)d.crossings.size(); ++c) {
    auto [p0, p1] = std::pair{who[c][0], who[c][1]};
    if (p0.first == p1.first) continue;
    auto key = std::minmax(p0.first, p1.first);
    pair_sum[{key.first, key.second}] += crossing_sign(d, strands, who[c], ori, c);
  }
  int total = (int)strands.size() + d.total_loops();
  std::vector<int> profile;
  for (int i = 0; i < total; ++i)
    for (int j = i + 1; j < total; ++j) {
      int sum = 0;
      if (auto it = pair_sum.find({i, j}); it != pair_sum.end()) sum = it->second;
      if (sum % 2 != 0)
        throw Error("NonrealizableDiagram",
                    "odd inter-component crossing sum; diagram is not planar");
      profile.push_back(std::abs(sum) / 2);
    }
  std::sort(profile.begin(), profile.end());
  return profile;
}

std::vector<Laurent> jones_canonical(const Diagram& d, int guard, bool oracle) {
  Laurent br = oracle ? oracle_statesum(d, guard) : kauffman_bracket(d, guard);
  auto strands = link_strands(d);
  auto who = passes_by_crossing(d, strands);
  int s = (int)strands.size();
  std::vector<Laurent> forms;
  long long sweeps = s > 0 ? (1LL << (s - 1)) : 1;
  for (long long bits = 0; bits < sweeps; ++bits) {
    std::vector<int> ori(s, 1);
    for (int i = 1; i < s; ++i)
      if (bits >> (i - 1) & 1) ori[i] = -1;
    int writhe = 0;
    for (int c = 0; c < (int)d.crossings.size(); ++c)
      writhe += crossing_sign(d, strands, who[c], ori, c);
    forms.push_back(Laurent::neg_a3_pow(-writhe) * br);
  }
  std::sort(forms.begin(), forms.end());
  forms.erase(std::unique(forms.begin(), forms.end()), forms.end());
  return forms;
}

Diagram restrict_to_components(const Diagram& d, const std::set<int>& keep,
                               int loops, int marked_loops) {
  auto strands = link_strands(d);
  std::vector<int> pass_count(d.crossings.size(), 0);
  for (int s : keep)
    for (const auto& p : strands[s].passes) pass_count[p.crossing]++;
  std::set<int> kept_crossings;
  for (int c = 0; c < (int)d.crossings.size(); ++c)
    if (pass_count[c] == 2) kept_crossings.insert(c);

  std::vector<std::vector<StrandPass>> walks;
  for (int s : keep) walks.push_back(strands[s].passes);
  auto rebuilt = rebuild_from_walks(walks, kept_crossings);

  Diagram out;
  out.crossings = rebuilt.crossings;
  out.free_loops = loops;
  out.marked_loops = marked_loops;
  int widx = 0;
  for (const auto& arcs : rebuilt.walk_arcs) {
    ++widx;
    if (arcs.empty()) {
      out.free_loops++;
      continue;
    }
    for (int a : arcs) out.edge_of_arc[a] = "e" + std::to_string(widx);
  }
  return out;
}

namespace {

// expects strands and loop bookkeeping of d; m = marked strand index, or -1
// when the mark sits on a crossing-free loop
MarkedData marked_data(const Diagram& d, const std::vector<Strand>& strands,
                       int m, const FingerprintOptions& opts) {
  auto who = passes_by_crossing(d, strands);
  std::vector<int> ori(strands.size(), 1);
  MarkedData md;
  int s = (int)strands.size();
  int loops = d.total_loops();
  if (m >= 0) {
    md.component_forms =
        jones_canonical(restrict_to_components(d, {m}), opts.guard, opts.oracle);
    for (int t = 0; t < s; ++t) {
      if (t == m) continue;
      int sum = 0;
      for (int c = 0; c < (int)d.crossings.size(); ++c) {
        auto ids = std::minmax(who[c][0].first, who[c][1].first);
        if (ids == std::minmax(m, t))
          sum += crossing_sign(d, strands, who[c], ori, c);
      }
      if (sum % 2 != 0)
        throw Error("NonrealizableDiagram",
                    "odd inter-component crossing sum; diagram is not planar");
      md.linking.push_back(std::abs(sum) / 2);
      md.pair_forms.push_back(
          jones_canonical(restrict_to_components(d, {m, t}), opts.guard, opts.oracle));
    }
    for (int l = 0; l < loops; ++l) {
      md.linking.push_back(0);
      md.pair_forms.push_back(
          jones_canonical(restrict_to_components(d, {m}, 1), opts.guard, opts.oracle));
    }
  } else {
    md.component_forms = {Laurent::one()};
    for (int t = 0; t < s; ++t) {
      md.linking.push_back(0);
      md.pair_forms.push_back(
          jones_canonical(restrict_to_components(d, {t}, 1), opts.guard, opts.oracle));
    }
    for (int l = 0; l < loops - 1; ++l) {
      md.linking.push_back(0);
      md.pair_forms.push_back(
          jones_canonical(restrict_to_components(d, {}, 2), opts.guard, opts.oracle));
    }
  }
  std::sort(md.linking.begin(), md.linking.end());
  std::sort(md.pair_forms.begin(), md.pair_forms.end());
  return md;
}

}  // namespace

Fingerprint fingerprint(const Diagram& d, const std::optional<std::string>& mark,
                        const FingerprintOptions& opts) {
  if (!d.is_link())
    throw Error("DiagramHasVertices", "fingerprints are taken on link diagrams");
  auto strands = link_strands(d);
  Fingerprint fp;
  fp.components = (int)strands.size() + d.total_loops();
  fp.linking = linking_profile(d);
  fp.jones_forms = jones_canonical(d, opts.guard, opts.oracle);
  if (mark) {
    auto it = d.marked.find(*mark);
    if (it == d.marked.end())
      throw Error("MarkedComponentMissing", "no mark named " + *mark);
    int m = -1;
    if (!it->second.empty()) {
      std::set<std::string> edges(it->second.begin(), it->second.end());
      for (int s = 0; s < (int)strands.size(); ++s)
        for (int a : strands[s].arcs)
          if (edges.count(d.edge_of_arc.at(a))) m = s;
      if (m < 0)
        throw Error("MarkedComponentMissing",
                    "mark " + *mark + " touches no component");
    } else if (d.marked_loops < 1) {
      throw Error("MarkedComponentMissing",
                  "mark " + *mark + " names a loop but marked_loops is 0");
    }
    fp.marked = marked_data(d, strands, m, opts);
  }
  return fp;
}

nlohmann::json Fingerprint::to_json() const {
  json j;
  j["components"] = components;
  j["linking_profile"] = linking;
  j["jones_forms"] = json::array();
  for (const auto& f : jones_forms) j["jones_forms"].push_back(f.str());
  if (marked) {
    json m;
    m["component_forms"] = json::array();
    for (const auto& f : marked->component_forms)
      m["component_forms"].push_back(f.str());
    m["linking"] = marked->linking;
    m["pair_forms"] = json::array();
    for (const auto& pf : marked->pair_forms) {
      json row = json::array();
      for (const auto& f : pf) row.push_back(f.str());
      m["pair_forms"].push_back(row);
    }
    j["marked"] = m;
  }
  return j;
}

std::string Fingerprint::serialize() const { return to_json().dump(); }

Fingerprint Fingerprint::from_json(const nlohmann::json& j) {
  try {
    Fingerprint fp;
    fp.components = j.at("components").get<int>();
    fp.linking = j.at("linking_profile").get<std::vector<int>>();
    for (const auto& s : j.at("jones_forms"))
      fp.jones_forms.push_back(Laurent::parse(s.get<std::string>()));
    if (j.contains("marked")) {
      MarkedData md;
      const auto& m = j["marked"];
      for (const auto& s : m.at("component_forms"))
        md.component_forms.push_back(Laurent::parse(s.get<std::string>()));
      md.linking = m.at("linking").get<std::vector<int>>();
      for (const auto& row : m.at("pair_forms")) {
        std::vector<Laurent> forms;
        for (const auto& s : row) forms.push_back(Laurent::parse(s.get<std::string>()));
        md.pair_forms.push_back(std::move(forms));
      }
      fp.marked = std::move(md);
    }
    return fp;
  } catch (const std::exception& e) {
    throw Error("MalformedDocument", std::string("bad fingerprint: ") + e.what());
  }
}

}  // namespace templink
