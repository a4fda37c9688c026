#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "templink/diagram.hpp"
#include "templink/link_invariants.hpp"
#include "templink/ssf.hpp"
#include "templink/tau.hpp"
#include "templink/template_spec.hpp"

namespace {

using namespace templink;
using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("MalformedDocument", "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& doc, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << doc << "\n";
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Error("MalformedDocument", "cannot write " + out_path);
  out << doc << "\n";
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

bool looks_like_spec(const std::string& text) {
  try {
    json j = json::parse(text);
    return j.is_object() && (j.contains("bands") || j.contains("branch_lines") ||
                             j.contains("splitters"));
  } catch (const json::exception&) {
    return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "templink: isotopy invariants of embedded templates and simple Smale "
      "flows (boundary graphs, Kauffman bracket fingerprints, tau sets)"};
  app.require_subcommand(1);

  std::string in_path, in_path2, out_path, branch, input_port = "front";
  std::string alpha, kind, catalog_name;
  int max_vertices = 12, max_crossings = 24;
  int cat_m = 0, cat_n = 0;
  bool with_multiset = false, oracle = false;

  auto* c_validate = app.add_subcommand("validate", "check a spec or diagram file");
  c_validate->add_option("file", in_path)->required();

  auto* c_boundary =
      app.add_subcommand("boundary", "boundary spatial graph of a template spec");
  c_boundary->add_option("file", in_path)->required();
  c_boundary->add_option("-o,--output", out_path);

  auto add_tau_flags = [&](CLI::App* c) {
    c->add_flag("--multiset", with_multiset, "include outcome counts");
    c->add_flag("--oracle", oracle, "route brackets through the state-sum oracle");
    c->add_option("--max-vertices", max_vertices, "3^V enumeration guard");
    c->add_option("--max-crossings", max_crossings, "bracket crossing guard");
    c->add_option("-o,--output", out_path);
  };

  auto* c_tau = app.add_subcommand("tau", "Kauffman invariant of a spatial graph diagram");
  c_tau->add_option("file", in_path)->required();
  add_tau_flags(c_tau);

  auto* c_tau_alpha =
      app.add_subcommand("tau-alpha", "generalized invariant along a subgraph alpha");
  c_tau_alpha->add_option("file", in_path)->required();
  c_tau_alpha->add_option("--alpha", alpha, "comma-separated edge ids of alpha")
      ->required();
  add_tau_flags(c_tau_alpha);

  auto* c_ssf = app.add_subcommand("ssf", "tau and marked tau_a of an SSF spec");
  c_ssf->add_option("file", in_path)->required();
  add_tau_flags(c_ssf);

  auto* c_compare = app.add_subcommand("compare", "compare two tau set files");
  c_compare->add_option("a", in_path)->required();
  c_compare->add_option("b", in_path2)->required();

  auto* c_catalog = app.add_subcommand("catalog", "emit a catalog template spec");
  c_catalog->add_option("name", catalog_name, "family name (L)")->required();
  c_catalog->add_option("m", cat_m)->required();
  c_catalog->add_option("n", cat_n)->required();
  c_catalog->add_option("-o,--output", out_path);

  auto* c_move = app.add_subcommand("move", "apply a template move to a spec");
  c_move->add_option("kind", kind, "switch or split")->required();
  c_move->add_option("file", in_path)->required();
  c_move->add_option("--branch", branch, "branch line id")->required();
  c_move->add_option("--input", input_port, "front or back (split only)");
  c_move->add_option("-o,--output", out_path);

  CLI11_PARSE(app, argc, argv);

  try {
    TauOptions opts;
    opts.max_vertices = max_vertices;
    opts.fp.guard = max_crossings;
    opts.fp.oracle = oracle;
    opts.with_multiset = with_multiset;

    if (*c_validate) {
      std::string text = read_file(in_path);
      if (looks_like_spec(text)) {
        TemplateSpec::parse(text);
        emit(R"({"kind":"spec","ok":true})", out_path);
        std::cerr << "valid template spec\n";
      } else {
        Diagram::parse(text);
        emit(R"({"kind":"diagram","ok":true})", out_path);
        std::cerr << "valid diagram\n";
      }
    } else if (*c_boundary) {
      TemplateSpec spec = TemplateSpec::parse(read_file(in_path));
      Diagram d = boundary_graph(spec);
      emit(d.serialize(), out_path);
      std::cerr << "boundary graph: " << d.crossings.size() << " crossings, "
                << d.vertices.size() << " vertices\n";
    } else if (*c_tau) {
      Diagram g = Diagram::parse(read_file(in_path));
      TauSet t = tau_set(g, opts);
      emit(t.serialize(with_multiset), out_path);
      std::cerr << "tau: " << t.set.size() << " link types over "
                << t.outcomes_total << " nonempty outcomes\n";
    } else if (*c_tau_alpha) {
      Diagram g = Diagram::parse(read_file(in_path));
      TauSet t = tau_alpha(g, split_csv(alpha), opts);
      emit(t.serialize(with_multiset), out_path);
      std::cerr << "tau_alpha: " << t.set.size() << " link types over "
                << t.outcomes_total << " outcomes\n";
    } else if (*c_ssf) {
      SsfInstance inst = SsfInstance::parse(read_file(in_path));
      SsfReport rep = tau_attractor(inst, opts);
      emit(rep.serialize(with_multiset), out_path);
      std::cerr << "tau_a: " << rep.tau_a.set.size() << " marked link types; tau: "
                << rep.tau.set.size() << " link types\n";
    } else if (*c_compare) {
      TauSet a = TauSet::parse(read_file(in_path));
      TauSet b = TauSet::parse(read_file(in_path2));
      Verdict v = compare_tau(a, b);
      json j;
      j["verdict"] = v == Verdict::Distinct ? "distinct" : "indistinguishable";
      j["text"] = verdict_text(v);
      emit(j.dump(), out_path);
      std::cerr << verdict_text(v) << "\n";
      if (v == Verdict::Distinct) return 3;
    } else if (*c_catalog) {
      if (catalog_name != "L")
        throw Error("MalformedDocument", "unknown catalog family " + catalog_name);
      emit(catalog(cat_m, cat_n).serialize(), out_path);
      std::cerr << "catalog L(" << cat_m << "," << cat_n << ")\n";
    } else if (*c_move) {
      TemplateSpec spec = TemplateSpec::parse(read_file(in_path));
      TemplateSpec out;
      if (kind == "switch")
        out = switch_move(spec, branch);
      else if (kind == "split")
        out = split_move(spec, branch, input_port);
      else
        throw Error("MalformedDocument", "move kind must be switch or split");
      emit(out.serialize(), out_path);
      std::cerr << kind << " move applied at " << branch << "\n";
    }
  } catch (const Error& e) {
    json j;
    j["error"] = e.code();
    j["message"] = e.what();
    std::cerr << j.dump() << "\n";
    return e.exit_status();
  } catch (const std::exception& e) {
    json j;
    j["error"] = "Internal";
    j["message"] = e.what();
    std::cerr << j.dump() << "\n";
    return 1;
  }
  return 0;
}
