#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sgf/catalog.hpp"
#include "sgf/io.hpp"
#include "sgf/iso.hpp"
#include "sgf/latin.hpp"
#include "sgf/shift.hpp"
#include "sgf/stategroup.hpp"
#include "sgf/subdirect.hpp"
#include "sgf/sweep.hpp"
#include "sgf/trellis.hpp"

namespace fs = std::filesystem;
using namespace sgf;

namespace {

enum Exit { kOk = 0, kVerify = 2, kExhausted = 3, kIo = 4 };

struct Options {
  bool json = false;
  int threads = 1;
  int iso_bound = kIsoBound;
};

// One command's result: exit code, JSON body and the plain-text rendering.
struct Outcome {
  int code = kOk;
  Json body = Json::object();
  std::ostringstream text;

  void fail(int c) { code = std::max(code, c); }
  void report(const std::string& key, const Report& r) {
    body[key] = report_to_json(r);
    text << r.text();
    if (!r.ok()) fail(kVerify);
  }
};

int exit_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::Io:
    case ErrorKind::Schema:
    case ErrorKind::NotFound:
      return kIo;
    case ErrorKind::BoundExceeded:
    case ErrorKind::OrderBoundExceeded:
      return kExhausted;
    default:
      return kVerify;
  }
}

fs::path base_of(const std::string& file) { return fs::absolute(fs::path(file)).parent_path(); }

ShiftStructure load_structure(const std::string& file) {
  return structure_from_json(read_json_file(file), base_of(file));
}

TrellisSpec load_trellis(const std::string& file) { return trellis_from_json(read_json_file(file), base_of(file)); }

// Inline JSON when the argument starts with '[' or '{', else a file.
Json inline_or_file(const std::string& arg) {
  if (!arg.empty() && (arg.front() == '[' || arg.front() == '{')) {
    try {
      return Json::parse(arg);
    } catch (const Json::parse_error& e) {
      throw Error(ErrorKind::Schema, std::string("inline JSON: ") + e.what());
    }
  }
  return read_json_file(arg);
}

GroupHom load_hom(const std::string& arg) { return hom_from_json(inline_or_file(arg)); }

void emit_json(const Options& o, Outcome& out, const std::string& file, const Json& j) {
  if (file.empty()) {
    out.body["result"] = j;
    if (!o.json) out.text << j.dump(1) << "\n";
  } else {
    write_json_file(file, j);
    out.text << "wrote " << file << "\n";
  }
}

void write_text(const std::string& file, const std::string& s) {
  std::ofstream f(file);
  if (!f) throw Error(ErrorKind::Io, "cannot write " + file);
  f << s;
}

std::string opt_int(const std::optional<int>& v) { return v ? std::to_string(*v) : "none"; }
Json opt_json(const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); }

void print_square(std::ostream& out, const LatinSquare& sq) {
  for (const auto& row : sq) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? " " : "") << row[c];
    out << "\n";
  }
}

// ---- commands ----

void cmd_gen_catalog(const Options&, Outcome& out, int max_order, const std::string& dir) {
  Catalog cat = generate_catalog(max_order);
  write_catalog(cat, dir);
  Json names = Json::array();
  for (const auto& e : cat.entries()) names.push_back(e.name);
  out.body["groups"] = names;
  out.body["count"] = cat.entries().size();
  out.text << cat.entries().size() << " groups written to " << dir << "\n";
  for (const auto& e : cat.entries()) out.text << e.name << " " << e.group.order() << "\n";
}

void cmd_validate_group(const Options&, Outcome& out, const std::string& ref) {
  FiniteGroup g = load_group(ref);
  out.body["order"] = g.order();
  out.body["abelian"] = g.is_abelian();
  out.body["solvable"] = is_solvable(g);
  std::string match;
  if (g.order() <= default_catalog().max_order())
    for (const auto* e : default_catalog().of_order(g.order()))
      if (isomorphic(g, e->group)) {
        match = e->name;
        break;
      }
  out.body["catalog_match"] = match.empty() ? Json(nullptr) : Json(match);
  out.text << "valid group of order " << g.order() << (g.is_abelian() ? ", abelian" : "")
           << (is_solvable(g) ? ", solvable" : "") << (match.empty() ? "" : ", isomorphic to " + match) << "\n";
}

void cmd_find_iso(const Options& o, Outcome& out, const std::string& a, const std::string& b) {
  FiniteGroup g = load_group(a), h = load_group(b);
  IsoOptions opt;
  opt.bound = o.iso_bound;
  auto f = find_isomorphism(g, h, opt);
  if (!f) {
    out.body["isomorphic"] = false;
    out.text << "not isomorphic\n";
    out.fail(kExhausted);
    return;
  }
  out.body["isomorphic"] = true;
  out.body["map"] = hom_to_json(*f);
  out.text << "isomorphic:";
  for (int x : f->image) out.text << " " << x;
  out.text << "\n";
}

// verify -> graph -> controllability -> signature -> solvability; stops at the first failing stage.
void cmd_build_trellis(const Options&, Outcome& out, const std::string& file, const std::string& dot) {
  ShiftStructure s = load_structure(file);
  Json stages = Json::array();
  std::optional<TrellisGraph> graph;
  auto stage = [&](const std::string& name, const std::function<Report()>& run) {
    if (out.code != kOk) return;
    Report r;
    try {
      r = run();
    } catch (const Error& e) {
      r.add(name, false, e.what());
    }
    stages.push_back(Json{{"stage", name}, {"report", report_to_json(r)}});
    if (!r.ok()) {
      const Check* f = r.first_failure();
      out.text << "stage " << name << " failed: " << f->name << (f->detail.empty() ? "" : " (" + f->detail + ")")
               << "\n";
      out.body["failed_stage"] = name;
      out.fail(kVerify);
    } else {
      out.text << "stage " << name << " ok\n";
    }
  };
  stage("verify", [&] { return verify_shift_structure(s); });
  stage("graph", [&] {
    graph = build_graph_from_structure(s);
    Report r;
    r.add("graph built", true, std::to_string(graph->num_states()) + " states, " +
                                   std::to_string(graph->num_edges()) + " edges");
    return r;
  });
  stage("controllability", [&] {
    Prop1Report p = check_prop1(*graph);
    Report r;
    r.add("controllability indices agree", p.agree(), "matrix " + opt_int(p.matrix) + ", paths " +
                                                          opt_int(p.paths) + ", forward " + opt_int(p.forward) +
                                                          ", backward " + opt_int(p.backward));
    r.add("index equals chain length", p.matrix == s.ell(), "ell " + std::to_string(s.ell()));
    return r;
  });
  stage("signature", [&] { return signature_cosignature(s).certificates; });
  stage("solvability", [&] { return solvability_report(s); });
  out.body["stages"] = stages;
  out.body["ell"] = s.ell();
  out.body["ok"] = out.code == kOk;
  if (graph && !dot.empty()) {
    write_text(dot, trellis_to_dot(*graph));
    out.text << "wrote " << dot << "\n";
  }
  if (out.code == kOk) out.text << "ell = " << s.ell() << "\n";
}

void cmd_controllability(const Options&, Outcome& out, const std::string& file) {
  TrellisGraph g = build_graph(load_trellis(file));
  Prop1Report p = check_prop1(g);
  out.body["states"] = g.num_states();
  out.body["edges"] = g.num_edges();
  out.body["matrix"] = opt_json(p.matrix);
  out.body["paths"] = opt_json(p.paths);
  out.body["forward"] = opt_json(p.forward);
  out.body["backward"] = opt_json(p.backward);
  out.body["agree"] = p.agree();
  out.text << g.num_states() << " states, " << g.num_edges() << " edges\n"
           << "matrix " << opt_int(p.matrix) << ", paths " << opt_int(p.paths) << ", forward "
           << opt_int(p.forward) << ", backward " << opt_int(p.backward) << "\n";
  if (!p.matrix) {
    out.text << "not strongly controllable\n";
    out.fail(kVerify);
  }
}

void cmd_verify_shift(const Options&, Outcome& out, const std::string& file) {
  ShiftStructure s = load_structure(file);
  out.body["ell"] = s.ell();
  out.report("certificates", verify_shift_structure(s));
}

void cmd_derive_shift(const Options& o, Outcome& out, const std::string& file, const std::vector<int>& reg,
                      const std::string& trellis_out, const std::string& dest) {
  TrellisSpec spec;
  if (!reg.empty()) {
    if (reg.size() != 2) throw Error(ErrorKind::Schema, "--register takes q and memory");
    spec = register_trellis(reg[0], reg[1]);
    if (!trellis_out.empty()) {
      write_json_file(trellis_out, trellis_to_json(spec));
      out.text << "wrote " << trellis_out << "\n";
    }
  } else {
    if (file.empty()) throw Error(ErrorKind::Schema, "need a trellis file or --register");
    spec = load_trellis(file);
  }
  ShiftStructure s = derive_from_graph(build_graph(spec));
  out.body["ell"] = s.ell();
  emit_json(o, out, dest, structure_to_json(s));
}

void cmd_signature(const Options&, Outcome& out, const std::string& file) {
  ShiftStructure s = load_structure(file);
  ChainCertificates c = signature_cosignature(s);
  out.body["signature"] = chain_to_json(c.signature);
  out.body["cosignature"] = chain_to_json(c.cosignature);
  out.body["stars"] = chain_to_json(c.stars);
  out.text << "signature orders:";
  for (const auto& d : c.signature) out.text << " " << d.size();
  out.text << "\ncosignature orders:";
  for (const auto& d : c.cosignature) out.text << " " << d.size();
  out.text << "\n";
  out.report("certificates", c.certificates);
}

void cmd_refine(const Options&, Outcome& out, const std::string& file) {
  ShiftStructure s = load_structure(file);
  GridResult g = refinement_grid(s);
  Json cols = Json::array();
  for (const auto& col : g.grid.cells) cols.push_back(chain_to_json(col));
  out.body["ell_prime"] = g.grid.ell_prime;
  out.body["eps"] = g.grid.eps;
  out.body["idx"] = g.grid.idx;
  out.body["cells"] = cols;
  out.text << "ell' = " << g.grid.ell_prime << "\neps:";
  for (int e : g.grid.eps) out.text << " " << e;
  out.text << "\n";
  for (int j = -1; j <= g.grid.ell; ++j) {
    out.text << "column " << j << ":";
    for (const auto& c : g.grid.cells.at(j + 1)) out.text << " " << c.size();
    out.text << "\n";
  }
  out.report("grid", g.certificates);
  CompositionRefinement cr = composition_refinement(s);
  out.body["kappa"] = cr.kappa;
  out.text << "composition length " << cr.kappa << "\n";
  Report r = cr.certificates;
  out.body["composition"] = report_to_json(r);
  out.text << r.text();
  if (!r.ok()) out.fail(kVerify);
}

void cmd_verify_latin(const Options&, Outcome& out, const std::string& file, const std::string& labels,
                      const std::string& omega) {
  ShiftStructure s = load_structure(file);
  FiniteGroup a = load_group(labels);
  LabelingCheck c = is_latin_labeling(s, a, load_hom(omega));
  out.body["latin"] = c.latin;
  out.body["clique"] = c.clique;
  out.body["squares"] = c.squares;
  out.text << (c.latin ? "Latin labeling\n" : "not a Latin labeling\n");
  out.report("certificates", c.certificates);
  if (!c.latin) out.fail(kVerify);
}

void cmd_build_latin(const Options& o, Outcome& out, const std::string& file, const std::string& dest) {
  ShiftStructure s = load_structure(file);
  auto l = search_latin_labeling(s);
  if (!l) {
    out.text << "no Latin labeling\n";
    out.body["found"] = false;
    out.fail(kExhausted);
    return;
  }
  out.body["found"] = true;
  out.text << "kernel of order " << l->kernel.size() << ", " << l->labels.group.order() << " labels\n";
  out.report("certificates", l->certificates);
  out.report("bit_oriented", bit_oriented_check(s, *l));
  // Bit orientation is informational: a non-power-of-2 group is still a valid labeling.
  if (out.code == kVerify && l->certificates.ok()) out.code = kOk;
  emit_json(o, out, dest, labeling_to_json(*l));
}

void cmd_mann_square(const Options&, Outcome& out, const std::string& ref, const std::string& theta) {
  FiniteGroup h = load_group(ref);
  GroupHom t;
  if (theta.empty()) {
    auto sigma = max_fixed_point_free_set(h);
    if (sigma.size() < 2) {
      out.text << "no fixed-point-free automorphism\n";
      out.fail(kExhausted);
      return;
    }
    t = sigma[1];
  } else {
    t = load_hom(theta);
  }
  LatinSquare sq = mann_square(h, t);
  bool latin = is_latin_square(sq);
  out.body["theta"] = hom_to_json(t);
  out.body["square"] = sq;
  out.body["latin"] = latin;
  print_square(out.text, sq);
  out.text << (latin ? "Latin\n" : "not Latin\n");
  if (!latin) out.fail(kVerify);
}

void cmd_mols(const Options&, Outcome& out, const std::string& ref, int aut_bound) {
  FiniteGroup h = load_group(ref);
  auto sigma = max_fixed_point_free_set(h, aut_bound);
  FpfPCP p = pcp_from_fpf(h, sigma);
  out.body["count"] = p.mols.size();
  out.body["squares"] = p.mols;
  out.text << p.mols.size() << " mutually orthogonal Latin squares of order " << h.order() << "\n";
  for (std::size_t k = 0; k < p.mols.size(); ++k) {
    out.text << "square " << k << "\n";
    print_square(out.text, p.mols[k]);
  }
  out.report("certificates", p.certificates);
}

void cmd_pcp_verify(const Options&, Outcome& out, const std::string& ref, const std::string& comps) {
  FiniteGroup q = load_group(ref);
  PCP p = pcp_verify(q, chain_from_json(inline_or_file(comps), q.order()));
  out.body["t"] = p.t;
  out.body["s"] = p.s;
  out.text << "t = " << p.t << ", s = " << p.s << "\n";
  out.report("certificates", p.certificates);
}

void cmd_gamma(const Options& o, Outcome& out, const std::string& file, const std::string& dest) {
  ShiftStructure s = load_structure(file);
  GammaDecomposition gd = gamma_decompose(s);
  out.body["gx_order"] = gd.gx.group.order();
  out.body["gy_order"] = gd.gy.group.order();
  out.body["tilde_order"] = gd.tilde.as_group.order();
  out.body["gamma"] = hom_to_json(gd.gamma);
  out.text << "|G/Y0| = " << gd.gx.group.order() << ", |G/X0| = " << gd.gy.group.order()
           << ", |pair group| = " << gd.tilde.as_group.order() << "\n";
  out.report("certificates", gd.certificates);
  if (!dest.empty()) emit_json(o, out, dest, synthesis_input_to_json(synthesis_input_of(s, gd)));
}

void cmd_synthesize(const Options& o, Outcome& out, const std::string& file, const std::string& dest) {
  Json j = read_json_file(file);
  ShiftStructure s;
  if (j.value("schema", std::string{}) == "sgf.state_group_witness/1") {
    StateSynthesis ss = shift_group_of(witness_from_json(j, base_of(file)));
    out.report("certificates", ss.certificates);
    s = ss.structure;
  } else {
    Synthesis syn = synthesize_thmy1(synthesis_input_from_json(j, base_of(file)));
    out.report("certificates", syn.certificates);
    s = syn.structure;
  }
  out.body["order"] = s.group.order();
  out.body["ell"] = s.ell();
  out.text << "shift group of order " << s.group.order() << ", ell = " << s.ell() << "\n";
  emit_json(o, out, dest, structure_to_json(s));
}

void cmd_verify_state_group(const Options&, Outcome& out, const std::string& file) {
  StateGroupWitness w = witness_from_json(read_json_file(file), base_of(file));
  out.report("scorecard", verify_state_group(w));
  if (out.code != kOk) return;
  out.report("signature", state_signature(w).certificates);
  out.report("grid", sg_refinement_grid(w).certificates);
}

void cmd_find_state_groups(const Options& o, Outcome& out, const std::string& u0ref, const std::string& delta,
                           const Algorithm1Options& opt, bool latin, const std::string& dir) {
  FiniteGroup u0 = load_group(u0ref);
  std::vector<std::vector<ElemSet>> chains;
  if (delta.empty())
    chains = signature_chains(u0, opt.bound);
  else
    chains.push_back(chain_from_json(inline_or_file(delta), u0.order()));
  if (!dir.empty()) fs::create_directories(dir);
  Json found = Json::array();
  int n = 0;
  for (const auto& ch : chains) {
    std::vector<FoundStateGroup> res = algorithm1(u0, ch, default_catalog(std::max(64, opt.bound)), opt);
    for (const auto& f : res) {
      StateSynthesis ss = shift_group_of(f.witness);
      Json e{{"candidate", f.candidate},
             {"delta_orders", Json::array()},
             {"ell", ss.structure.ell()},
             {"shift_group_order", ss.structure.group.order()},
             {"verified", verify_state_group(f.witness).ok() && ss.certificates.ok()}};
      for (const auto& d : ch) e["delta_orders"].push_back(d.size());
      out.text << "#" << n << " " << f.candidate << ": |G| = " << ss.structure.group.order()
               << ", ell = " << ss.structure.ell() << ", Delta' orders";
      for (const auto& d : ch) out.text << " " << d.size();
      out.text << "\n";
      if (!e["verified"].get<bool>()) out.fail(kVerify);
      std::optional<LatinLabeling> lab;
      if (latin) {
        lab = search_latin_labeling(ss.structure);
        e["latin"] = lab ? labeling_to_json(*lab) : Json(nullptr);
        out.text << "   Latin labeling: "
                 << (lab ? std::to_string(lab->labels.group.order()) + " labels, kernel order " +
                               std::to_string(lab->kernel.size())
                         : std::string("none"))
                 << "\n";
      }
      if (!dir.empty()) {
        const std::string stem = (fs::path(dir) / ("sg" + std::to_string(n))).string();
        write_json_file(stem + "_witness.json", witness_to_json(f.witness));
        write_json_file(stem + "_structure.json", structure_to_json(ss.structure));
        if (lab) write_json_file(stem + "_latin.json", labeling_to_json(*lab));
      }
      found.push_back(e);
      ++n;
    }
  }
  out.body["chains"] = chains.size();
  out.body["found"] = found;
  out.text << n << " state groups over " << chains.size() << " Delta' chains\n";
  if (n == 0) out.fail(kExhausted);
  (void)o;
}

void cmd_roundtrip(const Options&, Outcome& out, const std::string& file, bool sweep) {
  if (!sweep) {
    out.report("certificates", roundtrip(load_structure(file)).certificates);
    return;
  }
  int total = 0, pass = 0;
  for (const auto& s : structure_sweep()) {
    if (!intersect(s.x0(), s.y0).is_trivial() || s.ell() < 1) continue;
    ++total;
    if (roundtrip_check(s)) ++pass;
  }
  out.body["reduced"] = total;
  out.body["pass"] = pass;
  out.text << pass << "/" << total << " reduced sweep structures round-trip\n";
  if (pass != total) out.fail(kVerify);
}

void cmd_export_dot(const Options&, Outcome& out, const std::string& file, const std::string& dest) {
  Json j = read_json_file(file);
  TrellisGraph g = j.contains("bplus") ? build_graph(trellis_from_json(j, base_of(file)))
                                       : build_graph_from_structure(structure_from_json(j, base_of(file)));
  std::string dot = trellis_to_dot(g);
  if (dest.empty()) {
    out.body["dot"] = dot;
    out.text << dot;
  } else {
    write_text(dest, dot);
    out.text << "wrote " << dest << "\n";
  }
}

void cmd_reduce(const Options& o, Outcome& out, const std::string& file, const std::string& dest) {
  ShiftStructure s = reduce_structure(load_structure(file));
  out.body["order"] = s.group.order();
  emit_json(o, out, dest, structure_to_json(s));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shift groups, group trellises, state groups and Latin group codes"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "JSON output");
  app.add_option("--threads", o.threads, "Cap on worker threads")->check(CLI::PositiveNumber);
  app.add_option("--iso-bound", o.iso_bound, "Largest order for isomorphism search");

  std::function<void(Outcome&)> run;
  auto sub = [&](const char* name, const char* help) { return app.add_subcommand(name, help); };

  int max_order = 64;
  std::string dir, file, file2, dest, aux, aux2;
  std::vector<int> reg;
  bool flag = false;
  int aut_bound = kAutBound;
  Algorithm1Options a1;

  auto* c = sub("gen-catalog", "Write the group catalog");
  c->add_option("--max-order", max_order, "Largest group order")->default_val(64);
  c->add_option("--out", dir, "Output directory")->required();
  c->callback([&] { run = [&](Outcome& r) { cmd_gen_catalog(o, r, max_order, dir); }; });

  c = sub("validate-group", "Check a multiplication table");
  c->add_option("group", file, "Group file or catalog:NAME")->required();
  c->callback([&] { run = [&](Outcome& r) { cmd_validate_group(o, r, file); }; });

  c = sub("find-iso", "Find an isomorphism between two groups");
  c->add_option("first", file)->required();
  c->add_option("second", file2)->required();
  c->callback([&] { run = [&](Outcome& r) { cmd_find_iso(o, r, file, file2); }; });

  c = sub("build-trellis", "Verify a structure and build its trellis with certificates");
  c->add_option("structure", file)->required();
  c->add_option("--dot", dest, "Write the trellis as DOT");
  c->callback([&] { run = [&](Outcome& r) { cmd_build_trellis(o, r, file, dest); }; });

  c = sub("controllability", "Controllability index of a trellis section");
  c->add_option("trellis", file)->required();
  c->callback([&] { run = [&](Outcome& r) { cmd_controllability(o, r, file); }; });

  c = sub("verify-shift", "Verify a shift structure");
  c->add_option("structure", file)->required();
  c->callback([&] { run = [&](Outcome& r) { cmd_verify_shift(o, r, file); }; });

  c = sub("derive-shift", "Shift structure of a strongly controllable trellis");
  c->add_option("trellis", file);
  c->add_option("--register", reg, "Shift register over Z_q: q memory")->expected(2);
  c->add_option("--trellis-out", aux, "Also write the register trellis");
  c->add_option("--out", dest);
  c->callback([&] { run = [&](Outcome& r) { cmd_derive_shift(o, r, file, reg, aux, dest); }; });

  c = sub("signature", "Signature and cosignature chains");
  c->add_option("structure", file)->required();
  c->callback([&] { run = [&](Outcome& r) { cmd_signature(o, r, file); }; });

  c = sub("refine", "Refinement grid and composition refinement");
  c->add_option("structure", file)->required();
  c->callback([&] { run = [&](Outcome& r) { cmd_refine(o, r, file); }; });

  c = sub("verify-latin", "Check a labeling homomorphism");
  c->add_option("structure", file)->required();
  c->add_option("--labels", aux, "Label group")->required();
  c->add_option("--omega", aux2, "Labeling map, file or inline array")->required();
  c->callback([&] { run = [&](Outcome& r) { cmd_verify_latin(o, r, file, aux, aux2); }; });

  c = sub("build-latin", "Search for a Latin labeling");
  c->add_option("structure", file)->required();
  c->add_option("--out", dest);
  c->callback([&] { run = [&](Outcome& r) { cmd_build_latin(o, r, file, dest); }; });

  c = sub("mann-square", "Latin square from an automorphism");
  c->add_option("group", file)->required();
  c->add_option("--theta", aux, "Automorphism, file or inline array; default first fixed-point-free");
  c->callback([&] { run = [&](Outcome& r) { cmd_mann_square(o, r, file, aux); }; });

  c = sub("mols", "Mutually orthogonal Latin squares from fixed-point-free automorphisms");
  c->add_option("group", file)->required();
  c->add_option("--aut-bound", aut_bound, "Largest order for automorphism enumeration");
  c->callback([&] { run = [&](Outcome& r) { cmd_mols(o, r, file, aut_bound); }; });

  c = sub("pcp-verify", "Check a partial congruence partition");
  c->add_option("group", file)->required();
  c->add_option("--components", aux, "Component subgroups, file or inline array")->required();
  c->callback([&] { run = [&](Outcome& r) { cmd_pcp_verify(o, r, file, aux); }; });

  c = sub("gamma", "Subdirect decomposition of a reduced structure");
  c->add_option("structure", file)->required();
  c->add_option("--out", dest, "Write the synthesis input");
  c->callback([&] { run = [&](Outcome& r) { cmd_gamma(o, r, file, dest); }; });

  c = sub("synthesize", "Shift group from synthesis input or a state group witness");
  c->add_option("input", file)->required();
  c->add_option("--out", dest);
  c->callback([&] { run = [&](Outcome& r) { cmd_synthesize(o, r, file, dest); }; });

  c = sub("verify-state-group", "Scorecard for a state group witness");
  c->add_option("witness", file)->required();
  c->callback([&] { run = [&](Outcome& r) { cmd_verify_state_group(o, r, file); }; });

  c = sub("find-state-groups", "Search state groups for U0' and a Delta' chain");
  c->add_option("u0", file, "Group file or catalog:NAME")->required();
  c->add_option("delta", aux, "Delta' chain, file or inline; all chains when omitted");
  c->add_option("--bound", a1.bound, "Largest state group order");
  c->add_option("--max-nodes", a1.max_nodes, "Search node limit");
  c->add_option("--max-results", a1.max_results, "Stop after this many per chain, 0 = all");
  c->add_flag("--latin", flag, "Also search Latin labelings");
  c->add_option("--out", dir, "Directory for witness files");
  c->callback([&] { run = [&](Outcome& r) { cmd_find_state_groups(o, r, file, aux, a1, flag, dir); }; });

  c = sub("roundtrip", "Decompose and resynthesize");
  c->add_option("structure", file);
  c->add_flag("--sweep", flag, "Every reduced structure of the sweep");
  c->callback([&] {
    if (file.empty() && !flag) throw CLI::ValidationError("roundtrip", "need a structure or --sweep");
    run = [&](Outcome& r) { cmd_roundtrip(o, r, file, flag); };
  });

  c = sub("export-dot", "Trellis or structure as DOT");
  c->add_option("input", file)->required();
  c->add_option("--out", dest);
  c->callback([&] { run = [&](Outcome& r) { cmd_export_dot(o, r, file, dest); }; });

  c = sub("reduce", "Quotient a structure by X0 n Y0");
  c->add_option("structure", file)->required();
  c->add_option("--out", dest);
  c->callback([&] { run = [&](Outcome& r) { cmd_reduce(o, r, file, dest); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  Outcome out;
  try {
    run(out);
  } catch (const Error& e) {
    out.fail(exit_for(e.kind()));
    out.body["error"] = Json{{"kind", to_string(e.kind())}, {"message", e.what()}};
    out.text << "error: " << e.what() << "\n";
  } catch (const fs::filesystem_error& e) {
    out.fail(kIo);
    out.body["error"] = Json{{"kind", "Io"}, {"message", e.what()}};
    out.text << "error: Io: " << e.what() << "\n";
  }
  out.body["exit_code"] = out.code;
  if (o.json)
    std::cout << out.body.dump(1) << "\n";
  else
    std::cout << out.text.str();
  return out.code;
}
