#include "sgf/io.hpp"

#include <fstream>
#include <sstream>

#include "sgf/catalog.hpp"

namespace sgf {

std::string read_text_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_file(const std::filesystem::path& p) {
  std::string text = read_text_file(p);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::Schema, p.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& p, const Json& j) {
  std::ofstream out(p);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + p.string());
  out << j.dump(1) << "\n";
}

Json group_to_json(const FiniteGroup& g) {
  Json j;
  j["order"] = g.order();
  j["table"] = g.table();
  if (!g.names().empty()) j["names"] = g.names();
  return j;
}

FiniteGroup group_from_json(const Json& j) {
  return with_schema("group", [&] {
    auto table = j.at("table").get<std::vector<std::vector<int>>>();
    if (j.contains("order") && j.at("order").get<int>() != static_cast<int>(table.size()))
      throw Error(ErrorKind::Schema, "group order does not match table size");
    std::vector<std::string> names;
    if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
    return validate_group(table, std::move(names));
  });
}

FiniteGroup load_group(const std::string& ref) { return resolve_group(Json(ref), std::filesystem::current_path()); }

FiniteGroup resolve_group(const Json& ref, const std::filesystem::path& base) {
  if (ref.is_object()) return group_from_json(ref);
  if (!ref.is_string()) throw Error(ErrorKind::Schema, "group reference must be an object or a string");
  const std::string s = ref.get<std::string>();
  if (s.rfind("catalog:", 0) == 0) return default_catalog().get(s.substr(8)).group;
  std::filesystem::path p(s);
  if (p.is_relative()) p = base / p;
  return group_from_json(read_json_file(p));
}

Json elemset_to_json(const ElemSet& s) { return s.elems(); }

ElemSet elemset_from_json(const Json& j, int universe) {
  return with_schema("subgroup", [&] {
    const Json& arr = j.is_object() ? j.at("elements") : j;
    return ElemSet(universe, arr.get<std::vector<int>>());
  });
}

std::vector<ElemSet> chain_from_json(const Json& j, int universe) {
  return with_schema("chain", [&] {
    std::vector<ElemSet> out;
    for (const auto& m : j) out.push_back(elemset_from_json(m, universe));
    return out;
  });
}

Json chain_to_json(const std::vector<ElemSet>& c) {
  Json j = Json::array();
  for (const auto& s : c) j.push_back(elemset_to_json(s));
  return j;
}

Json hom_to_json(const GroupHom& f) { return Json{{"image", f.image}}; }

GroupHom hom_from_json(const Json& j) {
  return with_schema("hom", [&] {
    const Json& arr = j.is_object() ? j.at("image") : j;
    return GroupHom{arr.get<std::vector<int>>()};
  });
}

GroupHom resolve_hom(const Json& ref, const std::filesystem::path& base) {
  if (ref.is_string()) {
    std::filesystem::path p(ref.get<std::string>());
    if (p.is_relative()) p = base / p;
    return hom_from_json(read_json_file(p));
  }
  return hom_from_json(ref);
}

Json trellis_to_json(const TrellisSpec& t) {
  Json j;
  if (!t.label.empty()) j["label"] = t.label;
  j["group"] = group_to_json(t.group);
  j["bplus"] = elemset_to_json(t.bplus);
  j["bminus"] = elemset_to_json(t.bminus);
  j["psi"] = hom_to_json(t.psi);
  return j;
}

TrellisSpec trellis_from_json(const Json& j, const std::filesystem::path& base) {
  return with_schema("trellis", [&] {
    TrellisSpec t;
    t.label = j.value("label", std::string{});
    t.group = resolve_group(j.at("group"), base);
    t.bplus = elemset_from_json(j.at("bplus"), t.group.order());
    t.bminus = elemset_from_json(j.at("bminus"), t.group.order());
    t.psi = resolve_hom(j.at("psi"), base);
    return t;
  });
}

Json structure_to_json(const ShiftStructure& s) {
  Json j;
  j["group"] = group_to_json(s.group);
  j["chain"] = chain_to_json(s.chain);
  j["y0"] = elemset_to_json(s.y0);
  j["phi"] = hom_to_json(s.phi);
  return j;
}

ShiftStructure structure_from_json(const Json& j, const std::filesystem::path& base) {
  return with_schema("structure", [&] {
    ShiftStructure s;
    s.group = resolve_group(j.at("group"), base);
    s.chain = chain_from_json(j.at("chain"), s.group.order());
    s.y0 = elemset_from_json(j.at("y0"), s.group.order());
    s.phi = resolve_hom(j.at("phi"), base);
    return s;
  });
}

Json report_to_json(const Report& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json e{{"name", c.name}, {"pass", c.pass}};
    if (!c.detail.empty()) e["detail"] = c.detail;
    checks.push_back(std::move(e));
  }
  return Json{{"ok", r.ok()}, {"checks", std::move(checks)}};
}

void expect_schema(const Json& j, const std::string& tag) {
  if (!j.is_object() || !j.contains("schema")) return;
  const Json& got = j.at("schema");
  if (!got.is_string() || got.get<std::string>() != tag)
    throw Error(ErrorKind::Schema, "expected schema " + tag + ", got " + got.dump());
}

Json labeling_to_json(const LatinLabeling& l) {
  return Json{{"kernel", elemset_to_json(l.kernel)},
              {"labels", group_to_json(l.labels.group)},
              {"omega", l.labels.index},
              {"k_a", elemset_to_json(l.k_a)},
              {"g0", elemset_to_json(l.g0)},
              {"g_v", elemset_to_json(l.g_v)},
              {"latin", l.check.latin},
              {"clique", l.check.clique},
              {"squares", l.check.squares}};
}

}  // namespace sgf
