#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "sgf/group.hpp"
#include "sgf/latin.hpp"
#include "sgf/shift.hpp"
#include "sgf/trellis.hpp"

namespace sgf {

using Json = nlohmann::json;

Json read_json_file(const std::filesystem::path& p);
void write_json_file(const std::filesystem::path& p, const Json& j);
std::string read_text_file(const std::filesystem::path& p);

Json group_to_json(const FiniteGroup& g);
FiniteGroup group_from_json(const Json& j);
// A reference is an inline object, a path relative to base, or "catalog:NAME".
FiniteGroup resolve_group(const Json& ref, const std::filesystem::path& base);
FiniteGroup load_group(const std::string& ref);

Json elemset_to_json(const ElemSet& s);
// Accepts a bare array or an object with "elements".
ElemSet elemset_from_json(const Json& j, int universe);
std::vector<ElemSet> chain_from_json(const Json& j, int universe);
Json chain_to_json(const std::vector<ElemSet>& c);

Json hom_to_json(const GroupHom& f);
GroupHom hom_from_json(const Json& j);
GroupHom resolve_hom(const Json& ref, const std::filesystem::path& base);

Json trellis_to_json(const TrellisSpec& t);
TrellisSpec trellis_from_json(const Json& j, const std::filesystem::path& base);

Json structure_to_json(const ShiftStructure& s);
ShiftStructure structure_from_json(const Json& j, const std::filesystem::path& base);

Json report_to_json(const Report& r);
Json labeling_to_json(const LatinLabeling& l);

// A missing "schema" key is accepted; a different tag throws Error(Schema).
void expect_schema(const Json& j, const std::string& tag);

// Wraps nlohmann accessors so schema problems surface as Error(Schema).
template <typename F>
auto with_schema(const std::string& what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Schema, what + ": " + e.what());
  }
}

}  // namespace sgf
