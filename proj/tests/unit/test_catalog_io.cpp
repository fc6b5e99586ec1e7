#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "../oracle.hpp"
#include "sgf/catalog.hpp"
#include "sgf/io.hpp"
#include "sgf/iso.hpp"
#include "sgf/shift.hpp"
#include "sgf/trellis.hpp"

using namespace sgf;
namespace fs = std::filesystem;

namespace {

std::vector<std::string> names_of(const Catalog& c) {
  std::vector<std::string> out;
  for (const auto& e : c.entries()) out.push_back(e.name);
  return out;
}

fs::path scratch_dir(const std::string& leaf) {
  fs::path p = fs::temp_directory_path() / ("sgf_unit_" + leaf);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("catalog up to order 4") {
  Catalog c = generate_catalog(4);
  auto names = names_of(c);
  std::sort(names.begin(), names.end());
  CHECK(names == std::vector<std::string>{"C1", "C2", "C2xC2", "C3", "C4"});
}

TEST_CASE("catalog order 8 has five classes") {
  Catalog c = generate_catalog(8);
  auto eights = c.of_order(8);
  CHECK(eights.size() == 5);
  for (std::size_t a = 0; a < eights.size(); ++a)
    for (std::size_t b = a + 1; b < eights.size(); ++b)
      CHECK_FALSE(oracle::isomorphic(eights[a]->group, eights[b]->group));
  CHECK(c.find("S3") != nullptr);
  CHECK(c.find("Q8") != nullptr);
  CHECK(c.find("D8") != nullptr);
}

TEST_CASE("catalog bound and determinism") {
  CHECK_THROWS_AS(generate_catalog(513), Error);
  CHECK(names_of(generate_catalog(16)) == names_of(generate_catalog(16)));
  CHECK_THROWS_AS(default_catalog().get("nope"), Error);
}

TEST_CASE("catalog classes are pairwise non-isomorphic up to order 16") {
  Catalog c = generate_catalog(16);
  for (int n = 1; n <= 16; ++n) {
    auto g = c.of_order(n);
    for (std::size_t a = 0; a < g.size(); ++a)
      for (std::size_t b = a + 1; b < g.size(); ++b) CHECK_FALSE(isomorphic(g[a]->group, g[b]->group));
  }
}

TEST_CASE("catalog files round trip") {
  fs::path dir = scratch_dir("catalog");
  Catalog c = generate_catalog(12);
  write_catalog(c, dir);
  Catalog back = read_catalog(dir);
  REQUIRE(back.entries().size() == c.entries().size());
  for (std::size_t k = 0; k < c.entries().size(); ++k) {
    CHECK(back.entries()[k].name == c.entries()[k].name);
    CHECK(back.entries()[k].group == c.entries()[k].group);
  }
  fs::remove_all(dir);
}

TEST_CASE("group and hom JSON") {
  FiniteGroup d8 = dihedral_group(4);
  CHECK(group_from_json(group_to_json(d8)) == d8);
  CHECK(load_group("catalog:Q8") == default_catalog().get("Q8").group);
  CHECK_THROWS_AS(group_from_json(Json{{"table", "x"}}), Error);
  try {
    group_from_json(Json{{"order", 2}, {"table", {{0, 1}, {1, 1}}}});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoInverse);
  }
  GroupHom f{{0, 3, 2, 1}};
  CHECK(hom_from_json(hom_to_json(f)) == f);
  CHECK(hom_from_json(Json::array({0, 1})) == GroupHom{{0, 1}});
  CHECK(elemset_from_json(Json{{"elements", {2, 0}}}, 4).elems() == std::vector<int>{0, 2});
  try {
    elemset_from_json(Json::array({0, 9}), 4);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ElementOutOfRange);
  }
}

TEST_CASE("trellis and structure JSON round trip") {
  TrellisSpec t = register_trellis(2, 2);
  TrellisSpec t2 = trellis_from_json(trellis_to_json(t), ".");
  CHECK(t2.group == t.group);
  CHECK(t2.bplus == t.bplus);
  CHECK(t2.bminus == t.bminus);
  CHECK(t2.psi == t.psi);
  ShiftStructure s = derive_from_graph(build_graph(t));
  ShiftStructure s2 = structure_from_json(structure_to_json(s), ".");
  CHECK(s2.group == s.group);
  CHECK(s2.chain == s.chain);
  CHECK(s2.y0 == s.y0);
  CHECK(s2.phi == s.phi);
}

TEST_CASE("file references resolve relative to the base") {
  fs::path dir = scratch_dir("refs");
  write_json_file(dir / "g.json", group_to_json(cyclic_group(4)));
  CHECK(resolve_group(Json("g.json"), dir) == cyclic_group(4));
  Json s = structure_to_json(derive_from_graph(build_graph(register_trellis(2, 1))));
  write_json_file(dir / "b.json", s["group"]);
  s["group"] = "b.json";
  CHECK(structure_from_json(s, dir).group.order() == 4);
  try {
    read_json_file(dir / "missing.json");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Io);
  }
  fs::remove_all(dir);
}
