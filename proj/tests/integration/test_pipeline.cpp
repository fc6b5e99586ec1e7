#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <filesystem>

#include "../oracle.hpp"
#include "sgf/catalog.hpp"
#include "sgf/io.hpp"
#include "sgf/iso.hpp"
#include "sgf/latin.hpp"
#include "sgf/stategroup.hpp"
#include "sgf/subdirect.hpp"
#include "sgf/trellis.hpp"

using namespace sgf;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("sgf_pipeline_" + std::to_string(::getpid()))) {
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

}  // namespace

TEST_CASE("trellis file to Latin code and back through the state group") {
  TempDir dir;
  for (int m : {1, 2, 3}) {
    CAPTURE(m);
    const fs::path tf = dir.path / "trellis.json";
    write_json_file(tf, trellis_to_json(register_trellis(2, m)));
    TrellisGraph g = build_graph(trellis_from_json(read_json_file(tf), dir.path));
    CHECK(controllability_index(g) == m);
    CHECK(oracle::controllability(g, 64) == m);

    ShiftStructure s = derive_from_graph(g);
    const fs::path sf = dir.path / "structure.json";
    write_json_file(sf, structure_to_json(s));
    ShiftStructure back = structure_from_json(read_json_file(sf), dir.path);
    CHECK(back.chain == s.chain);
    CHECK(back.phi == s.phi);
    REQUIRE(verify_shift_structure(back).ok());

    auto l = search_latin_labeling(back);
    REQUIRE(l);
    CHECK(l->certificates.ok());
    CHECK(bit_oriented_check(back, *l).ok());

    const fs::path inf = dir.path / "input.json";
    write_json_file(inf, synthesis_input_to_json(synthesis_input_of(back, gamma_decompose(back))));
    Synthesis syn = synthesize_thmy1(synthesis_input_from_json(read_json_file(inf), dir.path));
    auto f = find_structure_iso(back, syn.structure);
    REQUIRE(f);
    CHECK(structure_iso_report(back, syn.structure, *f).ok());

    const fs::path wf = dir.path / "witness.json";
    write_json_file(wf, witness_to_json(witness_from_structure(back)));
    StateGroupWitness w = witness_from_json(read_json_file(wf), dir.path);
    CHECK(verify_state_group(w).ok());
    StateSynthesis ss = shift_group_of(w);
    CHECK(ss.certificates.ok());
    CHECK(find_structure_iso(back, ss.structure).has_value());
  }
}

TEST_CASE("catalog files feed group references") {
  TempDir dir;
  write_catalog(generate_catalog(8), dir.path / "cat");
  FiniteGroup d8 = resolve_group(Json("cat/D8.json"), dir.path);
  CHECK(isomorphic(d8, default_catalog().get("D8").group));
  CHECK(oracle::is_group_table(d8.table()));
}
