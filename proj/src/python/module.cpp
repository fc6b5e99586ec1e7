// JSON strings cross the boundary; python/sgf/__init__.py decodes them.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sgf/catalog.hpp"
#include "sgf/io.hpp"
#include "sgf/iso.hpp"
#include "sgf/latin.hpp"
#include "sgf/stategroup.hpp"
#include "sgf/subdirect.hpp"
#include "sgf/trellis.hpp"

namespace py = pybind11;
using namespace sgf;

namespace {

ShiftStructure structure_of(const std::string& text) { return structure_from_json(Json::parse(text), "."); }

}  // namespace

PYBIND11_MODULE(_sgf, m) {
  static py::handle err = py::exception<Error>(m, "SgfError", PyExc_ValueError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(err, e.what());
    } catch (const nlohmann::json::exception& e) {
      py::set_error(err, (std::string("Schema: ") + e.what()).c_str());
    }
  });

  m.def("catalog_names", [](int max_order) {
    std::vector<std::string> out;
    for (const auto& e : default_catalog(max_order).entries()) out.push_back(e.name);
    return out;
  });
  m.def("catalog_group", [](const std::string& name) { return group_to_json(default_catalog().get(name).group).dump(); });
  m.def("validate_group", [](const std::string& g) {
    return group_from_json(Json::parse(g)).order() > 0;
  });
  m.def("isomorphic", [](const std::string& a, const std::string& b) {
    return isomorphic(group_from_json(Json::parse(a)), group_from_json(Json::parse(b)));
  });
  m.def("register_trellis", [](int q, int mem) { return trellis_to_json(register_trellis(q, mem)).dump(); });
  m.def("controllability", [](const std::string& t) {
    Prop1Report p = check_prop1(build_graph(trellis_from_json(Json::parse(t), ".")));
    return Json{{"matrix", p.matrix ? Json(*p.matrix) : Json()}, {"agree", p.agree()}}.dump();
  });
  m.def("derive_shift", [](const std::string& t) {
    return structure_to_json(derive_from_graph(build_graph(trellis_from_json(Json::parse(t), ".")))).dump();
  });
  m.def("verify_shift", [](const std::string& s) { return report_to_json(verify_shift_structure(structure_of(s))).dump(); });
  m.def("signature", [](const std::string& s) {
    ChainCertificates c = signature_cosignature(structure_of(s));
    return Json{{"signature", chain_to_json(c.signature)},
                {"cosignature", chain_to_json(c.cosignature)},
                {"ok", c.certificates.ok()}}
        .dump();
  });
  m.def("latin_labeling", [](const std::string& s) -> std::optional<std::string> {
    auto l = search_latin_labeling(structure_of(s));
    if (!l) return std::nullopt;
    return labeling_to_json(*l).dump();
  });
  m.def("mols", [](const std::string& g) {
    FiniteGroup h = group_from_json(Json::parse(g));
    return Json(pcp_from_fpf(h, max_fixed_point_free_set(h)).mols).dump();
  });
  m.def("roundtrip", [](const std::string& s) { return roundtrip_check(structure_of(s)); });
  m.def(
      "find_state_groups",
      [](const std::string& u0, const std::string& chain, int bound) {
        FiniteGroup g = group_from_json(Json::parse(u0));
        Algorithm1Options opt;
        opt.bound = bound;
        Json out = Json::array();
        for (const auto& f : algorithm1(g, chain_from_json(Json::parse(chain), g.order()), default_catalog(), opt))
          out.push_back(witness_to_json(f.witness));
        return out.dump();
      },
      py::arg("u0"), py::arg("chain"), py::arg("bound") = 64);
  m.def("shift_group_of", [](const std::string& w) {
    return structure_to_json(shift_group_of(witness_from_json(Json::parse(w), ".")).structure).dump();
  });
}
