#include "sgf/sweep.hpp"

#include "sgf/iso.hpp"

namespace sgf {

std::vector<TrellisSpec> trellis_sweep(const SweepOptions& opt) {
  std::vector<TrellisSpec> out;
  if (opt.include_registers) {
    for (int q : {2, 3, 5})
      for (int m = 0; m <= 4; ++m) {
        int n = q;
        for (int k = 0; k < m; ++k) n *= q;
        if (n > opt.max_order) break;
        out.push_back(register_trellis(q, m));
      }
  }
  const Catalog& cat = default_catalog(opt.max_order);
  for (const auto& entry : cat.entries()) {
    const FiniteGroup& b = entry.group;
    auto normals = normal_subgroups(b);
    std::vector<Section> quots;
    for (const auto& n : normals) quots.push_back(quotient(b, n));
    int pairs = 0;
    for (std::size_t p = 0; p < normals.size() && pairs < opt.pairs_per_group; ++p) {
      for (std::size_t m = 0; m < normals.size() && pairs < opt.pairs_per_group; ++m) {
        if (normals[p].size() != normals[m].size()) continue;
        int found = 0;
        for_each_isomorphism(quots[m].group, quots[p].group, [&](const GroupHom& psi) {
          out.push_back({entry.name + " #" + std::to_string(p) + "/" + std::to_string(m) + "/" + std::to_string(found),
                         b, normals[p], normals[m], psi});
          return ++found < opt.isos_per_pair;
        });
        if (found > 0) ++pairs;
      }
    }
  }
  return out;
}

std::vector<ShiftStructure> structure_sweep(const SweepOptions& opt) {
  std::vector<ShiftStructure> out;
  for (const auto& t : trellis_sweep(opt)) {
    TrellisGraph g = build_graph(t);
    if (!controllability_index(g)) continue;
    out.push_back(derive_from_graph(g));
  }
  return out;
}

}  // namespace sgf
