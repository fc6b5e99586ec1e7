#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "../oracle.hpp"
#include "sgf/catalog.hpp"
#include "sgf/iso.hpp"
#include "sgf/shift.hpp"
#include "sgf/sweep.hpp"
#include "sgf/trellis.hpp"

using namespace sgf;

namespace {

ShiftStructure memory(int m) { return derive_from_graph(build_graph(register_trellis(2, m))); }

// Degenerate structure with X0 = Y0 = G.
ShiftStructure trivial_on(const FiniteGroup& g) {
  ShiftStructure s;
  s.group = g;
  s.chain = {ElemSet::identity(g.order()), ElemSet::all(g.order())};
  s.y0 = ElemSet::all(g.order());
  s.phi = GroupHom{{0}};
  return s;
}

const std::vector<ShiftStructure>& sweep() {
  static const std::vector<ShiftStructure> s = [] {
    SweepOptions opt;
    opt.max_order = 16;
    return structure_sweep(opt);
  }();
  return s;
}

bool quotients_isomorphic(const FiniteGroup& g, const ElemSet& top1, const ElemSet& k1, const ElemSet& top2,
                          const ElemSet& k2) {
  return find_section_iso(section(g, top1, k1), section(g, top2, k2)).has_value();
}

}  // namespace

TEST_CASE("trivial structure on Z2") {
  ShiftStructure s = trivial_on(cyclic_group(2));
  CHECK(s.ell() == 0);
  CHECK(verify_shift_structure(s).ok());
  TrellisGraph g = build_graph_from_structure(s);
  CHECK(g.num_states() == 1);
  CHECK(controllability_index(g) == 0);
  ShiftStructure d = derive_from_graph(build_graph(cyclic_group(2), ElemSet::all(2), ElemSet::all(2), GroupHom{{0}}));
  CHECK(d.ell() == 0);
  ChainCertificates c = signature_cosignature(s);
  CHECK(c.signature.at(1) == s.x0());
}

TEST_CASE("memory-1 structure") {
  ShiftStructure s = memory(1);
  CHECK(s.ell() == 1);
  CHECK(s.x0().elems() == std::vector<int>{0, 2});
  CHECK(s.y0.elems() == std::vector<int>{0, 1});
  CHECK(verify_shift_structure(s).ok());
  CHECK(controllability_index(build_graph_from_structure(s)) == 1);
  ShiftStructure bad = s;
  bad.y0 = s.x0();
  CHECK_FALSE(verify_shift_structure(bad).ok());
  GridResult g = refinement_grid(s);
  CHECK(g.grid.eps == std::vector<int>{0, 1});
  CHECK(g.grid.ell_prime == 1);
  ChainCertificates c = signature_cosignature(s);
  REQUIRE(c.signature.size() == 3);
  CHECK(c.signature[0].is_trivial());
  CHECK(c.signature[1].is_trivial());
  CHECK(c.signature[2] == s.x0());
  CHECK(c.certificates.ok());
}

TEST_CASE("memory-2 structure") {
  ShiftStructure s = memory(2);
  CHECK(s.ell() == 2);
  CHECK(s.x(1).elems() == std::vector<int>{0, 2, 4, 6});
  CHECK(verify_shift_structure(s).ok());
  CHECK(controllability_index(build_graph_from_structure(s)) == 2);
  CHECK(intersect(s.x(1), s.y0).is_trivial());
  StarGroup st = star_group(s, 0);
  CHECK(st.via_product == s.x0());
  CHECK(st.via_pullback == s.x0());
  CHECK(st.certificates.ok());
  GridResult g = refinement_grid(s);
  CHECK(g.grid.eps == std::vector<int>{0, 0, 1});
  CHECK(g.grid.ell_prime == 1);
  CHECK(g.grid.at(-1, g.grid.i(-1)).is_trivial());
  CHECK(g.grid.at(-1, g.grid.ell_prime) == s.x0());
  CHECK(g.certificates.ok());
  ChainCertificates c = signature_cosignature(s);
  REQUIRE(c.signature.size() == 4);
  for (int j = 0; j < 3; ++j) CHECK(c.signature[j].is_trivial());
  CHECK(c.signature[3] == s.x0());
  CHECK(solvability_report(s).ok());
  CompositionRefinement cr = composition_refinement(s);
  CHECK(cr.certificates.ok());
  REQUIRE(cr.series.size() == 4);
  for (std::size_t k = 0; k < cr.series.size(); ++k) CHECK(cr.series[k].size() == (1 << k));
}

TEST_CASE("composition refinement of degenerate structures") {
  ShiftStructure z4 = trivial_on(cyclic_group(4));
  std::map<int, std::vector<ElemSet>> base{{-1, {ElemSet::identity(4), ElemSet(4, {0, 2}), ElemSet::all(4)}}};
  CompositionRefinement a = composition_refinement(z4, base);
  CHECK(a.certificates.ok());
  CHECK(a.series.size() == 3);
  CompositionRefinement bad_base = [&] {
    std::map<int, std::vector<ElemSet>> b{{-1, {ElemSet::identity(4), ElemSet::all(4)}}};
    try {
      composition_refinement(z4, b);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotCompositionChain);
      return CompositionRefinement{};
    }
    FAIL("expected NotCompositionChain");
    return CompositionRefinement{};
  }();
  (void)bad_base;
  ShiftStructure s3 = trivial_on(symmetric_group(3));
  CompositionRefinement c = composition_refinement(s3);
  REQUIRE(c.series.size() == 3);
  CHECK(c.series[1].size() == 3);
  CHECK(c.series[2].size() == 6);
}

TEST_CASE("star group endpoints") {
  for (const auto& s : sweep()) {
    if (s.ell() < 1) continue;
    CHECK(star_group(s, s.ell() - 1).via_product.is_full());
    CHECK(star_group(s, -1).via_product == intersect(s.x0(), s.y0));
  }
}

TEST_CASE("sweep: structure invariants") {
  REQUIRE(!sweep().empty());
  for (const auto& s : sweep()) {
    const FiniteGroup& g = s.group;
    REQUIRE(verify_shift_structure(s).ok());
    CHECK(s.y0.size() == s.x0().size());
    if (s.ell() >= 1) CHECK(product_set(g, s.x(s.ell() - 1), s.y0).is_full());
    // Graph round trip.
    ShiftStructure back = derive_from_graph(build_graph_from_structure(s));
    CHECK(back.chain == s.chain);
    CHECK(back.y0 == s.y0);
    CHECK(back.phi == s.phi);
    CHECK(oracle::controllability(build_graph_from_structure(s), 64) == s.ell());
    // Stars agree and cut quotients match.
    for (int j = -1; j < s.ell(); ++j) {
      StarGroup st = star_group(s, j);
      CHECK(st.via_product == st.via_pullback);
      CHECK(st.certificates.ok());
      bool flat = st.via_product == s.x(j);
      CHECK(flat == (intersect(s.x(j + 1), s.y0) == intersect(s.x(j), s.y0)));
      if (j < s.ell() - 1) {
        CHECK(quotients_isomorphic(g, s.x(j + 1), st.via_product, s.x(j + 2), s.x(j + 1)));
        if (flat && j >= 0) CHECK(s.x(j + 1).size() / s.x(j).size() == s.x(j + 2).size() / s.x(j + 1).size());
      }
    }
    // Cosets of X0 and Y0 meet in 0 or |X0 n Y0| elements.
    const int d = intersect(s.x0(), s.y0).size();
    for (const auto& a : oracle::cosets(g, s.x0().elems()))
      for (const auto& b : oracle::cosets(g, s.y0.elems())) {
        int m = static_cast<int>(oracle::intersect(a, b).size());
        CHECK((m == 0 || m == d));
      }
  }
}

TEST_CASE("sweep: signature identities and order formula") {
  for (const auto& s : sweep()) {
    ChainCertificates c = signature_cosignature(s);
    CHECK(c.certificates.ok());
    const int ell = s.ell();
    REQUIRE(static_cast<int>(c.signature.size()) == ell + 2);
    CHECK(c.signature[1] == intersect(s.x0(), s.y0));
    CHECK(c.signature.back() == s.x0());
    for (int j = -1; j < ell; ++j) CHECK(c.signature[j + 2].size() == intersect(s.x(j + 1), s.y0).size());
    for (const auto& d : c.signature) CHECK(oracle::normal(s.group, d.elems()));
    if (ell >= 1) CHECK(c.signature[ell].size() < c.signature[ell + 1].size());
    // |X_j| = |X0|^{j+1} / (|Delta_{j-1}| ... |Delta_0|)
    for (int j = 0; j <= ell; ++j) {
      long num = 1, den = 1;
      for (int k = 0; k <= j; ++k) num *= s.x0().size();
      for (int k = 0; k <= j - 1; ++k) den *= c.signature[k + 1].size();
      CHECK(s.x(j).size() * den == num);
    }
    Report sol = solvability_report(s);
    CHECK(sol.ok());
    CHECK(is_solvable(s.group) == is_solvable(s.group, s.x0()));
  }
}

TEST_CASE("sweep: grid parameters") {
  for (const auto& s : sweep()) {
    GridResult r = refinement_grid(s);
    CHECK(r.certificates.ok());
    const RefinementGrid& g = r.grid;
    int sum = 0;
    for (int j = -1; j < s.ell(); ++j) {
      CHECK(g.e(j) == (star_group(s, j).via_product != s.x(j) ? 1 : 0));
      sum += g.e(j);
    }
    CHECK(g.ell_prime == sum);
    for (int j = -1; j <= s.ell(); ++j) {
      CHECK(g.at(j, g.i(j)) == s.x(j));
      for (int m = g.i(j); m <= g.ell_prime; ++m) CHECK(oracle::normal(s.group, g.at(j, m).elems()));
    }
    for (int j = 0; j <= s.ell(); ++j) CHECK(g.at(j - 1, g.ell_prime) == s.x(j));
  }
}

TEST_CASE("non-minimal chain is rejected") {
  ShiftStructure s = memory(1);
  s.chain.push_back(ElemSet::all(s.group.order()));
  CHECK_FALSE(verify_shift_structure(s).ok());
  try {
    require_valid(s);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonMinimalEll);
  }
}

TEST_CASE("reduce and lift") {
  for (const auto& s : sweep()) {
    if (intersect(s.x0(), s.y0).is_trivial()) continue;
    ShiftStructure r = reduce_structure(s);
    CHECK(verify_shift_structure(r).ok());
    CHECK(intersect(r.x0(), r.y0).is_trivial());
    CHECK(r.ell() == s.ell());
    Section q = quotient(s.group, intersect(s.x0(), s.y0));
    ShiftStructure l = lift_structure(r, s.group, GroupHom{q.index});
    CHECK(l.chain == s.chain);
    CHECK(l.y0 == s.y0);
    CHECK(l.phi == s.phi);
  }
}
