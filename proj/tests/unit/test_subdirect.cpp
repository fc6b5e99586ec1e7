#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "../oracle.hpp"
#include "sgf/catalog.hpp"
#include "sgf/iso.hpp"
#include "sgf/subdirect.hpp"
#include "sgf/sweep.hpp"
#include "sgf/trellis.hpp"

using namespace sgf;

namespace {

ShiftStructure memory(int m) { return derive_from_graph(build_graph(register_trellis(2, m))); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Io;
}

const std::vector<ShiftStructure>& reduced_sweep() {
  static const std::vector<ShiftStructure> out = [] {
    SweepOptions opt;
    opt.max_order = 16;
    std::vector<ShiftStructure> r;
    for (auto& s : structure_sweep(opt))
      if (intersect(s.x0(), s.y0).is_trivial() && s.ell() >= 1) r.push_back(s);
    return r;
  }();
  return out;
}

// beta_0: U0'/U0' -> 1/1, the trivial map on U0'.
CosetMap trivial_beta(const FiniteGroup& hu, const ElemSet& u0p) {
  CosetMap m;
  m.image.assign(hu.order(), -1);
  for (int a : u0p) m.image[a] = 0;
  return m;
}

}  // namespace

TEST_CASE("pair groups") {
  FiniteGroup z2 = cyclic_group(2);
  SubdirectGroup d = make_pair_group(z2, z2, {{1, 1}, {0, 0}});
  CHECK(d.pairs == std::vector<std::pair<int, int>>{{0, 0}, {1, 1}});
  CHECK(d.index_of(1, 1) == 1);
  CHECK(d.index_of(0, 1) == -1);
  CHECK(kind_of([&] { make_pair_group(z2, z2, {{0, 0}, {1, 0}, {0, 1}}); }) == ErrorKind::NotClosed);
}

TEST_CASE("subdirect_from_coupling") {
  FiniteGroup z2 = cyclic_group(2);
  SubdirectGroup full = subdirect_from_coupling(z2, z2, ElemSet::all(2), ElemSet::all(2), GroupHom{{0}});
  CHECK(full.pairs.size() == 4);
  SubdirectGroup diag = subdirect_from_coupling(z2, z2, ElemSet::identity(2), ElemSet::identity(2), identity_hom(2));
  CHECK(diag.pairs == std::vector<std::pair<int, int>>{{0, 0}, {1, 1}});
  FiniteGroup s3 = symmetric_group(3);
  int refl = -1;
  for (int a = 0; a < 6; ++a)
    if (s3.elem_order(a) == 2) refl = a;
  CHECK(kind_of([&] { subdirect_from_coupling(s3, s3, ElemSet(6, {0, refl}), ElemSet(6, {0, refl}), identity_hom(3)); }) ==
        ErrorKind::NotNormal);
  CHECK(kind_of([&] { subdirect_from_coupling(z2, z2, ElemSet::identity(2), ElemSet::identity(2), GroupHom{{0, 0}}); }) ==
        ErrorKind::NotIso);
  // |result| = |left| |Y0''| on a bigger instance.
  FiniteGroup z4 = cyclic_group(4);
  SubdirectGroup h = subdirect_from_coupling(z4, z4, ElemSet(4, {0, 2}), ElemSet(4, {0, 2}), identity_hom(2));
  CHECK(h.pairs.size() == 8);
  auto c = coupling_of(z4, z4, h.pairs, ElemSet::all(4), ElemSet::all(4));
  REQUIRE(c);
  CHECK(c->left.group.order() == 2);
}

TEST_CASE("gamma decomposition of the registers") {
  GammaDecomposition g1 = gamma_decompose(memory(1));
  CHECK(g1.tilde.as_group.order() == 4);
  CHECK(g1.gx.group.order() * g1.gy.group.order() == 4);
  CHECK(g1.coupling.left.group.order() == 1);
  CHECK(g1.certificates.ok());
  GammaDecomposition g2 = gamma_decompose(memory(2));
  CHECK(g2.tilde.as_group.order() == 8);
  CHECK(g2.gx.group.order() == 4);
  CHECK(g2.gy.group.order() == 4);
  CHECK(g2.coupling.left.group.order() == 2);
  CHECK(g2.certificates.ok());
  ShiftStructure triv;
  triv.group = cyclic_group(2);
  triv.chain = {ElemSet::identity(2), ElemSet::all(2)};
  triv.y0 = ElemSet::all(2);
  triv.phi = GroupHom{{0}};
  CHECK(kind_of([&] { gamma_decompose(triv); }) == ErrorKind::NotReduced);
}

TEST_CASE("layer containment on the memory-2 data") {
  ShiftStructure s = memory(2);
  GammaDecomposition gd = gamma_decompose(s);
  SynthesisInput inp = synthesis_input_of(s, gd);
  REQUIRE(inp.ell == 2);
  auto input_at = [&](int j) {
    Lemma47Input l;
    l.hu = inp.hu;
    l.hv = inp.hv;
    l.u0p = inp.hu_chain[1];
    l.hu_j = inp.hu_chain[j + 1];
    l.hu_j1 = inp.hu_chain[j + 2];
    l.hv_j = inp.hv_chain[j];
    l.hv_j1 = inp.hv_chain[j + 1];
    l.gamma_j = inp.gamma[j];
    l.gamma_j1 = inp.gamma[j + 1];
    l.beta_j = j == 0 ? trivial_beta(inp.hu, l.u0p) : inp.beta[j - 1];
    l.beta_j1 = inp.beta[j];
    return l;
  };
  // j = 0 has Gamma_1'' = Gamma_0'', the degenerate case.
  Lemma47Input l0 = input_at(0);
  CHECK(l0.gamma_j == l0.gamma_j1);
  CHECK(check_lemma47(l0));
  CHECK(check_lemma47(input_at(1)));
  Lemma47Input bad = input_at(1);
  std::swap(bad.gamma_j, bad.gamma_j1);
  CHECK(kind_of([&] { check_lemma47(bad); }) == ErrorKind::HypothesisViolated);
}

TEST_CASE("synthesis from the gamma decomposition") {
  for (int m : {1, 2}) {
    ShiftStructure s = memory(m);
    SynthesisInput inp = synthesis_input_of(s, gamma_decompose(s));
    CHECK(check_synthesis_input(inp).ok());
    Synthesis syn = synthesize_thmy1(inp);
    CHECK(syn.certificates.ok());
    CHECK(syn.structure.group.order() == s.group.order());
    CHECK(syn.structure.ell() == m);
    CHECK(verify_shift_structure(syn.structure).ok());
    auto f = find_structure_iso(s, syn.structure);
    REQUIRE(f);
    CHECK(structure_iso_report(s, syn.structure, *f).ok());
    // JSON round trip of the input.
    SynthesisInput back = synthesis_input_from_json(synthesis_input_to_json(inp), ".");
    CHECK(back.hu == inp.hu);
    CHECK(back.hv_star == inp.hv_star);
    CHECK(back.beta == inp.beta);
    CHECK(synthesize_thmy1(back).structure.group == syn.structure.group);
  }
}

TEST_CASE("synthesis input mutations are rejected") {
  ShiftStructure s = memory(2);
  SynthesisInput inp = synthesis_input_of(s, gamma_decompose(s));
  SynthesisInput a = inp;
  a.gamma.back() = ElemSet::identity(a.hv.order());
  CHECK_FALSE(check_synthesis_input(a).ok());
  CHECK(kind_of([&] { synthesize_thmy1(a); }) == ErrorKind::HypothesisViolated);
  SynthesisInput b = inp;
  b.phi = GroupHom{std::vector<int>(b.hu.order(), 0)};
  CHECK_FALSE(check_synthesis_input(b).ok());
  SynthesisInput c = inp;
  std::swap(c.hu_chain[1], c.hu_chain[2]);
  CHECK_FALSE(check_synthesis_input(c).ok());
}

TEST_CASE("state-group synthesis") {
  ShiftStructure s2 = memory(2);
  StateChains c2 = state_chains_of(s2, gamma_decompose(s2));
  CHECK(c2.hu.order() == 4);
  CHECK(c2.u0p().size() == 2);
  CHECK(c2.gammas.back().size() == 2);
  Synthesis h2 = synthesize_thmy3(c2);
  CHECK(h2.structure.group.order() == c2.hu.order() * c2.u0p().size());
  CHECK(h2.structure.ell() == 2);
  CHECK(controllability_index(build_graph_from_structure(h2.structure)) == 2);
  ShiftStructure s1 = memory(1);
  StateChains c1 = state_chains_of(s1, gamma_decompose(s1));
  CHECK(c1.hu.order() == c1.u0p().size());
  Synthesis h1 = synthesize_thmy3(c1);
  CHECK(h1.structure.group.order() == c1.u0p().size() * c1.u0p().size());
  CHECK(h1.structure.ell() == 1);
}

TEST_CASE("structure isomorphism checks") {
  ShiftStructure s = memory(2);
  GroupHom id = identity_hom(8);
  CHECK(structure_iso_report(s, s, id).ok());
  GroupHom zero{std::vector<int>(8, 0)};
  CHECK_FALSE(structure_iso_report(s, s, zero).ok());
  CHECK_FALSE(find_structure_iso(s, memory(1)).has_value());
}

TEST_CASE("sweep: decomposition invariants and round trip") {
  REQUIRE(!reduced_sweep().empty());
  for (const auto& s : reduced_sweep()) {
    GammaDecomposition gd = gamma_decompose(s);
    CHECK(gd.certificates.ok());
    CHECK(gd.tilde.as_group.order() == s.group.order());
    CHECK(oracle::is_hom(s.group, gd.tilde.as_group, gd.gamma.image));
    CHECK(oracle::is_bijection(gd.gamma.image, s.group.order()));
    std::set<int> left, right;
    for (auto [a, b] : gd.tilde.pairs) {
      left.insert(a);
      right.insert(b);
    }
    CHECK(static_cast<int>(left.size()) == gd.gx.group.order());
    CHECK(static_cast<int>(right.size()) == gd.gy.group.order());
    CHECK(gd.gx_chain[s.ell()].is_full());
    CHECK(product_set(gd.gy.group, gd.gy_chain[s.ell() - 1], gd.y0pp).is_full());
    for (int j = -1; j <= s.ell(); ++j) CHECK(gd.tilde_chain[j + 1] == image_of(gd.gamma, s.x(j), gd.tilde.as_group.order()));
    CHECK(roundtrip_check(s));
  }
}
