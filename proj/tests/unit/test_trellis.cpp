#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "../oracle.hpp"
#include "sgf/catalog.hpp"
#include "sgf/sweep.hpp"
#include "sgf/trellis.hpp"

using namespace sgf;

namespace {

TrellisGraph one_state() {
  FiniteGroup z2 = cyclic_group(2);
  return build_graph(z2, ElemSet::all(2), ElemSet::all(2), GroupHom{{0}});
}

std::vector<std::pair<int, int>> endpoints(const TrellisGraph& g) {
  std::vector<std::pair<int, int>> out;
  for (int e = 0; e < g.num_edges(); ++e) out.push_back({g.initial[e], g.terminal[e]});
  return out;
}

}  // namespace

TEST_CASE("one-state graph") {
  TrellisGraph g = one_state();
  CHECK(g.num_states() == 1);
  CHECK(g.num_edges() == 2);
  CHECK(controllability_index(g) == 0);
  CHECK(reach_chain(g, Direction::Forward).members.front().is_full());
  Prop1Report p = check_prop1(g);
  CHECK(p.agree());
  CHECK(p.matrix == 0);
}

TEST_CASE("memory-1 register graph") {
  TrellisGraph g = build_graph(register_trellis(2, 1));
  CHECK(g.num_states() == 2);
  // Complete bipartite on two states, one edge per ordered pair.
  auto ep = endpoints(g);
  std::sort(ep.begin(), ep.end());
  CHECK(ep == std::vector<std::pair<int, int>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  CHECK(controllability_index(g) == 1);
  ReachChain f = reach_chain(g, Direction::Forward);
  REQUIRE(f.members.size() >= 2);
  CHECK(f.members[0].elems() == std::vector<int>{0, 2});
  CHECK(f.members[1].is_full());
  Prop1Report p = check_prop1(g);
  CHECK(p.matrix == 1);
  CHECK(p.forward == 1);
  CHECK(p.backward == 1);
  CHECK(is_primitive(g, 1));
}

TEST_CASE("memory-2 register graph is de Bruijn") {
  TrellisGraph g = build_graph(register_trellis(2, 2));
  CHECK(g.num_states() == 4);
  // Edge (u,s1,s2) runs from state (s1,s2) to (u,s1); states carry representative (0,s1,s2).
  for (int e = 0; e < 8; ++e) {
    int u = e >> 2, s1 = (e >> 1) & 1, s2 = e & 1;
    CHECK(g.states.rep(g.initial[e]) == 2 * s1 + s2);
    CHECK(g.states.rep(g.terminal[e]) == 2 * u + s1);
  }
  CHECK(controllability_index(g) == 2);
  ReachChain f = reach_chain(g, Direction::Forward);
  CHECK(f.members[0].elems() == std::vector<int>{0, 4});
  CHECK(f.members[1].elems() == std::vector<int>{0, 2, 4, 6});
  CHECK(f.members[2].is_full());
  CHECK(f.saturation() == 2);
  Prop1Report p = check_prop1(g);
  CHECK(p.agree());
  CHECK(p.matrix == 2);
  CHECK(is_primitive(g, 2));
  CHECK_FALSE(is_primitive(g, 1));
}

TEST_CASE("two-cycle graph is not primitive") {
  TrellisGraph g = build_graph(register_trellis(2, 1));
  // Keep only the shape 0 -> 1 -> 0.
  g.initial = {0, 1, 0, 1};
  g.terminal = {1, 0, 1, 0};
  CHECK_FALSE(is_primitive(g, 1));
  CHECK_FALSE(controllability_index(g).has_value());
}

TEST_CASE("build_graph rejects bad input") {
  FiniteGroup s3 = symmetric_group(3);
  int refl = -1;
  for (int a = 0; a < 6; ++a)
    if (s3.elem_order(a) == 2) refl = a;
  ElemSet bad(6, {0, refl});
  CHECK_THROWS_AS(build_graph(s3, bad, bad, GroupHom{{0, 1, 2}}), Error);
  FiniteGroup v = elementary_abelian(2, 2);
  try {
    build_graph(v, ElemSet(4, {0, 2}), ElemSet(4, {0, 1}), GroupHom{{0, 0}});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotIso);
  }
}

TEST_CASE("sweep: controllability three ways plus the walk oracle") {
  SweepOptions opt;
  opt.max_order = 16;
  int controllable = 0;
  for (const auto& t : trellis_sweep(opt)) {
    TrellisGraph g = build_graph(t);
    Prop1Report p = check_prop1(g);
    CHECK(p.agree());
    int brute = oracle::controllability(g, g.num_states() * g.num_states());
    CHECK(p.matrix.value_or(-1) == brute);
    CHECK(controllability_index_by_paths(g) == p.matrix);
    if (p.matrix) ++controllable;
  }
  CHECK(controllable > 0);
}

TEST_CASE("sweep: regularity and reach chain properties") {
  SweepOptions opt;
  opt.max_order = 16;
  for (const auto& t : trellis_sweep(opt)) {
    TrellisGraph g = build_graph(t);
    std::vector<int> out(g.num_states(), 0), in(g.num_states(), 0);
    for (int e = 0; e < g.num_edges(); ++e) {
      ++out[g.initial[e]];
      ++in[g.terminal[e]];
    }
    for (int s = 0; s < g.num_states(); ++s) {
      CHECK(out[s] == g.bplus.size());
      CHECK(in[s] == g.bminus.size());
    }
    for (Direction d : {Direction::Forward, Direction::Backward}) {
      ReachChain c = reach_chain(g, d);
      CHECK(c.members.front() == (d == Direction::Forward ? g.bplus : g.bminus));
      for (std::size_t j = 0; j < c.members.size(); ++j) {
        CHECK(oracle::normal(g.edges, c.members[j].elems()));
        if (j) CHECK(c.members[j - 1].subset_of(c.members[j]));
      }
    }
    // Terminal states of B_j+ are the initial states of B_{j+1}+.
    ReachChain f = reach_chain(g, Direction::Forward);
    for (std::size_t j = 0; j + 1 < f.members.size(); ++j) {
      std::set<int> term, init;
      for (int e : f.members[j]) term.insert(g.terminal[e]);
      for (int e : f.members[j + 1]) init.insert(g.initial[e]);
      CHECK(term == init);
    }
  }
}

TEST_CASE("DOT export is stable") {
  TrellisGraph g = build_graph(register_trellis(2, 1));
  std::string a = trellis_to_dot(g), b = trellis_to_dot(g);
  CHECK(a == b);
  CHECK(a.find("digraph") == 0);
  CHECK(std::count(a.begin(), a.end(), '>') >= 4);
}
