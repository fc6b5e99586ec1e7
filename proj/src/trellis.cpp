#include "sgf/trellis.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

#include "sgf/catalog.hpp"

namespace sgf {

namespace {

class BoolMatrix {
 public:
  explicit BoolMatrix(int n) : n_(n), words_((n + 63) / 64), bits_(static_cast<std::size_t>(n) * words_, 0) {}

  void set(int r, int c) { bits_[r * words_ + c / 64] |= std::uint64_t{1} << (c % 64); }
  bool get(int r, int c) const { return (bits_[r * words_ + c / 64] >> (c % 64)) & 1; }

  BoolMatrix operator*(const BoolMatrix& o) const {
    BoolMatrix out(n_);
    for (int r = 0; r < n_; ++r)
      for (int k = 0; k < n_; ++k)
        if (get(r, k))
          for (int w = 0; w < words_; ++w) out.bits_[r * words_ + w] |= o.bits_[k * words_ + w];
    return out;
  }

  bool all_positive() const {
    for (int r = 0; r < n_; ++r)
      for (int c = 0; c < n_; ++c)
        if (!get(r, c)) return false;
    return true;
  }

 private:
  int n_;
  int words_;
  std::vector<std::uint64_t> bits_;
};

BoolMatrix adjacency(const TrellisGraph& g) {
  BoolMatrix a(g.num_states());
  for (int e = 0; e < g.num_edges(); ++e) a.set(g.initial[e], g.terminal[e]);
  return a;
}

}  // namespace

TrellisGraph build_graph(const FiniteGroup& b, const ElemSet& bplus, const ElemSet& bminus, const GroupHom& psi) {
  if (bplus.universe() != b.order() || bminus.universe() != b.order())
    throw Error(ErrorKind::ParentMismatch, "trellis subgroups over the wrong group");
  require_normal(b, bplus, "B+");
  require_normal(b, bminus, "B-");
  TrellisGraph g;
  g.edges = b;
  g.bplus = bplus;
  g.bminus = bminus;
  g.states = quotient(b, bplus);
  g.minus = quotient(b, bminus);
  if (g.states.quotient_order() != g.minus.quotient_order())
    throw Error(ErrorKind::QuotientMismatch, "|B/B-| != |B/B+|");
  if (!is_isomorphism(g.minus.group, g.states.group, psi))
    throw Error(ErrorKind::NotIso, "psi is not an isomorphism B/B- -> B/B+");
  g.psi = psi;
  g.initial.resize(b.order());
  g.terminal.resize(b.order());
  for (int e = 0; e < b.order(); ++e) {
    g.initial[e] = g.states.index[e];
    g.terminal[e] = psi(g.minus.index[e]);
  }
  return g;
}

TrellisGraph build_graph(const TrellisSpec& spec) { return build_graph(spec.group, spec.bplus, spec.bminus, spec.psi); }

std::optional<int> controllability_index(const TrellisGraph& g) {
  const int s = g.num_states();
  if (s == 1) return 0;
  BoolMatrix a = adjacency(g);
  BoolMatrix p = a;
  for (int k = 1; k <= s * s; ++k) {
    if (p.all_positive()) return k;
    p = p * a;
  }
  return std::nullopt;
}

std::optional<int> controllability_index_by_paths(const TrellisGraph& g) {
  const int s = g.num_states();
  if (s == 1) return 0;
  std::vector<std::vector<int>> succ(s);
  for (int e = 0; e < g.num_edges(); ++e) succ[g.initial[e]].push_back(g.terminal[e]);
  // reach[src] = states at the end of some path of exactly the current length
  std::vector<std::vector<char>> reach(s, std::vector<char>(s, 0));
  for (int src = 0; src < s; ++src) reach[src][src] = 1;
  for (int len = 1; len <= s * s; ++len) {
    bool full = true;
    for (int src = 0; src < s; ++src) {
      std::vector<char> next(s, 0);
      for (int v = 0; v < s; ++v)
        if (reach[src][v])
          for (int w : succ[v]) next[w] = 1;
      reach[src] = std::move(next);
      full = full && std::all_of(reach[src].begin(), reach[src].end(), [](char c) { return c != 0; });
    }
    if (full) return len;
  }
  return std::nullopt;
}

std::optional<int> ReachChain::saturation() const {
  for (std::size_t j = 0; j < members.size(); ++j)
    if (members[j].is_full()) return static_cast<int>(j);
  return std::nullopt;
}

ReachChain reach_chain(const TrellisGraph& g, Direction dir) {
  const int s = g.num_states();
  ReachChain out;
  out.direction = dir;
  std::vector<std::vector<int>> step(s);
  for (int e = 0; e < g.num_edges(); ++e) {
    if (dir == Direction::Forward)
      step[g.initial[e]].push_back(g.terminal[e]);
    else
      step[g.terminal[e]].push_back(g.initial[e]);
  }
  // states at exact distance j from (forward) or to (backward) the identity state
  std::vector<char> cur(s, 0);
  cur[0] = 1;
  while (true) {
    std::vector<int> members;
    for (int e = 0; e < g.num_edges(); ++e) {
      int anchor = dir == Direction::Forward ? g.initial[e] : g.terminal[e];
      if (cur[anchor]) members.push_back(e);
    }
    ElemSet m(g.num_edges(), std::move(members));
    if (std::find(out.members.begin(), out.members.end(), m) != out.members.end()) break;
    if (!is_subgroup(g.edges, m) || !is_normal_in(g.edges, m, ElemSet::all(g.num_edges())))
      throw Error(ErrorKind::InconsistencyDetected, "reach chain member is not a normal subgroup");
    out.members.push_back(std::move(m));
    std::vector<char> next(s, 0);
    for (int v = 0; v < s; ++v)
      if (cur[v])
        for (int w : step[v]) next[w] = 1;
    cur = std::move(next);
  }
  return out;
}

Prop1Report check_prop1(const TrellisGraph& g) {
  Prop1Report r;
  r.matrix = controllability_index(g);
  r.paths = controllability_index_by_paths(g);
  r.forward = reach_chain(g, Direction::Forward).saturation();
  r.backward = reach_chain(g, Direction::Backward).saturation();
  if (!r.agree()) {
    auto show = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("none"); };
    throw Error(ErrorKind::InconsistencyDetected, "controllability index disagreement: matrix=" + show(r.matrix) +
                                                      " paths=" + show(r.paths) + " forward=" + show(r.forward) +
                                                      " backward=" + show(r.backward));
  }
  return r;
}

bool is_primitive(const TrellisGraph& g, int m) {
  if (m < 1) throw Error(ErrorKind::HypothesisViolated, "primitivity exponent must be at least 1");
  BoolMatrix a = adjacency(g);
  BoolMatrix p = a;
  for (int k = 1; k < m; ++k) p = p * a;
  for (int k = 0; k <= g.num_states(); ++k) {
    if (!p.all_positive()) return false;
    p = p * a;
  }
  return true;
}

std::string trellis_to_dot(const TrellisGraph& g) {
  std::ostringstream out;
  out << "digraph trellis {\n";
  for (int c = 0; c < g.num_states(); ++c)
    out << "  s" << g.states.rep(c) << " [label=\"" << g.edges.name(g.states.rep(c)) << "\"];\n";
  for (int e = 0; e < g.num_edges(); ++e)
    out << "  s" << g.states.rep(g.initial[e]) << " -> s" << g.states.rep(g.terminal[e]) << " [label=\""
        << g.edges.name(e) << "\"];\n";
  out << "}\n";
  return out.str();
}

TrellisSpec register_trellis(int q, int memory) {
  if (q < 2 || memory < 0) throw Error(ErrorKind::HypothesisViolated, "register needs q >= 2 and memory >= 0");
  TrellisSpec t;
  t.label = "register q=" + std::to_string(q) + " m=" + std::to_string(memory);
  t.group = elementary_abelian(q, memory + 1);
  if (memory == 0) {
    // elementary_abelian(q, 1) is Z_q
    t.bplus = ElemSet::all(q);
    t.bminus = ElemSet::all(q);
    t.psi = identity_hom(1);
    return t;
  }
  const int n = t.group.order();
  auto digits = [&](int x) {
    std::vector<int> d(memory + 1);
    for (int i = memory; i >= 0; --i) {
      d[i] = x % q;
      x /= q;
    }
    return d;
  };
  auto encode = [&](const std::vector<int>& d) {
    int x = 0;
    for (int v : d) x = x * q + v;
    return x;
  };
  std::vector<int> plus, minus;
  for (int x = 0; x < n; ++x) {
    auto d = digits(x);
    if (std::all_of(d.begin() + 1, d.end(), [](int v) { return v == 0; })) plus.push_back(x);
    if (std::all_of(d.begin(), d.end() - 1, [](int v) { return v == 0; })) minus.push_back(x);
  }
  t.bplus = ElemSet(n, plus);
  t.bminus = ElemSet(n, minus);
  Section sp = quotient(t.group, t.bplus), sm = quotient(t.group, t.bminus);
  t.psi.image.assign(sm.quotient_order(), -1);
  for (int x = 0; x < n; ++x) {
    auto d = digits(x);
    std::vector<int> next(memory + 1, 0);
    for (int i = 1; i <= memory; ++i) next[i] = d[i - 1];
    t.psi.image[sm.index[x]] = sp.index[encode(next)];
  }
  return t;
}

}  // namespace sgf
