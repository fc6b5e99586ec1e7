#include "sgf/group.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace sgf {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::NoIdentityAtZero: return "NoIdentityAtZero";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::NoInverse: return "NoInverse";
    case ErrorKind::ElementOutOfRange: return "ElementOutOfRange";
    case ErrorKind::NotASubgroup: return "NotASubgroup";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::ParentMismatch: return "ParentMismatch";
    case ErrorKind::NotOnto: return "NotOnto";
    case ErrorKind::OrderBoundExceeded: return "OrderBoundExceeded";
    case ErrorKind::NotAutomorphism: return "NotAutomorphism";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::NotIso: return "NotIso";
    case ErrorKind::QuotientMismatch: return "QuotientMismatch";
    case ErrorKind::NotControllable: return "NotControllable";
    case ErrorKind::InvalidStructure: return "InvalidStructure";
    case ErrorKind::InconsistencyDetected: return "InconsistencyDetected";
    case ErrorKind::NonMinimalEll: return "NonMinimalEll";
    case ErrorKind::NotCompositionChain: return "NotCompositionChain";
    case ErrorKind::NotReduced: return "NotReduced";
    case ErrorKind::NotHomomorphism: return "NotHomomorphism";
    case ErrorKind::NotAbelian: return "NotAbelian";
    case ErrorKind::ComponentsOverlap: return "ComponentsOverlap";
    case ErrorKind::ProductNotFull: return "ProductNotFull";
    case ErrorKind::NotFPF: return "NotFPF";
    case ErrorKind::PCPFails: return "PCPFails";
    case ErrorKind::SynthesisInconsistent: return "SynthesisInconsistent";
    case ErrorKind::BoundExceeded: return "BoundExceeded";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::Io: return "Io";
    case ErrorKind::Schema: return "Schema";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

FiniteGroup::FiniteGroup() = default;

FiniteGroup FiniteGroup::from_trusted(int n, std::vector<int> flat, std::vector<std::string> names) {
  FiniteGroup g;
  g.n_ = n;
  g.table_ = std::move(flat);
  g.names_ = std::move(names);
  g.inv_.assign(n, 0);
  g.ord_.assign(n, 1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (g.mul(a, b) == 0) {
        g.inv_[a] = b;
        break;
      }
    }
    int x = a, k = 1;
    while (x != 0) {
      x = g.mul(x, a);
      ++k;
    }
    g.ord_[a] = k;
  }
  g.abelian_ = true;
  for (int a = 0; a < n && g.abelian_; ++a)
    for (int b = a + 1; b < n; ++b)
      if (g.mul(a, b) != g.mul(b, a)) {
        g.abelian_ = false;
        break;
      }
  return g;
}

std::string FiniteGroup::name(int a) const {
  if (a >= 0 && a < static_cast<int>(names_.size())) return names_[a];
  return std::to_string(a);
}

std::vector<std::vector<int>> FiniteGroup::table() const {
  std::vector<std::vector<int>> t(n_);
  for (int a = 0; a < n_; ++a) t[a].assign(row(a).begin(), row(a).end());
  return t;
}

FiniteGroup validate_group(const std::vector<std::vector<int>>& table, std::vector<std::string> names) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw Error(ErrorKind::NotClosed, "empty table");
  std::vector<int> flat;
  flat.reserve(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(table[a].size()) != n)
      throw Error(ErrorKind::NotClosed, "row " + std::to_string(a) + " has wrong length");
    for (int b = 0; b < n; ++b) {
      int v = table[a][b];
      if (v < 0 || v >= n)
        throw Error(ErrorKind::NotClosed,
                    "entry (" + std::to_string(a) + "," + std::to_string(b) + ") = " + std::to_string(v));
      flat.push_back(v);
    }
  }
  for (int x = 0; x < n; ++x)
    if (table[0][x] != x || table[x][0] != x)
      throw Error(ErrorKind::NoIdentityAtZero, "element 0 does not fix " + std::to_string(x));
  for (int a = 0; a < n; ++a) {
    std::vector<char> seen_row(n, 0), seen_col(n, 0);
    for (int b = 0; b < n; ++b) {
      if (seen_row[table[a][b]]++ || seen_col[table[b][a]]++)
        throw Error(ErrorKind::NoInverse, "element " + std::to_string(a));
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int ab = flat[a * n + b];
      for (int c = 0; c < n; ++c)
        if (flat[ab * n + c] != flat[a * n + flat[b * n + c]])
          throw Error(ErrorKind::NotAssociative,
                      "triple (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")");
    }
  if (!names.empty() && static_cast<int>(names.size()) != n) throw Error(ErrorKind::Schema, "names length mismatch");
  return FiniteGroup::from_trusted(n, std::move(flat), std::move(names));
}

ElemSet::ElemSet(int universe, std::vector<int> elems) : elems_(std::move(elems)), mask_(universe, 0) {
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
  for (int a : elems_) {
    if (a < 0 || a >= universe) throw Error(ErrorKind::ElementOutOfRange, "element " + std::to_string(a));
    mask_[a] = 1;
  }
}

ElemSet ElemSet::all(int n) {
  std::vector<int> e(n);
  std::iota(e.begin(), e.end(), 0);
  return ElemSet(n, std::move(e));
}

ElemSet ElemSet::identity(int n) { return ElemSet(n, {0}); }

bool ElemSet::subset_of(const ElemSet& other) const {
  if (other.universe() != universe()) return false;
  for (int a : elems_)
    if (!other.contains(a)) return false;
  return true;
}

static void same_parent(const ElemSet& a, const ElemSet& b) {
  if (a.universe() != b.universe())
    throw Error(ErrorKind::ParentMismatch,
                "sets over groups of order " + std::to_string(a.universe()) + " and " + std::to_string(b.universe()));
}

ElemSet intersect(const ElemSet& a, const ElemSet& b) {
  same_parent(a, b);
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return ElemSet(a.universe(), std::move(out));
}

ElemSet product_set(const FiniteGroup& g, const ElemSet& a, const ElemSet& b) {
  std::vector<char> hit(g.order(), 0);
  std::vector<int> out;
  for (int x : a)
    for (int y : b) {
      int z = g.mul(x, y);
      if (!hit[z]) {
        hit[z] = 1;
        out.push_back(z);
      }
    }
  return ElemSet(g.order(), std::move(out));
}

ElemSet subgroup_generated(const FiniteGroup& g, std::span<const int> gens) {
  const int n = g.order();
  for (int x : gens)
    if (x < 0 || x >= n) throw Error(ErrorKind::ElementOutOfRange, "generator " + std::to_string(x));
  std::vector<char> in(n, 0);
  std::vector<int> elems{0};
  in[0] = 1;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (int s : gens) {
      int y = g.mul(elems[i], s);
      if (!in[y]) {
        in[y] = 1;
        elems.push_back(y);
      }
    }
  }
  return ElemSet(n, std::move(elems));
}

ElemSet subgroup_generated(const FiniteGroup& g, const ElemSet& a, const ElemSet& b) {
  std::vector<int> gens(a.begin(), a.end());
  gens.insert(gens.end(), b.begin(), b.end());
  return subgroup_generated(g, gens);
}

bool is_subgroup(const FiniteGroup& g, const ElemSet& s) {
  if (s.universe() != g.order() || !s.contains(0)) return false;
  for (int a : s)
    for (int b : s)
      if (!s.contains(g.mul(a, b))) return false;
  return true;
}

void require_subgroup(const FiniteGroup& g, const ElemSet& s, const char* what) {
  if (s.universe() != g.order()) throw Error(ErrorKind::ParentMismatch, what);
  if (!is_subgroup(g, s)) throw Error(ErrorKind::NotASubgroup, what);
}

bool is_normal_in(const FiniteGroup& g, const ElemSet& n, const ElemSet& t) {
  for (int x : t) {
    int xi = g.inv(x);
    for (int a : n)
      if (!n.contains(g.mul(g.mul(x, a), xi))) return false;
  }
  return true;
}

bool is_normal(const FiniteGroup& g, const ElemSet& h) {
  require_subgroup(g, h, "is_normal");
  return is_normal_in(g, h, ElemSet::all(g.order()));
}

void require_normal(const FiniteGroup& g, const ElemSet& n, const char* what) {
  require_subgroup(g, n, what);
  if (!is_normal_in(g, n, ElemSet::all(g.order()))) throw Error(ErrorKind::NotNormal, what);
}

ElemSet normal_closure(const FiniteGroup& g, const ElemSet& s, const ElemSet& t) {
  std::vector<int> gens;
  std::vector<char> seen(g.order(), 0);
  for (int a : s)
    for (int x : t) {
      int c = g.mul(g.mul(x, a), g.inv(x));
      if (!seen[c]) {
        seen[c] = 1;
        gens.push_back(c);
      }
    }
  return subgroup_generated(g, gens);
}

static std::vector<ElemSet> join_closure(const FiniteGroup& g, const ElemSet& base, const std::vector<ElemSet>& atoms) {
  std::set<std::vector<int>> seen{base.elems()};
  std::vector<ElemSet> out{base};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& at : atoms) {
      if (at.subset_of(out[i])) continue;
      ElemSet j = product_set(g, out[i], at);
      if (seen.insert(j.elems()).second) out.push_back(std::move(j));
    }
  }
  std::sort(out.begin(), out.end(), [](const ElemSet& a, const ElemSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::vector<ElemSet> normal_subgroups_between(const FiniteGroup& g, const ElemSet& a, const ElemSet& t) {
  ElemSet base = normal_closure(g, a, t);
  std::set<std::vector<int>> seen;
  std::vector<ElemSet> atoms;
  std::vector<char> covered(g.order(), 0);
  for (int x : t) {
    if (base.contains(x) || covered[x]) continue;
    ElemSet c = normal_closure(g, ElemSet(g.order(), {x}), t);
    ElemSet j = product_set(g, base, c);
    for (int z : t) covered[g.mul(g.mul(z, x), g.inv(z))] = 1;
    if (seen.insert(j.elems()).second) atoms.push_back(std::move(j));
  }
  return join_closure(g, base, atoms);
}

std::vector<ElemSet> normal_subgroups(const FiniteGroup& g) {
  return normal_subgroups_between(g, ElemSet::identity(g.order()), ElemSet::all(g.order()));
}

ElemSet commutator_subgroup(const FiniteGroup& g, const ElemSet& s) {
  std::vector<int> gens;
  std::vector<char> seen(g.order(), 0);
  for (int a : s)
    for (int b : s) {
      int c = g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b)));
      if (!seen[c]) {
        seen[c] = 1;
        gens.push_back(c);
      }
    }
  return subgroup_generated(g, gens);
}

std::vector<ElemSet> derived_series(const FiniteGroup& g, const ElemSet& s) {
  std::vector<ElemSet> out{s};
  while (true) {
    ElemSet d = commutator_subgroup(g, out.back());
    if (d == out.back()) break;
    out.push_back(std::move(d));
  }
  return out;
}

bool is_solvable(const FiniteGroup& g, const ElemSet& s) { return derived_series(g, s).back().is_trivial(); }

bool is_solvable(const FiniteGroup& g) { return is_solvable(g, ElemSet::all(g.order())); }

bool is_simple(const FiniteGroup& g) {
  if (g.order() == 1) return false;
  ElemSet whole = ElemSet::all(g.order());
  for (int x = 1; x < g.order(); ++x)
    if (normal_closure(g, ElemSet(g.order(), {x}), whole).size() != g.order()) return false;
  return true;
}

Section section(const FiniteGroup& g, const ElemSet& top, const ElemSet& kernel) {
  require_subgroup(g, top, "section top");
  require_subgroup(g, kernel, "section kernel");
  if (!kernel.subset_of(top)) throw Error(ErrorKind::NotASubgroup, "kernel not contained in top");
  if (!is_normal_in(g, kernel, top)) throw Error(ErrorKind::NotNormal, "kernel not normal in top");
  Section s;
  s.top = top;
  s.kernel = kernel;
  s.index.assign(g.order(), -1);
  for (int a : top) {
    if (s.index[a] >= 0) continue;
    const int id = static_cast<int>(s.cosets.size());
    std::vector<int> c;
    c.reserve(kernel.size());
    for (int k : kernel) {
      int x = g.mul(a, k);
      s.index[x] = id;
      c.push_back(x);
    }
    std::sort(c.begin(), c.end());
    s.cosets.push_back(std::move(c));
  }
  const int q = static_cast<int>(s.cosets.size());
  std::vector<int> flat(static_cast<std::size_t>(q) * q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) flat[i * q + j] = s.index[g.mul(s.rep(i), s.rep(j))];
  s.group = FiniteGroup::from_trusted(q, std::move(flat));
  return s;
}

Section quotient(const FiniteGroup& g, const ElemSet& n) {
  require_subgroup(g, n, "quotient kernel");
  if (!is_normal_in(g, n, ElemSet::all(g.order()))) throw Error(ErrorKind::NotNormal, "quotient kernel");
  return section(g, ElemSet::all(g.order()), n);
}

ElemSet coset_preimage(const Section& s, std::span<const int> coset_ids) {
  std::vector<int> out;
  for (int c : coset_ids) out.insert(out.end(), s.cosets[c].begin(), s.cosets[c].end());
  return ElemSet(static_cast<int>(s.index.size()), std::move(out));
}

ElemSet coset_preimage(const Section& s, const ElemSet& quotient_subset) {
  return coset_preimage(s, std::span<const int>(quotient_subset.elems()));
}

ElemSet coset_image(const Section& s, const ElemSet& subset) {
  std::vector<int> out;
  for (int a : subset) {
    if (s.index[a] < 0) throw Error(ErrorKind::NotASubgroup, "element outside section top");
    out.push_back(s.index[a]);
  }
  return ElemSet(s.quotient_order(), std::move(out));
}

bool is_homomorphism(const FiniteGroup& g, const FiniteGroup& h, const GroupHom& f) {
  if (static_cast<int>(f.image.size()) != g.order()) return false;
  for (int v : f.image)
    if (v < 0 || v >= h.order()) return false;
  if (f(0) != 0) return false;
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b)
      if (f(g.mul(a, b)) != h.mul(f(a), f(b))) return false;
  return true;
}

bool is_isomorphism(const FiniteGroup& g, const FiniteGroup& h, const GroupHom& f) {
  if (g.order() != h.order()) return false;
  if (!is_homomorphism(g, h, f)) return false;
  std::vector<char> hit(h.order(), 0);
  for (int v : f.image) {
    if (hit[v]) return false;
    hit[v] = 1;
  }
  return true;
}

GroupHom compose(const GroupHom& outer, const GroupHom& inner) {
  GroupHom r;
  r.image.reserve(inner.image.size());
  for (int v : inner.image) r.image.push_back(outer(v));
  return r;
}

GroupHom inverse(const GroupHom& f) {
  GroupHom r;
  r.image.assign(f.image.size(), -1);
  for (std::size_t a = 0; a < f.image.size(); ++a) {
    int v = f.image[a];
    if (v < 0 || v >= static_cast<int>(r.image.size()) || r.image[v] >= 0)
      throw Error(ErrorKind::NotIso, "map is not a bijection");
    r.image[v] = static_cast<int>(a);
  }
  return r;
}

GroupHom identity_hom(int n) {
  GroupHom r;
  r.image.resize(n);
  std::iota(r.image.begin(), r.image.end(), 0);
  return r;
}

ElemSet image_of(const GroupHom& f, const ElemSet& s, int codomain_order) {
  std::vector<int> out;
  for (int a : s) out.push_back(f(a));
  return ElemSet(codomain_order, std::move(out));
}

ElemSet preimage_of(const GroupHom& f, const ElemSet& s) {
  std::vector<int> out;
  for (std::size_t a = 0; a < f.image.size(); ++a)
    if (s.contains(f.image[a])) out.push_back(static_cast<int>(a));
  return ElemSet(static_cast<int>(f.image.size()), std::move(out));
}

ElemSet preimage_subgroup(const FiniteGroup& dom, const FiniteGroup& cod, const GroupHom& f, const ElemSet& h,
                          bool require_onto) {
  if (!is_homomorphism(dom, cod, f)) throw Error(ErrorKind::NotHomomorphism, "preimage_subgroup");
  require_subgroup(cod, h, "preimage_subgroup target");
  ElemSet pre = preimage_of(f, h);
  if (require_onto && static_cast<long>(dom.order()) * h.size() != static_cast<long>(cod.order()) * pre.size())
    throw Error(ErrorKind::NotOnto, "index identity fails for preimage");
  return pre;
}

GroupHom to_quotient_hom(const Section& a, const Section& b, const CosetMap& m) {
  GroupHom f;
  f.image.resize(a.quotient_order());
  for (int c = 0; c < a.quotient_order(); ++c) {
    int y = m.image[a.rep(c)];
    if (y < 0 || b.index[y] < 0) throw Error(ErrorKind::NotHomomorphism, "coset map leaves the target section");
    f.image[c] = b.index[y];
  }
  return f;
}

CosetMap from_quotient_hom(const Section& a, const Section& b, const GroupHom& f) {
  CosetMap m;
  m.image.assign(a.index.size(), -1);
  for (int x : a.top) m.image[x] = b.rep(f(a.index[x]));
  return m;
}

std::string check_coset_iso(const Section& a, const Section& b, const CosetMap& m) {
  if (m.image.size() != a.index.size()) return "coset map has wrong length";
  for (int x : a.top) {
    int y = m.image[x];
    if (y < 0 || y >= static_cast<int>(b.index.size()) || b.index[y] < 0)
      return "element " + std::to_string(x) + " maps outside the target";
    if (b.rep_of(y) != y) return "image of " + std::to_string(x) + " is not a least coset element";
    if (y != m.image[a.rep_of(x)]) return "not constant on the coset of " + std::to_string(x);
  }
  if (a.quotient_order() != b.quotient_order()) return "quotient orders differ";
  GroupHom f = to_quotient_hom(a, b, m);
  if (!is_isomorphism(a.group, b.group, f)) return "induced quotient map is not an isomorphism";
  return {};
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const int na = a.order(), nb = b.order(), n = na * nb;
  std::vector<int> flat(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      flat[static_cast<std::size_t>(x) * n + y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
  std::vector<std::string> names;
  if (!a.names().empty() || !b.names().empty()) {
    for (int x = 0; x < n; ++x) names.push_back("(" + a.name(x / nb) + "," + b.name(x % nb) + ")");
  }
  return FiniteGroup::from_trusted(n, std::move(flat), std::move(names));
}

FiniteGroup subgroup_group(const FiniteGroup& g, const ElemSet& s) {
  require_subgroup(g, s, "subgroup");
  const int n = s.size();
  std::vector<int> flat(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) flat[static_cast<std::size_t>(i) * n + j] = local_index(s, g.mul(s.elems()[i], s.elems()[j]));
  std::vector<std::string> names;
  if (!g.names().empty())
    for (int a : s) names.push_back(g.name(a));
  return FiniteGroup::from_trusted(n, std::move(flat), std::move(names));
}

int local_index(const ElemSet& s, int a) {
  if (!s.contains(a)) return -1;
  return static_cast<int>(std::lower_bound(s.elems().begin(), s.elems().end(), a) - s.elems().begin());
}

std::vector<int> order_profile(const FiniteGroup& g) {
  std::vector<int> p(g.order());
  for (int a = 0; a < g.order(); ++a) p[a] = g.elem_order(a);
  std::sort(p.begin(), p.end());
  return p;
}

InducedCosetIso induced_coset_iso(const FiniteGroup& g, const ElemSet& q_low, const ElemSet& q, const ElemSet& r_low,
                                  const ElemSet& r) {
  auto fail = [](const std::string& c) { throw Error(ErrorKind::HypothesisViolated, c); };
  for (const ElemSet* s : {&q_low, &q, &r_low, &r})
    if (s->universe() != g.order() || !is_subgroup(g, *s)) fail("argument is not a subgroup");
  if (!q.subset_of(r)) fail("Q not contained in R");
  if (!q_low.subset_of(q)) fail("Q' not contained in Q");
  if (!r_low.subset_of(r)) fail("R' not contained in R");
  if (!q_low.subset_of(r_low)) fail("Q' not contained in R'");
  if (!(intersect(r_low, q) == q_low)) fail("R' n Q != Q'");
  if (!(product_set(g, q, r_low) == r)) fail("R != QR'");
  if (!is_normal_in(g, q, r)) fail("Q not normal in R");
  if (!is_normal_in(g, r_low, r)) fail("R' not normal in R");

  InducedCosetIso out;
  out.low = section(g, q, q_low);
  out.high = section(g, r, r_low);
  out.map.image.resize(out.low.quotient_order());
  for (int c = 0; c < out.low.quotient_order(); ++c) out.map.image[c] = out.high.index[out.low.rep(c)];
  if (!is_isomorphism(out.low.group, out.high.group, out.map))
    throw Error(ErrorKind::InconsistencyDetected, "induced coset map is not an isomorphism");

  out.top = section(g, r, q);
  out.side = section(g, r_low, q_low);
  out.top_map.image.resize(out.side.quotient_order());
  for (int c = 0; c < out.side.quotient_order(); ++c) out.top_map.image[c] = out.top.index[out.side.rep(c)];
  if (!is_isomorphism(out.side.group, out.top.group, out.top_map))
    throw Error(ErrorKind::InconsistencyDetected, "R'/Q' -> R/Q is not an isomorphism");

  // R/Q' is the internal direct product of Q/Q' and R'/Q'.
  out.whole = section(g, r, q_low);
  out.split = direct_product(out.low.group, out.side.group);
  const int ns = out.side.quotient_order();
  std::vector<int> pair_of(static_cast<std::size_t>(out.whole.quotient_order()), -1);
  for (int a : q)
    for (int b : r_low) {
      int w = out.whole.index[g.mul(a, b)];
      int p = out.low.index[a] * ns + out.side.index[b];
      if (pair_of[w] >= 0 && pair_of[w] != p)
        throw Error(ErrorKind::InconsistencyDetected, "R/Q' does not split as Q/Q' x R'/Q'");
      pair_of[w] = p;
    }
  out.split_map.image = std::move(pair_of);
  if (!is_isomorphism(out.whole.group, out.split, out.split_map))
    throw Error(ErrorKind::InconsistencyDetected, "R/Q' -> Q/Q' x R'/Q' is not an isomorphism");
  return out;
}

}  // namespace sgf
