#include "sgf/latin.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "sgf/iso.hpp"

namespace sgf {

namespace {

bool distinct(const std::vector<int>& v) {
  std::vector<int> w = v;
  std::sort(w.begin(), w.end());
  return std::adjacent_find(w.begin(), w.end()) == w.end();
}

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

bool trivially_meet(const ElemSet& a, const ElemSet& b) { return intersect(a, b).is_trivial(); }

// (a, b) -> a*b from the external product of two subgroups onto their product.
bool internal_direct(const FiniteGroup& g, const ElemSet& a, const ElemSet& b, const ElemSet& whole) {
  if (static_cast<long>(a.size()) * b.size() != whole.size()) return false;
  FiniteGroup ga = subgroup_group(g, a), gb = subgroup_group(g, b), gw = subgroup_group(g, whole);
  FiniteGroup p = direct_product(ga, gb);
  GroupHom f;
  f.image.resize(p.order());
  for (int i = 0; i < p.order(); ++i) {
    int e = g.mul(a.elems()[i / gb.order()], b.elems()[i % gb.order()]);
    f.image[i] = local_index(whole, e);
    if (f.image[i] < 0) return false;
  }
  return is_isomorphism(p, gw, f);
}

std::string sizes(const ElemSet& a) { return std::to_string(a.size()); }

}  // namespace

bool is_latin_square(const LatinSquare& sq) {
  const std::size_t t = sq.size();
  std::vector<int> letters;
  for (const auto& row : sq) {
    if (row.size() != t || !distinct(row)) return false;
    if (letters.empty()) letters = row;
  }
  std::sort(letters.begin(), letters.end());
  for (std::size_t c = 0; c < t; ++c) {
    std::vector<int> col;
    for (std::size_t r = 0; r < t; ++r) col.push_back(sq[r][c]);
    if (!distinct(col)) return false;
  }
  for (const auto& row : sq) {
    std::vector<int> w = row;
    std::sort(w.begin(), w.end());
    if (w != letters) return false;
  }
  return true;
}

bool are_orthogonal(const LatinSquare& a, const LatinSquare& b) {
  if (a.size() != b.size()) return false;
  std::set<std::pair<int, int>> seen;
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t c = 0; c < a.size(); ++c)
      if (!seen.insert({a[r][c], b[r][c]}).second) return false;
  return true;
}

LatinSquare group_table(const FiniteGroup& g) { return g.table(); }

bool check_isotopism(const LatinSquare& a, const LatinSquare& b, const Isotopism& f) {
  const std::size_t t = a.size();
  if (b.size() != t || f.rows.size() != t || f.cols.size() != t) return false;
  auto perm = [t](const std::vector<int>& p) {
    std::vector<int> w = p;
    std::sort(w.begin(), w.end());
    for (std::size_t i = 0; i < t; ++i)
      if (w[i] != static_cast<int>(i)) return false;
    return true;
  };
  if (!perm(f.rows) || !perm(f.cols)) return false;
  std::map<int, int> used;
  for (std::size_t r = 0; r < t; ++r)
    for (std::size_t c = 0; c < t; ++c) {
      int x = a[r][c];
      if (x < 0 || x >= static_cast<int>(f.letters.size())) return false;
      int y = f.letters[x];
      if (b[f.rows[r]][f.cols[c]] != y) return false;
      auto [it, fresh] = used.emplace(y, x);
      if (!fresh && it->second != x) return false;
    }
  return true;
}

std::optional<Isotopism> find_isotopism_exhaustive(const LatinSquare& a, const LatinSquare& b) {
  const int t = static_cast<int>(a.size());
  if (t > 4) throw Error(ErrorKind::BoundExceeded, "exhaustive isotopy only for t <= 4");
  if (static_cast<int>(b.size()) != t) return std::nullopt;
  int top = 0;
  for (const auto& row : a)
    for (int x : row) top = std::max(top, x);
  std::vector<int> rows(t), cols(t);
  std::iota(rows.begin(), rows.end(), 0);
  do {
    std::iota(cols.begin(), cols.end(), 0);
    do {
      Isotopism f{rows, cols, std::vector<int>(top + 1, -1)};
      bool ok = true;
      for (int r = 0; r < t && ok; ++r)
        for (int c = 0; c < t && ok; ++c) {
          int& y = f.letters[a[r][c]];
          int want = b[rows[r]][cols[c]];
          if (y < 0) y = want;
          ok = y == want;
        }
      if (ok && check_isotopism(a, b, f)) return f;
    } while (std::next_permutation(cols.begin(), cols.end()));
  } while (std::next_permutation(rows.begin(), rows.end()));
  return std::nullopt;
}

std::optional<Isotopism> isotopism_to_group(const LatinSquare& sq, const FiniteGroup& h) {
  const int t = static_cast<int>(sq.size());
  if (t != h.order() || !is_latin_square(sq)) return std::nullopt;
  // Loop on the letters: x o y = sq[row starting with x][column headed by y].
  std::vector<int> letters = sq[0];
  std::sort(letters.begin(), letters.end());
  std::rotate(letters.begin(), std::find(letters.begin(), letters.end(), sq[0][0]),
              std::find(letters.begin(), letters.end(), sq[0][0]) + 1);
  std::map<int, int> id;
  for (int i = 0; i < t; ++i) id[letters[i]] = i;
  std::vector<int> row_of(t), col_of(t);
  for (int r = 0; r < t; ++r) row_of[id[sq[r][0]]] = r;
  for (int c = 0; c < t; ++c) col_of[id[sq[0][c]]] = c;
  std::vector<std::vector<int>> table(t, std::vector<int>(t));
  for (int x = 0; x < t; ++x)
    for (int y = 0; y < t; ++y) table[x][y] = id[sq[row_of[x]][col_of[y]]];
  FiniteGroup loop;
  try {
    loop = validate_group(table);
  } catch (const Error&) {
    return std::nullopt;
  }
  auto f = find_isomorphism(loop, h);
  if (!f) return std::nullopt;
  Isotopism iso;
  iso.letters.assign(letters.back() + 1, -1);
  for (int i = 0; i < t; ++i) iso.letters[letters[i]] = (*f)(i);
  for (int r = 0; r < t; ++r) iso.rows.push_back((*f)(id[sq[r][0]]));
  for (int c = 0; c < t; ++c) iso.cols.push_back((*f)(id[sq[0][c]]));
  if (!check_isotopism(sq, group_table(h), iso))
    throw Error(ErrorKind::InconsistencyDetected, "loop isotopism fails cellwise");
  return iso;
}

SquareDecomposition decompose_squares(const ShiftStructure& s) {
  const FiniteGroup& g = s.group;
  const ElemSet& x0 = s.x0();
  if (!intersect(x0, s.y0).is_trivial())
    throw Error(ErrorKind::NotReduced, "X0 n Y0 has order " + std::to_string(intersect(x0, s.y0).size()));
  SquareDecomposition d;
  d.t = x0.size();
  d.x0y0 = product_set(g, x0, s.y0);
  d.squares = quotient(g, d.x0y0);
  d.rows = quotient(g, x0);
  d.cols = quotient(g, s.y0);
  const int n = g.order();
  d.square_of.assign(n, -1);
  d.row_of.assign(n, -1);
  d.col_of.assign(n, -1);
  bool shape = true, once = true;
  for (int k = 0; k < d.squares.quotient_order(); ++k) {
    const auto& elems = d.squares.cosets[k];
    std::vector<int> rids, cids;
    for (int e : elems) {
      rids.push_back(d.rows.index[e]);
      cids.push_back(d.cols.index[e]);
    }
    std::sort(rids.begin(), rids.end());
    rids.erase(std::unique(rids.begin(), rids.end()), rids.end());
    std::sort(cids.begin(), cids.end());
    cids.erase(std::unique(cids.begin(), cids.end()), cids.end());
    shape = shape && static_cast<int>(rids.size()) == d.t && static_cast<int>(cids.size()) == d.t;
    std::vector<std::vector<int>> cell(rids.size(), std::vector<int>(cids.size(), -1));
    for (int e : elems) {
      int r = static_cast<int>(std::lower_bound(rids.begin(), rids.end(), d.rows.index[e]) - rids.begin());
      int c = static_cast<int>(std::lower_bound(cids.begin(), cids.end(), d.cols.index[e]) - cids.begin());
      if (cell[r][c] >= 0) once = false;
      cell[r][c] = e;
      d.square_of[e] = k;
      d.row_of[e] = r;
      d.col_of[e] = c;
    }
    for (const auto& row : cell)
      for (int e : row) once = once && e >= 0;
    d.cell.push_back(std::move(cell));
  }
  // A row lies in one square only.
  bool confined = true;
  for (const auto& row : d.rows.cosets)
    for (int e : row) confined = confined && d.square_of[e] == d.square_of[row[0]];
  for (const auto& col : d.cols.cosets)
    for (int e : col) confined = confined && d.square_of[e] == d.square_of[col[0]];
  d.certificates.add("square shape", shape, "t=" + std::to_string(d.t));
  d.certificates.add("rows meet columns once", once);
  d.certificates.add("lines confined to squares", confined);
  return d;
}

LabelingCheck is_latin_labeling(const SquareDecomposition& d, const FiniteGroup& g, const FiniteGroup& a,
                                const GroupHom& omega) {
  if (static_cast<int>(omega.image.size()) != g.order() || !is_homomorphism(g, a, omega))
    throw Error(ErrorKind::NotHomomorphism, "labeling map");
  LabelingCheck out;
  out.a0 = image_of(omega, d.x0y0, a.order());
  bool rows_ok = true, cols_ok = true, alphabet = true;
  std::map<std::vector<int>, int> clique_ids;
  for (const auto& cell : d.cell) {
    LatinSquare sq(cell.size(), std::vector<int>(cell.size()));
    for (std::size_t r = 0; r < cell.size(); ++r)
      for (std::size_t c = 0; c < cell.size(); ++c) sq[r][c] = omega(cell[r][c]);
    for (const auto& row : sq) rows_ok = rows_ok && distinct(row);
    std::set<int> used;
    for (std::size_t c = 0; c < sq.size(); ++c) {
      std::vector<int> col;
      for (std::size_t r = 0; r < sq.size(); ++r) {
        col.push_back(sq[r][c]);
        used.insert(sq[r][c]);
      }
      cols_ok = cols_ok && distinct(col);
    }
    alphabet = alphabet && static_cast<int>(used.size()) == d.t;
    std::vector<int> key(used.begin(), used.end());
    auto it = clique_ids.emplace(key, static_cast<int>(clique_ids.size())).first;
    out.clique.push_back(it->second);
    out.squares.push_back(std::move(sq));
  }
  out.certificates.add("rows distinct", rows_ok);
  out.certificates.add("columns distinct", cols_ok);
  out.certificates.add("t labels per square", alphabet);
  out.certificates.add("A0 order", out.a0.size() == d.t, sizes(out.a0) + " vs t=" + std::to_string(d.t));
  out.latin = out.certificates.ok();
  return out;
}

LabelingCheck is_latin_labeling(const ShiftStructure& s, const FiniteGroup& a, const GroupHom& omega) {
  return is_latin_labeling(decompose_squares(s), s.group, a, omega);
}

LatinSquare mann_square(const FiniteGroup& h, const GroupHom& theta) {
  if (!h.is_abelian()) throw Error(ErrorKind::NotAbelian, "Mann square base group");
  if (static_cast<int>(theta.image.size()) != h.order() || !is_isomorphism(h, h, theta))
    throw Error(ErrorKind::NotAutomorphism, "Mann square map");
  const int t = h.order();
  LatinSquare sq(t, std::vector<int>(t));
  for (int a = 0; a < t; ++a)
    for (int b = 0; b < t; ++b) sq[a][b] = h.mul(a, theta(b));
  return sq;
}

PCP pcp_verify(const FiniteGroup& q, const std::vector<ElemSet>& components) {
  if (components.size() < 2) throw Error(ErrorKind::HypothesisViolated, "a PCP needs at least two components");
  for (const auto& w : components) {
    if (w.universe() != q.order()) throw Error(ErrorKind::ParentMismatch, "PCP component");
    require_subgroup(q, w, "PCP component");
  }
  const int s = static_cast<int>(components.size());
  for (int i = 0; i < s; ++i)
    for (int j = i + 1; j < s; ++j) {
      if (!trivially_meet(components[i], components[j]))
        throw Error(ErrorKind::ComponentsOverlap, "W" + std::to_string(i + 1) + " n W" + std::to_string(j + 1));
      if (!product_set(q, components[i], components[j]).is_full())
        throw Error(ErrorKind::ProductNotFull, "W" + std::to_string(i + 1) + " W" + std::to_string(j + 1));
    }
  PCP p;
  p.ambient = q;
  p.components = components;
  p.t = components[0].size();
  p.s = s;
  for (const auto& w : components)
    if (w.size() != p.t) throw Error(ErrorKind::HypothesisViolated, "PCP components of unequal order");

  std::vector<FiniteGroup> local;
  std::vector<int> normal;
  for (int i = 0; i < s; ++i) {
    local.push_back(subgroup_group(q, components[i]));
    if (is_normal(q, components[i])) normal.push_back(i);
  }
  auto all_iso_except = [&](int skip) {
    int first = skip == 0 ? 1 : 0;
    for (int j = 0; j < s; ++j)
      if (j != skip && j != first && !isomorphic(local[first], local[j])) return false;
    return true;
  };
  p.certificates.add("order t^2", p.t * p.t == q.order());
  p.certificates.add("normal components", true, std::to_string(normal.size()));
  for (int i : normal)
    p.certificates.add("normal W" + std::to_string(i + 1) + " => others isomorphic", all_iso_except(i));
  for (std::size_t a = 0; a < normal.size(); ++a)
    for (std::size_t b = a + 1; b < normal.size(); ++b) {
      const int i = normal[a], j = normal[b];
      p.certificates.add("normal W" + std::to_string(i + 1) + ",W" + std::to_string(j + 1) + " => Q = product",
                         internal_direct(q, components[i], components[j], ElemSet::all(q.order())) &&
                             all_iso_except(-1));
    }
  if (normal.size() >= 3) p.certificates.add("three normal => Q abelian", q.is_abelian());
  return p;
}

FpfPCP pcp_from_fpf(const FiniteGroup& h, std::span<const GroupHom> sigma) {
  if (!is_fixed_point_free_set(h, sigma)) throw Error(ErrorKind::NotFPF, "automorphism set");
  const int t = h.order();
  FiniteGroup q = direct_product(h, h);
  std::vector<int> inf, zero;
  for (int x = 0; x < t; ++x) {
    inf.push_back(x * t);
    zero.push_back(x);
  }
  std::vector<ElemSet> comps{ElemSet(q.order(), inf), ElemSet(q.order(), zero)};
  for (const auto& th : sigma) {
    std::vector<int> w;
    for (int x = 0; x < t; ++x) w.push_back(x * t + th(x));
    comps.emplace_back(q.order(), std::move(w));
  }
  FpfPCP out;
  out.pcp = pcp_verify(q, comps);
  out.certificates.add("H x 1 normal", is_normal(q, comps[0]));
  out.certificates.add("1 x H normal", is_normal(q, comps[1]));
  // Rows are H x 1 cosets (fixed second coordinate b), columns 1 x H cosets
  // (fixed first coordinate a), letters the cosets of the graph of theta.
  bool classes = true;
  for (std::size_t k = 0; k < sigma.size(); ++k) {
    const GroupHom& th = sigma[k];
    LatinSquare sq(t, std::vector<int>(t));
    for (int b = 0; b < t; ++b)
      for (int a = 0; a < t; ++a) sq[b][a] = h.mul(b, h.inv(th(a)));
    const ElemSet& w = comps[k + 2];
    for (int b = 0; b < t; ++b)
      for (int a = 0; a < t; ++a) {
        // (a, b) lies in (1, letter) W_theta.
        int shifted = q.mul(q.inv(sq[b][a]), a * t + b);
        classes = classes && w.contains(shifted);
      }
    out.mols.push_back(std::move(sq));
  }
  out.certificates.add("letters are component cosets", classes);
  bool latin = true;
  for (const auto& sq : out.mols) latin = latin && is_latin_square(sq);
  out.certificates.add("squares latin", latin);
  bool orth = true;
  for (std::size_t i = 0; i < out.mols.size(); ++i)
    for (std::size_t j = i + 1; j < out.mols.size(); ++j) orth = orth && are_orthogonal(out.mols[i], out.mols[j]);
  out.certificates.add("pairwise orthogonal", orth, std::to_string(out.mols.size()) + " squares");
  return out;
}

ElemSet k_a_subgroup(const ShiftStructure& s, const GroupHom& mu, const GroupHom& theta) {
  const FiniteGroup& g = s.group;
  const ElemSet& x0 = s.x0();
  const ElemSet& y0 = s.y0;
  if (!trivially_meet(x0, y0)) throw Error(ErrorKind::NotReduced, "X0 n Y0 not trivial");
  auto map_ok = [&](const GroupHom& f, const ElemSet& to) {
    if (static_cast<int>(f.image.size()) != g.order()) return false;
    std::set<int> seen;
    for (int x : x0) {
      if (!to.contains(f(x)) || !seen.insert(f(x)).second) return false;
      for (int y : x0)
        if (f(g.mul(x, y)) != g.mul(f(x), f(y))) return false;
    }
    return true;
  };
  if (!map_ok(theta, x0)) throw Error(ErrorKind::NotAutomorphism, "theta on X0");
  if (!map_ok(mu, y0)) throw Error(ErrorKind::NotIso, "mu: X0 -> Y0");
  std::vector<int> k;
  for (int x : x0) k.push_back(g.mul(x, mu(theta(x))));
  ElemSet ka(g.order(), std::move(k));
  ElemSet sq = product_set(g, x0, y0);
  if (!is_subgroup(g, ka)) throw Error(ErrorKind::PCPFails, "diagonal is not a subgroup");
  FiniteGroup local = subgroup_group(g, sq);
  if (!local.is_abelian()) throw Error(ErrorKind::PCPFails, "X0Y0 is not abelian");
  auto to_local = [&](const ElemSet& a) {
    std::vector<int> v;
    for (int e : a) v.push_back(local_index(sq, e));
    return ElemSet(local.order(), std::move(v));
  };
  try {
    PCP p = pcp_verify(local, {to_local(x0), to_local(y0), to_local(ka)});
    if (!p.certificates.ok()) throw Error(ErrorKind::PCPFails, p.certificates.text());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::PCPFails) throw;
    throw Error(ErrorKind::PCPFails, e.what());
  }
  return ka;
}

LatinLabeling labeling_from_kernel(const ShiftStructure& s, const ElemSet& kernel) {
  const FiniteGroup& g = s.group;
  const ElemSet& x0 = s.x0();
  const ElemSet& y0 = s.y0;
  SquareDecomposition d = decompose_squares(s);
  require_normal(g, kernel, "labeling kernel");
  LatinLabeling l;
  l.kernel = kernel;
  l.labels = quotient(g, kernel);
  l.omega.image = l.labels.index;
  l.check = is_latin_labeling(d, g, l.labels.group, l.omega);
  l.k_a = intersect(kernel, d.x0y0);
  l.g0 = preimage_of(l.omega, l.check.a0);
  Report& c = l.certificates;
  c.merge(d.certificates, "squares: ");
  c.merge(l.check.certificates, "labels: ");

  // Diagonal form: K_a is the graph of an isomorphism X0 -> Y0.
  bool diag = l.k_a.size() == d.t && trivially_meet(l.k_a, x0) && trivially_meet(l.k_a, y0);
  c.add("K_a diagonal", diag, sizes(l.k_a));
  if (diag) {
    GroupHom nu{std::vector<int>(g.order(), 0)};
    for (int k : l.k_a)
      for (int x : x0) {
        int y = g.mul(g.inv(x), k);
        if (y0.contains(y)) nu.image[x] = y;
      }
    bool same = false;
    std::string why;
    try {
      same = k_a_subgroup(s, nu, identity_hom(g.order())) == l.k_a;
    } catch (const Error& e) {
      why = e.what();
    }
    c.add("K_a from mu o theta", same, why);
  }

  // Clique C0.
  const ElemSet& ga = kernel;
  c.add("C0: X0, Y0, G_a meet trivially",
        trivially_meet(x0, y0) && trivially_meet(x0, ga) && trivially_meet(y0, ga));
  c.add("C0: G0 = X0 G_a = Y0 G_a", product_set(g, x0, ga) == l.g0 && product_set(g, y0, ga) == l.g0);
  c.add("C0: normal in G0", is_normal_in(g, x0, l.g0) && is_normal_in(g, y0, l.g0) && is_normal_in(g, ga, l.g0));
  c.add("C0: G0 = X0 x G_a", internal_direct(g, x0, ga, l.g0));
  c.add("C0: G0 = Y0 x G_a", internal_direct(g, y0, ga, l.g0));
  c.add("C0: G0/X0Y0 = G_a/K_a",
        find_section_iso(section(g, l.g0, d.x0y0), section(g, ga, l.k_a)).has_value());
  {
    // Every same-label line of C0 meets every row and column of C0 once.
    Section lines = section(g, l.g0, ga);
    std::set<std::pair<int, int>> by_row, by_col;
    bool once = true;
    std::set<int> rows, cols;
    for (int e : l.g0) {
      once = once && by_row.insert({lines.index[e], d.rows.index[e]}).second;
      once = once && by_col.insert({lines.index[e], d.cols.index[e]}).second;
      rows.insert(d.rows.index[e]);
      cols.insert(d.cols.index[e]);
    }
    const std::size_t nl = lines.quotient_order();
    once = once && by_row.size() == nl * rows.size() && by_col.size() == nl * cols.size();
    c.add("C0: lines meet rows and columns once", once);
  }

  // G_v: the identity-label line in squares of C0, elsewhere the line
  // through the least element of the square.
  std::vector<int> gv;
  for (int k = 0; k < d.squares.quotient_order(); ++k) {
    const auto& sq = d.squares.cosets[k];
    int label = l.g0.contains(sq[0]) ? 0 : l.omega(sq[0]);
    for (int e : sq)
      if (l.omega(e) == label) gv.push_back(e);
  }
  l.g_v = ElemSet(g.order(), std::move(gv));
  c.add("G: X0, Y0, G_v meet trivially", trivially_meet(x0, l.g_v) && trivially_meet(y0, l.g_v));
  c.add("G: G = X0 G_v = Y0 G_v", product_set(g, x0, l.g_v).is_full() && product_set(g, y0, l.g_v).is_full());
  c.add("G: K_a <= G_a <= G_v", l.k_a.subset_of(ga) && ga.subset_of(l.g_v));
  {
    std::vector<int> hit_r(d.rows.quotient_order(), 0), hit_c(d.cols.quotient_order(), 0);
    for (int e : l.g_v) {
      ++hit_r[d.rows.index[e]];
      ++hit_c[d.cols.index[e]];
    }
    bool tr = std::all_of(hit_r.begin(), hit_r.end(), [](int v) { return v == 1; }) &&
              std::all_of(hit_c.begin(), hit_c.end(), [](int v) { return v == 1; });
    c.add("G: G_v transversal of G/X0 and G/Y0", tr);
  }

  // Consequences the labeling forces on G.
  FiniteGroup lx = subgroup_group(g, x0), ly = subgroup_group(g, y0);
  c.add("X0 = Y0", isomorphic(lx, ly));
  c.add("X0, Y0 abelian", lx.is_abelian() && ly.is_abelian());
  c.add("G solvable", is_solvable(g));
  bool series = true;
  for (int j = -1; j < s.ell(); ++j) series = series && section(g, s.x(j + 1), s.x(j)).group.is_abelian();
  c.add("X_j solvable series", series);
  if (l.check.latin) {
    const LatinSquare& box = l.check.squares[0];
    auto via_loop = isotopism_to_group(box, lx);
    c.add("square 0 isotopic to X0 (loop)", via_loop.has_value());
    if (d.t <= 4) {
      auto exhaustive = find_isotopism_exhaustive(box, group_table(lx));
      c.add("square 0 isotopic to X0 (exhaustive)", exhaustive.has_value());
    }
  }
  return l;
}

std::optional<LatinLabeling> search_latin_labeling(const ShiftStructure& s) {
  SquareDecomposition d = decompose_squares(s);
  std::vector<ElemSet> cands;
  for (auto& n : normal_subgroups(s.group)) {
    if (!trivially_meet(n, s.x0()) || !trivially_meet(n, s.y0)) continue;
    if (intersect(n, d.x0y0).size() != d.t) continue;
    cands.push_back(std::move(n));
  }
  std::stable_sort(cands.begin(), cands.end(), [](const ElemSet& a, const ElemSet& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
  for (const auto& n : cands) {
    LatinLabeling l = labeling_from_kernel(s, n);
    if (l.check.latin) return l;
  }
  return std::nullopt;
}

Report bit_oriented_check(const ShiftStructure& s, const LatinLabeling& l) {
  const int t = s.x0().size();
  if (!power_of_two(t)) throw Error(ErrorKind::HypothesisViolated, "|X0| is not a power of 2");
  Report r;
  r.add("labeling latin", l.check.latin);
  ChainCertificates cc = signature_cosignature(s);
  long long order = t;
  bool ratios = true;
  for (int j = 0; j < s.ell(); ++j) {
    const int dj = cc.signature.at(j + 1).size();
    ratios = ratios && static_cast<long long>(s.x(j + 1).size()) * dj == static_cast<long long>(s.x(j).size()) * t;
    ratios = ratios && t % dj == 0 && power_of_two(t / dj);
    order *= t / dj;
  }
  r.add("|X_j+1|/|X_j| = |X0|/|Delta_j|", ratios);
  r.add("order identity", order == s.group.order(), std::to_string(order) + " vs " + std::to_string(s.group.order()));
  r.add("|G| power of 2", power_of_two(s.group.order()));
  r.add("X0 abelian 2-group", subgroup_group(s.group, s.x0()).is_abelian());
  return r;
}

}  // namespace sgf
