#include "sgf/shift.hpp"

#include <algorithm>
#include <sstream>

#include "sgf/iso.hpp"

namespace sgf {

void Report::add(std::string name, bool pass, std::string detail) {
  checks.push_back({std::move(name), pass, std::move(detail)});
}

void Report::merge(const Report& other, const std::string& prefix) {
  for (const auto& c : other.checks) checks.push_back({prefix + c.name, c.pass, c.detail});
}

bool Report::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Check* Report::first_failure() const {
  for (const auto& c : checks)
    if (!c.pass) return &c;
  return nullptr;
}

std::string Report::text() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    out << (c.pass ? "ok   " : "FAIL ") << c.name;
    if (!c.detail.empty()) out << "  (" << c.detail << ")";
    out << "\n";
  }
  return out.str();
}

StructureView::StructureView(const ShiftStructure& s)
    : s_(&s), qx_(quotient(s.group, s.x0())), qy_(quotient(s.group, s.y0)) {}

int StructureView::phi_rep(int g) const { return qx_.rep(s_->phi(qy_.index[g])); }

ElemSet StructureView::phi_image(const ElemSet& a) const {
  std::vector<int> ids;
  for (int x : a) ids.push_back(s_->phi(qy_.index[x]));
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return coset_preimage(qx_, std::span<const int>(ids));
}

ElemSet StructureView::pull_back(const ElemSet& cell, const ElemSet& within) const {
  std::vector<int> out;
  for (int x : within)
    if (cell.contains(phi_rep(x))) out.push_back(x);
  return ElemSet(s_->group.order(), std::move(out));
}

namespace {

std::string jtag(int j) { return "j=" + std::to_string(j); }

// Adds an isomorphism check between two sections of g; returns the witness.
std::optional<CosetMap> iso_check(Report& rep, const std::string& name, const FiniteGroup& g, const ElemSet& top1,
                                  const ElemSet& ker1, const ElemSet& top2, const ElemSet& ker2) {
  try {
    Section a = section(g, top1, ker1);
    Section b = section(g, top2, ker2);
    auto w = find_section_iso(a, b);
    rep.add(name, w.has_value(),
            w ? "" : "orders " + std::to_string(a.quotient_order()) + " vs " + std::to_string(b.quotient_order()));
    return w;
  } catch (const Error& e) {
    rep.add(name, false, e.what());
    return std::nullopt;
  }
}

}  // namespace

Report verify_shift_structure(const ShiftStructure& s) {
  Report rep;
  const FiniteGroup& g = s.group;
  const int n = g.order();
  if (s.chain.size() < 2) {
    rep.add("chain length", false, "need at least X_{-1} and X_0");
    return rep;
  }
  bool shaped = s.y0.universe() == n;
  for (const auto& x : s.chain) shaped = shaped && x.universe() == n;
  rep.add("universe", shaped, shaped ? "" : "subsets over a group of another order");
  if (!shaped) return rep;
  const int ell = s.ell();
  rep.add("bottom", s.chain.front() == ElemSet::identity(n), "X_{-1} must be the identity subgroup");
  rep.add("top", s.chain.back().is_full(), "X_ell must be G");
  bool subgroups = true, normal = true, ascending = true;
  std::string bad;
  for (int j = -1; j <= ell; ++j) {
    if (!is_subgroup(g, s.x(j))) {
      subgroups = false;
      bad = jtag(j);
    } else if (!is_normal_in(g, s.x(j), ElemSet::all(n))) {
      normal = false;
      bad = jtag(j);
    }
    if (j < ell && !s.x(j).subset_of(s.x(j + 1))) {
      ascending = false;
      bad = jtag(j);
    }
  }
  rep.add("chain subgroups", subgroups, subgroups ? "" : bad);
  rep.add("chain normal", subgroups && normal, normal ? "" : bad);
  rep.add("ascending", ascending, ascending ? "" : bad);
  const bool y0_sub = is_subgroup(g, s.y0);
  const bool y0_normal = y0_sub && is_normal_in(g, s.y0, ElemSet::all(n));
  rep.add("y0 normal", y0_normal);
  if (!subgroups || !normal || !y0_normal) return rep;

  rep.add("orders", s.y0.size() == s.x0().size(),
          "|Y0|=" + std::to_string(s.y0.size()) + " |X0|=" + std::to_string(s.x0().size()));
  StructureView v(s);
  bool phi_ok = static_cast<int>(s.phi.image.size()) == v.mod_y0().quotient_order() &&
                v.mod_y0().quotient_order() == v.mod_x0().quotient_order() &&
                is_isomorphism(v.mod_y0().group, v.mod_x0().group, s.phi);
  rep.add("phi iso", phi_ok, phi_ok ? "" : "phi is not an isomorphism G/Y0 -> G/X0");
  if (!phi_ok) return rep;
  for (int j = -1; j < ell; ++j) {
    bool ok = v.phi_image(s.x(j)) == s.x(j + 1);
    rep.add("shift " + jtag(j), ok, ok ? "" : "phi(X_j Y0/Y0) != X_{j+1}/X0");
  }
  if (ell >= 0) {
    bool cover = product_set(g, s.x(ell - 1), s.y0).is_full();
    rep.add("cover", cover, "X_{ell-1} Y0 = G");
  }
  bool minimal = ell == 0 || !s.x(ell - 1).is_full();
  rep.add("minimal", minimal, minimal ? "" : "X_{ell-1} = G");
  return rep;
}

void require_valid(const ShiftStructure& s) {
  Report r = verify_shift_structure(s);
  if (r.ok()) return;
  const Check* c = r.first_failure();
  if (c->name == "minimal") throw Error(ErrorKind::NonMinimalEll, "X_{ell-1} already equals G");
  throw Error(ErrorKind::InvalidStructure, c->name + (c->detail.empty() ? "" : ": " + c->detail));
}

std::optional<ShiftStructure> structure_from_data(const FiniteGroup& g, const ElemSet& x0, const ElemSet& y0,
                                                  const GroupHom& phi) {
  const int n = g.order();
  if (!is_subgroup(g, x0) || !is_subgroup(g, y0) || x0.size() != y0.size()) return std::nullopt;
  if (!is_normal_in(g, x0, ElemSet::all(n)) || !is_normal_in(g, y0, ElemSet::all(n))) return std::nullopt;
  ShiftStructure s{g, {ElemSet::identity(n), x0}, y0, phi};
  StructureView v(s);
  if (static_cast<int>(phi.image.size()) != v.mod_y0().quotient_order() ||
      !is_isomorphism(v.mod_y0().group, v.mod_x0().group, phi))
    return std::nullopt;
  while (!s.chain.back().is_full()) {
    ElemSet next = v.phi_image(s.chain.back());
    if (next == s.chain.back() || !s.chain.back().subset_of(next)) return std::nullopt;
    s.chain.push_back(std::move(next));
  }
  if (!verify_shift_structure(s).ok()) return std::nullopt;
  return s;
}

ShiftStructure derive_from_graph(const TrellisGraph& g) {
  ReachChain fwd = reach_chain(g, Direction::Forward);
  auto sat = fwd.saturation();
  if (!sat) throw Error(ErrorKind::NotControllable, "forward chain never reaches B");
  ShiftStructure s;
  s.group = g.edges;
  s.chain.push_back(ElemSet::identity(g.num_edges()));
  for (int j = 0; j <= *sat; ++j) s.chain.push_back(fwd.members[j]);
  s.y0 = g.bminus;
  s.phi = g.psi;
  require_valid(s);
  return s;
}

TrellisGraph build_graph_from_structure(const ShiftStructure& s) {
  require_valid(s);
  return build_graph(s.group, s.x0(), s.y0, s.phi);
}

StarGroup star_group(const ShiftStructure& s, int j) {
  if (j < -1 || j >= s.ell()) throw Error(ErrorKind::HypothesisViolated, "star group index out of range");
  const FiniteGroup& g = s.group;
  StarGroup out;
  out.via_pullback = intersect(s.x(j + 1), product_set(g, s.x(j), s.y0));
  ElemSet cap_next = intersect(s.x(j + 1), s.y0);
  ElemSet cap = intersect(s.x(j), s.y0);
  out.via_product = product_set(g, s.x(j), cap_next);
  out.certificates.add("star agree " + jtag(j), out.via_pullback == out.via_product);
  out.certificates.add("star normal " + jtag(j), is_normal(g, out.via_product));
  iso_check(out.certificates, "fst " + jtag(j), g, out.via_product, s.x(j), cap_next, cap);
  iso_check(out.certificates, "scd " + jtag(j), g, out.via_product, cap_next, s.x(j), cap);
  return out;
}

GridResult refinement_grid(const ShiftStructure& s) {
  require_valid(s);
  const FiniteGroup& g = s.group;
  const int ell = s.ell();
  StructureView v(s);
  GridResult res;
  RefinementGrid& gr = res.grid;
  Report& rep = res.certificates;
  gr.ell = ell;
  std::vector<ElemSet> stars;
  for (int j = -1; j < ell; ++j) {
    stars.push_back(star_group(s, j).via_product);
    gr.eps.push_back(stars.back() == s.x(j) ? 0 : 1);
  }
  gr.ell_prime = 0;
  for (int e : gr.eps) gr.ell_prime += e;
  gr.idx.assign(ell + 2, gr.ell_prime);
  for (int j = ell - 1; j >= -1; --j) gr.idx[j + 1] = gr.idx[j + 2] - gr.eps[j + 1];
  gr.cells.assign(ell + 2, {});
  gr.cells[ell + 1] = {s.x(ell)};
  for (int j = ell - 1; j >= -1; --j) {
    std::vector<ElemSet> col;
    if (gr.e(j)) col.push_back(s.x(j));
    for (const auto& cell : gr.cells[j + 2]) col.push_back(v.pull_back(cell, s.x(j + 1)));
    gr.cells[j + 1] = std::move(col);
  }

  bool normal = true;
  for (const auto& col : gr.cells)
    for (const auto& c : col) normal = normal && is_normal(g, c);
  rep.add("cells normal", normal);
  for (int j = -1; j <= ell; ++j) {
    rep.add("bottom cell " + jtag(j), gr.at(j, gr.i(j)) == s.x(j));
    if (j < ell) {
      rep.add("top cell " + jtag(j), gr.at(j, gr.ell_prime) == s.x(j + 1));
      if (gr.e(j)) rep.add("star cell " + jtag(j), gr.at(j, gr.i(j) + 1) == stars[j + 1]);
    }
    bool asc = true;
    for (int m = gr.i(j); m < gr.ell_prime; ++m) asc = asc && gr.at(j, m).subset_of(gr.at(j, m + 1));
    rep.add("column ascending " + jtag(j), asc);
  }
  // quotient isomorphisms against column -1
  for (int j = 0; j < ell; ++j)
    for (int m = gr.i(j); m <= gr.ell_prime; ++m)
      for (int n = m + 1; n <= gr.ell_prime; ++n)
        iso_check(rep, "column iso " + jtag(j) + " m=" + std::to_string(m) + " n=" + std::to_string(n), g,
                  gr.at(-1, n), gr.at(-1, m), gr.at(j, n), gr.at(j, m));
  // phi transport
  for (int j = -1; j < ell; ++j) {
    rep.add("transport base " + jtag(j), v.phi_image(gr.at(j, gr.i(j))) == gr.at(j + 1, gr.i(j + 1)));
    for (int m = gr.i(j + 1); m <= gr.ell_prime; ++m)
      rep.add("transport " + jtag(j) + " m=" + std::to_string(m), v.phi_image(gr.at(j, m)) == gr.at(j + 1, m));
  }
  return res;
}

ChainCertificates signature_cosignature(const ShiftStructure& s) {
  GridResult gres = refinement_grid(s);
  const RefinementGrid& gr = gres.grid;
  const FiniteGroup& g = s.group;
  const int ell = s.ell();
  ChainCertificates out;
  Report& rep = out.certificates;
  rep.merge(gres.certificates, "grid: ");
  for (int j = -1; j <= ell; ++j) {
    out.signature.push_back(gr.at(-1, gr.i(j)));
    out.cosignature.push_back(intersect(s.x(j), s.y0));
  }
  for (int j = -1; j < ell; ++j) {
    StarGroup st = star_group(s, j);
    rep.merge(st.certificates);
    out.stars.push_back(st.via_product);
  }
  auto delta = [&](int j) -> const ElemSet& { return out.signature.at(j + 1); };
  auto cosig = [&](int j) -> const ElemSet& { return out.cosignature.at(j + 1); };
  auto star = [&](int j) -> const ElemSet& { return out.stars.at(j + 1); };
  const ElemSet& x0 = s.x0();
  const ElemSet& y0 = s.y0;

  bool normal = true;
  for (const auto& d : out.signature) normal = normal && is_normal(g, d);
  rep.add("signature normal", normal);
  rep.add("r4b", ell >= 0 && delta(0) == intersect(x0, y0) && star(-1) == delta(0), "Delta_0 = X_{-1}* = X0 n Y0");
  rep.add("signature top", delta(ell) == x0);
  if (ell >= 0 && !x0.is_trivial())
    rep.add("signature strict top", delta(ell - 1).size() < delta(ell).size());
  for (int j = -1; j < ell; ++j) {
    const std::string t = jtag(j);
    iso_check(rep, "r1 " + t, g, s.x(j + 1), s.x(j), x0, delta(j));
    iso_check(rep, "r2 " + t, g, s.x(j + 1), star(j), x0, delta(j + 1));
    iso_check(rep, "r3 " + t, g, star(j), s.x(j), delta(j + 1), delta(j));
    ElemSet xy = product_set(g, s.x(j), y0);
    ElemSet xy_next = product_set(g, s.x(j + 1), y0);
    iso_check(rep, "r1a " + t, g, xy, s.x(j), y0, cosig(j));
    iso_check(rep, "r2a " + t, g, xy_next, s.x(j + 1), y0, cosig(j + 1));
    iso_check(rep, "r3a " + t, g, star(j), s.x(j), cosig(j + 1), cosig(j));
    iso_check(rep, "r4a " + t, g, xy, star(j), xy_next, s.x(j + 1));
    auto w = iso_check(rep, "r4 " + t, g, delta(j + 1), delta(j), cosig(j + 1), cosig(j));
    out.pairing.push_back(w.value_or(CosetMap{}));
    rep.add("r5 " + t, delta(j + 1).size() == cosig(j + 1).size());
    bool same_star = star(j) == s.x(j);
    rep.add("star remark " + t, same_star == (cosig(j + 1) == cosig(j)));
    if (j < ell - 1) {
      iso_check(rep, "cut2 " + t, g, s.x(j + 1), star(j), s.x(j + 2), s.x(j + 1));
      if (same_star)
        rep.add("ratio remark " + t, static_cast<long>(s.x(j + 1).size()) * s.x(j + 1).size() ==
                                         static_cast<long>(s.x(j).size()) * s.x(j + 2).size());
    }
  }
  // |X_j| = |X0|^{j+1} / (|Delta_0| ... |Delta_{j-1}|)
  for (int j = 0; j <= ell; ++j) {
    long double num = 1, den = 1;
    for (int k = 0; k <= j; ++k) num *= x0.size();
    for (int k = 0; k < j; ++k) den *= delta(k).size();
    rep.add("order formula " + jtag(j), num == den * s.x(j).size());
  }
  // cosets of X0 and Y0 meet in 0 or |X0 n Y0| elements
  StructureView v(s);
  const int nx = v.mod_x0().quotient_order(), ny = v.mod_y0().quotient_order();
  std::vector<int> meet(static_cast<std::size_t>(nx) * ny, 0);
  for (int a = 0; a < g.order(); ++a) ++meet[v.mod_x0().index[a] * ny + v.mod_y0().index[a]];
  const int cap = intersect(x0, y0).size();
  rep.add("square", std::all_of(meet.begin(), meet.end(), [&](int c) { return c == 0 || c == cap; }));
  return out;
}

std::vector<ElemSet> default_composition_chain(const FiniteGroup& g, const ElemSet& bottom, const ElemSet& top) {
  std::vector<ElemSet> down{top};
  while (!(down.back() == bottom)) {
    auto cands = normal_subgroups_between(g, bottom, down.back());
    const ElemSet* best = nullptr;
    for (const auto& c : cands) {
      if (c == down.back()) continue;
      if (!best || c.size() > best->size() || (c.size() == best->size() && c < *best)) best = &c;
    }
    if (!best) throw Error(ErrorKind::NotCompositionChain, "bottom is not normal in top");
    down.push_back(*best);
  }
  std::reverse(down.begin(), down.end());
  return down;
}

static void check_composition_chain(const FiniteGroup& g, const std::vector<ElemSet>& c, const ElemSet& lo,
                                    const ElemSet& hi, int j) {
  if (c.empty() || !(c.front() == lo) || !(c.back() == hi))
    throw Error(ErrorKind::NotCompositionChain, "chain for " + jtag(j) + " has the wrong end points");
  for (std::size_t k = 0; k + 1 < c.size(); ++k) {
    if (!is_subgroup(g, c[k]) || !c[k].subset_of(c[k + 1]) || !is_normal_in(g, c[k], c[k + 1]))
      throw Error(ErrorKind::NotCompositionChain, "chain for " + jtag(j) + " is not a normal chain");
    if (!is_simple(section(g, c[k + 1], c[k]).group))
      throw Error(ErrorKind::NotCompositionChain, "chain for " + jtag(j) + " has a factor that is not simple");
  }
}

CompositionRefinement composition_refinement(const ShiftStructure& s, const std::map<int, std::vector<ElemSet>>& base) {
  require_valid(s);
  const FiniteGroup& g = s.group;
  const int ell = s.ell();
  StructureView v(s);
  CompositionRefinement out;
  std::vector<std::vector<ElemSet>> gaps(ell + 1);
  for (int j = -1; j < ell; ++j) {
    ElemSet st = star_group(s, j).via_product;
    const bool eps = !(st == s.x(j));
    auto it = base.find(j);
    if (!eps) {
      if (it != base.end() && it->second.size() > 1)
        throw Error(ErrorKind::NotCompositionChain, "gap " + jtag(j) + " is trivial");
      gaps[j + 1] = {s.x(j)};
      continue;
    }
    gaps[j + 1] = it != base.end() ? it->second : default_composition_chain(g, s.x(j), st);
    check_composition_chain(g, gaps[j + 1], s.x(j), st, j);
  }
  out.delta.resize(ell + 1);
  for (int j = -1; j < ell; ++j) out.delta[j + 1] = static_cast<int>(gaps[j + 1].size()) - 1;
  out.kappa = 0;
  for (int d : out.delta) out.kappa += d;
  out.r.assign(ell + 2, out.kappa);
  for (int j = ell - 1; j >= -1; --j) out.r[j + 1] = out.r[j + 2] - out.delta[j + 1];
  out.cells.assign(ell + 2, {});
  out.cells[ell + 1] = {s.x(ell)};
  for (int j = ell - 1; j >= -1; --j) {
    std::vector<ElemSet> col(gaps[j + 1].begin(), gaps[j + 1].end() - 1);
    for (const auto& cell : out.cells[j + 2]) col.push_back(v.pull_back(cell, s.x(j + 1)));
    out.cells[j + 1] = std::move(col);
  }
  auto cell = [&](int j, int m) -> const ElemSet& { return out.cells.at(j + 1).at(m - out.r.at(j + 1)); };
  Report& rep = out.certificates;
  for (int j = -1; j < ell; ++j) {
    if (out.delta[j + 1] > 0) rep.add("star cell " + jtag(j), cell(j, out.r[j + 1] + out.delta[j + 1]) == gaps[j + 1].back());
    rep.add("top cell " + jtag(j), cell(j, out.kappa) == s.x(j + 1));
  }
  // flatten
  for (int m = 0; m <= out.kappa; ++m) out.series.push_back(cell(-1, m));
  for (int j = 0; j < ell; ++j)
    for (int m = out.r[j + 1] + 1; m <= out.kappa; ++m) out.series.push_back(cell(j, m));
  bool composition = out.series.back().is_full();
  for (std::size_t k = 0; k + 1 < out.series.size() && composition; ++k) {
    const ElemSet& a = out.series[k];
    const ElemSet& b = out.series[k + 1];
    composition = a.subset_of(b) && is_normal_in(g, a, b) && is_simple(section(g, b, a).group);
  }
  rep.add("composition series", composition);
  for (int j = 0; j < ell; ++j)
    for (int m = out.r[j + 1]; m < out.kappa; ++m)
      iso_check(rep, "factor iso " + jtag(j) + " m=" + std::to_string(m), g, cell(-1, m + 1), cell(-1, m),
                cell(j, m + 1), cell(j, m));
  for (int j = -1; j < ell; ++j) {
    const int lo = out.r[j + 1] + out.delta[j + 1];
    for (int m = lo; m <= out.kappa; ++m)
      rep.add("transport " + jtag(j) + " m=" + std::to_string(m),
              v.phi_image(cell(j, m)) == cell(j + 1, out.r[j + 2] + (m - lo)));
    for (int m = out.r[j + 1]; m < lo; ++m)
      rep.add("transport gap " + jtag(j) + " m=" + std::to_string(m),
              v.phi_image(cell(j, m)) == cell(j + 1, out.r[j + 2]));
  }
  return out;
}

Report solvability_report(const ShiftStructure& s) {
  require_valid(s);
  Report rep;
  const bool gs = is_solvable(s.group);
  const bool xs = is_solvable(s.group, s.x0());
  rep.add("G solvable iff X0 solvable", gs == xs, "G " + std::string(gs ? "solvable" : "not solvable"));
  if (s.group.is_abelian() || xs) {
    // X0 abelian forces abelian factors
    bool x0_abelian = commutator_subgroup(s.group, s.x0()).is_trivial();
    if (x0_abelian) {
      for (int j = -1; j < s.ell(); ++j)
        rep.add("abelian factor " + jtag(j), section(s.group, s.x(j + 1), s.x(j)).group.is_abelian());
      rep.add("G solvable", gs);
    }
  }
  return rep;
}

ShiftStructure reduce_structure(const ShiftStructure& s) {
  require_valid(s);
  StructureView v(s);
  const ElemSet n = intersect(s.x0(), s.y0);
  Section q = quotient(s.group, n);
  ShiftStructure r;
  r.group = q.group;
  r.chain.push_back(ElemSet::identity(q.quotient_order()));
  for (int j = 0; j <= s.ell(); ++j) r.chain.push_back(coset_image(q, s.x(j)));
  r.y0 = coset_image(q, s.y0);
  Section hx = quotient(r.group, r.x0()), hy = quotient(r.group, r.y0);
  r.phi.image.assign(hy.quotient_order(), -1);
  for (int a = 0; a < s.group.order(); ++a)
    r.phi.image[hy.index[q.index[a]]] = hx.index[q.index[v.phi_rep(a)]];
  require_valid(r);
  return r;
}

ShiftStructure lift_structure(const ShiftStructure& h, const FiniteGroup& g, const GroupHom& f) {
  require_valid(h);
  if (!is_homomorphism(g, h.group, f)) throw Error(ErrorKind::NotHomomorphism, "lift map");
  std::vector<int> pre(h.group.order(), -1);
  for (int a = 0; a < g.order(); ++a)
    if (pre[f(a)] < 0) pre[f(a)] = a;
  if (std::find(pre.begin(), pre.end(), -1) != pre.end()) throw Error(ErrorKind::NotOnto, "lift map");
  StructureView hv(h);
  ShiftStructure s;
  s.group = g;
  s.chain.push_back(ElemSet::identity(g.order()));
  for (int j = 0; j <= h.ell(); ++j) s.chain.push_back(preimage_of(f, h.x(j)));
  s.y0 = preimage_of(f, h.y0);
  Section gx = quotient(g, s.x0()), gy = quotient(g, s.y0);
  s.phi.image.assign(gy.quotient_order(), -1);
  for (int a = 0; a < g.order(); ++a) s.phi.image[gy.index[a]] = gx.index[pre[hv.phi_rep(f(a))]];
  require_valid(s);
  return s;
}

}  // namespace sgf
