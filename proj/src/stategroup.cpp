#include "sgf/stategroup.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "sgf/iso.hpp"
#include "sgf/trellis.hpp"

namespace sgf {

namespace {

std::string at_j(const std::string& what, int j) { return what + " (j=" + std::to_string(j) + ")"; }
std::string at_jm(const std::string& what, int j, int m) {
  return what + " (j=" + std::to_string(j) + ", m=" + std::to_string(m) + ")";
}

bool normal_subgroup(const FiniteGroup& g, const ElemSet& s) {
  return s.universe() == g.order() && is_subgroup(g, s) && is_normal(g, s);
}

// Union of the cosets alpha(x) * gamma for x in s.
ElemSet push_cosets(const FiniteGroup& g, const ElemSet& s, const CosetMap& alpha, const ElemSet& gamma) {
  std::vector<int> out;
  for (int x : s) {
    int d = alpha.image.at(x);
    if (d < 0) throw Error(ErrorKind::HypothesisViolated, "alpha undefined at " + std::to_string(x));
    for (int y : gamma) out.push_back(g.mul(d, y));
  }
  return ElemSet(g.order(), std::move(out));
}

CosetMap restrict_map(const CosetMap& a, const ElemSet& s) {
  CosetMap r;
  r.image.assign(a.image.size(), -1);
  for (int x : s) r.image[x] = a.image[x];
  return r;
}

bool same_on(const CosetMap& a, const CosetMap& b, const ElemSet& s, std::string* where) {
  for (int x : s)
    if (a.image.at(x) != b.image.at(x)) {
      if (where) *where = "differs at " + std::to_string(x);
      return false;
    }
  return true;
}

std::optional<CosetMap> eta_after(const FiniteGroup& g, const ElemSet& gamma_low, const ElemSet& q,
                                  const ElemSet& gamma_high, const ElemSet& q_star, const CosetMap& inner,
                                  const ElemSet& dom, std::string* why) {
  try {
    InducedCosetIso ind = induced_coset_iso(g, gamma_low, q, gamma_high, q_star);
    CosetMap out;
    out.image.assign(g.order(), -1);
    for (int x : dom) {
      int d = inner.image.at(x);
      if (d < 0 || ind.low.index[d] < 0) {
        if (why) *why = "inner map leaves the eta domain at " + std::to_string(x);
        return std::nullopt;
      }
      out.image[x] = ind.high.rep(ind.map(ind.low.index[d]));
    }
    return out;
  } catch (const Error& e) {
    if (why) *why = e.what();
    return std::nullopt;
  }
}

bool section_iso(const FiniteGroup& g, const ElemSet& top1, const ElemSet& k1, const ElemSet& top2, const ElemSet& k2) {
  return find_section_iso(section(g, top1, k1), section(g, top2, k2)).has_value();
}

}  // namespace

Report verify_state_group(const StateGroupWitness& w) {
  Report r;
  const int ell = w.ell, lp = w.ell_prime;
  const FiniteGroup& g = w.hu;
  const int n = g.order();
  auto sz = [](const auto& v) { return static_cast<int>(v.size()); };
  bool wf = ell >= 1 && sz(w.chain) == ell + 1 && sz(w.stars) == ell && sz(w.gammas) == ell + 1 &&
            sz(w.deltas) == ell + 1 && sz(w.eps) == ell && sz(w.k) == ell + 1 && sz(w.grid) == ell &&
            sz(w.alphas) == std::max(ell - 1, 0);
  if (wf) {
    for (int v : w.k) wf = wf && v >= 0 && v <= lp;
    for (int j = -1; wf && j <= ell - 2; ++j) wf = sz(w.grid[j + 1]) == lp - w.kk(j) + 1;
    for (int j = 0; wf && j <= ell - 2; ++j) {
      wf = sz(w.alphas[j]) == lp - w.kk(j) + 1;
      for (const auto& a : w.alphas[j]) wf = wf && sz(a.image) == n;
    }
    for (const auto* v : {&w.chain, &w.stars, &w.gammas, &w.deltas})
      for (const auto& s : *v) wf = wf && s.universe() == n;
    for (const auto& col : w.grid)
      for (const auto& s : col) wf = wf && s.universe() == n;
  }
  r.add("well formed", wf);
  if (!wf) return r;

  // parameters
  int sum = 0;
  for (int e : w.eps) sum += (e != 0);
  bool kok = w.kk(-1) == 0 && w.kk(ell - 1) == lp && sum == lp;
  for (int j = -1; j <= ell - 2; ++j) kok = kok && (w.e(j) == 0 || w.e(j) == 1) && w.kk(j + 1) == w.kk(j) + w.e(j);
  r.add("(i) k_{-1} = 0, k_{j+1} = k_j + eps_j, l' = sum eps_j", kok);

  // (i) grid and chain
  bool normal = true;
  for (const auto& col : w.grid)
    for (const auto& s : col) normal = normal && normal_subgroup(g, s);
  for (const auto& s : w.chain) normal = normal && normal_subgroup(g, s);
  for (const auto& s : w.stars) normal = normal && normal_subgroup(g, s);
  r.add("(i) chain, stars and grid normal in H_U", normal);
  if (!normal || !kok) return r;
  bool asc = true;
  for (const auto& col : w.grid)
    for (std::size_t i = 1; i < col.size(); ++i) asc = asc && col[i - 1].subset_of(col[i]);
  r.add("(i) grid columns ascending", asc);
  r.add("(i) H_U^-1 = 1", w.at(-1).is_trivial());
  r.add("(i) H_U^{l-1} = H_U", w.at(ell - 1).is_full());
  for (int j = -1; j <= ell - 2; ++j) {
    r.add(at_j("(i) H_U^{j,(k_j)} = H_U^j", j), w.cell(j, w.kk(j)) == w.at(j));
    r.add(at_j("(i) H_U^{j,(l')} = H_U^{j+1}", j), w.cell(j, lp) == w.at(j + 1));
    bool between = w.at(j).subset_of(w.star(j)) && w.star(j).subset_of(w.at(j + 1));
    r.add(at_j("(i) H_U^j <= H_U^j* <= H_U^{j+1}", j), between);
    if (w.e(j) == 1)
      r.add(at_j("(i) H_U^{j,(k_j+1)} = H_U^j* (eps_j = 1)", j),
            w.kk(j) + 1 <= lp && w.cell(j, w.kk(j) + 1) == w.star(j) && w.star(j) != w.at(j));
    else
      r.add(at_j("(i) H_U^j* = H_U^j (eps_j = 0)", j), w.star(j) == w.at(j));
  }
  r.add("(i) H_U^{l-2*} = H_U", w.star(ell - 2).is_full());
  if (!r.ok()) return r;

  // (ii) signature refinement
  bool dk = true;
  for (int j = -1; j <= ell - 1; ++j) dk = dk && w.delta(j) == w.cell(-1, w.kk(j));
  r.add("(ii) Delta_j' = H_U^{-1,(k_j)}", dk);
  r.add("(ii) Delta_-1' = 1, Delta_{l-1}' = U0'", w.delta(-1).is_trivial() && w.delta(ell - 1) == w.u0p());
  bool de = true;
  for (int j = -1; j <= ell - 2; ++j) de = de && (w.e(j) == 1) == (w.delta(j + 1).size() > w.delta(j).size());
  r.add("(ii) eps_j = 1 iff |Delta_{j+1}'| > |Delta_j'|", de);

  // (iii) Gamma' chain
  bool gch = true;
  for (int j = -1; j <= ell - 1; ++j)
    gch = gch && normal_subgroup(g, w.gamma(j)) && (j < 0 || w.gamma(j - 1).subset_of(w.gamma(j)));
  r.add("(iii) Gamma' chain normal and ascending", gch);
  if (!gch || !dk) return r;
  r.add("(iii) Gamma_-1' = 1", w.gamma(-1).is_trivial());
  const ElemSet& v0 = w.v0p();
  for (int j = -1; j <= ell - 1; ++j) r.add(at_j("(iii) H_U^j n V0' = Gamma_j'", j), intersect(w.at(j), v0) == w.gamma(j));
  for (int j = -1; j <= ell - 2; ++j) {
    r.add(at_j("(iii) H_U^j* = H_U^j Gamma_{j+1}'", j), product_set(g, w.at(j), w.gamma(j + 1)) == w.star(j));
    r.add(at_j("(iii) Gamma_{j+1}'/Gamma_j' ~ Delta_{j+1}'/Delta_j'", j),
          section_iso(g, w.gamma(j + 1), w.gamma(j), w.delta(j + 1), w.delta(j)));
  }
  if (!r.ok()) return r;
  for (int j = -1; j <= ell - 2; ++j) {
    if (w.e(j) != 1) continue;
    InducedCosetIso ind = induced_coset_iso(g, w.gamma(j), w.at(j), w.gamma(j + 1), w.star(j));
    r.add(at_j("(iii) H^x: H_U^j*/Gamma_j' ~ H_U^j/Gamma_j' x Gamma_{j+1}'/Gamma_j'", j),
          is_isomorphism(ind.whole.group, ind.split, ind.split_map));
  }

  // (iv) alpha tower
  const ElemSet& u0 = w.u0p();
  for (int j = 0; j <= ell - 2; ++j) {
    for (int m = w.kk(j); m <= lp; ++m) {
      Section a = section(g, w.cell(j, m), u0);
      Section b = section(g, w.cell(j - 1, m), w.gamma(j));
      std::string why = check_coset_iso(a, b, w.alpha(j, m));
      r.add(at_jm("(iv) alpha_j^(m): H_U^{j,(m)}/U0' -> H_U^{j-1,(m)}/Gamma_j'", j, m), why.empty(), why);
      if (m > w.kk(j)) {
        std::string where;
        bool ok = same_on(w.alpha(j, m), w.alpha(j, m - 1), w.cell(j, m - 1), &where);
        r.add(at_jm("(iv) alpha_j^(m) restricts to alpha_j^(m-1)", j, m), ok, where);
      }
    }
    if (j == 0) {
      bool triv = true;
      for (int x : u0) triv = triv && w.alpha(0, w.kk(0)).image[x] == 0;
      r.add("(iv) alpha_0^(k_0) trivial", triv);
    } else {
      std::string why;
      auto eta = eta_after(g, w.gamma(j - 1), w.at(j - 1), w.gamma(j), w.star(j - 1), w.alpha(j - 1, lp), w.at(j), &why);
      bool ok = eta.has_value() && same_on(*eta, w.alpha(j, w.kk(j)), w.at(j), &why);
      r.add(at_j("(iv) alpha_j^(k_j) = eta'_{j-1} o alpha_{j-1}^(l')", j), ok, why);
    }
  }

  // identities of the signature chain
  r.add("Delta_0' = H_U^{-1*} = Gamma_0'", w.delta(0) == w.star(-1) && w.star(-1) == w.gamma(0));
  bool orders = true;
  for (int j = -1; j <= ell - 2; ++j) orders = orders && w.delta(j + 1).size() == w.gamma(j + 1).size();
  r.add("|Delta_{j+1}'| = |Gamma_{j+1}'|", orders);
  r.add("|Delta_{l-2}'| < |Delta_{l-1}'|", w.delta(ell - 2).size() < w.delta(ell - 1).size());
  r.add("Gamma_0' = U0' n V0'", w.gamma(0) == intersect(u0, v0));
  return r;
}

StateGroupWitness complete_witness(const StateChains& c) {
  const int ell = c.ell;
  const FiniteGroup& g = c.hu;
  if (ell < 1 || static_cast<int>(c.chain.size()) != ell + 1 || static_cast<int>(c.stars.size()) != ell ||
      static_cast<int>(c.gammas.size()) != ell + 1 || static_cast<int>(c.alphas.size()) < ell - 1)
    throw Error(ErrorKind::HypothesisViolated, "state chain sizes");
  StateGroupWitness w;
  w.ell = ell;
  w.hu = g;
  w.chain = c.chain;
  w.stars = c.stars;
  w.gammas = c.gammas;
  for (int j = -1; j <= ell - 2; ++j) w.eps.push_back(c.star(j) == c.at(j) ? 0 : 1);
  for (int e : w.eps) w.ell_prime += e;
  w.k.assign(ell + 1, 0);
  w.k[ell] = w.ell_prime;
  for (int j = ell - 2; j >= -1; --j) w.k[j + 1] = w.k[j + 2] - w.eps[j + 1];
  if (w.k[0] < 0) throw Error(ErrorKind::HypothesisViolated, "negative k_-1");
  w.grid.assign(ell, {});
  auto& last = w.grid[ell - 1];
  for (int m = w.kk(ell - 2); m <= w.ell_prime; ++m) last.push_back(m == w.kk(ell - 2) ? c.at(ell - 2) : c.at(ell - 1));
  for (int j = ell - 3; j >= -1; --j) {
    auto& col = w.grid[j + 1];
    const CosetMap& a = c.alphas[j + 1];  // alpha_{j+2}
    for (int m = w.kk(j); m <= w.ell_prime; ++m) {
      if (m < w.kk(j + 1))
        col.push_back(c.at(j));
      else
        col.push_back(push_cosets(g, w.cell(j + 1, m), a, c.gamma(j + 1)));
    }
  }
  for (int j = -1; j <= ell - 1; ++j) w.deltas.push_back(w.cell(-1, w.kk(j)));
  for (int j = 0; j <= ell - 2; ++j) {
    std::vector<CosetMap> tower;
    for (int m = w.kk(j); m <= w.ell_prime; ++m) tower.push_back(restrict_map(c.alphas[j], w.cell(j, m)));
    w.alphas.push_back(std::move(tower));
  }
  return w;
}

StateChains chains_of(const StateGroupWitness& w) {
  StateChains c;
  c.ell = w.ell;
  c.hu = w.hu;
  c.chain = w.chain;
  c.stars = w.stars;
  c.gammas = w.gammas;
  for (int j = 1; j <= w.ell - 1; ++j) c.alphas.push_back(w.alpha(j - 1, w.ell_prime));
  return c;
}

StateGroupWitness witness_from_structure(const ShiftStructure& s) {
  GammaDecomposition gd = gamma_decompose(s);
  return complete_witness(state_chains_of(s, gd));
}

StateSynthesis shift_group_of(const StateGroupWitness& w) {
  StateSynthesis out;
  out.synthesis = synthesize_thmy3(chains_of(w));
  out.structure = out.synthesis.structure;
  const ShiftStructure& st = out.structure;
  Report& r = out.certificates;
  r.merge(out.synthesis.certificates, "synthesis: ");
  Section qv = quotient(st.group, st.y0);
  bool iso = is_isomorphism(qv.group, w.hu, out.synthesis.tau);
  r.add("G/Y0 ~ H_U", iso);
  bool chain = iso;
  for (int j = -1; iso && j <= w.ell - 1; ++j)
    chain = chain && image_of(out.synthesis.tau, coset_image(qv, st.x(j)), w.hu.order()) == w.at(j);
  r.add("X_j Y0/Y0 -> H_U^j", chain);
  auto ci = controllability_index(build_graph_from_structure(st));
  r.add("controllability index = l", ci.has_value() && *ci == w.ell,
        ci ? "got " + std::to_string(*ci) : "not controllable");
  GridResult gr = refinement_grid(st);
  bool eps = gr.grid.e(w.ell - 1) == 1;
  for (int j = -1; j <= w.ell - 2; ++j) eps = eps && gr.grid.e(j + 1) == w.e(j);
  r.add("eps_j of H_U = eps_{j+1} of the shift group", eps);
  if (const Check* f = r.first_failure()) throw Error(ErrorKind::InconsistencyDetected, f->name + " " + f->detail);
  return out;
}

StateSignature state_signature(const StateGroupWitness& w) {
  StateSignature out;
  Report& r = out.certificates;
  const FiniteGroup& g = w.hu;
  const int ell = w.ell;
  for (int j = -1; j <= ell - 1; ++j) out.deltas.push_back(w.cell(-1, w.kk(j)));
  auto d = [&](int j) -> const ElemSet& { return out.deltas.at(j + 1); };
  const ElemSet& u0 = w.u0p();
  for (int j = -1; j <= ell - 2; ++j) {
    r.add(at_j("H_U^{j+1}/H_U^j ~ H_U^0/Delta_j'", j), section_iso(g, w.at(j + 1), w.at(j), u0, d(j)));
    r.add(at_j("H_U^{j+1}/H_U^j* ~ H_U^0/Delta_{j+1}'", j), section_iso(g, w.at(j + 1), w.star(j), u0, d(j + 1)));
    r.add(at_j("H_U^j*/H_U^j ~ Delta_{j+1}'/Delta_j'", j), section_iso(g, w.star(j), w.at(j), d(j + 1), d(j)));
    r.add(at_j("Delta_{j+1}'/Delta_j' ~ Gamma_{j+1}'/Gamma_j'", j),
          section_iso(g, d(j + 1), d(j), w.gamma(j + 1), w.gamma(j)));
    r.add(at_j("|Delta_{j+1}'| = |Gamma_{j+1}'|", j), d(j + 1).size() == w.gamma(j + 1).size());
    bool side = false;
    try {
      InducedCosetIso ind = induced_coset_iso(g, w.gamma(j), w.at(j), w.gamma(j + 1), w.star(j));
      side = is_isomorphism(ind.side.group, ind.top.group, ind.top_map);
    } catch (const Error&) {
    }
    r.add(at_j("H_U^j*/H_U^j ~ Gamma_{j+1}'/Gamma_j' by r' Gamma_j' -> r' H_U^j", j), side);
  }
  r.add("Delta_0' = H_U^{-1*} = Gamma_0'", d(0) == w.star(-1) && w.star(-1) == w.gamma(0));
  r.add("|Delta_{l-2}'| < |Delta_{l-1}'|", d(ell - 2).size() < d(ell - 1).size());
  if (subgroup_group(g, u0).is_abelian()) {
    bool ab = true;
    for (int j = -1; j <= ell - 2; ++j) ab = ab && section(g, w.at(j + 1), w.at(j)).group.is_abelian();
    r.add("U0' abelian: H_U^{j+1}/H_U^j abelian", ab);
    r.add("U0' abelian: H_U solvable", is_solvable(g));
  }
  return out;
}

StateGrid sg_refinement_grid(const StateGroupWitness& w) {
  StateGrid out;
  Report& r = out.certificates;
  const FiniteGroup& g = w.hu;
  const int ell = w.ell, lp = w.ell_prime;
  try {
    out.grid = complete_witness(chains_of(w)).grid;
    r.add("backward recursion reproduces the grid", out.grid == w.grid);
  } catch (const Error& e) {
    r.add("backward recursion reproduces the grid", false, e.what());
    return out;
  }
  for (int j = -1; j <= ell - 3; ++j)
    for (int m = w.kk(j + 1); m <= lp; ++m)
      r.add(at_jm("alpha_{j+2}(H_U^{j+1,(m)}/U0') = H_U^{j,(m)}/Gamma_{j+1}'", j, m),
            push_cosets(g, w.cell(j + 1, m), w.alpha(j + 1, lp), w.gamma(j + 1)) == w.cell(j, m));
  for (int j = -1; j <= ell - 2; ++j) {
    r.add(at_j("H_U^{j,(k_{j+1})} = H_U^j*", j), w.cell(j, w.kk(j + 1)) == w.star(j));
    bool iso = true;
    for (int a = w.kk(j); a <= lp && iso; ++a)
      for (int b = a; b <= lp && iso; ++b)
        iso = section_iso(g, w.cell(-1, b), w.cell(-1, a), w.cell(j, b), w.cell(j, a));
    r.add(at_j("H_U^{-1,(b)}/H_U^{-1,(a)} ~ H_U^{j,(b)}/H_U^{j,(a)}", j), iso);
  }
  return out;
}

long state_group_order(const FiniteGroup& u0p, const std::vector<ElemSet>& delta_chain) {
  long n = 1;
  for (std::size_t i = 0; i + 1 < delta_chain.size(); ++i) n *= u0p.order() / delta_chain[i].size();
  return n;
}

std::vector<std::vector<ElemSet>> signature_chains(const FiniteGroup& u0p, int bound) {
  std::vector<std::vector<ElemSet>> out;
  if (u0p.order() > bound) return out;
  const std::vector<ElemSet> ns = normal_subgroups(u0p);
  const ElemSet top = ElemSet::all(u0p.order());
  // Every term below the top contributes a factor of at least 2.
  for (int ell = 1; (1L << ell) <= bound; ++ell) {
    std::vector<ElemSet> cur{ElemSet::identity(u0p.order())};
    std::function<void(long)> grow = [&](long order) {
      if (static_cast<int>(cur.size()) == ell) {
        if (cur.back() == top) return;
        cur.push_back(top);
        out.push_back(cur);
        cur.pop_back();
        return;
      }
      for (const auto& d : ns) {
        if (!cur.back().subset_of(d) || d == top) continue;
        long next = order * (u0p.order() / d.size());
        if (next > bound) continue;
        cur.push_back(d);
        grow(next);
        cur.pop_back();
      }
    };
    if (u0p.order() <= bound) grow(u0p.order());
  }
  return out;
}

namespace {

std::vector<ElemSet> subgroups_of_order(const FiniteGroup& g, int order) {
  std::set<ElemSet> cyclic;
  for (int a = 0; a < g.order(); ++a) {
    int gen[] = {a};
    cyclic.insert(subgroup_generated(g, gen));
  }
  std::set<ElemSet> seen, hits;
  std::vector<ElemSet> frontier;
  for (const auto& c : cyclic)
    if (order % c.size() == 0 && seen.insert(c).second) frontier.push_back(c);
  while (!frontier.empty()) {
    std::vector<ElemSet> next;
    for (const auto& s : frontier) {
      if (s.size() == order) {
        hits.insert(s);
        continue;
      }
      for (const auto& c : cyclic) {
        if (c.subset_of(s)) continue;
        ElemSet t = subgroup_generated(g, s, c);
        if (order % t.size() == 0 && seen.insert(t).second) next.push_back(t);
      }
    }
    frontier = std::move(next);
  }
  return {hits.begin(), hits.end()};
}

struct Invariant {
  std::vector<int> profile;
  bool abelian;
  bool operator==(const Invariant&) const = default;
};

Invariant invariant_of(const FiniteGroup& g) { return {order_profile(g), g.is_abelian()}; }

}  // namespace

std::vector<Candidate> candidate_universe(const Catalog& cat, int order, int bound) {
  static std::map<std::pair<int, int>, std::vector<Candidate>> cache;
  auto key = std::pair{order, bound};
  if (auto it = cache.find(key); it != cache.end() && cat.max_order() >= bound) return it->second;
  std::vector<Candidate> out;
  std::vector<Invariant> inv;
  auto add = [&](const std::string& name, const FiniteGroup& g) {
    Invariant v = invariant_of(g);
    for (std::size_t i = 0; i < out.size(); ++i)
      if (inv[i] == v && isomorphic(out[i].group, g)) return;
    out.push_back({name, g});
    inv.push_back(std::move(v));
  };
  for (const auto& e : cat.entries())
    if (e.group.order() == order) add(e.name, e.group);
  for (const auto& e : cat.entries()) {
    const int n = e.group.order();
    if (n <= order || n > bound || n % order != 0) continue;
    int i = 0;
    for (const auto& s : subgroups_of_order(e.group, order)) add(e.name + "<" + std::to_string(i++) + ">", subgroup_group(e.group, s));
  }
  if (cat.max_order() >= bound) cache[key] = out;
  return out;
}

namespace {

struct Partial {
  std::vector<ElemSet> chain;   // H^{-1}..H^j
  std::vector<ElemSet> stars;   // H^{-1*}..
  std::vector<ElemSet> gammas;  // Gamma'_{-1}..
  std::vector<std::vector<ElemSet>> grid;
  std::vector<std::vector<CosetMap>> alphas;
};

class StateSearch {
 public:
  StateSearch(const FiniteGroup& c, int ell, int lp, std::vector<int> eps, std::vector<int> k,
              std::vector<ElemSet> deltas, const Algorithm1Options& opt, long& nodes,
              std::function<bool(StateGroupWitness)> emit)
      : c_(c), ell_(ell), lp_(lp), eps_(std::move(eps)), k_(std::move(k)), deltas_(std::move(deltas)), opt_(opt),
        nodes_(nodes), emit_(std::move(emit)), ns_(normal_subgroups(c)) {}

  void run() {
    Partial p;
    const int n = c_.order();
    p.chain = {ElemSet::identity(n), delta(ell_ - 1)};
    p.gammas = {ElemSet::identity(n), delta(0)};
    p.stars = {delta(0)};
    std::vector<ElemSet> col;
    for (int j = -1; j <= ell_ - 1; ++j)
      if (col.empty() || col.back() != delta(j)) col.push_back(delta(j));
    if (static_cast<int>(col.size()) != lp_ + 1) return;
    p.grid.push_back(std::move(col));
    step(p, 0);
  }

 private:
  const ElemSet& delta(int j) const { return deltas_.at(j + 1); }
  int kk(int j) const { return k_.at(j + 1); }
  int e(int j) const { return eps_.at(j + 1); }
  const ElemSet& u0() const { return deltas_.back(); }
  static const ElemSet& cell(const Partial& p, int j, int m, int kj) { return p.grid.at(j + 1).at(m - kj); }

  void tick() {
    if (++nodes_ > opt_.max_nodes) throw Error(ErrorKind::BoundExceeded, "state group search node limit");
  }

  const Section& sec(const ElemSet& top, const ElemSet& kernel) {
    auto key = std::pair{top, kernel};
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, section(c_, top, kernel)).first;
    return it->second;
  }

  // Coset isomorphisms top/U0' -> cod/gamma agreeing with prev where prev is defined.
  template <typename F>
  void extend(const CosetMap& prev, const ElemSet& top, const ElemSet& cod, const ElemSet& gamma, F&& visit) {
    const Section& a = sec(top, u0());
    const Section& b = sec(cod, gamma);
    if (a.quotient_order() != b.quotient_order()) return;
    IsoOptions o;
    o.forced.assign(a.quotient_order(), -1);
    for (int ci = 0; ci < a.quotient_order(); ++ci) {
      int y = prev.image[a.rep(ci)];
      if (y < 0) continue;
      if (b.index[y] < 0) return;
      o.forced[ci] = b.index[y];
    }
    for_each_isomorphism(
        a.group, b.group,
        [&](const GroupHom& f) {
          tick();
          visit(from_quotient_hom(a, b, f));
          return !done_;
        },
        o);
  }

  void step(Partial p, int j) {
    if (done_) return;
    if (j > ell_ - 2) return finish(p);
    const ElemSet hj = p.chain.back();
    const ElemSet gj = p.gammas.back();
    CosetMap a0;
    if (j == 0) {
      a0.image.assign(c_.order(), -1);
      for (int x : u0()) a0.image[x] = 0;
    } else {
      auto eta = eta_after(c_, p.gammas[j], p.chain[j], gj, p.stars[j], p.alphas[j - 1].back(), hj, nullptr);
      if (!eta) return;
      a0 = *eta;
    }
    if (!check_coset_iso(sec(hj, u0()), sec(cell(p, j - 1, kk(j), kk(j - 1)), gj), a0).empty()) return;
    p.grid.push_back({hj});
    p.alphas.push_back({a0});
    if (e(j) == 0) {
      p.gammas.push_back(gj);
      p.stars.push_back(hj);
      return increments(std::move(p), j, kk(j) + 1);
    }
    const ElemSet& target = cell(p, j - 1, kk(j) + 1, kk(j - 1));
    for (const auto& gam : ns_) {
      if (done_) return;
      tick();
      if (gam.size() * delta(j).size() != gj.size() * delta(j + 1).size()) continue;
      if (!gj.subset_of(gam) || intersect(gam, hj) != gj) continue;
      if (!section_iso(c_, gam, gj, delta(j + 1), delta(j))) continue;
      ElemSet star = product_set(c_, hj, gam);
      if (static_cast<long>(star.size()) * gj.size() != static_cast<long>(target.size()) * u0().size()) continue;
      extend(a0, star, target, gj, [&](CosetMap a1) {
        Partial q = p;
        q.gammas.push_back(gam);
        q.stars.push_back(star);
        q.grid.back().push_back(star);
        q.alphas.back().push_back(std::move(a1));
        increments(std::move(q), j, kk(j) + 2);
      });
    }
  }

  void increments(Partial p, int j, int m) {
    if (done_) return;
    if (m > lp_) {
      const ElemSet top = p.grid.back().back();
      if (j == ell_ - 2 && !top.is_full()) return;
      p.chain.push_back(top);
      return step(std::move(p), j + 1);
    }
    const ElemSet& prev = p.grid.back().back();
    const ElemSet& target = cell(p, j - 1, m, kk(j - 1));
    const ElemSet& gj = p.gammas[j + 1];
    const ElemSet& gnext = p.gammas.back();
    const long want = static_cast<long>(target.size()) * u0().size();
    for (const auto& cand : ns_) {
      if (done_) return;
      tick();
      if (static_cast<long>(cand.size()) * gj.size() != want) continue;
      if (!prev.subset_of(cand) || !gnext.subset_of(cand)) continue;
      extend(p.alphas.back().back(), cand, target, gj, [&](CosetMap a) {
        Partial q = p;
        q.grid.back().push_back(cand);
        q.alphas.back().push_back(std::move(a));
        increments(std::move(q), j, m + 1);
      });
    }
  }

  void finish(const Partial& p) {
    StateGroupWitness w;
    w.ell = ell_;
    w.ell_prime = lp_;
    w.hu = c_;
    w.chain = p.chain;
    w.stars = p.stars;
    w.gammas = p.gammas;
    w.deltas = deltas_;
    w.eps = eps_;
    w.k = k_;
    w.grid = p.grid;
    w.alphas = p.alphas;
    if (static_cast<int>(w.chain.size()) != ell_ + 1 || !w.chain.back().is_full()) return;
    if (!verify_state_group(w).ok()) return;
    if (!emit_(std::move(w))) done_ = true;
  }

  const FiniteGroup& c_;
  int ell_, lp_;
  std::vector<int> eps_, k_;
  std::vector<ElemSet> deltas_;
  const Algorithm1Options& opt_;
  long& nodes_;
  std::function<bool(StateGroupWitness)> emit_;
  std::vector<ElemSet> ns_;
  std::map<std::pair<ElemSet, ElemSet>, Section> cache_;
  bool done_ = false;
};

std::vector<std::pair<ElemSet, ElemSet>> witness_pairs(const StateGroupWitness& a, const StateGroupWitness& b) {
  std::vector<std::pair<ElemSet, ElemSet>> out;
  for (std::size_t i = 0; i < a.chain.size(); ++i) out.emplace_back(a.chain[i], b.chain[i]);
  for (std::size_t i = 0; i < a.stars.size(); ++i) out.emplace_back(a.stars[i], b.stars[i]);
  for (std::size_t i = 0; i < a.gammas.size(); ++i) out.emplace_back(a.gammas[i], b.gammas[i]);
  for (std::size_t i = 0; i < a.grid.size(); ++i)
    for (std::size_t m = 0; m < a.grid[i].size(); ++m) out.emplace_back(a.grid[i][m], b.grid[i][m]);
  return out;
}

bool equivalent(const StateGroupWitness& a, const StateGroupWitness& b) {
  if (a.hu.order() != b.hu.order() || a.ell != b.ell || a.ell_prime != b.ell_prime || a.k != b.k) return false;
  IsoOptions o;
  o.preserve = witness_pairs(a, b);
  for (const auto& [x, y] : o.preserve)
    if (x.size() != y.size()) return false;
  return find_isomorphism(a.hu, b.hu, o).has_value();
}

}  // namespace

std::vector<FoundStateGroup> algorithm1(const FiniteGroup& u0p, const std::vector<ElemSet>& delta_chain,
                                        const Catalog& cat, const Algorithm1Options& opt) {
  const int ell = static_cast<int>(delta_chain.size()) - 1;
  if (ell < 1) throw Error(ErrorKind::HypothesisViolated, "signature chain needs at least two terms");
  for (std::size_t i = 0; i < delta_chain.size(); ++i) {
    const ElemSet& d = delta_chain[i];
    if (d.universe() != u0p.order() || !is_subgroup(u0p, d) || !is_normal(u0p, d))
      throw Error(ErrorKind::HypothesisViolated, "Delta' term " + std::to_string(i) + " is not normal in U0'");
    if (i > 0 && !delta_chain[i - 1].subset_of(d))
      throw Error(ErrorKind::HypothesisViolated, "Delta' chain is not ascending");
  }
  if (!delta_chain.front().is_trivial() || !delta_chain.back().is_full())
    throw Error(ErrorKind::HypothesisViolated, "Delta' chain must run from 1 to U0'");
  // Part I
  std::vector<int> eps;
  for (int j = -1; j <= ell - 2; ++j) eps.push_back(delta_chain[j + 2].size() > delta_chain[j + 1].size() ? 1 : 0);
  int lp = 0;
  for (int x : eps) lp += x;
  std::vector<int> k(ell + 1);
  k[ell] = lp;
  for (int j = ell - 2; j >= -1; --j) k[j + 1] = k[j + 2] - eps[j + 1];
  if (eps.back() != 1) return {};  // |Delta_{l-2}'| < |Delta_{l-1}'| always holds for a state group
  const long order = state_group_order(u0p, delta_chain);
  if (order > opt.bound) throw Error(ErrorKind::BoundExceeded, "state group order " + std::to_string(order) + " above bound");

  std::vector<FoundStateGroup> out;
  long nodes = 0;
  bool full = false;
  for (const auto& cand : candidate_universe(cat, static_cast<int>(order), opt.bound)) {
    if (full) break;
    const FiniteGroup& c = cand.group;
    std::set<std::vector<ElemSet>> embeddings;
    for (const auto& s : normal_subgroups(c)) {
      if (s.size() != u0p.order()) continue;
      FiniteGroup sg = subgroup_group(c, s);
      for_each_isomorphism(u0p, sg, [&](const GroupHom& f) {
        std::vector<ElemSet> img;
        for (const auto& d : delta_chain) {
          std::vector<int> el;
          for (int x : d) el.push_back(s.elems()[f(x)]);
          img.emplace_back(c.order(), std::move(el));
        }
        for (const auto& d : img)
          if (!is_normal(c, d)) return true;
        embeddings.insert(std::move(img));
        return true;
      });
    }
    for (const auto& img : embeddings) {
      if (full) break;
      StateSearch search(c, ell, lp, eps, k, img, opt, nodes, [&](StateGroupWitness w) {
        for (const auto& f : out)
          if (equivalent(f.witness, w)) return true;
        out.push_back({cand.name, std::move(w)});
        full = opt.max_results > 0 && static_cast<int>(out.size()) >= opt.max_results;
        return !full;
      });
      search.run();
    }
  }
  return out;
}

std::vector<ShiftStructure> lift_search(const ShiftStructure& reduced, const Catalog& cat,
                                        const std::function<bool(const ShiftStructure&)>& accept,
                                        const LiftOptions& opt) {
  std::vector<ShiftStructure> out;
  const int order = reduced.group.order() * opt.kernel_order;
  if (order > opt.bound) return out;
  for (const auto* e : cat.of_order(order)) {
    const FiniteGroup& g = e->group;
    for (const auto& nsub : normal_subgroups(g)) {
      if (nsub.size() != opt.kernel_order) continue;
      Section q = quotient(g, nsub);
      int tried = 0;
      for_each_isomorphism(q.group, reduced.group, [&](const GroupHom& iso) {
        GroupHom f;
        f.image.resize(g.order());
        for (int a = 0; a < g.order(); ++a) f.image[a] = iso(q.index[a]);
        ShiftStructure s = lift_structure(reduced, g, f);
        if (accept(s)) out.push_back(std::move(s));
        return ++tried < opt.isos_per_kernel && static_cast<int>(out.size()) < opt.max_results;
      });
      if (static_cast<int>(out.size()) >= opt.max_results) return out;
    }
  }
  return out;
}

Json witness_to_json(const StateGroupWitness& w) {
  Json j;
  j["schema"] = "sgf.state_group_witness/1";
  j["ell"] = w.ell;
  j["ell_prime"] = w.ell_prime;
  j["group"] = group_to_json(w.hu);
  j["chain"] = chain_to_json(w.chain);
  j["stars"] = chain_to_json(w.stars);
  j["gammas"] = chain_to_json(w.gammas);
  j["deltas"] = chain_to_json(w.deltas);
  j["eps"] = w.eps;
  j["k"] = w.k;
  Json grid = Json::array();
  for (const auto& col : w.grid) grid.push_back(chain_to_json(col));
  j["grid"] = grid;
  Json alphas = Json::array();
  for (const auto& tower : w.alphas) {
    Json t = Json::array();
    for (const auto& a : tower) t.push_back(a.image);
    alphas.push_back(t);
  }
  j["alphas"] = alphas;
  return j;
}

StateGroupWitness witness_from_json(const Json& j, const std::filesystem::path& base) {
  expect_schema(j, "sgf.state_group_witness/1");
  return with_schema("state group witness", [&] {
    StateGroupWitness w;
    w.ell = j.at("ell").get<int>();
    w.ell_prime = j.at("ell_prime").get<int>();
    w.hu = resolve_group(j.at("group"), base);
    const int n = w.hu.order();
    w.chain = chain_from_json(j.at("chain"), n);
    w.stars = chain_from_json(j.at("stars"), n);
    w.gammas = chain_from_json(j.at("gammas"), n);
    w.deltas = chain_from_json(j.at("deltas"), n);
    w.eps = j.at("eps").get<std::vector<int>>();
    w.k = j.at("k").get<std::vector<int>>();
    for (const auto& col : j.at("grid")) w.grid.push_back(chain_from_json(col, n));
    for (const auto& t : j.at("alphas")) {
      std::vector<CosetMap> tower;
      for (const auto& a : t) tower.push_back(CosetMap{a.get<std::vector<int>>()});
      w.alphas.push_back(std::move(tower));
    }
    return w;
  });
}

}  // namespace sgf
