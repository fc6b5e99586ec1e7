#include "sgf/subdirect.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "sgf/iso.hpp"

namespace sgf {

namespace {

std::string jname(const char* what, int j) { return std::string(what) + " (j=" + std::to_string(j) + ")"; }

ElemSet pair_subset(const SubdirectGroup& h, const std::vector<std::pair<int, int>>& ps) {
  std::vector<int> out;
  out.reserve(ps.size());
  for (auto [a, b] : ps) {
    int k = h.index_of(a, b);
    if (k < 0) throw Error(ErrorKind::SynthesisInconsistent, "pair outside the pair group");
    out.push_back(k);
  }
  return ElemSet(h.as_group.order(), std::move(out));
}

std::vector<std::pair<int, int>> pairs_of(const SubdirectGroup& h, const ElemSet& s) {
  std::vector<std::pair<int, int>> out;
  for (int k : s) out.push_back(h.pairs[k]);
  return out;
}

bool chain_normal_ascending(const FiniteGroup& g, const std::vector<ElemSet>& c) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].universe() != g.order() || !is_subgroup(g, c[i]) || !is_normal(g, c[i])) return false;
    if (i > 0 && !c[i - 1].subset_of(c[i])) return false;
  }
  return true;
}

// d Gamma_low -> d Gamma_high on least coset elements, d in q.
struct Eta {
  InducedCosetIso ind;
  int operator()(int d) const { return ind.high.rep(ind.map(ind.low.index[d])); }
};

Eta make_eta(const FiniteGroup& g, const ElemSet& gamma_low, const ElemSet& q, const ElemSet& gamma_high,
             const ElemSet& q_star) {
  return Eta{induced_coset_iso(g, gamma_low, q, gamma_high, q_star)};
}

}  // namespace

int SubdirectGroup::index_of(int a, int b) const {
  if (a < 0 || a >= left.order() || b < 0 || b >= right.order()) return -1;
  return lookup_[static_cast<std::size_t>(a) * right.order() + b];
}

ElemSet SubdirectGroup::select(const std::function<bool(int, int)>& pred) const {
  std::vector<int> out;
  for (std::size_t k = 0; k < pairs.size(); ++k)
    if (pred(pairs[k].first, pairs[k].second)) out.push_back(static_cast<int>(k));
  return ElemSet(static_cast<int>(pairs.size()), std::move(out));
}

ElemSet SubdirectGroup::box(const ElemSet& l, const ElemSet& r) const {
  return select([&](int a, int b) { return l.contains(a) && r.contains(b); });
}

ElemSet SubdirectGroup::left_image(const ElemSet& s) const {
  std::vector<int> out;
  for (int k : s) out.push_back(pairs[k].first);
  return ElemSet(left.order(), std::move(out));
}

ElemSet SubdirectGroup::right_image(const ElemSet& s) const {
  std::vector<int> out;
  for (int k : s) out.push_back(pairs[k].second);
  return ElemSet(right.order(), std::move(out));
}

SubdirectGroup make_pair_group(const FiniteGroup& left, const FiniteGroup& right,
                               std::vector<std::pair<int, int>> pairs) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  if (pairs.empty() || pairs.front() != std::pair{0, 0}) throw Error(ErrorKind::NotClosed, "pair set lacks (1,1)");
  SubdirectGroup h;
  h.left = left;
  h.right = right;
  h.lookup_.assign(static_cast<std::size_t>(left.order()) * right.order(), -1);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    auto [a, b] = pairs[k];
    if (a < 0 || a >= left.order() || b < 0 || b >= right.order())
      throw Error(ErrorKind::ElementOutOfRange, "pair coordinate");
    h.lookup_[static_cast<std::size_t>(a) * right.order() + b] = static_cast<int>(k);
  }
  h.pairs = std::move(pairs);
  const int n = static_cast<int>(h.pairs.size());
  std::vector<int> flat(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int z = h.index_of(left.mul(h.pairs[x].first, h.pairs[y].first), right.mul(h.pairs[x].second, h.pairs[y].second));
      if (z < 0) throw Error(ErrorKind::NotClosed, "pair set is not closed under multiplication");
      flat[static_cast<std::size_t>(x) * n + y] = z;
    }
  std::vector<std::string> names;
  if (!left.names().empty() || !right.names().empty())
    for (auto [a, b] : h.pairs) names.push_back("(" + left.name(a) + "," + right.name(b) + ")");
  h.as_group = FiniteGroup::from_trusted(n, std::move(flat), std::move(names));
  return h;
}

std::optional<CouplingIso> coupling_of(const FiniteGroup& left, const FiniteGroup& right,
                                       const std::vector<std::pair<int, int>>& pairs, const ElemSet& left_top,
                                       const ElemSet& right_top, std::string* why) {
  auto fail = [&](const std::string& m) -> std::optional<CouplingIso> {
    if (why) *why = m;
    return std::nullopt;
  };
  std::vector<int> firsts, seconds, kl, kr;
  for (auto [a, b] : pairs) {
    firsts.push_back(a);
    seconds.push_back(b);
    if (b == 0) kl.push_back(a);
    if (a == 0) kr.push_back(b);
  }
  if (ElemSet(left.order(), firsts) != left_top) return fail("first projection is not onto");
  if (ElemSet(right.order(), seconds) != right_top) return fail("second projection is not onto");
  ElemSet lk(left.order(), kl), rk(right.order(), kr);
  if (!is_subgroup(left, lk) || !is_normal_in(left, lk, left_top)) return fail("left fiber not normal");
  if (!is_subgroup(right, rk) || !is_normal_in(right, rk, right_top)) return fail("right fiber not normal");
  std::set<std::pair<int, int>> uniq(pairs.begin(), pairs.end());
  if (static_cast<int>(uniq.size()) != left_top.size() * rk.size()) return fail("pair count differs from |left| |right fiber|");
  CouplingIso c{section(left, left_top, lk), section(right, right_top, rk), {}, {}, {}};
  c.map.image.assign(c.left.quotient_order(), -1);
  for (auto [a, b] : pairs) {
    int& slot = c.map.image[c.left.index[a]];
    int img = c.right.index[b];
    if (slot >= 0 && slot != img) return fail("coset map not well defined");
    slot = img;
  }
  if (!is_isomorphism(c.left.group, c.right.group, c.map)) return fail("coset map is not an isomorphism");
  GroupHom back = inverse(c.map);
  c.left_proj.image.assign(left.order(), -1);
  c.right_proj.image.assign(right.order(), -1);
  for (int a : left_top) c.left_proj.image[a] = c.left.index[a];
  for (int b : right_top) c.right_proj.image[b] = back(c.right.index[b]);
  return c;
}

SubdirectGroup subdirect_from_coupling(const FiniteGroup& left, const FiniteGroup& right, const ElemSet& x0p,
                                       const ElemSet& y0pp, const GroupHom& iso) {
  require_normal(left, x0p, "left kernel");
  require_normal(right, y0pp, "right kernel");
  Section qa = quotient(left, x0p), qb = quotient(right, y0pp);
  if (static_cast<int>(iso.image.size()) != qa.quotient_order() || !is_isomorphism(qa.group, qb.group, iso))
    throw Error(ErrorKind::NotIso, "coupling map");
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < left.order(); ++a)
    for (int b = 0; b < right.order(); ++b)
      if (iso(qa.index[a]) == qb.index[b]) pairs.emplace_back(a, b);
  return make_pair_group(left, right, std::move(pairs));
}

GammaDecomposition gamma_decompose(const ShiftStructure& s) {
  require_valid(s);
  const FiniteGroup& g = s.group;
  const int n = g.order(), ell = s.ell();
  if (!intersect(s.x0(), s.y0).is_trivial()) throw Error(ErrorKind::NotReduced, "X0 n Y0 is not trivial");
  if (ell < 1) throw Error(ErrorKind::HypothesisViolated, "chain length must be at least 1");
  GammaDecomposition d;
  Report& r = d.certificates;
  d.gx = quotient(g, s.y0);
  d.gy = quotient(g, s.x0());
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a) pairs.emplace_back(d.gx.index[a], d.gy.index[a]);
  d.tilde = make_pair_group(d.gx.group, d.gy.group, pairs);
  r.add("gamma injective", static_cast<int>(d.tilde.pairs.size()) == n);
  d.gamma.image.resize(n);
  for (int a = 0; a < n; ++a) d.gamma.image[a] = d.tilde.index_of(pairs[a].first, pairs[a].second);
  r.add("gamma isomorphism onto its image", is_isomorphism(g, d.tilde.as_group, d.gamma));

  const FiniteGroup& hx = d.gx.group;
  const FiniteGroup& hy = d.gy.group;
  d.x0p = coset_image(d.gx, s.x0());
  d.y0pp = coset_image(d.gy, s.y0);
  std::string why;
  auto c = coupling_of(hx, hy, d.tilde.pairs, ElemSet::all(hx.order()), ElemSet::all(hy.order()), &why);
  r.add("coupling G_X/X0' ~ G_Y/Y0''", c.has_value(), why);
  if (!c) throw Error(ErrorKind::InconsistencyDetected, "gamma image is not a subdirect coupling: " + why);
  d.coupling = *c;
  r.add("fiber over 1 in G_Y is X0' x 1", d.coupling.left.kernel == d.x0p);
  r.add("fiber over 1 in G_X is 1 x Y0''", d.coupling.right.kernel == d.y0pp);

  for (int j = -1; j <= ell; ++j) d.gx_chain.push_back(coset_image(d.gx, s.x(j)));
  for (int j = 0; j <= ell; ++j) {
    d.gy_chain.push_back(coset_image(d.gy, s.x(j)));
    d.lambda.push_back(coset_image(d.gy, intersect(s.x(j), s.y0)));
  }
  for (int j = -1; j <= ell; ++j) d.tilde_chain.push_back(image_of(d.gamma, s.x(j), d.tilde.as_group.order()));
  d.tilde_y0 = image_of(d.gamma, s.y0, d.tilde.as_group.order());

  r.add("G_X^-1 = 1", d.gx_chain[0].is_trivial());
  r.add("G_X^0 = X0'", d.gx_chain[1] == d.x0p);
  r.add("G_X^{l-1} = G_X^l = G_X", d.gx_chain[ell].is_full() && d.gx_chain[ell + 1].is_full());
  r.add("G_Y^0 = 1", d.gy_chain[0].is_trivial());
  r.add("G_Y^l = G_Y", d.gy_chain[ell].is_full());
  r.add("Lambda_0'' = 1", d.lambda[0].is_trivial());
  r.add("Lambda_l'' = Y0''", d.lambda[ell] == d.y0pp);
  r.add("gamma(Y0) = 1 x Y0''", d.tilde_y0 == d.tilde.box(ElemSet::identity(hx.order()), d.y0pp));
  for (int j = 0; j <= ell; ++j)
    r.add(jname("Lambda_j'' = G_Y^j n Y0''", j), d.lambda[j] == intersect(d.gy_chain[j], d.y0pp));
  for (int j = 0; j < ell; ++j) {
    d.gy_star.push_back(product_set(hy, d.gy_chain[j], d.lambda[j + 1]));
    ElemSet xstar = product_set(g, s.x(j), intersect(s.x(j + 1), s.y0));
    r.add(jname("G_Y^j* = image of X_j*", j), d.gy_star[j] == coset_image(d.gy, xstar));
    ElemSet lhs = image_of(d.gamma, xstar, d.tilde.as_group.order());
    ElemSet rhs = product_set(d.tilde.as_group, d.tilde_chain[j + 1],
                              d.tilde.box(ElemSet::identity(hx.order()), d.lambda[j + 1]));
    r.add(jname("gamma(X_j*) = X~_j (1 x Lambda_{j+1}'')", j), lhs == rhs);
  }
  r.add("G_Y^{l-1*} = G_Y", d.gy_star[ell - 1].is_full());
  for (int j = -1; j < ell; ++j)
    r.add(jname("phi(G_X^j) = G_Y^{j+1}", j), image_of(s.phi, d.gx_chain[j + 1], hy.order()) == d.gy_chain[j + 1]);
  for (int j = 0; j <= ell; ++j) {
    std::string w;
    auto cj = coupling_of(hx, hy, pairs_of(d.tilde, d.tilde_chain[j + 1]), d.gx_chain[j + 1], d.gy_chain[j], &w);
    bool ok = cj && cj->left.kernel == d.x0p && cj->right.kernel == d.lambda[j];
    if (cj && !ok) w = "fibers differ from X0' and Lambda_j''";
    r.add(jname("X~_j couples G_X^j/X0' ~ G_Y^j/Lambda_j''", j), ok, w);
  }
  return d;
}

Report check_synthesis_input(const SynthesisInput& inp) {
  Report r;
  const int ell = inp.ell;
  const FiniteGroup& hu = inp.hu;
  const FiniteGroup& hv = inp.hv;
  bool sizes = ell >= 1 && static_cast<int>(inp.hu_chain.size()) == ell + 2 &&
               static_cast<int>(inp.hv_chain.size()) == ell + 1 && static_cast<int>(inp.hv_star.size()) == ell &&
               static_cast<int>(inp.gamma.size()) == ell + 1 && static_cast<int>(inp.beta.size()) == ell &&
               static_cast<int>(inp.phi.image.size()) == hu.order();
  r.add("input sizes", sizes);
  if (!sizes) return r;
  auto add = [&](std::string name, bool pass, std::string detail = {}) {
    r.add(std::move(name), pass, std::move(detail));
    return pass;
  };
  if (!add("H_U chain normal and ascending", chain_normal_ascending(hu, inp.hu_chain))) return r;
  if (!add("H_V chain normal and ascending", chain_normal_ascending(hv, inp.hv_chain))) return r;
  if (!add("Gamma'' chain normal and ascending", chain_normal_ascending(hv, inp.gamma))) return r;
  add("H_U^-1 = 1", inp.hu_chain[0].is_trivial());
  add("H_U^{l-1} = H_U^l = H_U", inp.hu_chain[ell].is_full() && inp.hu_chain[ell + 1].is_full());
  add("H_V^0 = 1", inp.hv_chain[0].is_trivial());
  add("H_V^l = H_V", inp.hv_chain[ell].is_full());
  add("Gamma_0'' = 1", inp.gamma[0].is_trivial());
  bool stars = true;
  for (int j = 0; j < ell; ++j)
    stars = stars && inp.hv_star[j].universe() == hv.order() && is_subgroup(hv, inp.hv_star[j]) &&
            is_normal(hv, inp.hv_star[j]) && inp.hv_chain[j].subset_of(inp.hv_star[j]) &&
            inp.hv_star[j].subset_of(inp.hv_chain[j + 1]);
  if (!add("H_V^j <= H_V^j* <= H_V^{j+1}, normal", stars)) return r;
  add("H_V^{l-1*} = H_V", inp.hv_star[ell - 1].is_full());
  const ElemSet& v0 = inp.gamma[ell];
  for (int j = 0; j <= ell; ++j) add(jname("H_V^j n V0'' = Gamma_j''", j), intersect(inp.hv_chain[j], v0) == inp.gamma[j]);
  for (int j = 0; j < ell; ++j)
    add(jname("H_V^j* = H_V^j Gamma_{j+1}''", j), product_set(hv, inp.hv_chain[j], inp.gamma[j + 1]) == inp.hv_star[j]);
  if (!add("phi isomorphism H_U -> H_V", is_isomorphism(hu, hv, inp.phi))) return r;
  for (int j = -1; j < ell; ++j)
    add(jname("phi(H_U^j) = H_V^{j+1}", j), image_of(inp.phi, inp.hu_chain[j + 1], hv.order()) == inp.hv_chain[j + 1]);
  if (!r.ok()) return r;

  const ElemSet& u0p = inp.hu_chain[1];
  std::vector<Section> su(ell + 1), sv(ell + 1);
  bool betas = true;
  for (int j = 1; j <= ell; ++j) {
    su[j] = section(hu, inp.hu_chain[j + 1], u0p);
    sv[j] = section(hv, inp.hv_chain[j], inp.gamma[j]);
    std::string w = check_coset_iso(su[j], sv[j], inp.beta[j - 1]);
    betas = add(jname("beta_j coset isomorphism H_U^j/U0' -> H_V^j/Gamma_j''", j), w.empty(), w) && betas;
  }
  if (!betas) return r;
  bool b1 = true;
  for (int c : u0p) b1 = b1 && inp.beta[0].image[c] == 0;
  add("beta_1 trivial on U0'", b1);
  for (int j = 1; j < ell; ++j) {
    bool ok = true;
    std::string w;
    try {
      Eta eta = make_eta(hv, inp.gamma[j], inp.hv_chain[j], inp.gamma[j + 1], inp.hv_star[j]);
      for (int c : inp.hu_chain[j + 1])
        if (inp.beta[j].image[c] != eta(inp.beta[j - 1].image[c])) {
          ok = false;
          w = "differs at " + std::to_string(c);
          break;
        }
    } catch (const Error& e) {
      ok = false;
      w = e.what();
    }
    add(jname("beta_{j+1} restricted to H_U^j = eta_j'' o beta_j", j), ok, w);
  }
  return r;
}

Synthesis synthesize_thmy1(const SynthesisInput& inp) {
  Report hyp = check_synthesis_input(inp);
  if (const Check* f = hyp.first_failure())
    throw Error(ErrorKind::HypothesisViolated, f->name + (f->detail.empty() ? "" : ": " + f->detail));
  const int ell = inp.ell;
  const FiniteGroup& hu = inp.hu;
  const FiniteGroup& hv = inp.hv;
  std::vector<std::vector<std::pair<int, int>>> layers(ell + 1);
  for (int j = 1; j <= ell; ++j) {
    Section sv = section(hv, inp.hv_chain[j], inp.gamma[j]);
    for (int a : inp.hu_chain[j + 1])
      for (int b : inp.hv_chain[j])
        if (inp.beta[j - 1].image[a] == sv.rep_of(b)) layers[j].emplace_back(a, b);
  }
  Synthesis out;
  try {
    out.h = make_pair_group(hu, hv, layers[ell]);
  } catch (const Error& e) {
    throw Error(ErrorKind::SynthesisInconsistent, std::string("top layer: ") + e.what());
  }
  const SubdirectGroup& h = out.h;
  const ElemSet& u0p = inp.hu_chain[1];
  const ElemSet& v0pp = inp.gamma[ell];
  out.u_chain.push_back(ElemSet::identity(h.as_group.order()));
  out.u_chain.push_back(h.box(u0p, ElemSet::identity(hv.order())));
  for (int j = 1; j <= ell; ++j) out.u_chain.push_back(pair_subset(h, layers[j]));
  const ElemSet v0 = h.box(ElemSet::identity(hu.order()), v0pp);
  Report& r = out.certificates;
  r.add("|H~| = |H_U| |V0''|", h.as_group.order() == hu.order() * v0pp.size());

  Section qv = quotient(h.as_group, v0);
  Section qu = quotient(h.as_group, out.u_chain[1]);
  out.tau.image.assign(qv.quotient_order(), -1);
  out.xi.image.assign(qu.quotient_order(), -1);
  bool tau_ok = true, xi_ok = true;
  for (int k = 0; k < h.as_group.order(); ++k) {
    int& t = out.tau.image[qv.index[k]];
    if (t >= 0 && t != h.pairs[k].first) tau_ok = false;
    t = h.pairs[k].first;
    int& x = out.xi.image[qu.index[k]];
    if (x >= 0 && x != h.pairs[k].second) xi_ok = false;
    x = h.pairs[k].second;
  }
  tau_ok = tau_ok && is_isomorphism(qv.group, hu, out.tau);
  xi_ok = xi_ok && is_isomorphism(qu.group, hv, out.xi);
  r.add("tau: H~/V~0 -> H_U isomorphism", tau_ok);
  r.add("xi: H~/U~0 -> H_V isomorphism", xi_ok);
  if (!tau_ok || !xi_ok) throw Error(ErrorKind::SynthesisInconsistent, "coordinate maps are not isomorphisms");
  GroupHom xi_inv = inverse(out.xi);

  ShiftStructure& st = out.structure;
  st.group = h.as_group;
  st.chain = out.u_chain;
  st.y0 = v0;
  st.phi.image.resize(qv.quotient_order());
  for (int c = 0; c < qv.quotient_order(); ++c) st.phi.image[c] = xi_inv(inp.phi(out.tau(c)));
  for (int j = -1; j <= ell; ++j)
    r.add(jname("tau(U~_j V~0/V~0) = H_U^j", j),
          image_of(out.tau, coset_image(qv, out.u_chain[j + 1]), hu.order()) == inp.hu_chain[j + 1]);
  for (int j = 0; j <= ell; ++j)
    r.add(jname("xi(U~_j/U~0) = H_V^j", j),
          image_of(out.xi, coset_image(qu, out.u_chain[j + 1]), hv.order()) == inp.hv_chain[j]);
  Report v = verify_shift_structure(st);
  r.merge(v, "structure: ");
  if (const Check* f = v.first_failure())
    throw Error(ErrorKind::SynthesisInconsistent, f->name + (f->detail.empty() ? "" : ": " + f->detail));
  return out;
}

bool check_lemma47(const Lemma47Input& in) {
  Section su0, su1, sv0, sv1;
  try {
    su0 = section(in.hu, in.hu_j, in.u0p);
    su1 = section(in.hu, in.hu_j1, in.u0p);
    sv0 = section(in.hv, in.hv_j, in.gamma_j);
    sv1 = section(in.hv, in.hv_j1, in.gamma_j1);
  } catch (const Error& e) {
    throw Error(ErrorKind::HypothesisViolated, e.what());
  }
  if (!in.hu_j.subset_of(in.hu_j1) || !in.hv_j.subset_of(in.hv_j1) || !in.gamma_j.subset_of(in.gamma_j1))
    throw Error(ErrorKind::HypothesisViolated, "layers are not nested");
  for (auto [a, b, m] : {std::tuple{&su0, &sv0, &in.beta_j}, std::tuple{&su1, &sv1, &in.beta_j1}}) {
    std::string w = check_coset_iso(*a, *b, *m);
    if (!w.empty()) throw Error(ErrorKind::HypothesisViolated, "beta: " + w);
  }
  bool contained = true;
  for (int a : in.hu_j)
    for (int b : in.hv_j)
      if (in.beta_j.image[a] == sv0.rep_of(b) && in.beta_j1.image[a] != sv1.rep_of(b)) contained = false;
  bool restricts = true;
  for (int c : in.hu_j)
    if (in.beta_j1.image[c] != sv1.rep_of(in.beta_j.image[c])) restricts = false;
  if (contained != restricts)
    throw Error(ErrorKind::InconsistencyDetected, "containment and restriction test disagree");
  return contained;
}

SynthesisInput thmy3_input(const StateChains& c) {
  const int ell = c.ell;
  if (ell < 1 || static_cast<int>(c.chain.size()) != ell + 1 || static_cast<int>(c.stars.size()) != ell ||
      static_cast<int>(c.gammas.size()) != ell + 1 ||
      (static_cast<int>(c.alphas.size()) != ell - 1 && static_cast<int>(c.alphas.size()) != ell))
    throw Error(ErrorKind::HypothesisViolated, "state chain sizes");
  const int n = c.hu.order();
  SynthesisInput inp;
  inp.ell = ell;
  inp.hu = c.hu;
  inp.hu_chain = c.chain;
  inp.hu_chain.push_back(ElemSet::all(n));
  inp.hv = c.hu;
  inp.hv_chain = c.chain;
  inp.hv_star = c.stars;
  inp.gamma = c.gammas;
  inp.phi = identity_hom(n);
  inp.beta = c.alphas;
  if (static_cast<int>(inp.beta.size()) == ell - 1) {
    CosetMap last;
    last.image.assign(n, -1);
    if (ell == 1) {
      for (int a = 0; a < n; ++a) last.image[a] = 0;
    } else {
      Eta eta;
      try {
        eta = make_eta(c.hu, c.gamma(ell - 2), c.at(ell - 2), c.gamma(ell - 1), c.star(ell - 2));
      } catch (const Error& e) {
        throw Error(ErrorKind::HypothesisViolated, std::string("eta_{l-2}: ") + e.what());
      }
      const CosetMap& prev = c.alphas.back();
      for (int a = 0; a < n; ++a) {
        int d = prev.image.at(a);
        if (d < 0) throw Error(ErrorKind::HypothesisViolated, "alpha_{l-1} undefined on H_U");
        last.image[a] = eta(d);
      }
    }
    inp.beta.push_back(std::move(last));
  }
  return inp;
}

Synthesis synthesize_thmy3(const StateChains& c) { return synthesize_thmy1(thmy3_input(c)); }

SynthesisInput synthesis_input_of(const ShiftStructure& s, const GammaDecomposition& gd) {
  const int ell = s.ell();
  SynthesisInput inp;
  inp.ell = ell;
  inp.hu = gd.gx.group;
  inp.hu_chain = gd.gx_chain;
  inp.hv = gd.gy.group;
  inp.hv_chain = gd.gy_chain;
  inp.hv_star = gd.gy_star;
  inp.gamma = gd.lambda;
  inp.phi = s.phi;
  for (int j = 1; j <= ell; ++j) {
    Section sv = section(inp.hv, inp.hv_chain[j], inp.gamma[j]);
    CosetMap b;
    b.image.assign(inp.hu.order(), -1);
    for (int g : s.x(j)) b.image[gd.gx.index[g]] = sv.rep_of(gd.gy.index[g]);
    inp.beta.push_back(std::move(b));
  }
  return inp;
}

StateChains state_chains_of(const ShiftStructure& s, const GammaDecomposition& gd) {
  const int ell = s.ell();
  SynthesisInput inp = synthesis_input_of(s, gd);
  const FiniteGroup& hu = inp.hu;
  const int n = hu.order();
  GroupHom back = inverse(s.phi);
  StateChains c;
  c.ell = ell;
  c.hu = hu;
  c.chain.assign(gd.gx_chain.begin(), gd.gx_chain.begin() + ell + 1);
  for (int j = -1; j <= ell - 2; ++j) c.stars.push_back(image_of(back, gd.gy_star[j + 1], n));
  for (int j = -1; j <= ell - 1; ++j) c.gammas.push_back(image_of(back, gd.lambda[j + 1], n));
  for (int j = 1; j <= ell - 1; ++j) {
    Section target = section(hu, c.at(j - 1), c.gamma(j - 1));
    CosetMap a;
    a.image.assign(n, -1);
    for (int x : c.at(j)) a.image[x] = target.rep_of(back(inp.beta[j - 1].image[x]));
    c.alphas.push_back(std::move(a));
  }
  return c;
}

Report structure_iso_report(const ShiftStructure& a, const ShiftStructure& b, const GroupHom& f) {
  Report r;
  bool iso = static_cast<int>(f.image.size()) == a.group.order() && is_isomorphism(a.group, b.group, f);
  r.add("isomorphism", iso);
  if (!iso) return r;
  bool ell = a.ell() == b.ell();
  r.add("same chain length", ell);
  if (!ell) return r;
  std::string bad;
  for (int j = -1; j <= a.ell(); ++j)
    if (image_of(f, a.x(j), b.group.order()) != b.x(j)) bad += (bad.empty() ? "" : ",") + std::to_string(j);
  r.add("f(X_j) = U_j", bad.empty(), bad.empty() ? "" : "fails at j=" + bad);
  bool y = image_of(f, a.y0, b.group.order()) == b.y0;
  r.add("f(Y0) = V0", y);
  if (!bad.empty() || !y) return r;
  StructureView va(a), vb(b);
  bool commute = true;
  for (int g = 0; g < a.group.order() && commute; ++g)
    commute = vb.mod_x0().index[vb.phi_rep(f(g))] == vb.mod_x0().index[f(va.phi_rep(g))];
  r.add("shift squares commute", commute);
  return r;
}

std::optional<GroupHom> find_structure_iso(const ShiftStructure& a, const ShiftStructure& b, const GroupHom* hint,
                                           long max_visits) {
  if (a.group.order() != b.group.order() || a.ell() != b.ell() || a.y0.size() != b.y0.size()) return std::nullopt;
  for (int j = 0; j <= a.ell(); ++j)
    if (a.x(j).size() != b.x(j).size()) return std::nullopt;
  if (hint && structure_iso_report(a, b, *hint).ok()) return *hint;
  IsoOptions opt;
  for (int j = 0; j < a.ell(); ++j) opt.preserve.emplace_back(a.x(j), b.x(j));
  opt.preserve.emplace_back(a.y0, b.y0);
  std::optional<GroupHom> found;
  long visits = 0;
  bool exceeded = false;
  for_each_isomorphism(
      a.group, b.group,
      [&](const GroupHom& f) {
        if (structure_iso_report(a, b, f).ok()) {
          found = f;
          return false;
        }
        if (++visits >= max_visits) {
          exceeded = true;
          return false;
        }
        return true;
      },
      opt);
  if (!found && exceeded) throw Error(ErrorKind::BoundExceeded, "structure isomorphism search");
  return found;
}

RoundTrip roundtrip(const ShiftStructure& s) {
  RoundTrip out;
  Report& r = out.certificates;
  try {
    GammaDecomposition gd = gamma_decompose(s);
    r.merge(gd.certificates, "gamma: ");
    Synthesis syn = synthesize_thmy1(synthesis_input_of(s, gd));
    r.merge(syn.certificates, "synthesis: ");
    bool same = syn.h.pairs == gd.tilde.pairs;
    r.add("H~ = gamma(G)", same);
    bool chains = same;
    for (int j = -1; same && j <= s.ell(); ++j) chains = chains && syn.u_chain[j + 1] == gd.tilde_chain[j + 1];
    r.add("U~_j = gamma(X_j)", chains);
    r.add("V~0 = gamma(Y0)", same && syn.structure.y0 == gd.tilde_y0);
    GroupHom f;
    f.image.resize(s.group.order());
    for (int g = 0; g < s.group.order(); ++g) {
      auto [x, y] = gd.tilde.pairs[gd.gamma(g)];
      f.image[g] = syn.h.index_of(x, y);
    }
    r.merge(structure_iso_report(s, syn.structure, f), "G ~ H~: ");

    StateChains sc = state_chains_of(s, gd);
    SynthesisInput in3 = thmy3_input(sc);
    if (s.ell() >= 2) {
      // derived alpha_l against phi^-1 o beta_l
      SynthesisInput in1 = synthesis_input_of(s, gd);
      GroupHom back = inverse(s.phi);
      Section target = section(sc.hu, sc.at(s.ell() - 1), sc.gamma(s.ell() - 1));
      bool ok = true;
      for (int x = 0; x < sc.hu.order(); ++x)
        ok = ok && in3.beta.back().image[x] == target.rep_of(back(in1.beta.back().image[x]));
      r.add("alpha_l = eta'_{l-2} o alpha_{l-1}", ok);
    }
    Synthesis syn3 = synthesize_thmy1(in3);
    r.merge(syn3.certificates, "state synthesis: ");
    GroupHom f3;
    f3.image.resize(s.group.order());
    bool inside = true;
    GroupHom back = inverse(s.phi);
    for (int g = 0; g < s.group.order(); ++g) {
      f3.image[g] = syn3.h.index_of(gd.gx.index[g], back(gd.gy.index[g]));
      inside = inside && f3.image[g] >= 0;
    }
    r.add("G maps into H^", inside);
    if (inside) r.merge(structure_iso_report(s, syn3.structure, f3), "G ~ H^: ");
  } catch (const Error& e) {
    r.add(std::string("round trip raised ") + to_string(e.kind()), false, e.what());
  }
  return out;
}

bool roundtrip_check(const ShiftStructure& s) { return roundtrip(s).ok(); }

Json synthesis_input_to_json(const SynthesisInput& inp) {
  Json j;
  j["schema"] = "sgf.synthesis_input/1";
  j["ell"] = inp.ell;
  j["hu"] = group_to_json(inp.hu);
  j["hu_chain"] = chain_to_json(inp.hu_chain);
  j["hv"] = group_to_json(inp.hv);
  j["hv_chain"] = chain_to_json(inp.hv_chain);
  j["hv_star"] = chain_to_json(inp.hv_star);
  j["gamma"] = chain_to_json(inp.gamma);
  j["phi"] = hom_to_json(inp.phi);
  Json beta = Json::array();
  for (const auto& b : inp.beta) beta.push_back(b.image);
  j["beta"] = beta;
  return j;
}

SynthesisInput synthesis_input_from_json(const Json& j, const std::filesystem::path& base) {
  expect_schema(j, "sgf.synthesis_input/1");
  return with_schema("synthesis input", [&] {
    SynthesisInput inp;
    inp.ell = j.at("ell").get<int>();
    inp.hu = resolve_group(j.at("hu"), base);
    inp.hv = resolve_group(j.at("hv"), base);
    inp.hu_chain = chain_from_json(j.at("hu_chain"), inp.hu.order());
    inp.hv_chain = chain_from_json(j.at("hv_chain"), inp.hv.order());
    inp.hv_star = chain_from_json(j.at("hv_star"), inp.hv.order());
    inp.gamma = chain_from_json(j.at("gamma"), inp.hv.order());
    inp.phi = resolve_hom(j.at("phi"), base);
    for (const auto& b : j.at("beta")) inp.beta.push_back(CosetMap{b.get<std::vector<int>>()});
    return inp;
  });
}

}  // namespace sgf
