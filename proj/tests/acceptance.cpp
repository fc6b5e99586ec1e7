// Acceptance run: one line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "oracle.hpp"
#include "sgf/catalog.hpp"
#include "sgf/iso.hpp"
#include "sgf/latin.hpp"
#include "sgf/shift.hpp"
#include "sgf/stategroup.hpp"
#include "sgf/subdirect.hpp"
#include "sgf/sweep.hpp"
#include "sgf/trellis.hpp"

using namespace sgf;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream note;
  void require(bool c, const std::string& what) {
    if (!c && pass) note << "first failure: " << what << "; ";
    pass = pass && c;
  }
};

int failures = 0;

void run(int id, const std::string& name, const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.note << "exception: " << e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", secs);
  std::cout << (o.pass ? "PASS" : "FAIL") << " [" << id << "] " << name << "  (" << o.note.str() << buf << ")"
            << std::endl;
}

ShiftStructure memory(int m) { return derive_from_graph(build_graph(register_trellis(2, m))); }

const std::vector<ShiftStructure>& sweep() {
  static const std::vector<ShiftStructure> s = structure_sweep();
  return s;
}

bool reduced(const ShiftStructure& s) { return intersect(s.x0(), s.y0).is_trivial(); }

bool same_coset(const FiniteGroup& g, const ElemSet& k, int a, int b) { return k.contains(g.mul(g.inv(a), b)); }

// Brute-force check that a coset map is an isomorphism top1/k1 -> top2/k2.
bool coset_iso(const FiniteGroup& g, const ElemSet& top1, const ElemSet& k1, const ElemSet& top2, const ElemSet& k2,
               const CosetMap& m) {
  if (static_cast<long>(top1.size()) * k2.size() != static_cast<long>(top2.size()) * k1.size()) return false;
  for (int a : top1)
    if (m.image.at(a) < 0 || !top2.contains(m.image[a])) return false;
  for (int a : top1)
    for (int b : top1) {
      bool src = same_coset(g, k1, a, b);
      if (src != same_coset(g, k2, m.image[a], m.image[b])) return false;
      if (!same_coset(g, k2, m.image[g.mul(a, b)], g.mul(m.image[a], m.image[b]))) return false;
    }
  return true;
}

// {X_j} from 1 to G with every X_{j+1}/X_j abelian, by commutators.
bool solvable_series(const ShiftStructure& s) {
  const FiniteGroup& g = s.group;
  std::vector<ElemSet> series = s.chain;
  if (!series.back().is_full()) series.push_back(ElemSet::all(g.order()));
  if (!series.front().is_trivial()) return false;
  for (std::size_t j = 0; j + 1 < series.size(); ++j)
    for (int a : series[j + 1])
      for (int b : series[j + 1])
        if (!series[j].contains(g.mul(g.mul(a, b), g.inv(g.mul(b, a))))) return false;
  return true;
}

bool chain_matches_graph(const ShiftStructure& s) {
  TrellisGraph g;
  try {
    g = build_graph_from_structure(s);
  } catch (const Error&) {
    return false;
  }
  auto idx = controllability_index(g);
  if (idx != s.ell()) return false;
  ReachChain f = reach_chain(g, Direction::Forward);
  for (int j = 0; j <= s.ell(); ++j)
    if (j >= static_cast<int>(f.members.size()) || f.members[j] != s.x(j)) return false;
  return true;
}

struct Labeled {
  const ShiftStructure* s;
  LatinLabeling l;
};

const std::vector<Labeled>& labelings() {
  static const std::vector<Labeled> out = [] {
    std::vector<Labeled> r;
    for (const auto& s : sweep()) {
      if (!reduced(s) || s.ell() < 1) continue;
      if (auto l = search_latin_labeling(s)) r.push_back({&s, std::move(*l)});
    }
    return r;
  }();
  return out;
}

}  // namespace

int main() {
  run(1, "controllability index: walks, forward chain, backward chain", [](Outcome& o) {
    // Every normal pair, up to 8 quotient isomorphisms per pair.
    SweepOptions opt;
    opt.pairs_per_group = 1 << 20;
    opt.isos_per_pair = 8;
    int n = 0, controllable = 0;
    for (const auto& t : trellis_sweep(opt)) {
      TrellisGraph g = build_graph(t);
      Prop1Report p = check_prop1(g);
      o.require(p.agree(), "disagreement");
      int walk = oracle::controllability(g, g.num_states() * g.num_states());
      o.require(p.paths.value_or(-1) == walk, "walk oracle");
      ++n;
      if (p.matrix) ++controllable;
    }
    o.require(n > 0, "empty sweep");
    o.note << n << " trellises, " << controllable << " controllable; ";
  });

  run(2, "structure valid iff graph is ell-controllable with matching chain", [](Outcome& o) {
    int n = 0, flips = 0;
    for (const auto& s : sweep()) {
      bool v = verify_shift_structure(s).ok();
      o.require(v && chain_matches_graph(s), "sweep structure");
      std::vector<ShiftStructure> muts;
      if (s.phi.image.size() >= 3) {
        ShiftStructure m = s;
        std::swap(m.phi.image[1], m.phi.image[2]);
        muts.push_back(m);
      }
      if (s.y0 != s.x0()) {
        ShiftStructure m = s;
        m.y0 = s.x0();
        muts.push_back(m);
      }
      for (const auto& m : muts) {
        bool mv = verify_shift_structure(m).ok();
        o.require(mv == chain_matches_graph(m), "mutation equivalence");
        if (!mv) ++flips;
      }
      ++n;
    }
    o.require(flips > 0, "no mutation flipped");
    o.note << n << " structures, " << flips << " mutations flipped; ";
  });

  run(3, "signature identities and signature/cosignature pairing", [](Outcome& o) {
    int pairs = 0;
    for (const auto& s : sweep()) {
      ChainCertificates c = signature_cosignature(s);
      o.require(c.certificates.ok(), "certificates");
      o.require(c.signature.at(1) == intersect(s.x0(), s.y0), "Delta_0");
      for (int j = -1; j < s.ell(); ++j) {
        o.require(c.signature.at(j + 2).size() == intersect(s.x(j + 1), s.y0).size(), "order identity");
        const CosetMap& w = c.pairing.at(j + 1);
        o.require(coset_iso(s.group, c.signature[j + 2], c.signature[j + 1], c.cosignature.at(j + 2),
                            c.cosignature.at(j + 1), w),
                  "pairing witness");
        ++pairs;
      }
    }
    o.note << pairs << " factor pairs; ";
  });

  run(4, "search finds X0 = Z2 x Z2, Y0 = Z4, X0 n Y0 = Z2", [](Outcome& o) {
    const Catalog& cat = default_catalog(64);
    FiniteGroup z2 = cyclic_group(2);
    auto accept = [](const ShiftStructure& s) {
      const FiniteGroup& g = s.group;
      return s.x0().size() == 4 && s.y0.size() == 4 && oracle::max_order(g, s.x0().elems()) == 2 &&
             oracle::max_order(g, s.y0.elems()) == 4 && intersect(s.x0(), s.y0).size() == 2 &&
             signature_cosignature(s).certificates.ok();
    };
    Algorithm1Options aopt;
    aopt.bound = 32;
    LiftOptions lopt;
    lopt.bound = 64;
    std::optional<ShiftStructure> hit;
    for (const auto& c : signature_chains(z2, 32)) {
      for (const auto& f : algorithm1(z2, c, cat, aopt)) {
        ShiftStructure r = shift_group_of(f.witness).structure;
        if (2 * r.group.order() > 64) continue;
        auto lifts = lift_search(r, cat, accept, lopt);
        if (!lifts.empty()) {
          hit = lifts.front();
          break;
        }
      }
      if (hit) break;
    }
    o.require(hit.has_value(), "no structure found");
    if (!hit) return;
    o.require(verify_shift_structure(*hit).ok(), "valid");
    ChainCertificates c = signature_cosignature(*hit);
    for (int j = -1; j < hit->ell(); ++j)
      o.require(coset_iso(hit->group, c.signature[j + 2], c.signature[j + 1], c.cosignature[j + 2],
                          c.cosignature[j + 1], c.pairing[j + 1]),
                "pairing");
    o.note << "|G| = " << hit->group.order() << ", ell = " << hit->ell() << "; ";
  });

  run(5, "Z2 x Z2 gives a complete set of 3 MOLS", [](Outcome& o) {
    FiniteGroup h = elementary_abelian(2, 2);
    FpfPCP m = pcp_from_fpf(h, max_fixed_point_free_set(h));
    o.require(m.mols.size() == 3, "count");
    for (std::size_t i = 0; i < m.mols.size(); ++i) {
      o.require(m.mols[i].size() == 4 && oracle::latin(m.mols[i]), "latin");
      for (std::size_t j = i + 1; j < m.mols.size(); ++j) o.require(oracle::orthogonal(m.mols[i], m.mols[j]), "orthogonal");
    }
    o.note << m.mols.size() << " squares; ";
  });

  run(6, "Latin labelings: abelian X0 = Y0, solvable series, square 0 isotopic", [](Outcome& o) {
    for (const auto& [s, l] : labelings()) {
      const FiniteGroup& g = s->group;
      FiniteGroup x = subgroup_group(g, s->x0()), y = subgroup_group(g, s->y0);
      o.require(isomorphic(x, y), "X0 = Y0");
      o.require(oracle::abelian(g, s->x0().elems()), "abelian");
      o.require(is_solvable(g), "solvable");
      o.require(solvable_series(*s), "series");
      const LatinSquare& sq = l.check.squares.at(0);
      o.require(oracle::latin(sq), "square latin");
      auto iso = isotopism_to_group(sq, x);
      o.require(iso && check_isotopism(sq, group_table(x), *iso), "isotopy");
    }
    o.require(!labelings().empty(), "no labelings");
    o.note << labelings().size() << " labelings; ";
  });

  run(7, "subdirect round trip and state-group synthesis", [](Outcome& o) {
    int n = 0;
    for (const auto& s : sweep()) {
      if (!reduced(s) || s.ell() < 1) continue;
      ++n;
      o.require(roundtrip_check(s), "roundtrip");
      Synthesis h = synthesize_thmy3(state_chains_of(s, gamma_decompose(s)));
      auto f = find_structure_iso(s, h.structure);
      o.require(f && structure_iso_report(s, h.structure, *f).ok(), "state-group synthesis iso");
    }
    o.note << n << " reduced structures; ";
  });

  run(8, "search over Z2 with chain (1,1,Z2) rebuilds the memory-2 register", [](Outcome& o) {
    FiniteGroup z2 = cyclic_group(2);
    std::vector<ElemSet> chain{ElemSet::identity(2), ElemSet::identity(2), ElemSet::all(2)};
    ShiftStructure ref = memory(2);
    bool found = false;
    for (const auto& f : algorithm1(z2, chain, default_catalog(32))) {
      if (f.witness.hu.order() != 4 || oracle::max_order(f.witness.hu, ElemSet::all(4).elems()) != 2) continue;
      StateSynthesis s = shift_group_of(f.witness);
      if (s.structure.group.order() != 8 || s.structure.ell() != 2) continue;
      auto iso = find_structure_iso(ref, s.structure);
      if (iso && structure_iso_report(ref, s.structure, *iso).ok()) found = true;
    }
    o.require(found, "no matching witness");
  });

  run(9, "D8 occurs as a state group", [](Outcome& o) {
    const Catalog& cat = default_catalog(64);
    const FiniteGroup& d8 = cat.get("D8").group;
    Algorithm1Options opt;
    opt.bound = 8;
    int hits = 0;
    for (const auto& e : cat.entries()) {
      if (e.group.order() > 8) continue;
      for (const auto& c : signature_chains(e.group, 8))
        for (const auto& f : algorithm1(e.group, c, cat, opt)) {
          if (!isomorphic(f.witness.hu, d8)) continue;
          o.require(verify_state_group(f.witness).ok(), "witness");
          StateSynthesis s = shift_group_of(f.witness);
          o.require(controllability_index(build_graph_from_structure(s.structure)) == s.structure.ell(),
                    "controllable");
          ++hits;
        }
    }
    o.require(hits > 0, "none found");
    o.note << hits << " witnesses; ";
  });

  run(10, "Latin labelings with |X0| a power of 2 have |G| a power of 2", [](Outcome& o) {
    int n = 0;
    for (const auto& [s, l] : labelings()) {
      if (!oracle::power_of_two(s->x0().size())) continue;
      ++n;
      o.require(oracle::power_of_two(s->group.order()), "counterexample");
      o.require(bit_oriented_check(*s, l).ok(), "check");
    }
    o.require(n > 0, "none");
    o.note << n << " labelings; ";
  });

  std::cout << (failures ? "FAILED " : "ALL PASSED ") << failures << " failing" << std::endl;
  return failures ? 1 : 0;
}
