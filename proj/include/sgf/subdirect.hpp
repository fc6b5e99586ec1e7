#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "sgf/group.hpp"
#include "sgf/io.hpp"
#include "sgf/shift.hpp"

namespace sgf {

// Subgroup of left x right given by its pairs. as_group numbers the pairs
// in lexicographic order, so (1,1) is element 0.
struct SubdirectGroup {
  FiniteGroup left;
  FiniteGroup right;
  std::vector<std::pair<int, int>> pairs;
  FiniteGroup as_group;

  int index_of(int a, int b) const;
  ElemSet select(const std::function<bool(int, int)>& pred) const;
  // Pairs whose coordinates lie in the given sets.
  ElemSet box(const ElemSet& l, const ElemSet& r) const;
  ElemSet left_image(const ElemSet& s) const;
  ElemSet right_image(const ElemSet& s) const;

 private:
  std::vector<int> lookup_;
  friend SubdirectGroup make_pair_group(const FiniteGroup&, const FiniteGroup&, std::vector<std::pair<int, int>>);
};

// Throws NotClosed when the pairs are not a subgroup.
SubdirectGroup make_pair_group(const FiniteGroup& left, const FiniteGroup& right,
                               std::vector<std::pair<int, int>> pairs);

// left/left_kernel ~ K ~ right/right_kernel; map goes left quotient -> right quotient.
struct CouplingIso {
  Section left;
  Section right;
  GroupHom map;
  GroupHom left_proj;   // left parent -> K (K = left.group)
  GroupHom right_proj;  // right parent -> K
};

// Coupling of a set of pairs inside left_top x right_top; nullopt with a
// reason when the pairs are not the subdirect product some isomorphism implies.
std::optional<CouplingIso> coupling_of(const FiniteGroup& left, const FiniteGroup& right,
                                       const std::vector<std::pair<int, int>>& pairs, const ElemSet& left_top,
                                       const ElemSet& right_top, std::string* why = nullptr);

// Pairs (a, b) with iso(a X0') = b Y0''. |result| = |left| |Y0''|.
// Throws NotNormal, NotIso.
SubdirectGroup subdirect_from_coupling(const FiniteGroup& left, const FiniteGroup& right, const ElemSet& x0p,
                                       const ElemSet& y0pp, const GroupHom& iso);

// First coordinate G/Y0, second G/X0.
struct GammaDecomposition {
  Section gx;  // G_X = G/Y0
  Section gy;  // G_Y = G/X0
  SubdirectGroup tilde;
  GroupHom gamma;  // G -> tilde.as_group
  CouplingIso coupling;
  ElemSet x0p;                        // X0' in G_X
  ElemSet y0pp;                       // Y0'' in G_Y
  std::vector<ElemSet> gx_chain;      // G_X^j, j = -1..ell
  std::vector<ElemSet> gy_chain;      // G_Y^j, j = 0..ell
  std::vector<ElemSet> gy_star;       // G_Y^{j*}, j = 0..ell-1
  std::vector<ElemSet> lambda;        // Lambda_j'', j = 0..ell
  std::vector<ElemSet> tilde_chain;   // gamma(X_j), j = -1..ell
  ElemSet tilde_y0;
  Report certificates;
};

// Throws NotReduced.
GammaDecomposition gamma_decompose(const ShiftStructure& s);

struct SynthesisInput {
  int ell = 0;
  FiniteGroup hu;
  std::vector<ElemSet> hu_chain;  // H_U^j, j = -1..ell
  FiniteGroup hv;
  std::vector<ElemSet> hv_chain;  // H_V^j, j = 0..ell
  std::vector<ElemSet> hv_star;   // H_V^{j*}, j = 0..ell-1
  std::vector<ElemSet> gamma;     // Gamma_j'', j = 0..ell; the last is V0''
  GroupHom phi;                   // phi_{ell-1}: H_U -> H_V; phi_j are its restrictions
  std::vector<CosetMap> beta;     // beta[j-1] = beta_j : H_U^j/U0' -> H_V^j/Gamma_j'', j = 1..ell
};

struct Synthesis {
  SubdirectGroup h;
  ShiftStructure structure;
  std::vector<ElemSet> u_chain;  // U~_j as pair-group subsets, j = -1..ell
  GroupHom tau;                  // (H~/V~0).group -> H_U
  GroupHom xi;                   // (H~/U~0).group -> H_V
  Report certificates;
};

// Throws HypothesisViolated naming the failed condition, SynthesisInconsistent
// if the built structure does not verify.
Synthesis synthesize_thmy1(const SynthesisInput& inp);
// Every hypothesis as a report entry; synthesize_thmy1 throws on the first failure.
Report check_synthesis_input(const SynthesisInput& inp);

struct Lemma47Input {
  FiniteGroup hu;
  FiniteGroup hv;
  ElemSet u0p;
  ElemSet hu_j, hu_j1;
  ElemSet hv_j, hv_j1;
  ElemSet gamma_j, gamma_j1;
  CosetMap beta_j;   // H_U^j/U0' -> H_V^j/Gamma_j''
  CosetMap beta_j1;  // H_U^{j+1}/U0' -> H_V^{j+1}/Gamma_{j+1}''
};

// Containment of the implied subdirect products, computed directly and by
// the restriction test; InconsistencyDetected if the two disagree.
// Throws HypothesisViolated.
bool check_lemma47(const Lemma47Input& in);

// State-group form of the synthesis data, all inside H_U.
struct StateChains {
  int ell = 0;
  FiniteGroup hu;
  std::vector<ElemSet> chain;   // H_U^j, j = -1..ell-1; the last is H_U
  std::vector<ElemSet> stars;   // H_U^{j*}, j = -1..ell-2
  std::vector<ElemSet> gammas;  // Gamma_j', j = -1..ell-1; the last is V0'
  // alphas[j-1] = alpha_j : H_U^j/U0' -> H_U^{j-1}/Gamma_{j-1}', j = 1..ell-1.
  // alpha_ell is derived from alpha_{ell-1}.
  std::vector<CosetMap> alphas;

  const ElemSet& at(int j) const { return chain.at(j + 1); }
  const ElemSet& star(int j) const { return stars.at(j + 1); }
  const ElemSet& gamma(int j) const { return gammas.at(j + 1); }
  const ElemSet& u0p() const { return chain.at(1); }
};

// The substitution H_V := H_U with phi = identity.
SynthesisInput thmy3_input(const StateChains& c);
Synthesis synthesize_thmy3(const StateChains& c);

// State chains of a reduced structure read off its gamma decomposition,
// transported into G_X by phi^-1.
StateChains state_chains_of(const ShiftStructure& s, const GammaDecomposition& gd);
SynthesisInput synthesis_input_of(const ShiftStructure& s, const GammaDecomposition& gd);

// f: a.group -> b.group carries X_j to U_j, Y0 to V0, and both induced
// squares with the shift isomorphisms commute on every element.
Report structure_iso_report(const ShiftStructure& a, const ShiftStructure& b, const GroupHom& f);
// Tries the hint first, then searches. Throws BoundExceeded past max_visits.
std::optional<GroupHom> find_structure_iso(const ShiftStructure& a, const ShiftStructure& b,
                                           const GroupHom* hint = nullptr, long max_visits = 200000);

struct RoundTrip {
  Report certificates;
  bool ok() const { return certificates.ok(); }
};

Json synthesis_input_to_json(const SynthesisInput& inp);
SynthesisInput synthesis_input_from_json(const Json& j, const std::filesystem::path& base);

// gamma -> synthesize_thmy1 -> flatten -> compare with G, and the same through synthesize_thmy3.
RoundTrip roundtrip(const ShiftStructure& s);
bool roundtrip_check(const ShiftStructure& s);

}  // namespace sgf
