#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sgf/catalog.hpp"
#include "sgf/group.hpp"
#include "sgf/io.hpp"
#include "sgf/shift.hpp"
#include "sgf/subdirect.hpp"

namespace sgf {

// State group H_U with its refined chain and alpha tower. Indices follow
// the chain: column j of the grid holds H_U^{j,(m)} for m = k_j..ell'.
struct StateGroupWitness {
  int ell = 0;
  int ell_prime = 0;
  FiniteGroup hu;
  std::vector<ElemSet> chain;   // H_U^j, j = -1..ell-1
  std::vector<ElemSet> stars;   // H_U^{j*}, j = -1..ell-2
  std::vector<ElemSet> gammas;  // Gamma_j', j = -1..ell-1
  std::vector<ElemSet> deltas;  // Delta_j', j = -1..ell-1
  std::vector<int> eps;         // j = -1..ell-2
  std::vector<int> k;           // j = -1..ell-1
  std::vector<std::vector<ElemSet>> grid;     // grid[j+1][m-k_j], j = -1..ell-2
  std::vector<std::vector<CosetMap>> alphas;  // alphas[j][m-k_j] = alpha_j^{(m)}, j = 0..ell-2

  const ElemSet& at(int j) const { return chain.at(j + 1); }
  const ElemSet& star(int j) const { return stars.at(j + 1); }
  const ElemSet& gamma(int j) const { return gammas.at(j + 1); }
  const ElemSet& delta(int j) const { return deltas.at(j + 1); }
  const ElemSet& cell(int j, int m) const { return grid.at(j + 1).at(m - kk(j)); }
  const CosetMap& alpha(int j, int m) const { return alphas.at(j).at(m - kk(j)); }
  int e(int j) const { return eps.at(j + 1); }
  int kk(int j) const { return k.at(j + 1); }
  const ElemSet& u0p() const { return chain.at(1); }
  const ElemSet& v0p() const { return gammas.back(); }
};

// Condition-by-condition scorecard; names start with the condition number.
Report verify_state_group(const StateGroupWitness& w);

// Completes chains, Gamma' and the alphas with the backward-recursion grid,
// eps, k, ell' and Delta'. Throws HypothesisViolated on malformed input.
StateGroupWitness complete_witness(const StateChains& c);
StateChains chains_of(const StateGroupWitness& w);

// State group data of a reduced structure.
StateGroupWitness witness_from_structure(const ShiftStructure& s);

struct StateSynthesis {
  ShiftStructure structure;
  Synthesis synthesis;
  Report certificates;
};

// Throws InconsistencyDetected if the state group or chain length is off.
StateSynthesis shift_group_of(const StateGroupWitness& w);

struct StateSignature {
  std::vector<ElemSet> deltas;
  Report certificates;
};

StateSignature state_signature(const StateGroupWitness& w);

struct StateGrid {
  std::vector<std::vector<ElemSet>> grid;
  Report certificates;
};

StateGrid sg_refinement_grid(const StateGroupWitness& w);

struct Algorithm1Options {
  int bound = 64;           // largest candidate order
  long max_nodes = 2000000; // search nodes before BoundExceeded
  int max_results = 0;      // stop after this many distinct witnesses, 0 = all
};

struct Candidate {
  std::string name;
  FiniteGroup group;
};

// Catalog members of the given order and order-n subgroups of members up
// to bound, one per isomorphism class, in catalog order.
std::vector<Candidate> candidate_universe(const Catalog& cat, int order, int bound);

struct FoundStateGroup {
  std::string candidate;
  StateGroupWitness witness;
};

// Throws HypothesisViolated for a malformed Delta' chain, BoundExceeded when
// the search is truncated.
std::vector<FoundStateGroup> algorithm1(const FiniteGroup& u0p, const std::vector<ElemSet>& delta_chain,
                                        const Catalog& cat, const Algorithm1Options& opt = {});

// Delta' chains 1 = Delta_-1' <= ... <= Delta_{l-1}' = U0' of normal subgroups
// with Delta_{l-2}' < U0' and state group order at most bound, shortest first.
std::vector<std::vector<ElemSet>> signature_chains(const FiniteGroup& u0p, int bound);

// Product over j = -1..ell-2 of |U0'|/|Delta_j'|.
long state_group_order(const FiniteGroup& u0p, const std::vector<ElemSet>& delta_chain);

// Lifts of a structure along G -> G/N with |N| = kernel_order, G from the catalog.
struct LiftOptions {
  int kernel_order = 2;
  int bound = 64;
  int isos_per_kernel = 64;
  int max_results = 1;
};

std::vector<ShiftStructure> lift_search(const ShiftStructure& reduced, const Catalog& cat,
                                        const std::function<bool(const ShiftStructure&)>& accept,
                                        const LiftOptions& opt = {});

Json witness_to_json(const StateGroupWitness& w);
StateGroupWitness witness_from_json(const Json& j, const std::filesystem::path& base);

}  // namespace sgf
