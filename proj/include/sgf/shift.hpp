#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sgf/group.hpp"
#include "sgf/trellis.hpp"

namespace sgf {

// Normal chain X_{-1} = 1 < X_0 < ... < X_ell = G, normal Y0 and an
// isomorphism phi: G/Y0 -> G/X0 with phi(X_j Y0/Y0) = X_{j+1}/X0.
struct ShiftStructure {
  FiniteGroup group;
  std::vector<ElemSet> chain;  // X_{-1} .. X_ell
  ElemSet y0;
  GroupHom phi;  // coset indices of G/Y0 -> coset indices of G/X0

  int ell() const { return static_cast<int>(chain.size()) - 2; }
  const ElemSet& x(int j) const { return chain.at(j + 1); }
  const ElemSet& x0() const { return chain.at(1); }
};

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Report {
  std::vector<Check> checks;

  void add(std::string name, bool pass, std::string detail = {});
  void merge(const Report& other, const std::string& prefix = {});
  bool ok() const;
  const Check* first_failure() const;
  std::string text() const;
};

// Cached quotients and phi-transport helpers for a structure.
class StructureView {
 public:
  explicit StructureView(const ShiftStructure& s);

  const ShiftStructure& s() const { return *s_; }
  const Section& mod_x0() const { return qx_; }
  const Section& mod_y0() const { return qy_; }
  // Least element of phi(g Y0), a coset of X0.
  int phi_rep(int g) const;
  // Union of the X0-cosets phi(a Y0) for a in the set.
  ElemSet phi_image(const ElemSet& a) const;
  // {x in within : phi(x Y0) is contained in cell}, cell a union of X0-cosets.
  ElemSet pull_back(const ElemSet& cell, const ElemSet& within) const;

 private:
  const ShiftStructure* s_;
  Section qx_;
  Section qy_;
};

Report verify_shift_structure(const ShiftStructure& s);
// Throws InvalidStructure (NonMinimalEll for a non-minimal chain).
void require_valid(const ShiftStructure& s);

// Chain generated from X0 by X_{j+1} = phi(X_j Y0/Y0) pulled back to G;
// nullopt if it stalls below G or the data is not well formed.
std::optional<ShiftStructure> structure_from_data(const FiniteGroup& g, const ElemSet& x0, const ElemSet& y0,
                                                  const GroupHom& phi);

ShiftStructure derive_from_graph(const TrellisGraph& g);
TrellisGraph build_graph_from_structure(const ShiftStructure& s);

struct StarGroup {
  ElemSet via_pullback;  // elements of X_{j+1} whose Y0-coset meets X_j Y0
  ElemSet via_product;   // X_j (X_{j+1} n Y0)
  Report certificates;
};

StarGroup star_group(const ShiftStructure& s, int j);

// Columns j = -1..ell; column j holds cells m = i_j .. ell'.
struct RefinementGrid {
  int ell = 0;
  int ell_prime = 0;
  std::vector<int> eps;  // eps[j+1] for j = -1..ell-1
  std::vector<int> idx;  // idx[j+1] = i_j for j = -1..ell
  std::vector<std::vector<ElemSet>> cells;

  const ElemSet& at(int j, int m) const { return cells.at(j + 1).at(m - idx.at(j + 1)); }
  int i(int j) const { return idx.at(j + 1); }
  int e(int j) const { return eps.at(j + 1); }
};

struct GridResult {
  RefinementGrid grid;
  Report certificates;
};

GridResult refinement_grid(const ShiftStructure& s);

struct ChainCertificates {
  std::vector<ElemSet> signature;    // Delta_{-1} .. Delta_ell
  std::vector<ElemSet> cosignature;  // X_j n Y0 for j = -1..ell
  std::vector<ElemSet> stars;        // X_j* for j = -1..ell-1
  // Witness isomorphisms Delta_{j+1}/Delta_j -> (X_{j+1} n Y0)/(X_j n Y0).
  std::vector<CosetMap> pairing;
  Report certificates;
};

ChainCertificates signature_cosignature(const ShiftStructure& s);

struct CompositionRefinement {
  int kappa = 0;
  std::vector<int> delta;  // delta[j+1]
  std::vector<int> r;      // r[j+1] for j = -1..ell
  std::vector<std::vector<ElemSet>> cells;  // column j cells m = r_j..kappa
  std::vector<ElemSet> series;              // flattened composition series of G
  Report certificates;
};

// base[j] is a composition chain from X_j up to X_j*, keyed by j for each
// gap with X_j* != X_j. Missing gaps get a computed default.
CompositionRefinement composition_refinement(const ShiftStructure& s,
                                             const std::map<int, std::vector<ElemSet>>& base = {});
// Composition chain from bottom up to top, both normal in G.
std::vector<ElemSet> default_composition_chain(const FiniteGroup& g, const ElemSet& bottom, const ElemSet& top);

Report solvability_report(const ShiftStructure& s);

// Quotient by X0 n Y0, which is reduced.
ShiftStructure reduce_structure(const ShiftStructure& s);
// Pull a structure on H back along an onto homomorphism f: G -> H.
ShiftStructure lift_structure(const ShiftStructure& h, const FiniteGroup& g, const GroupHom& f);

}  // namespace sgf
