#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sgf/group.hpp"
#include "sgf/shift.hpp"

namespace sgf {

// t x t array of letters; square[r][c].
using LatinSquare = std::vector<std::vector<int>>;

bool is_latin_square(const LatinSquare& sq);
// Every ordered letter pair occurs exactly once when a is laid over b.
bool are_orthogonal(const LatinSquare& a, const LatinSquare& b);
// Cayley table of g, rows and columns in element order.
LatinSquare group_table(const FiniteGroup& g);

// Row, column and letter bijections with b[rows[r]][cols[c]] = letters[a[r][c]].
struct Isotopism {
  std::vector<int> rows;
  std::vector<int> cols;
  std::vector<int> letters;
};

bool check_isotopism(const LatinSquare& a, const LatinSquare& b, const Isotopism& f);
// Exhaustive over row and column permutations; letters follow. Only for t <= 4.
std::optional<Isotopism> find_isotopism_exhaustive(const LatinSquare& a, const LatinSquare& b);
// Isotopism onto the table of h through the principal loop isotope of sq,
// which must be a group isomorphic to h.
std::optional<Isotopism> isotopism_to_group(const LatinSquare& sq, const FiniteGroup& h);

// Squares are the cosets of X0Y0; rows the X0-cosets and columns the
// Y0-cosets inside each square, both in least-element order.
struct SquareDecomposition {
  int t = 0;
  ElemSet x0y0;
  Section squares;  // G/X0Y0
  Section rows;     // G/X0
  Section cols;     // G/Y0
  // cell[k][r][c] is the element at row r, column c of square k.
  std::vector<std::vector<std::vector<int>>> cell;
  // Per element: square, row and column position.
  std::vector<int> square_of, row_of, col_of;
  Report certificates;
};

// Throws NotReduced when X0 n Y0 is not trivial.
SquareDecomposition decompose_squares(const ShiftStructure& s);

struct LabelingCheck {
  bool latin = false;
  ElemSet a0;                   // omega(X0Y0)
  std::vector<int> clique;      // per square, cliques numbered by first appearance
  std::vector<LatinSquare> squares;  // labels per square
  Report certificates;
};

// omega: G -> a. Throws NotHomomorphism.
LabelingCheck is_latin_labeling(const SquareDecomposition& d, const FiniteGroup& g, const FiniteGroup& a,
                                const GroupHom& omega);
LabelingCheck is_latin_labeling(const ShiftStructure& s, const FiniteGroup& a, const GroupHom& omega);

// letter(h1, h2) = h1 * theta(h2). Throws NotAbelian, NotAutomorphism.
LatinSquare mann_square(const FiniteGroup& h, const GroupHom& theta);

struct PCP {
  FiniteGroup ambient;
  std::vector<ElemSet> components;
  int t = 0;
  int s = 0;
  Report certificates;  // Sprague clauses
};

// Throws NotASubgroup, ComponentsOverlap, ProductNotFull.
PCP pcp_verify(const FiniteGroup& q, const std::vector<ElemSet>& components);

struct FpfPCP {
  PCP pcp;  // on h x h, components H x 1, 1 x H, then one per automorphism
  std::vector<LatinSquare> mols;
  Report certificates;
};

// Throws NotFPF.
FpfPCP pcp_from_fpf(const FiniteGroup& h, std::span<const GroupHom> sigma);

// Diagonal {x * mu(theta(x))} of X0Y0. mu maps X0 into Y0 and theta maps X0
// to itself, both given on elements of G (other entries ignored).
// Throws NotReduced, NotIso, NotAutomorphism, PCPFails.
ElemSet k_a_subgroup(const ShiftStructure& s, const GroupHom& mu, const GroupHom& theta);

struct LatinLabeling {
  ElemSet kernel;      // G_a
  Section labels;      // G / G_a, the label group A
  GroupHom omega;      // G -> labels.group
  ElemSet k_a;         // kernel n X0Y0
  ElemSet g0;          // omega^-1(A0)
  ElemSet g_v;         // one same-label line per square
  LabelingCheck check;
  Report certificates;
};

// Largest kernel first, then lexicographic. nullopt when no kernel works.
std::optional<LatinLabeling> search_latin_labeling(const ShiftStructure& s);
// Certificates for a given kernel; latin flag in check.
LatinLabeling labeling_from_kernel(const ShiftStructure& s, const ElemSet& kernel);

// |G| = |X0| prod_j |X0|/|Delta_j| and that it is a power of 2.
Report bit_oriented_check(const ShiftStructure& s, const LatinLabeling& l);

}  // namespace sgf
