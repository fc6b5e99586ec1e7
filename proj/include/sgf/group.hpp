#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sgf {

enum class ErrorKind {
  NotClosed,
  NoIdentityAtZero,
  NotAssociative,
  NoInverse,
  ElementOutOfRange,
  NotASubgroup,
  NotNormal,
  ParentMismatch,
  NotOnto,
  OrderBoundExceeded,
  NotAutomorphism,
  HypothesisViolated,
  NotIso,
  QuotientMismatch,
  NotControllable,
  InvalidStructure,
  InconsistencyDetected,
  NonMinimalEll,
  NotCompositionChain,
  NotReduced,
  NotHomomorphism,
  NotAbelian,
  ComponentsOverlap,
  ProductNotFull,
  NotFPF,
  PCPFails,
  SynthesisInconsistent,
  BoundExceeded,
  NotFound,
  Io,
  Schema,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Multiplication table with the identity at index 0.
class FiniteGroup {
 public:
  FiniteGroup();

  // No validation; callers guarantee a group table with identity 0.
  static FiniteGroup from_trusted(int n, std::vector<int> flat, std::vector<std::string> names = {});

  int order() const noexcept { return n_; }
  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
  int inv(int a) const { return inv_[a]; }
  int elem_order(int a) const { return ord_[a]; }
  bool is_abelian() const noexcept { return abelian_; }
  std::span<const int> row(int a) const {
    return {table_.data() + static_cast<std::size_t>(a) * n_, static_cast<std::size_t>(n_)};
  }
  std::string name(int a) const;
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::vector<std::vector<int>> table() const;
  const std::vector<int>& flat() const noexcept { return table_; }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.table_ == b.table_; }

 private:
  int n_ = 1;
  std::vector<int> table_{0};
  std::vector<int> inv_{0};
  std::vector<int> ord_{1};
  std::vector<std::string> names_;
  bool abelian_ = true;
};

// Checks closure, identity at 0, associativity and inverses.
FiniteGroup validate_group(const std::vector<std::vector<int>>& table, std::vector<std::string> names = {});

// Sorted set of elements of a group of order universe().
class ElemSet {
 public:
  ElemSet() = default;
  ElemSet(int universe, std::vector<int> elems);

  static ElemSet all(int n);
  static ElemSet identity(int n);

  int universe() const noexcept { return static_cast<int>(mask_.size()); }
  int size() const noexcept { return static_cast<int>(elems_.size()); }
  bool empty() const noexcept { return elems_.empty(); }
  bool contains(int a) const { return a >= 0 && a < universe() && mask_[a]; }
  const std::vector<int>& elems() const noexcept { return elems_; }
  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }
  bool subset_of(const ElemSet& other) const;
  bool is_full() const noexcept { return size() == universe(); }
  bool is_trivial() const noexcept { return size() == 1; }

  friend bool operator==(const ElemSet& a, const ElemSet& b) { return a.elems_ == b.elems_ && a.mask_.size() == b.mask_.size(); }
  friend bool operator<(const ElemSet& a, const ElemSet& b) { return a.elems_ < b.elems_; }

 private:
  std::vector<int> elems_;
  std::vector<char> mask_;
};

ElemSet intersect(const ElemSet& a, const ElemSet& b);
ElemSet product_set(const FiniteGroup& g, const ElemSet& a, const ElemSet& b);

ElemSet subgroup_generated(const FiniteGroup& g, std::span<const int> gens);
ElemSet subgroup_generated(const FiniteGroup& g, const ElemSet& a, const ElemSet& b);
bool is_subgroup(const FiniteGroup& g, const ElemSet& s);
// Throws NotASubgroup if h is not a subgroup.
bool is_normal(const FiniteGroup& g, const ElemSet& h);
// n normal in the subgroup t (both subgroups of g).
bool is_normal_in(const FiniteGroup& g, const ElemSet& n, const ElemSet& t);
void require_subgroup(const FiniteGroup& g, const ElemSet& s, const char* what);
void require_normal(const FiniteGroup& g, const ElemSet& n, const char* what);

// Smallest normal subgroup of t containing s.
ElemSet normal_closure(const FiniteGroup& g, const ElemSet& s, const ElemSet& t);
// All normal subgroups of g, sorted by order then lexicographically.
std::vector<ElemSet> normal_subgroups(const FiniteGroup& g);
// Normal subgroups n of t with a <= n <= t.
std::vector<ElemSet> normal_subgroups_between(const FiniteGroup& g, const ElemSet& a, const ElemSet& t);

ElemSet commutator_subgroup(const FiniteGroup& g, const ElemSet& s);
std::vector<ElemSet> derived_series(const FiniteGroup& g, const ElemSet& s);
bool is_solvable(const FiniteGroup& g);
bool is_solvable(const FiniteGroup& g, const ElemSet& s);
bool is_simple(const FiniteGroup& g);

// top / kernel for kernel normal in top. Cosets are ordered by least element,
// so the kernel itself is coset 0.
struct Section {
  ElemSet top;
  ElemSet kernel;
  std::vector<std::vector<int>> cosets;
  std::vector<int> index;  // per element of the parent, -1 outside top
  FiniteGroup group;

  int rep(int c) const { return cosets[c][0]; }
  int rep_of(int a) const { return cosets[index[a]][0]; }
  int quotient_order() const { return static_cast<int>(cosets.size()); }
};

Section section(const FiniteGroup& g, const ElemSet& top, const ElemSet& kernel);
Section quotient(const FiniteGroup& g, const ElemSet& n);
// Elements of the parent whose cosets lie in the given set of coset indices.
ElemSet coset_preimage(const Section& s, std::span<const int> coset_ids);
ElemSet coset_preimage(const Section& s, const ElemSet& quotient_subset);
// Coset indices hit by a subset of the parent.
ElemSet coset_image(const Section& s, const ElemSet& subset);

// Element map; image[a] is the image of a.
struct GroupHom {
  std::vector<int> image;
  int operator()(int a) const { return image[a]; }
  friend bool operator==(const GroupHom&, const GroupHom&) = default;
};

bool is_homomorphism(const FiniteGroup& g, const FiniteGroup& h, const GroupHom& f);
bool is_isomorphism(const FiniteGroup& g, const FiniteGroup& h, const GroupHom& f);
GroupHom compose(const GroupHom& outer, const GroupHom& inner);
GroupHom inverse(const GroupHom& f);
GroupHom identity_hom(int n);
ElemSet image_of(const GroupHom& f, const ElemSet& s, int codomain_order);
ElemSet preimage_of(const GroupHom& f, const ElemSet& s);

// Map from a section of one group onto a section of another, stored per
// element of the first parent as the least element of the image coset.
struct CosetMap {
  std::vector<int> image;
  friend bool operator==(const CosetMap&, const CosetMap&) = default;
};

// Quotient-level homomorphism a.group -> b.group from a coset map.
GroupHom to_quotient_hom(const Section& a, const Section& b, const CosetMap& m);
CosetMap from_quotient_hom(const Section& a, const Section& b, const GroupHom& f);
// Empty string if m is a well defined isomorphism a.top/a.kernel -> b.top/b.kernel.
std::string check_coset_iso(const Section& a, const Section& b, const CosetMap& m);

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

// A subgroup as a group of its own; local element k is s.elems()[k].
FiniteGroup subgroup_group(const FiniteGroup& g, const ElemSet& s);
// Local index of a parent element of s, -1 if absent.
int local_index(const ElemSet& s, int a);

// Preimage under f; with require_onto the index identity
// |dom|/|pre| = |cod|/|h| is checked and NotOnto thrown on failure.
ElemSet preimage_subgroup(const FiniteGroup& dom, const FiniteGroup& cod, const GroupHom& f, const ElemSet& h,
                          bool require_onto = false);

// qQ' -> qR' for Q' <= Q <= R, Q' <= R' <= R with R' n Q = Q', R = QR'.
struct InducedCosetIso {
  Section low;     // Q/Q'
  Section high;    // R/R'
  GroupHom map;    // low.group -> high.group
  Section top;     // R/Q
  Section side;    // R'/Q'
  GroupHom top_map;  // side.group -> top.group, r'Q' -> r'Q
  Section whole;   // R/Q'
  FiniteGroup split;  // low.group x side.group
  GroupHom split_map;  // whole.group -> split
};

InducedCosetIso induced_coset_iso(const FiniteGroup& g, const ElemSet& q_low, const ElemSet& q, const ElemSet& r_low,
                                  const ElemSet& r);

std::vector<int> order_profile(const FiniteGroup& g);

}  // namespace sgf
