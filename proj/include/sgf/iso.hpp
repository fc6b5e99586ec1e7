#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sgf/group.hpp"

namespace sgf {

inline constexpr int kIsoBound = 512;
inline constexpr int kAutBound = 64;

struct IsoOptions {
  // g in first <=> f(g) in second, for every pair.
  std::vector<std::pair<ElemSet, ElemSet>> preserve;
  // Empty, or one entry per element of the domain: -1 free, else the required image.
  std::vector<int> forced;
  // Final filter on complete isomorphisms.
  std::function<bool(const GroupHom&)> accept;
  int bound = kIsoBound;
};

// Visits isomorphisms g -> h in a fixed deterministic order until visit
// returns false. Returns the number visited.
std::size_t for_each_isomorphism(const FiniteGroup& g, const FiniteGroup& h,
                                 const std::function<bool(const GroupHom&)>& visit, const IsoOptions& opt = {});

std::optional<GroupHom> find_isomorphism(const FiniteGroup& g, const FiniteGroup& h, const IsoOptions& opt = {});
bool isomorphic(const FiniteGroup& g, const FiniteGroup& h);

// Isomorphism between two sections, returned as a coset map.
std::optional<CosetMap> find_section_iso(const Section& a, const Section& b);

std::vector<GroupHom> all_automorphisms(const FiniteGroup& g, int bound = kAutBound);

bool is_fixed_point_free_set(const FiniteGroup& g, std::span<const GroupHom> sigma);

// Largest set of automorphisms with pairwise fixed-point-free quotients,
// containing the identity. Exhaustive over all_automorphisms.
std::vector<GroupHom> max_fixed_point_free_set(const FiniteGroup& g, int bound = kAutBound);

}  // namespace sgf
