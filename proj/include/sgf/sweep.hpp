#pragma once

#include <vector>

#include "sgf/catalog.hpp"
#include "sgf/shift.hpp"
#include "sgf/trellis.hpp"

namespace sgf {

struct SweepOptions {
  int max_order = 32;
  // Isomorphisms B/B- -> B/B+ tried per normal pair, in search order.
  int isos_per_pair = 2;
  // Normal pairs tried per group, in (order, lexicographic) order.
  int pairs_per_group = 400;
  bool include_registers = true;
};

// Deterministic list of trellis sections: shift registers, then every
// catalog group with normal pairs of equal order and isomorphic quotients.
std::vector<TrellisSpec> trellis_sweep(const SweepOptions& opt = {});

// The strongly controllable members of the sweep as shift structures.
std::vector<ShiftStructure> structure_sweep(const SweepOptions& opt = {});

}  // namespace sgf
