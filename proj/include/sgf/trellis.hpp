#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sgf/group.hpp"

namespace sgf {

// Edges are the elements of B, states the cosets of B+.
struct TrellisGraph {
  FiniteGroup edges;
  ElemSet bplus;
  ElemSet bminus;
  Section states;  // B/B+
  Section minus;   // B/B-
  GroupHom psi;    // minus.group -> states.group
  std::vector<int> initial;
  std::vector<int> terminal;

  int num_states() const { return states.quotient_order(); }
  int num_edges() const { return edges.order(); }
};

// Raw inputs of a trellis section, as read from JSON or produced by a sweep.
struct TrellisSpec {
  std::string label;
  FiniteGroup group;
  ElemSet bplus;
  ElemSet bminus;
  GroupHom psi;
};

TrellisGraph build_graph(const FiniteGroup& b, const ElemSet& bplus, const ElemSet& bminus, const GroupHom& psi);
TrellisGraph build_graph(const TrellisSpec& spec);

// Boolean adjacency powering; nullopt if no power up to |states|^2 is all-positive.
std::optional<int> controllability_index(const TrellisGraph& g);
// Same quantity by explicit search over exact-length paths from every state.
std::optional<int> controllability_index_by_paths(const TrellisGraph& g);

enum class Direction { Forward, Backward };

struct ReachChain {
  Direction direction = Direction::Forward;
  // B_0, B_1, ... up to the first repeated member.
  std::vector<ElemSet> members;
  // Least j with B_j = B.
  std::optional<int> saturation() const;
};

ReachChain reach_chain(const TrellisGraph& g, Direction dir);

struct Prop1Report {
  std::optional<int> matrix;
  std::optional<int> paths;
  std::optional<int> forward;
  std::optional<int> backward;
  bool agree() const { return matrix == paths && paths == forward && forward == backward; }
};

// Throws InconsistencyDetected when the computations disagree.
Prop1Report check_prop1(const TrellisGraph& g);

bool is_primitive(const TrellisGraph& g, int m);

std::string trellis_to_dot(const TrellisGraph& g);

// Shift register over Z_q with the given memory; memory 0 is the one-state graph.
// Elements are tuples (u, s1, ..., sm) in mixed-radix order with u most significant.
TrellisSpec register_trellis(int q, int memory);

}  // namespace sgf
