#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mcflab/mmcc.hpp"
#include "mcflab/network.hpp"

namespace mcflab {

enum class EdgeState : std::uint8_t { Tree, Lower, Upper };

/// Cost-independent part of a spanning tree structure: the (T, L, U)
/// assignment and the root.
struct TreeBasis {
  std::vector<EdgeState> state;
  NodeId root = 0;

  friend bool operator==(const TreeBasis&, const TreeBasis&) = default;
};

/// Spanning tree structure with node potentials. Potentials satisfy
/// pi(root) = 0 and c(u,v) - pi(u) + pi(v) = 0 on every tree edge.
struct SpanningTreeStructure {
  std::vector<EdgeState> state;
  NodeId root = 0;
  std::vector<Rational> potentials;

  TreeBasis basis() const { return TreeBasis{state, root}; }
};

/// Throws InvalidArgument unless the states cover every edge and the tree
/// edges form an undirected spanning tree.
void check_spanning_tree(const FlowNetwork& net, const TreeBasis& basis);

/// Tree-edge flows from budgets and the L/U boundary flows, by leaf
/// elimination. Conservation holds; capacity bounds on tree edges are not
/// checked.
Flow solve_tree_flow(const FlowNetwork& net, const TreeBasis& basis);

/// As solve_tree_flow, but throws InfeasibleStructure if a tree flow leaves
/// [0, u(e)].
Flow tree_flow(const FlowNetwork& net, const TreeBasis& basis);

std::vector<Rational> compute_potentials(const FlowNetwork& net, const TreeBasis& basis);

SpanningTreeStructure make_structure(const FlowNetwork& net, TreeBasis basis);

Rational reduced_cost(const FlowNetwork& net, const std::vector<Rational>& potentials, EdgeId e);

/// Optimality-violating edge with the largest |reduced cost|, lowest id on
/// ties. Zero-capacity edges never qualify.
std::optional<EdgeId> entering_edge(const FlowNetwork& net, const SpanningTreeStructure& s);

enum class LeavingRule {
  /// Among blocking edges: lowest leaving_rank, then lowest edge id.
  RankThenId,
  /// Last blocking edge met when walking the cycle from its apex in the
  /// augmentation direction.
  StronglyFeasible,
};

enum class PotentialUpdate { Incremental, FullRecompute };

struct PivotOptions {
  LeavingRule leaving_rule = LeavingRule::RankThenId;
  PotentialUpdate potential_update = PotentialUpdate::Incremental;
};

/// One edge of a pivot cycle, oriented along the augmentation.
struct CycleStep {
  EdgeId edge = 0;
  bool forward = true;

  friend bool operator==(const CycleStep&, const CycleStep&) = default;
};

struct PivotResult {
  SpanningTreeStructure structure;
  Flow flow;
  EdgeId leaving = 0;
  Rational delta;
  bool degenerate = false;
  /// Starts with the entering edge, then follows the tree path back.
  std::vector<CycleStep> cycle;
};

PivotResult pivot(const FlowNetwork& net, const SpanningTreeStructure& s, const Flow& flow,
                  EdgeId entering, const PivotOptions& options = {});

struct NsPivot {
  EdgeId entering = 0;
  EdgeId leaving = 0;
  Rational delta;
  bool degenerate = false;
  Rational reduced_cost_of_entering;
  std::vector<CycleStep> cycle;
};

struct NsTrace {
  std::vector<NsPivot> pivots;
  Flow final_flow;
  SpanningTreeStructure final_structure;
  Termination termination = Termination::Optimal;

  std::int64_t degenerate_count() const;
  std::int64_t nondegenerate_count() const;
};

struct NsOptions {
  PivotOptions pivot;
  std::optional<std::int64_t> iteration_cap;  // default: default_iteration_cap(net)
  CapPolicy on_cap = CapPolicy::Throw;
};

NsTrace ns_solve(const FlowNetwork& net, const TreeBasis& initial, const NsOptions& options = {});

/// Turns a feasible flow into a spanning tree structure: cancels cycles of
/// free edges (0 < f < u) in their non-increasing cost direction, then
/// extends the free forest by edges at their bounds. Throws NotConnected for
/// a disconnected network.
struct InitialStructure {
  TreeBasis basis;
  Flow flow;
};

InitialStructure build_initial_structure(const FlowNetwork& net, const Flow& feasible);

}  // namespace mcflab
