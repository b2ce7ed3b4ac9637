#pragma once

#include <vector>

#include "mcflab/network.hpp"

namespace mcflab {

struct SspAugmentation {
  std::vector<NodeId> path;  // source ... sink
  Rational path_cost;
  Rational amount;
};

struct SspTrace {
  std::vector<SspAugmentation> augmentations;
  Flow final_flow;
};

struct SspOptions {
  /// Dijkstra on potential-reduced costs instead of label-correcting
  /// Bellman-Ford. Same output.
  bool use_potentials = false;
};

/// Routes `demand` units from `source` to `sink` starting from the zero flow,
/// each time along an exact shortest residual path (lexicographically
/// smallest node sequence among ties), augmenting maximally. Budgets of `net`
/// are ignored. Throws Infeasible if the demand exceeds the max flow and
/// InvalidArgument if the residual network has a negative cycle.
SspTrace ssp_solve(const FlowNetwork& net, NodeId source, NodeId sink, const Rational& demand,
                   const SspOptions& options = {});

/// Budget-driven variant. With exactly one supply and one demand node they
/// act as source and sink; otherwise a super-source (id n) and super-sink
/// (id n+1) are added and reported paths include them.
SspTrace ssp_solve_budgets(const FlowNetwork& net, const SspOptions& options = {});

}  // namespace mcflab
