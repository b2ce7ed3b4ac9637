#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mcflab/network.hpp"

namespace mcflab {

enum class Termination { Optimal, IterationCapHit };

struct MmccIteration {
  Cycle cycle;
  Rational mu;     // mean cost of the canceled cycle
  Rational delta;  // amount pushed around it
};

struct MmccTrace {
  std::vector<MmccIteration> iterations;
  Flow final_flow;
  Termination termination = Termination::Optimal;
};

enum class CapPolicy { Throw, ReturnPartial };

struct MmccOptions {
  std::optional<std::int64_t> iteration_cap;  // default: default_iteration_cap(net)
  CapPolicy on_cap = CapPolicy::Throw;
};

/// 8nm^2 + nm for the network's node and edge counts.
std::int64_t default_iteration_cap(const FlowNetwork& net);

/// Feasible flow via a super-source/super-sink max-flow. Throws Infeasible
/// when the max flow does not saturate every supply.
Flow initial_feasible_flow(const FlowNetwork& net);

/// Minimum-mean cycle canceling. `start` is used verbatim when given, and
/// otherwise initial_feasible_flow() supplies the starting flow.
MmccTrace mmcc_solve(const FlowNetwork& net, const std::optional<Flow>& start,
                     const MmccOptions& options = {});

/// First iteration t with |mu_{t+window}| > |mu_t| / 2, if any.
std::optional<size_t> find_halving_violation(const MmccTrace& trace, std::int64_t window);

}  // namespace mcflab
