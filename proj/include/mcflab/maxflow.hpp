#pragma once

#include "mcflab/network.hpp"

namespace mcflab {

struct MaxFlowResult {
  Rational value;
  Flow flow;  // per edge of the input network; budgets are ignored
};

/// Exact maximum source-sink flow by shortest augmenting paths. Costs and
/// budgets of `net` are ignored. Throws UnboundedCycle when an all-unbounded
/// source-sink path exists.
MaxFlowResult max_flow(const FlowNetwork& net, NodeId source, NodeId sink);

}  // namespace mcflab
