#include "mcflab/maxflow.hpp"

#include <deque>

namespace mcflab {

MaxFlowResult max_flow(const FlowNetwork& net, NodeId source, NodeId sink) {
  if (source < 0 || source >= net.node_count() || sink < 0 || sink >= net.node_count() ||
      source == sink) {
    throw Error(ErrorCode::InvalidArgument, "bad source/sink for max flow");
  }
  MaxFlowResult out{Rational(0), Flow::zero(net)};
  Flow& f = out.flow;
  const auto n = static_cast<size_t>(net.node_count());
  while (true) {
    const ResidualNetwork r = residual(net, f);
    std::vector<std::vector<int>> out_edges(n);
    for (int i = 0; i < static_cast<int>(r.edges.size()); ++i) {
      out_edges[static_cast<size_t>(r.edges[static_cast<size_t>(i)].tail)].push_back(i);
    }
    std::vector<int> pred(n, -1);
    std::vector<char> seen(n, 0);
    std::deque<NodeId> queue{source};
    seen[static_cast<size_t>(source)] = 1;
    while (!queue.empty() && !seen[static_cast<size_t>(sink)]) {
      const NodeId v = queue.front();
      queue.pop_front();
      for (int i : out_edges[static_cast<size_t>(v)]) {
        const NodeId w = r.edges[static_cast<size_t>(i)].head;
        if (!seen[static_cast<size_t>(w)]) {
          seen[static_cast<size_t>(w)] = 1;
          pred[static_cast<size_t>(w)] = i;
          queue.push_back(w);
        }
      }
    }
    if (!seen[static_cast<size_t>(sink)]) break;

    Capacity bottleneck = Capacity::unbounded();
    for (NodeId v = sink; v != source;) {
      const auto& re = r.edges[static_cast<size_t>(pred[static_cast<size_t>(v)])];
      if (re.capacity < bottleneck) bottleneck = re.capacity;
      v = re.tail;
    }
    if (bottleneck.is_unbounded()) {
      throw Error(ErrorCode::UnboundedCycle, "source-sink path of unbounded capacity");
    }
    const Rational amount = bottleneck.value();
    for (NodeId v = sink; v != source;) {
      const auto& re = r.edges[static_cast<size_t>(pred[static_cast<size_t>(v)])];
      if (re.forward) {
        f[re.origin] += amount;
      } else {
        f[re.origin] -= amount;
      }
      v = re.tail;
    }
    out.value += amount;
  }
  return out;
}

}  // namespace mcflab
