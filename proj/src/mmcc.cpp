#include "mcflab/mmcc.hpp"

#include "mcflab/maxflow.hpp"
#include "mcflab/mincycle.hpp"

namespace mcflab {

std::int64_t default_iteration_cap(const FlowNetwork& net) {
  const std::int64_t n = net.node_count();
  const std::int64_t m = net.edge_count();
  return 8 * n * m * m + n * m;
}

Flow initial_feasible_flow(const FlowNetwork& net) {
  const int n = net.node_count();
  FlowNetwork extended(n + 2);
  const NodeId super_source = n;
  const NodeId super_sink = n + 1;
  for (const auto& e : net.edges()) extended.add_edge(e.tail, e.head, e.capacity, e.cost);
  Rational supply;
  for (NodeId v = 0; v < n; ++v) {
    const Rational& b = net.budget(v);
    if (b > 0) {
      extended.add_edge(super_source, v, Capacity(b), Rational(0));
      supply += b;
    } else if (b < 0) {
      extended.add_edge(v, super_sink, Capacity(Rational(-b)), Rational(0));
    }
  }
  Flow f = Flow::zero(net);
  if (supply == 0) return f;
  const MaxFlowResult mf = max_flow(extended, super_source, super_sink);
  if (mf.value != supply) {
    throw Error(ErrorCode::Infeasible, "max flow " + to_string(mf.value) +
                                           " cannot meet total supply " + to_string(supply));
  }
  for (EdgeId e = 0; e < net.edge_count(); ++e) f[e] = mf.flow[e];
  return f;
}

MmccTrace mmcc_solve(const FlowNetwork& net, const std::optional<Flow>& start,
                     const MmccOptions& options) {
  MmccTrace trace;
  trace.final_flow = start ? *start : initial_feasible_flow(net);
  if (auto bad = check_feasible(net, trace.final_flow)) {
    throw Error(ErrorCode::Infeasible, "starting flow infeasible: " + bad->message);
  }
  const std::int64_t cap = options.iteration_cap.value_or(default_iteration_cap(net));
  while (true) {
    const ResidualNetwork r = residual(net, trace.final_flow);
    std::optional<Cycle> cycle = karp_min_mean(r);
    if (!cycle || cycle->mean_cost >= 0) break;
    if (static_cast<std::int64_t>(trace.iterations.size()) >= cap) {
      if (options.on_cap == CapPolicy::Throw) {
        throw Error(ErrorCode::IterationCapExceeded,
                    "MMCC exceeded " + std::to_string(cap) + " iterations");
      }
      trace.termination = Termination::IterationCapHit;
      return trace;
    }
    Rational delta = augment_cycle_in_place(net, trace.final_flow, *cycle);
    Rational mu = cycle->mean_cost;
    trace.iterations.push_back(MmccIteration{std::move(*cycle), std::move(mu), std::move(delta)});
  }
  trace.termination = Termination::Optimal;
  return trace;
}

std::optional<size_t> find_halving_violation(const MmccTrace& trace, std::int64_t window) {
  const auto& it = trace.iterations;
  if (window <= 0) return std::nullopt;
  const auto w = static_cast<size_t>(window);
  for (size_t t = 0; t + w < it.size(); ++t) {
    if (2 * abs(it[t + w].mu) > abs(it[t].mu)) return t;
  }
  return std::nullopt;
}

}  // namespace mcflab
