#include "mcflab/ssp.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <queue>

namespace mcflab {

namespace {

using Distances = std::vector<std::optional<Rational>>;

Distances bellman_ford(const ResidualNetwork& r, NodeId source) {
  const auto n = static_cast<size_t>(r.node_count);
  Distances dist(n);
  dist[static_cast<size_t>(source)] = Rational(0);
  for (size_t round = 0; round < n; ++round) {
    bool changed = false;
    for (const auto& re : r.edges) {
      const auto& from = dist[static_cast<size_t>(re.tail)];
      if (!from) continue;
      Rational candidate = *from + re.cost;
      auto& to = dist[static_cast<size_t>(re.head)];
      if (!to || candidate < *to) {
        to = std::move(candidate);
        changed = true;
      }
    }
    if (!changed) return dist;
  }
  throw Error(ErrorCode::InvalidArgument, "negative cycle reachable from the source");
}

// Dijkstra on c(u,v) + pi(u) - pi(v) >= 0; returns true distances.
Distances dijkstra(const ResidualNetwork& r, NodeId source, const std::vector<Rational>& pi) {
  const auto n = static_cast<size_t>(r.node_count);
  std::vector<std::vector<int>> out(n);
  for (int i = 0; i < static_cast<int>(r.edges.size()); ++i) {
    out[static_cast<size_t>(r.edges[static_cast<size_t>(i)].tail)].push_back(i);
  }
  Distances reduced(n);
  std::vector<char> done(n, 0);
  using Entry = std::pair<Rational, NodeId>;
  auto later = [](const Entry& a, const Entry& b) {
    return a.first > b.first || (a.first == b.first && a.second > b.second);
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(later)> heap(later);
  reduced[static_cast<size_t>(source)] = Rational(0);
  heap.emplace(Rational(0), source);
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (done[static_cast<size_t>(v)]) continue;
    done[static_cast<size_t>(v)] = 1;
    for (int i : out[static_cast<size_t>(v)]) {
      const auto& re = r.edges[static_cast<size_t>(i)];
      Rational rc = re.cost + pi[static_cast<size_t>(re.tail)] - pi[static_cast<size_t>(re.head)];
      if (rc < 0) throw Error(ErrorCode::InvalidArgument, "negative reduced cost in Dijkstra");
      Rational candidate = d + rc;
      auto& slot = reduced[static_cast<size_t>(re.head)];
      if (!slot || candidate < *slot) {
        slot = candidate;
        heap.emplace(std::move(candidate), re.head);
      }
    }
  }
  Distances dist(n);
  for (size_t v = 0; v < n; ++v) {
    if (reduced[v]) dist[v] = *reduced[v] - pi[static_cast<size_t>(source)] + pi[v];
  }
  return dist;
}

// Lexicographically smallest node sequence among shortest source-sink paths:
// DFS over tight edges, smallest head first.
std::vector<int> smallest_tight_path(const ResidualNetwork& r, const Distances& dist,
                                     NodeId source, NodeId sink) {
  const auto n = static_cast<size_t>(r.node_count);
  std::vector<std::vector<int>> tight(n);
  for (int i = 0; i < static_cast<int>(r.edges.size()); ++i) {
    const auto& re = r.edges[static_cast<size_t>(i)];
    const auto& du = dist[static_cast<size_t>(re.tail)];
    const auto& dv = dist[static_cast<size_t>(re.head)];
    if (du && dv && *du + re.cost == *dv) tight[static_cast<size_t>(re.tail)].push_back(i);
  }
  for (auto& list : tight) {
    std::sort(list.begin(), list.end(), [&](int a, int b) {
      return r.edges[static_cast<size_t>(a)].head < r.edges[static_cast<size_t>(b)].head;
    });
  }
  std::vector<char> on_path(n, 0);
  std::vector<char> dead(n, 0);
  std::vector<int> path;
  std::function<bool(NodeId)> dfs = [&](NodeId v) {
    if (v == sink) return true;
    on_path[static_cast<size_t>(v)] = 1;
    for (int i : tight[static_cast<size_t>(v)]) {
      const NodeId w = r.edges[static_cast<size_t>(i)].head;
      if (on_path[static_cast<size_t>(w)] || dead[static_cast<size_t>(w)]) continue;
      path.push_back(i);
      if (dfs(w)) return true;
      path.pop_back();
    }
    on_path[static_cast<size_t>(v)] = 0;
    dead[static_cast<size_t>(v)] = 1;
    return false;
  };
  if (!dfs(source)) throw Error(ErrorCode::InvalidArgument, "no tight source-sink path");
  return path;
}

}  // namespace

SspTrace ssp_solve(const FlowNetwork& net, NodeId source, NodeId sink, const Rational& demand,
                   const SspOptions& options) {
  if (source < 0 || source >= net.node_count() || sink < 0 || sink >= net.node_count() ||
      source == sink) {
    throw Error(ErrorCode::InvalidArgument, "bad source/sink");
  }
  if (demand < 0) throw Error(ErrorCode::InvalidArgument, "negative demand");
  SspTrace trace;
  trace.final_flow = Flow::zero(net);
  Rational remaining = demand;
  std::vector<Rational> pi;
  while (remaining > 0) {
    const ResidualNetwork r = residual(net, trace.final_flow);
    Distances dist;
    if (options.use_potentials && !pi.empty()) {
      dist = dijkstra(r, source, pi);
    } else {
      dist = bellman_ford(r, source);
    }
    if (!dist[static_cast<size_t>(sink)]) {
      throw Error(ErrorCode::Infeasible, "demand exceeds the maximum flow; " +
                                             to_string(remaining) + " units unrouted");
    }
    if (options.use_potentials) {
      // Unreachable nodes stay unreachable, so their potentials never matter.
      pi.assign(static_cast<size_t>(net.node_count()), Rational(0));
      for (size_t v = 0; v < pi.size(); ++v) {
        if (dist[v]) pi[v] = *dist[v];
      }
    }
    const std::vector<int> path = smallest_tight_path(r, dist, source, sink);
    Capacity bottleneck = Capacity(remaining);
    SspAugmentation aug;
    aug.path.push_back(source);
    for (int i : path) {
      const auto& re = r.edges[static_cast<size_t>(i)];
      if (re.capacity < bottleneck) bottleneck = re.capacity;
      aug.path.push_back(re.head);
    }
    aug.amount = bottleneck.value();
    aug.path_cost = *dist[static_cast<size_t>(sink)];
    for (int i : path) {
      const auto& re = r.edges[static_cast<size_t>(i)];
      if (re.forward) {
        trace.final_flow[re.origin] += aug.amount;
      } else {
        trace.final_flow[re.origin] -= aug.amount;
      }
    }
    remaining -= aug.amount;
    trace.augmentations.push_back(std::move(aug));
  }
  return trace;
}

SspTrace ssp_solve_budgets(const FlowNetwork& net, const SspOptions& options) {
  std::vector<NodeId> sources;
  std::vector<NodeId> sinks;
  Rational supply;
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (net.budget(v) > 0) {
      sources.push_back(v);
      supply += net.budget(v);
    } else if (net.budget(v) < 0) {
      sinks.push_back(v);
    }
  }
  if (sources.empty()) return SspTrace{{}, Flow::zero(net)};
  if (sources.size() == 1 && sinks.size() == 1) {
    return ssp_solve(net, sources[0], sinks[0], supply, options);
  }
  const int n = net.node_count();
  FlowNetwork extended(n + 2);
  for (const auto& e : net.edges()) {
    extended.add_edge(e.tail, e.head, e.capacity, e.cost, e.leaving_rank);
  }
  for (NodeId v : sources) extended.add_edge(n, v, Capacity(net.budget(v)), Rational(0));
  for (NodeId v : sinks) extended.add_edge(v, n + 1, Capacity(Rational(-net.budget(v))), Rational(0));
  SspTrace trace = ssp_solve(extended, n, n + 1, supply, options);
  trace.final_flow.values.resize(static_cast<size_t>(net.edge_count()));
  return trace;
}

}  // namespace mcflab
