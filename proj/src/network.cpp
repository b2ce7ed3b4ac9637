#include "mcflab/network.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

namespace mcflab {

FlowNetwork::FlowNetwork(int node_count) {
  if (node_count < 0) throw Error(ErrorCode::InvalidArgument, "negative node count");
  budgets_.resize(static_cast<size_t>(node_count));
}

EdgeId FlowNetwork::add_edge(NodeId tail, NodeId head, Capacity capacity, Rational cost,
                             int leaving_rank) {
  if (tail < 0 || tail >= node_count() || head < 0 || head >= node_count()) {
    throw Error(ErrorCode::InvalidArgument, "edge endpoint out of range");
  }
  edges_.push_back(Edge{tail, head, std::move(capacity), std::move(cost), leaving_rank});
  return edge_count() - 1;
}

void FlowNetwork::set_budget(NodeId v, Rational budget) {
  budgets_.at(static_cast<size_t>(v)) = std::move(budget);
}

void FlowNetwork::set_cost(EdgeId e, Rational cost) {
  edges_.at(static_cast<size_t>(e)).cost = std::move(cost);
}

std::optional<EdgeId> FlowNetwork::find_edge(NodeId tail, NodeId head) const {
  for (EdgeId e = 0; e < edge_count(); ++e) {
    if (edges_[static_cast<size_t>(e)].tail == tail && edges_[static_cast<size_t>(e)].head == head) {
      return e;
    }
  }
  return std::nullopt;
}

std::vector<NodeId> Cycle::nodes() const {
  std::vector<NodeId> out;
  out.reserve(edges.size());
  for (const auto& re : edges) out.push_back(re.tail);
  return out;
}

Cycle make_cycle(std::vector<ResidualEdge> edges) {
  if (edges.empty()) throw Error(ErrorCode::EmptyCycle, "cycle has no edges");
  std::set<NodeId> seen;
  Cycle c;
  for (size_t i = 0; i < edges.size(); ++i) {
    const auto& next = edges[(i + 1) % edges.size()];
    if (edges[i].head != next.tail) {
      throw Error(ErrorCode::InvalidArgument, "cycle edges do not form a closed walk");
    }
    if (!seen.insert(edges[i].tail).second) {
      throw Error(ErrorCode::InvalidArgument, "cycle repeats a node");
    }
    c.total_cost += edges[i].cost;
  }
  c.mean_cost = c.total_cost / Rational(static_cast<long>(edges.size()));
  c.edges = std::move(edges);
  return c;
}

const char* violation_name(NetworkViolationKind kind) {
  switch (kind) {
    case NetworkViolationKind::SelfLoop: return "SelfLoop";
    case NetworkViolationKind::DuplicateEdge: return "DuplicateEdge";
    case NetworkViolationKind::AntiparallelPair: return "AntiparallelPair";
    case NetworkViolationKind::NegativeCapacity: return "NegativeCapacity";
    case NetworkViolationKind::BudgetImbalance: return "BudgetImbalance";
    case NetworkViolationKind::NodeOutOfRange: return "NodeOutOfRange";
  }
  return "Unknown";
}

std::optional<NetworkViolation> validate_network(const FlowNetwork& net) {
  std::set<std::pair<NodeId, NodeId>> pairs;
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    const Edge& edge = net.edge(e);
    auto report = [&](NetworkViolationKind kind, const char* what) {
      std::ostringstream os;
      os << what << " at edge " << e << " (" << edge.tail << "->" << edge.head << ")";
      return NetworkViolation{kind, e, os.str()};
    };
    if (edge.tail < 0 || edge.tail >= net.node_count() || edge.head < 0 ||
        edge.head >= net.node_count()) {
      return report(NetworkViolationKind::NodeOutOfRange, "endpoint out of range");
    }
    if (edge.tail == edge.head) return report(NetworkViolationKind::SelfLoop, "self-loop");
    if (edge.capacity.is_finite() && edge.capacity.value() < 0) {
      return report(NetworkViolationKind::NegativeCapacity, "negative capacity");
    }
    if (pairs.contains({edge.tail, edge.head})) {
      return report(NetworkViolationKind::DuplicateEdge, "duplicate edge");
    }
    if (pairs.contains({edge.head, edge.tail})) {
      return report(NetworkViolationKind::AntiparallelPair, "antiparallel pair");
    }
    pairs.insert({edge.tail, edge.head});
  }
  Rational total;
  for (const auto& b : net.budgets()) total += b;
  if (total != 0) {
    return NetworkViolation{NetworkViolationKind::BudgetImbalance, -1,
                            "budgets sum to " + to_string(total)};
  }
  return std::nullopt;
}

bool is_weakly_connected(const FlowNetwork& net) {
  const int n = net.node_count();
  if (n <= 1) return true;
  std::vector<std::vector<NodeId>> adj(static_cast<size_t>(n));
  for (const auto& e : net.edges()) {
    adj[static_cast<size_t>(e.tail)].push_back(e.head);
    adj[static_cast<size_t>(e.head)].push_back(e.tail);
  }
  std::vector<char> seen(static_cast<size_t>(n), 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    for (NodeId w : adj[static_cast<size_t>(v)]) {
      if (!seen[static_cast<size_t>(w)]) {
        seen[static_cast<size_t>(w)] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == n;
}

namespace {

void require_sized(const FlowNetwork& net, const Flow& f) {
  if (static_cast<int>(f.size()) != net.edge_count()) {
    throw Error(ErrorCode::InvalidArgument, "flow size does not match edge count");
  }
}

}  // namespace

ResidualNetwork residual(const FlowNetwork& net, const Flow& f) {
  require_sized(net, f);
  ResidualNetwork r;
  r.node_count = net.node_count();
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    const Edge& edge = net.edge(e);
    if (!edge.capacity.admits(f[e])) {
      throw Error(ErrorCode::CapacityViolation,
                  "flow " + to_string(f[e]) + " outside [0, " + to_string(edge.capacity) +
                      "] on edge " + std::to_string(e));
    }
    if (edge.capacity.is_unbounded() || f[e] < edge.capacity.value()) {
      r.edges.push_back(ResidualEdge{edge.tail, edge.head, edge.capacity.minus(f[e]), edge.cost, e,
                                     true});
    }
    if (f[e] > 0) {
      r.edges.push_back(
          ResidualEdge{edge.head, edge.tail, Capacity(f[e]), Rational(-edge.cost), e, false});
    }
  }
  return r;
}

Rational flow_cost(const FlowNetwork& net, const Flow& f) {
  require_sized(net, f);
  Rational total;
  for (EdgeId e = 0; e < net.edge_count(); ++e) total += net.edge(e).cost * f[e];
  return total;
}

std::optional<FeasibilityViolation> check_feasible(const FlowNetwork& net, const Flow& f) {
  if (static_cast<int>(f.size()) != net.edge_count()) {
    return FeasibilityViolation{FeasibilityViolationKind::SizeMismatch, -1,
                                "flow has " + std::to_string(f.size()) + " values for " +
                                    std::to_string(net.edge_count()) + " edges"};
  }
  std::vector<Rational> excess(net.budgets().begin(), net.budgets().end());
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    const Edge& edge = net.edge(e);
    if (!edge.capacity.admits(f[e])) {
      return FeasibilityViolation{FeasibilityViolationKind::Capacity, e,
                                  "edge " + std::to_string(e) + " carries " + to_string(f[e]) +
                                      ", capacity " + to_string(edge.capacity)};
    }
    excess[static_cast<size_t>(edge.head)] += f[e];
    excess[static_cast<size_t>(edge.tail)] -= f[e];
  }
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (excess[static_cast<size_t>(v)] != 0) {
      return FeasibilityViolation{FeasibilityViolationKind::Conservation, v,
                                  "node " + std::to_string(v) + " has imbalance " +
                                      to_string(excess[static_cast<size_t>(v)])};
    }
  }
  return std::nullopt;
}

Capacity residual_capacity(const FlowNetwork& net, const Flow& f, const ResidualEdge& re) {
  const Edge& edge = net.edge(re.origin);
  if (re.forward) return edge.capacity.minus(f[re.origin]);
  return Capacity(f[re.origin]);
}

Rational augment_cycle_in_place(const FlowNetwork& net, Flow& f, const Cycle& cycle) {
  require_sized(net, f);
  if (cycle.edges.empty()) throw Error(ErrorCode::EmptyCycle, "cannot augment an empty cycle");
  Capacity delta = Capacity::unbounded();
  for (const auto& re : cycle.edges) {
    const Capacity cap = residual_capacity(net, f, re);
    if (cap.is_zero() || (cap.is_finite() && cap.value() < 0)) {
      throw Error(ErrorCode::ZeroResidualCapacity,
                  "residual edge of edge " + std::to_string(re.origin) + " has no capacity");
    }
    if (cap < delta) delta = cap;
  }
  if (delta.is_unbounded()) {
    throw Error(ErrorCode::UnboundedCycle, "every edge of the cycle has unbounded capacity");
  }
  const Rational amount = delta.value();
  for (const auto& re : cycle.edges) {
    if (re.forward) {
      f[re.origin] += amount;
    } else {
      f[re.origin] -= amount;
    }
  }
  return amount;
}

Augmentation augment_cycle(const FlowNetwork& net, const Flow& f, const Cycle& cycle) {
  Augmentation out{f, Rational(0)};
  out.delta = augment_cycle_in_place(net, out.flow, cycle);
  return out;
}

OptimalityReport verify_optimality(const FlowNetwork& net, const Flow& f) {
  const ResidualNetwork r = residual(net, f);
  const int n = r.node_count;
  std::vector<Rational> dist(static_cast<size_t>(n));
  std::vector<int> pred(static_cast<size_t>(n), -1);
  NodeId last_relaxed = -1;
  for (int round = 0; round < n; ++round) {
    last_relaxed = -1;
    for (int i = 0; i < static_cast<int>(r.edges.size()); ++i) {
      const auto& re = r.edges[static_cast<size_t>(i)];
      Rational candidate = dist[static_cast<size_t>(re.tail)] + re.cost;
      if (candidate < dist[static_cast<size_t>(re.head)]) {
        dist[static_cast<size_t>(re.head)] = std::move(candidate);
        pred[static_cast<size_t>(re.head)] = i;
        last_relaxed = re.head;
      }
    }
    if (last_relaxed < 0) return OptimalityReport{};
  }
  // A relaxation in round n means a negative cycle sits on the predecessor
  // chain of last_relaxed; n steps back lands on it.
  NodeId v = last_relaxed;
  for (int step = 0; step < n; ++step) {
    const int p = pred[static_cast<size_t>(v)];
    if (p < 0) throw Error(ErrorCode::InvalidArgument, "broken predecessor chain");
    v = r.edges[static_cast<size_t>(p)].tail;
  }
  std::vector<ResidualEdge> walk;
  NodeId u = v;
  do {
    const auto& re = r.edges[static_cast<size_t>(pred[static_cast<size_t>(u)])];
    walk.push_back(re);
    u = re.tail;
  } while (u != v);
  std::reverse(walk.begin(), walk.end());
  return OptimalityReport{make_cycle(std::move(walk))};
}

}  // namespace mcflab
