#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mcflab/error.hpp"
#include "mcflab/rational.hpp"

namespace mcflab {

using NodeId = int;
using EdgeId = int;

struct Edge {
  NodeId tail = 0;
  NodeId head = 0;
  Capacity capacity;
  Rational cost;
  /// Leaving-edge priority for network simplex; lower is preferred.
  int leaving_rank = 0;
};

/// Directed flow network with per-edge capacities and costs and per-node
/// budgets. Budgets follow b(v) + inflow(v) = outflow(v), so a positive
/// budget is a supply.
///
/// Construction does not enforce the structural invariants; call
/// validate_network() before handing a network to a solver.
class FlowNetwork {
 public:
  FlowNetwork() = default;
  explicit FlowNetwork(int node_count);

  EdgeId add_edge(NodeId tail, NodeId head, Capacity capacity, Rational cost,
                  int leaving_rank = 0);

  void set_budget(NodeId v, Rational budget);
  void set_cost(EdgeId e, Rational cost);

  int node_count() const { return static_cast<int>(budgets_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const Edge& edge(EdgeId e) const { return edges_.at(static_cast<size_t>(e)); }
  std::span<const Edge> edges() const { return edges_; }

  const Rational& budget(NodeId v) const { return budgets_.at(static_cast<size_t>(v)); }
  std::span<const Rational> budgets() const { return budgets_; }

  std::optional<EdgeId> find_edge(NodeId tail, NodeId head) const;

 private:
  std::vector<Edge> edges_;
  std::vector<Rational> budgets_;
};

/// Edge-indexed flow values.
struct Flow {
  std::vector<Rational> values;

  static Flow zero(const FlowNetwork& net) {
    return Flow{std::vector<Rational>(static_cast<size_t>(net.edge_count()))};
  }

  const Rational& operator[](EdgeId e) const { return values[static_cast<size_t>(e)]; }
  Rational& operator[](EdgeId e) { return values[static_cast<size_t>(e)]; }
  size_t size() const { return values.size(); }

  friend bool operator==(const Flow&, const Flow&) = default;
};

struct ResidualEdge {
  NodeId tail = 0;
  NodeId head = 0;
  Capacity capacity;
  Rational cost;
  EdgeId origin = 0;
  bool forward = true;

  friend bool operator==(const ResidualEdge&, const ResidualEdge&) = default;
};

/// Residual edges are listed in original edge order, forward before backward.
struct ResidualNetwork {
  int node_count = 0;
  std::vector<ResidualEdge> edges;
};

/// Simple directed cycle of residual edges.
struct Cycle {
  std::vector<ResidualEdge> edges;
  Rational total_cost;
  Rational mean_cost;

  size_t length() const { return edges.size(); }
  /// Tail of each edge, in order.
  std::vector<NodeId> nodes() const;
};

/// Builds a Cycle from closed-walk edges, computing the cost fields. Throws
/// EmptyCycle for no edges and InvalidArgument when the edges do not chain
/// or repeat a node.
Cycle make_cycle(std::vector<ResidualEdge> edges);

enum class NetworkViolationKind {
  SelfLoop,
  DuplicateEdge,
  AntiparallelPair,
  NegativeCapacity,
  BudgetImbalance,
  NodeOutOfRange,
};

const char* violation_name(NetworkViolationKind kind);

struct NetworkViolation {
  NetworkViolationKind kind;
  int index = -1;  // edge id, or -1 for whole-network violations
  std::string message;
};

std::optional<NetworkViolation> validate_network(const FlowNetwork& net);

/// Connectivity of the undirected version. Not an invariant; callers may warn.
bool is_weakly_connected(const FlowNetwork& net);

ResidualNetwork residual(const FlowNetwork& net, const Flow& f);

Rational flow_cost(const FlowNetwork& net, const Flow& f);

enum class FeasibilityViolationKind { SizeMismatch, Capacity, Conservation };

struct FeasibilityViolation {
  FeasibilityViolationKind kind;
  int index = -1;  // edge id for Capacity, node id for Conservation
  std::string message;
};

std::optional<FeasibilityViolation> check_feasible(const FlowNetwork& net, const Flow& f);

/// Residual capacity of `re` under the flow `f`.
Capacity residual_capacity(const FlowNetwork& net, const Flow& f, const ResidualEdge& re);

struct Augmentation {
  Flow flow;
  Rational delta;
};

/// Pushes the bottleneck amount around `cycle`. The residual capacities are
/// re-derived from `net` and `f`, not taken from the cycle's copies.
Augmentation augment_cycle(const FlowNetwork& net, const Flow& f, const Cycle& cycle);

/// In-place variant; the caller is the single writer of `f`.
Rational augment_cycle_in_place(const FlowNetwork& net, Flow& f, const Cycle& cycle);

struct OptimalityReport {
  std::optional<Cycle> witness;  // negative-cost residual cycle, if any
  bool optimal() const { return !witness.has_value(); }
};

/// Label-correcting sweep over the residual network from a virtual source.
OptimalityReport verify_optimality(const FlowNetwork& net, const Flow& f);

}  // namespace mcflab
