#include "mcflab/netsimplex.hpp"

#include <deque>
#include <numeric>

namespace mcflab {

namespace {

// Rooted view of the tree edges: BFS order, parents, depths.
struct RootedTree {
  std::vector<NodeId> order;
  std::vector<NodeId> parent;
  std::vector<EdgeId> parent_edge;
  std::vector<int> depth;
};

RootedTree root_tree(const FlowNetwork& net, const TreeBasis& basis) {
  const auto n = static_cast<size_t>(net.node_count());
  if (basis.state.size() != static_cast<size_t>(net.edge_count())) {
    throw Error(ErrorCode::InvalidArgument, "basis does not assign every edge");
  }
  if (basis.root < 0 || static_cast<size_t>(basis.root) >= n) {
    throw Error(ErrorCode::InvalidArgument, "basis root out of range");
  }
  std::vector<std::vector<EdgeId>> adj(n);
  size_t tree_edges = 0;
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    if (basis.state[static_cast<size_t>(e)] != EdgeState::Tree) continue;
    ++tree_edges;
    adj[static_cast<size_t>(net.edge(e).tail)].push_back(e);
    adj[static_cast<size_t>(net.edge(e).head)].push_back(e);
  }
  if (tree_edges + 1 != n) {
    throw Error(ErrorCode::InvalidArgument, "tree has " + std::to_string(tree_edges) +
                                                " edges for " + std::to_string(n) + " nodes");
  }
  RootedTree t;
  t.parent.assign(n, -1);
  t.parent_edge.assign(n, -1);
  t.depth.assign(n, -1);
  t.order.reserve(n);
  t.depth[static_cast<size_t>(basis.root)] = 0;
  std::deque<NodeId> queue{basis.root};
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    t.order.push_back(v);
    for (EdgeId e : adj[static_cast<size_t>(v)]) {
      const Edge& edge = net.edge(e);
      const NodeId w = edge.tail == v ? edge.head : edge.tail;
      if (t.depth[static_cast<size_t>(w)] >= 0) continue;
      t.depth[static_cast<size_t>(w)] = t.depth[static_cast<size_t>(v)] + 1;
      t.parent[static_cast<size_t>(w)] = v;
      t.parent_edge[static_cast<size_t>(w)] = e;
      queue.push_back(w);
    }
  }
  if (t.order.size() != n) {
    throw Error(ErrorCode::InvalidArgument, "tree edges do not span the network");
  }
  return t;
}

Capacity headroom(const FlowNetwork& net, const Flow& f, const CycleStep& step) {
  if (step.forward) return net.edge(step.edge).capacity.minus(f[step.edge]);
  return Capacity(f[step.edge]);
}

}  // namespace

void check_spanning_tree(const FlowNetwork& net, const TreeBasis& basis) {
  root_tree(net, basis);
}

Flow solve_tree_flow(const FlowNetwork& net, const TreeBasis& basis) {
  const RootedTree t = root_tree(net, basis);
  Flow f = Flow::zero(net);
  std::vector<Rational> excess(net.budgets().begin(), net.budgets().end());
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    if (basis.state[static_cast<size_t>(e)] != EdgeState::Upper) continue;
    const Edge& edge = net.edge(e);
    if (edge.capacity.is_unbounded()) {
      throw Error(ErrorCode::InfeasibleStructure,
                  "edge " + std::to_string(e) + " of unbounded capacity is in U");
    }
    f[e] = edge.capacity.value();
    excess[static_cast<size_t>(edge.head)] += f[e];
    excess[static_cast<size_t>(edge.tail)] -= f[e];
  }
  for (auto it = t.order.rbegin(); it != t.order.rend(); ++it) {
    const NodeId v = *it;
    if (v == basis.root) continue;
    const EdgeId e = t.parent_edge[static_cast<size_t>(v)];
    const NodeId p = t.parent[static_cast<size_t>(v)];
    if (net.edge(e).tail == v) {
      f[e] = excess[static_cast<size_t>(v)];
      excess[static_cast<size_t>(p)] += f[e];
    } else {
      f[e] = -excess[static_cast<size_t>(v)];
      excess[static_cast<size_t>(p)] -= f[e];
    }
    excess[static_cast<size_t>(v)] = 0;
  }
  if (excess[static_cast<size_t>(basis.root)] != 0) {
    throw Error(ErrorCode::InfeasibleStructure, "budgets do not balance at the root");
  }
  return f;
}

Flow tree_flow(const FlowNetwork& net, const TreeBasis& basis) {
  Flow f = solve_tree_flow(net, basis);
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    if (!net.edge(e).capacity.admits(f[e])) {
      throw Error(ErrorCode::InfeasibleStructure,
                  "tree edge " + std::to_string(e) + " would carry " + to_string(f[e]));
    }
  }
  return f;
}

std::vector<Rational> compute_potentials(const FlowNetwork& net, const TreeBasis& basis) {
  const RootedTree t = root_tree(net, basis);
  std::vector<Rational> pi(static_cast<size_t>(net.node_count()));
  for (NodeId v : t.order) {
    if (v == basis.root) continue;
    const Edge& edge = net.edge(t.parent_edge[static_cast<size_t>(v)]);
    const Rational& parent_pi = pi[static_cast<size_t>(t.parent[static_cast<size_t>(v)])];
    if (edge.head == v) {
      pi[static_cast<size_t>(v)] = parent_pi - edge.cost;
    } else {
      pi[static_cast<size_t>(v)] = parent_pi + edge.cost;
    }
  }
  return pi;
}

SpanningTreeStructure make_structure(const FlowNetwork& net, TreeBasis basis) {
  SpanningTreeStructure s{std::move(basis.state), basis.root, {}};
  s.potentials = compute_potentials(net, s.basis());
  return s;
}

Rational reduced_cost(const FlowNetwork& net, const std::vector<Rational>& potentials, EdgeId e) {
  const Edge& edge = net.edge(e);
  return edge.cost - potentials[static_cast<size_t>(edge.tail)] +
         potentials[static_cast<size_t>(edge.head)];
}

std::optional<EdgeId> entering_edge(const FlowNetwork& net, const SpanningTreeStructure& s) {
  std::optional<EdgeId> best;
  Rational best_violation;
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    const EdgeState st = s.state[static_cast<size_t>(e)];
    if (st == EdgeState::Tree || net.edge(e).capacity.is_zero()) continue;
    const Rational rc = reduced_cost(net, s.potentials, e);
    const bool violates = (st == EdgeState::Lower && rc < 0) || (st == EdgeState::Upper && rc > 0);
    if (!violates) continue;
    Rational violation = abs(rc);
    if (!best || violation > best_violation) {
      best = e;
      best_violation = std::move(violation);
    }
  }
  return best;
}

PivotResult pivot(const FlowNetwork& net, const SpanningTreeStructure& s, const Flow& flow,
                  EdgeId entering, const PivotOptions& options) {
  const EdgeState entering_state = s.state.at(static_cast<size_t>(entering));
  if (entering_state == EdgeState::Tree) {
    throw Error(ErrorCode::InvalidArgument, "entering edge is already in the tree");
  }
  const RootedTree t = root_tree(net, s.basis());
  const Edge& in_edge = net.edge(entering);
  const bool from_lower = entering_state == EdgeState::Lower;
  // Augmentation goes x -> y over the entering edge, then y -> x in the tree.
  const NodeId x = from_lower ? in_edge.tail : in_edge.head;
  const NodeId y = from_lower ? in_edge.head : in_edge.tail;

  std::vector<CycleStep> up;    // y up to the apex
  std::vector<CycleStep> down;  // apex down to x, collected bottom-up
  NodeId a = y;
  NodeId b = x;
  while (a != b) {
    if (t.depth[static_cast<size_t>(a)] >= t.depth[static_cast<size_t>(b)]) {
      const EdgeId e = t.parent_edge[static_cast<size_t>(a)];
      up.push_back(CycleStep{e, net.edge(e).tail == a});
      a = t.parent[static_cast<size_t>(a)];
    } else {
      const EdgeId e = t.parent_edge[static_cast<size_t>(b)];
      down.push_back(CycleStep{e, net.edge(e).head == b});
      b = t.parent[static_cast<size_t>(b)];
    }
  }
  std::vector<CycleStep> apex_order(down.rbegin(), down.rend());
  apex_order.push_back(CycleStep{entering, from_lower});
  apex_order.insert(apex_order.end(), up.begin(), up.end());

  PivotResult out;
  out.cycle.push_back(CycleStep{entering, from_lower});
  out.cycle.insert(out.cycle.end(), up.begin(), up.end());
  out.cycle.insert(out.cycle.end(), down.rbegin(), down.rend());

  Capacity delta = Capacity::unbounded();
  for (const auto& step : apex_order) {
    const Capacity h = headroom(net, flow, step);
    if (h < delta) delta = h;
  }
  if (delta.is_unbounded()) {
    throw Error(ErrorCode::UnboundedCycle,
                "pivot cycle of edge " + std::to_string(entering) + " has no blocking edge");
  }
  out.delta = delta.value();

  std::optional<CycleStep> leaving;
  for (const auto& step : apex_order) {
    if (!(headroom(net, flow, step) == delta)) continue;
    if (options.leaving_rule == LeavingRule::StronglyFeasible) {
      leaving = step;
      continue;
    }
    if (!leaving) {
      leaving = step;
      continue;
    }
    const Edge& cand = net.edge(step.edge);
    const Edge& cur = net.edge(leaving->edge);
    if (cand.leaving_rank < cur.leaving_rank ||
        (cand.leaving_rank == cur.leaving_rank && step.edge < leaving->edge)) {
      leaving = step;
    }
  }
  out.leaving = leaving->edge;
  out.degenerate = out.delta == 0;

  out.flow = flow;
  for (const auto& step : apex_order) {
    if (step.forward) {
      out.flow[step.edge] += out.delta;
    } else {
      out.flow[step.edge] -= out.delta;
    }
  }

  out.structure = s;
  const Edge& leaving_edge = net.edge(out.leaving);
  const bool at_upper = leaving->forward && !leaving_edge.capacity.is_zero();
  out.structure.state[static_cast<size_t>(out.leaving)] = at_upper ? EdgeState::Upper
                                                                   : EdgeState::Lower;
  if (out.leaving == entering) return out;
  out.structure.state[static_cast<size_t>(entering)] = EdgeState::Tree;

  if (options.potential_update == PotentialUpdate::FullRecompute) {
    out.structure.potentials = compute_potentials(net, out.structure.basis());
    return out;
  }
  // Only the side of the old tree cut off by the leaving edge moves, by a
  // constant that zeroes the entering edge's reduced cost.
  const NodeId cut_root = t.parent_edge[static_cast<size_t>(leaving_edge.tail)] == out.leaving
                              ? leaving_edge.tail
                              : leaving_edge.head;
  std::vector<char> in_subtree(static_cast<size_t>(net.node_count()), 0);
  for (NodeId v : t.order) {
    in_subtree[static_cast<size_t>(v)] =
        v == cut_root ||
        (v != s.root && in_subtree[static_cast<size_t>(t.parent[static_cast<size_t>(v)])]);
  }
  const Rational rc = reduced_cost(net, s.potentials, entering);
  const bool head_side = in_subtree[static_cast<size_t>(in_edge.head)] != 0;
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (!in_subtree[static_cast<size_t>(v)]) continue;
    if (head_side) {
      out.structure.potentials[static_cast<size_t>(v)] -= rc;
    } else {
      out.structure.potentials[static_cast<size_t>(v)] += rc;
    }
  }
  return out;
}

std::int64_t NsTrace::degenerate_count() const {
  std::int64_t count = 0;
  for (const auto& p : pivots) count += p.degenerate ? 1 : 0;
  return count;
}

std::int64_t NsTrace::nondegenerate_count() const {
  return static_cast<std::int64_t>(pivots.size()) - degenerate_count();
}

NsTrace ns_solve(const FlowNetwork& net, const TreeBasis& initial, const NsOptions& options) {
  NsTrace trace;
  trace.final_structure = make_structure(net, initial);
  trace.final_flow = tree_flow(net, initial);
  const std::int64_t cap = options.iteration_cap.value_or(default_iteration_cap(net));
  while (true) {
    const std::optional<EdgeId> entering = entering_edge(net, trace.final_structure);
    if (!entering) break;
    if (static_cast<std::int64_t>(trace.pivots.size()) >= cap) {
      if (options.on_cap == CapPolicy::Throw) {
        throw Error(ErrorCode::IterationCapExceeded,
                    "network simplex exceeded " + std::to_string(cap) + " pivots");
      }
      trace.termination = Termination::IterationCapHit;
      return trace;
    }
    Rational rc = reduced_cost(net, trace.final_structure.potentials, *entering);
    PivotResult step =
        pivot(net, trace.final_structure, trace.final_flow, *entering, options.pivot);
    trace.pivots.push_back(NsPivot{*entering, step.leaving, step.delta, step.degenerate,
                                   std::move(rc), std::move(step.cycle)});
    trace.final_structure = std::move(step.structure);
    trace.final_flow = std::move(step.flow);
  }
  trace.termination = Termination::Optimal;
  return trace;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int v) {
    while (parent[static_cast<size_t>(v)] != v) {
      parent[static_cast<size_t>(v)] = parent[static_cast<size_t>(parent[static_cast<size_t>(v)])];
      v = parent[static_cast<size_t>(v)];
    }
    return v;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<size_t>(b)] = a;
    return true;
  }
};

bool is_free(const Edge& edge, const Rational& f) {
  return f > 0 && (edge.capacity.is_unbounded() || f < edge.capacity.value());
}

// Path from `from` to `to` in the forest given by `adj`, as oriented steps.
std::vector<CycleStep> forest_path(const FlowNetwork& net,
                                   const std::vector<std::vector<EdgeId>>& adj, NodeId from,
                                   NodeId to) {
  std::vector<EdgeId> via(static_cast<size_t>(net.node_count()), -1);
  std::vector<char> seen(static_cast<size_t>(net.node_count()), 0);
  std::deque<NodeId> queue{from};
  seen[static_cast<size_t>(from)] = 1;
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    if (v == to) break;
    for (EdgeId e : adj[static_cast<size_t>(v)]) {
      const Edge& edge = net.edge(e);
      const NodeId w = edge.tail == v ? edge.head : edge.tail;
      if (seen[static_cast<size_t>(w)]) continue;
      seen[static_cast<size_t>(w)] = 1;
      via[static_cast<size_t>(w)] = e;
      queue.push_back(w);
    }
  }
  std::vector<CycleStep> path;
  for (NodeId v = to; v != from;) {
    const EdgeId e = via[static_cast<size_t>(v)];
    const Edge& edge = net.edge(e);
    path.push_back(CycleStep{e, edge.head == v});
    v = edge.head == v ? edge.tail : edge.head;
  }
  return {path.rbegin(), path.rend()};
}

}  // namespace

InitialStructure build_initial_structure(const FlowNetwork& net, const Flow& feasible) {
  if (auto bad = check_feasible(net, feasible)) {
    throw Error(ErrorCode::Infeasible, "cannot build a structure from an infeasible flow: " +
                                           bad->message);
  }
  Flow f = feasible;
  const int n = net.node_count();
  while (true) {
    UnionFind uf(n);
    std::vector<std::vector<EdgeId>> adj(static_cast<size_t>(n));
    std::optional<std::vector<CycleStep>> cycle;
    for (EdgeId e = 0; e < net.edge_count() && !cycle; ++e) {
      const Edge& edge = net.edge(e);
      if (!is_free(edge, f[e])) continue;
      if (uf.unite(edge.tail, edge.head)) {
        adj[static_cast<size_t>(edge.tail)].push_back(e);
        adj[static_cast<size_t>(edge.head)].push_back(e);
        continue;
      }
      cycle = forest_path(net, adj, edge.head, edge.tail);
      cycle->insert(cycle->begin(), CycleStep{e, true});
    }
    if (!cycle) break;

    Rational cost;
    for (const auto& step : *cycle) {
      cost += step.forward ? net.edge(step.edge).cost : Rational(-net.edge(step.edge).cost);
    }
    auto reversed = [&] {
      for (auto& step : *cycle) step.forward = !step.forward;
      cost = -cost;
    };
    if (cost > 0) reversed();
    auto bottleneck = [&] {
      Capacity d = Capacity::unbounded();
      for (const auto& step : *cycle) {
        const Capacity h = headroom(net, f, step);
        if (h < d) d = h;
      }
      return d;
    };
    Capacity delta = bottleneck();
    if (delta.is_unbounded()) {
      if (cost < 0) throw Error(ErrorCode::UnboundedCycle, "negative cycle of unbounded capacity");
      reversed();
      delta = bottleneck();
    }
    for (const auto& step : *cycle) {
      if (step.forward) {
        f[step.edge] += delta.value();
      } else {
        f[step.edge] -= delta.value();
      }
    }
  }

  TreeBasis basis{std::vector<EdgeState>(static_cast<size_t>(net.edge_count()), EdgeState::Lower),
                  0};
  UnionFind uf(n);
  int components = n;
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    if (is_free(net.edge(e), f[e])) {
      uf.unite(net.edge(e).tail, net.edge(e).head);
      --components;
      basis.state[static_cast<size_t>(e)] = EdgeState::Tree;
    }
  }
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    if (basis.state[static_cast<size_t>(e)] == EdgeState::Tree) continue;
    const Edge& edge = net.edge(e);
    if (uf.unite(edge.tail, edge.head)) {
      --components;
      basis.state[static_cast<size_t>(e)] = EdgeState::Tree;
    } else {
      basis.state[static_cast<size_t>(e)] = f[e] == 0 ? EdgeState::Lower : EdgeState::Upper;
    }
  }
  if (components > 1) {
    throw Error(ErrorCode::NotConnected, "network is not connected; no spanning tree exists");
  }
  return InitialStructure{std::move(basis), std::move(f)};
}

}  // namespace mcflab
