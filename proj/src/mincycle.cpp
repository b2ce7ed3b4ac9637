#include "mcflab/mincycle.hpp"

#include <algorithm>

namespace mcflab {

KarpTable karp_walk_table(const ResidualNetwork& r) {
  const auto n = static_cast<size_t>(r.node_count);
  KarpTable table;
  table.walks.assign(n + 1, std::vector<std::optional<Rational>>(n));
  table.pred.assign(n + 1, std::vector<int>(n, -1));
  for (auto& d : table.walks[0]) d = Rational(0);
  for (size_t k = 1; k <= n; ++k) {
    const auto& prev = table.walks[k - 1];
    auto& cur = table.walks[k];
    for (int i = 0; i < static_cast<int>(r.edges.size()); ++i) {
      const auto& re = r.edges[static_cast<size_t>(i)];
      const auto& from = prev[static_cast<size_t>(re.tail)];
      if (!from) continue;
      Rational candidate = *from + re.cost;
      auto& slot = cur[static_cast<size_t>(re.head)];
      if (!slot || candidate < *slot) {
        slot = std::move(candidate);
        table.pred[k][static_cast<size_t>(re.head)] = i;
      }
    }
  }
  return table;
}

std::optional<Cycle> karp_min_mean(const ResidualNetwork& r) {
  const auto n = static_cast<size_t>(r.node_count);
  if (n == 0) return std::nullopt;
  const KarpTable table = karp_walk_table(r);
  const auto& last = table.walks[n];

  std::optional<Rational> best;
  NodeId best_node = -1;
  for (size_t v = 0; v < n; ++v) {
    if (!last[v]) continue;
    std::optional<Rational> worst;
    for (size_t k = 0; k < n; ++k) {
      const auto& dk = table.walks[k][v];
      if (!dk) continue;
      Rational ratio = (*last[v] - *dk) / Rational(static_cast<long>(n - k));
      if (!worst || ratio > *worst) worst = std::move(ratio);
    }
    if (!best || *worst < *best) {
      best = std::move(worst);
      best_node = static_cast<NodeId>(v);
    }
  }
  if (!best) return std::nullopt;

  // Walk the optimal n-edge walk backwards and cut at the first repeated
  // node. Every cycle on that walk has mean exactly equal to the optimum.
  std::vector<int> first_level(n, -1);
  std::vector<NodeId> walk_nodes(n + 1);
  NodeId v = best_node;
  size_t k = n;
  while (true) {
    walk_nodes[k] = v;
    if (first_level[static_cast<size_t>(v)] >= 0) break;
    first_level[static_cast<size_t>(v)] = static_cast<int>(k);
    if (k == 0) throw Error(ErrorCode::InvalidArgument, "walk without repeated node");
    v = r.edges[static_cast<size_t>(table.pred[k][static_cast<size_t>(v)])].tail;
    --k;
  }
  const auto top = static_cast<size_t>(first_level[static_cast<size_t>(v)]);
  std::vector<ResidualEdge> edges;
  for (size_t level = k + 1; level <= top; ++level) {
    edges.push_back(r.edges[static_cast<size_t>(table.pred[level][static_cast<size_t>(walk_nodes[level])])]);
  }
  Cycle cycle = make_cycle(std::move(edges));
  if (cycle.mean_cost != *best) {
    throw Error(ErrorCode::InvalidArgument, "extracted cycle mean differs from Karp optimum");
  }
  return cycle;
}

namespace {

struct CycleSearch {
  const ResidualNetwork& r;
  std::vector<std::vector<int>> out_edges;
  std::vector<char> on_path;
  std::vector<int> path;
  NodeId start = 0;
  std::optional<Rational> best_mean;
  std::vector<int> best_edges;

  void dfs(NodeId v, const Rational& cost) {
    for (int i : out_edges[static_cast<size_t>(v)]) {
      const auto& re = r.edges[static_cast<size_t>(i)];
      if (re.head < start) continue;
      if (re.head == start) {
        const Rational total = cost + re.cost;
        Rational mean = total / Rational(static_cast<long>(path.size() + 1));
        if (!best_mean || mean < *best_mean) {
          best_mean = std::move(mean);
          best_edges = path;
          best_edges.push_back(i);
        }
        continue;
      }
      if (on_path[static_cast<size_t>(re.head)]) continue;
      on_path[static_cast<size_t>(re.head)] = 1;
      path.push_back(i);
      dfs(re.head, cost + re.cost);
      path.pop_back();
      on_path[static_cast<size_t>(re.head)] = 0;
    }
  }
};

}  // namespace

std::optional<Cycle> brute_force_min_mean(const ResidualNetwork& r, int node_limit) {
  if (r.node_count > node_limit) {
    throw Error(ErrorCode::TooLarge, "brute force limited to " +
                                         std::to_string(node_limit) + " nodes");
  }
  CycleSearch search{r, {}, {}, {}, 0, std::nullopt, {}};
  search.out_edges.resize(static_cast<size_t>(r.node_count));
  search.on_path.assign(static_cast<size_t>(r.node_count), 0);
  for (int i = 0; i < static_cast<int>(r.edges.size()); ++i) {
    search.out_edges[static_cast<size_t>(r.edges[static_cast<size_t>(i)].tail)].push_back(i);
  }
  // Each simple cycle is enumerated once, from its smallest node.
  for (NodeId s = 0; s < r.node_count; ++s) {
    search.start = s;
    search.on_path[static_cast<size_t>(s)] = 1;
    search.dfs(s, Rational(0));
    search.on_path[static_cast<size_t>(s)] = 0;
  }
  if (!search.best_mean) return std::nullopt;
  std::vector<ResidualEdge> edges;
  for (int i : search.best_edges) edges.push_back(r.edges[static_cast<size_t>(i)]);
  return make_cycle(std::move(edges));
}

}  // namespace mcflab
