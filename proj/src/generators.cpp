#include "mcflab/generators.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <utility>

#include "mcflab/maxflow.hpp"

namespace mcflab {

namespace {

std::mt19937_64 make_rng(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    stream};
  return std::mt19937_64(seq);
}

// Uniform integer in [0, bound) by rejection; portable across standard
// libraries, unlike std::uniform_int_distribution.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  while (true) {
    const std::uint64_t r = rng();
    if (r < limit) return r % bound;
  }
}

Rational pow_rational(const Rational& base, int exponent) {
  Rational out(1);
  if (exponent >= 0) {
    for (int i = 0; i < exponent; ++i) out *= base;
  } else {
    for (int i = 0; i < -exponent; ++i) out /= base;
  }
  return out;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::ParamViolation, what);
}

// m pairs of {0..n-1}^2: the diagonal (i, i) first so every row and column
// is used, the remainder drawn uniformly from the other pairs. Sorted.
std::vector<std::pair<int, int>> pick_bipartite_edges(int n, int m, std::uint64_t seed) {
  std::vector<std::pair<int, int>> chosen;
  std::vector<std::pair<int, int>> pool;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        chosen.emplace_back(i, j);
      } else {
        pool.emplace_back(i, j);
      }
    }
  }
  auto rng = make_rng(seed, 0x45757600u);
  const auto extra = static_cast<size_t>(m - n);
  for (size_t i = 0; i < extra; ++i) {
    const auto j = i + static_cast<size_t>(uniform_below(rng, pool.size() - i));
    std::swap(pool[i], pool[j]);
    chosen.push_back(pool[i]);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

class Builder {
 public:
  explicit Builder(int node_count, Rational phi) {
    inst_.network = FlowNetwork(node_count);
    inst_.phi = std::move(phi);
  }

  EdgeId edge(NodeId tail, NodeId head, Capacity cap, Rational lo, Rational width,
              int leaving_rank = 1) {
    const EdgeId e = inst_.network.add_edge(tail, head, std::move(cap), lo, leaving_rank);
    inst_.intervals.push_back(CostInterval{std::move(lo), std::move(width)});
    return e;
  }

  SmoothedInstance& instance() { return inst_; }
  const Rational& phi() const { return inst_.phi; }

 private:
  SmoothedInstance inst_;
};

}  // namespace

int floor_log2(const Rational& x) {
  if (x < 1) throw Error(ErrorCode::ParamViolation, "log2 of a value below 1");
  const mpz_class whole = x.get_num() / x.get_den();
  return static_cast<int>(mpz_sizeinbase(whole.get_mpz_t(), 2)) - 1;
}

std::vector<Rational> sample_costs(const SmoothedInstance& inst, std::uint64_t seed) {
  std::vector<Rational> costs;
  costs.reserve(inst.intervals.size());
  const Rational grid{mpz_class(std::to_string(kCostGrid))};
  for (size_t e = 0; e < inst.intervals.size(); ++e) {
    auto rng = make_rng(seed, static_cast<std::uint32_t>(e));
    const std::uint64_t r = rng() >> 32;
    const Rational draw{mpz_class(std::to_string(r))};
    const auto& iv = inst.intervals[e];
    costs.push_back(iv.lo + iv.width * draw / grid);
  }
  return costs;
}

FlowNetwork realize(const SmoothedInstance& inst, std::span<const Rational> costs) {
  if (costs.size() != static_cast<size_t>(inst.network.edge_count())) {
    throw Error(ErrorCode::InvalidArgument, "cost vector does not match edge count");
  }
  FlowNetwork net = inst.network;
  for (EdgeId e = 0; e < net.edge_count(); ++e) net.set_cost(e, costs[static_cast<size_t>(e)]);
  return net;
}

GeneratedMmcc gen_mmcc_general(const MmccGeneralParams& params, std::uint64_t euv_seed) {
  const int n = params.n;
  const int m = params.m;
  require(n >= 1, "n must be positive");
  require(m >= n && m <= n * n, "m must lie in {n, ..., n^2}");
  require(params.phi >= 64, "phi must be at least 64");
  const int kw = params.k_w();
  const int kx = params.k_x();
  require(kw >= 1, "k_w must be at least 1");

  GeneratedMmcc g;
  MmccLayout& L = g.layout;
  L.a_in = L.a_out = 0;
  L.b = 1;
  L.c_in = L.c_out = 2;
  L.d = 3;
  NodeId next = 4;
  for (int i = 0; i < n; ++i) L.u.push_back(next++);
  for (int i = 0; i < n; ++i) L.v.push_back(next++);
  for (int i = 0; i < kw; ++i) L.w.push_back(next++);
  for (int i = 0; i < kx; ++i) L.x.push_back(next++);

  Builder bld(next, params.phi);
  const Rational eps = 1 / params.phi;
  const Capacity inf = Capacity::unbounded();
  for (const auto& [i, j] : pick_bipartite_edges(n, m, euv_seed)) {
    bld.edge(L.u[static_cast<size_t>(i)], L.v[static_cast<size_t>(j)], 1, 0, eps);
  }
  for (NodeId u : L.u) bld.edge(L.a_out, u, inf, 0, eps);
  for (NodeId u : L.u) bld.edge(u, L.b, inf, 0, eps);
  for (NodeId v : L.v) bld.edge(L.c_out, v, inf, 0, eps);
  for (NodeId v : L.v) bld.edge(v, L.d, inf, 0, eps);

  SmoothedInstance& inst = bld.instance();
  std::vector<EdgeId> loaded;
  for (int i = 1; i <= kw; ++i) {
    const NodeId w = L.w[static_cast<size_t>(i - 1)];
    bld.edge(L.d, w, m, 0, eps);
    const Rational top = pow_rational(2, 2 - 2 * i);
    loaded.push_back(bld.edge(L.a_in, w, m, top - eps, eps));
    inst.network.set_budget(w, -m);
  }
  for (int i = 1; i <= kx; ++i) {
    const NodeId x = L.x[static_cast<size_t>(i - 1)];
    bld.edge(L.b, x, m, 0, eps);
    const Rational top = pow_rational(2, 1 - 2 * i);
    loaded.push_back(bld.edge(L.c_in, x, m, top - eps, eps));
    inst.network.set_budget(x, -m);
  }
  inst.network.set_budget(L.a_in, Rational(kw) * m);
  inst.network.set_budget(L.c_in, Rational(kx) * m);

  Flow start = Flow::zero(inst.network);
  for (EdgeId e : loaded) start[e] = m;
  inst.starting_flow = std::move(start);
  g.instance = std::move(inst);
  g.predicted_iterations = static_cast<std::int64_t>(m) * (kw + kx);
  return g;
}

GeneratedMmcc gen_mmcc_large_phi(int n, int m, std::uint64_t euv_seed) {
  require(n >= 4, "n must be at least 4");
  require(m >= n && m <= n * n, "m must lie in {n, ..., n^2}");

  GeneratedMmcc g;
  MmccLayout& L = g.layout;
  NodeId next = 0;
  L.a_in = next++;
  L.a_out = next++;
  L.b = next++;
  L.c_in = next++;
  L.c_out = next++;
  L.d = next++;
  for (int i = 0; i < n - 1; ++i) L.a_path.push_back(next++);
  for (int i = 0; i < n - 1; ++i) L.c_path.push_back(next++);
  for (int i = 0; i < n; ++i) L.u.push_back(next++);
  for (int i = 0; i < n; ++i) L.v.push_back(next++);
  for (int i = 0; i < n; ++i) L.w.push_back(next++);
  for (int i = 0; i < n; ++i) L.x.push_back(next++);

  Builder bld(next, Rational(400000) * n * n);
  const Rational eps = 1 / bld.phi();
  const Capacity inf = Capacity::unbounded();
  for (const auto& [i, j] : pick_bipartite_edges(n, m, euv_seed)) {
    bld.edge(L.u[static_cast<size_t>(i)], L.v[static_cast<size_t>(j)], 1, 0, eps);
  }
  for (NodeId u : L.u) bld.edge(L.a_out, u, inf, 0, eps);
  for (NodeId u : L.u) bld.edge(u, L.b, inf, 0, eps);
  for (NodeId v : L.v) bld.edge(L.c_out, v, inf, 0, eps);
  for (NodeId v : L.v) bld.edge(v, L.d, inf, 0, eps);
  auto chain = [&](NodeId from, const std::vector<NodeId>& interior, NodeId to) {
    NodeId prev = from;
    for (NodeId v : interior) {
      bld.edge(prev, v, inf, 0, eps);
      prev = v;
    }
    bld.edge(prev, to, inf, 0, eps);
  };
  chain(L.a_in, L.a_path, L.a_out);
  chain(L.c_in, L.c_path, L.c_out);

  SmoothedInstance& inst = bld.instance();
  Rational ratio(mpz_class(n - 3), mpz_class(n));
  ratio.canonicalize();
  std::vector<EdgeId> loaded;
  for (int i = 1; i <= n; ++i) {
    const NodeId w = L.w[static_cast<size_t>(i - 1)];
    bld.edge(L.d, w, m, 0, eps);
    const Rational top = pow_rational(ratio, 2 * i - 2);
    loaded.push_back(bld.edge(L.a_in, w, m, top - eps, eps));
    inst.network.set_budget(w, -m);
  }
  for (int i = 1; i <= n; ++i) {
    const NodeId x = L.x[static_cast<size_t>(i - 1)];
    bld.edge(L.b, x, m, 0, eps);
    const Rational top = pow_rational(ratio, 2 * i - 1);
    loaded.push_back(bld.edge(L.c_in, x, m, top - eps, eps));
    inst.network.set_budget(x, -m);
  }
  inst.network.set_budget(L.a_in, Rational(n) * m);
  inst.network.set_budget(L.c_in, Rational(n) * m);

  Flow start = Flow::zero(inst.network);
  for (EdgeId e : loaded) start[e] = m;
  inst.starting_flow = std::move(start);
  g.instance = std::move(inst);
  g.predicted_iterations = 2 * static_cast<std::int64_t>(m) * n;
  return g;
}

int NsParams::big_m() const {
  const int quarter = (1 << floor_log2(phi)) / 4 - 2;
  return std::min(n, quarter);
}

GeneratedNs gen_ns_lower_bound(const NsParams& params, std::uint64_t euw_seed) {
  const int n = params.n;
  const int m = params.m;
  require(n >= 1, "n must be positive");
  require(m >= n && m <= n * n, "m must lie in {n, ..., n^2}");
  require(params.phi >= 64, "phi must be at least 64");
  require(floor_log2(params.phi) <= 29, "phi too large for the chain construction");
  const int k = params.k();
  const int big_m = params.big_m();
  require(k >= 1 && big_m >= 1, "k and M must be at least 1");

  GeneratedNs g;
  g.k = k;
  g.big_m = big_m;
  NsLayout& L = g.layout;
  NodeId next = 0;
  for (int i = 0; i < n; ++i) L.u.push_back(next++);
  for (int i = 0; i < n; ++i) L.w.push_back(next++);
  for (int i = 0; i < k; ++i) {
    L.s_level.push_back(next++);
    L.t_level.push_back(next++);
  }
  for (auto* chain : {&L.a, &L.b, &L.c, &L.d}) {
    for (int i = 0; i < big_m; ++i) chain->push_back(next++);
  }
  for (int i = 0; i < 2 * big_m; ++i) L.q.push_back(next++);
  L.s = next++;
  L.t = next++;

  Builder bld(next, params.phi);
  SmoothedInstance& inst = bld.instance();
  const Rational& phi = bld.phi();
  const Rational eps = 1 / phi;
  const Capacity inf = Capacity::unbounded();
  std::vector<EdgeId> tree;

  // G_1
  const auto uw = pick_bipartite_edges(n, m, euw_seed);
  std::vector<int> out_degree(static_cast<size_t>(n), 0);
  std::vector<int> in_degree(static_cast<size_t>(n), 0);
  for (const auto& [i, j] : uw) {
    ++out_degree[static_cast<size_t>(i)];
    ++in_degree[static_cast<size_t>(j)];
  }
  const NodeId s1 = L.s_level[0];
  const NodeId t1 = L.t_level[0];
  for (int i = 0; i < n; ++i) {
    tree.push_back(bld.edge(s1, L.u[static_cast<size_t>(i)], out_degree[static_cast<size_t>(i)], 0, eps));
  }
  for (const auto& [i, j] : uw) {
    L.uw_edges.push_back(bld.edge(L.u[static_cast<size_t>(i)], L.w[static_cast<size_t>(j)], 1,
                                  Rational(7) / phi, Rational(2) / phi, 0));
  }
  for (int j = 0; j < n; ++j) {
    tree.push_back(bld.edge(L.w[static_cast<size_t>(j)], t1, in_degree[static_cast<size_t>(j)], 0, eps));
  }

  // G_{i+1} from G_i; the network holds exactly E_i when N_i is computed.
  for (int i = 1; i <= k; ++i) {
    const NodeId si = L.s_level[static_cast<size_t>(i - 1)];
    const NodeId ti = L.t_level[static_cast<size_t>(i - 1)];
    g.level_capacity.push_back(max_flow(inst.network, si, ti).value);
    if (i == k) break;
    const Rational& cap = g.level_capacity.back();
    const NodeId sn = L.s_level[static_cast<size_t>(i)];
    const NodeId tn = L.t_level[static_cast<size_t>(i)];
    const Rational mid = pow_rational(2, i + 3);
    tree.push_back(bld.edge(sn, si, cap, 0, eps));
    tree.push_back(bld.edge(ti, tn, cap, 0, eps));
    bld.edge(sn, ti, cap, (mid - 1) / phi, Rational(2) / phi);
    bld.edge(si, tn, cap, (mid - 1) / phi, Rational(2) / phi);
  }
  g.flow_f = g.level_capacity.back();
  const Rational& F = g.flow_f;

  // Chains A, B, C, D and Q.
  const NodeId sk = L.s_level.back();
  const NodeId tk = L.t_level.back();
  const Rational long_hi = pow_rational(2, k + 5) / phi;
  const Rational short_hi = pow_rational(2, k + 4) / phi;
  auto long_edge = [&](NodeId a, NodeId b) { return bld.edge(a, b, inf, long_hi - eps, eps); };
  auto short_edge = [&](NodeId a, NodeId b) { return bld.edge(a, b, inf, short_hi - eps, eps); };
  auto at = [](const std::vector<NodeId>& chain, int i) { return chain[static_cast<size_t>(i - 1)]; };

  for (int i = 2; i <= big_m; ++i) tree.push_back(long_edge(at(L.a, i), at(L.a, i - 1)));
  for (int i = 1; i <= big_m; ++i) {
    const EdgeId e = bld.edge(L.s, at(L.a, i), F, 0, eps);
    if (i == 1) tree.push_back(e);
  }
  tree.push_back(short_edge(at(L.a, 1), sk));

  for (int i = 2; i <= big_m; ++i) tree.push_back(long_edge(at(L.b, i), at(L.b, i - 1)));
  for (int i = 1; i <= big_m; ++i) bld.edge(L.s, at(L.b, i), F, 0, eps);
  tree.push_back(long_edge(at(L.b, 1), tk));

  for (int i = 2; i <= big_m; ++i) tree.push_back(long_edge(at(L.c, i - 1), at(L.c, i)));
  for (int i = 1; i <= big_m; ++i) bld.edge(at(L.c, i), L.t, F, 0, eps);
  tree.push_back(long_edge(sk, at(L.c, 1)));

  for (int i = 2; i <= big_m; ++i) tree.push_back(long_edge(at(L.d, i - 1), at(L.d, i)));
  for (int i = 1; i <= big_m; ++i) {
    const EdgeId e = bld.edge(at(L.d, i), L.t, F, 0, eps);
    if (i == 1) tree.push_back(e);
  }
  tree.push_back(short_edge(tk, at(L.d, 1)));

  L.q_edges.push_back(long_edge(L.s, at(L.q, 1)));
  for (int i = 2; i <= 2 * big_m; ++i) L.q_edges.push_back(long_edge(at(L.q, i - 1), at(L.q, i)));
  L.q_edges.push_back(long_edge(at(L.q, 2 * big_m), L.t));
  tree.insert(tree.end(), L.q_edges.begin(), L.q_edges.end());

  const Rational total = 2 * Rational(big_m) * F;
  inst.network.set_budget(L.s, total);
  inst.network.set_budget(L.t, Rational(-total));

  TreeBasis basis{std::vector<EdgeState>(static_cast<size_t>(inst.network.edge_count()),
                                         EdgeState::Lower),
                  L.s};
  for (EdgeId e : tree) basis.state[static_cast<size_t>(e)] = EdgeState::Tree;
  inst.initial_basis = std::move(basis);

  if (F.get_den() != 1) throw Error(ErrorCode::InvalidArgument, "non-integral F");
  g.predicted_nondegenerate = 2 * static_cast<std::int64_t>(big_m) * F.get_num().get_si();
  g.instance = std::move(inst);
  return g;
}

QlessInstance remove_q_chain(const GeneratedNs& g) {
  const FlowNetwork& net = g.instance.network;
  std::vector<char> is_q(static_cast<size_t>(net.node_count()), 0);
  for (NodeId q : g.layout.q) is_q[static_cast<size_t>(q)] = 1;

  QlessInstance out;
  out.node_map.assign(static_cast<size_t>(net.node_count()), -1);
  NodeId next = 0;
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (!is_q[static_cast<size_t>(v)]) out.node_map[static_cast<size_t>(v)] = next++;
  }
  out.instance.network = FlowNetwork(next);
  out.instance.phi = g.instance.phi;
  out.edge_map.assign(static_cast<size_t>(net.edge_count()), -1);
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    const Edge& edge = net.edge(e);
    if (is_q[static_cast<size_t>(edge.tail)] || is_q[static_cast<size_t>(edge.head)]) continue;
    out.edge_map[static_cast<size_t>(e)] = out.instance.network.add_edge(
        out.node_map[static_cast<size_t>(edge.tail)], out.node_map[static_cast<size_t>(edge.head)],
        edge.capacity, edge.cost, edge.leaving_rank);
    out.instance.intervals.push_back(g.instance.intervals[static_cast<size_t>(e)]);
  }
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (out.node_map[static_cast<size_t>(v)] >= 0) {
      out.instance.network.set_budget(out.node_map[static_cast<size_t>(v)], net.budget(v));
    }
  }
  return out;
}

SmoothedInstance gen_random_smoothed(int n, int m, const Rational& phi, std::uint64_t seed) {
  require(n >= 1, "n must be positive");
  require(m >= 0 && static_cast<std::int64_t>(m) * 2 <= static_cast<std::int64_t>(n) * (n - 1),
          "m must be at most n(n-1)/2");
  require(phi >= 1, "phi must be at least 1");

  auto rng = make_rng(seed, 0x52414e44u);
  std::set<std::pair<int, int>> used;  // unordered pairs (min, max)
  std::vector<std::pair<int, int>> edges;
  auto orient = [&](int a, int b) {
    return rng() & 1 ? std::pair<int, int>{a, b} : std::pair<int, int>{b, a};
  };
  if (m >= n - 1) {
    for (int v = 1; v < n; ++v) {
      const int p = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(v)));
      used.insert({p, v});
      edges.push_back(orient(p, v));
    }
  }
  std::vector<std::pair<int, int>> pool;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (!used.contains({a, b})) pool.emplace_back(a, b);
    }
  }
  const size_t extra = static_cast<size_t>(m) - edges.size();
  for (size_t i = 0; i < extra; ++i) {
    const auto j = i + static_cast<size_t>(uniform_below(rng, pool.size() - i));
    std::swap(pool[i], pool[j]);
    edges.push_back(orient(pool[i].first, pool[i].second));
  }

  SmoothedInstance inst;
  inst.network = FlowNetwork(n);
  inst.phi = phi;
  const Rational width = 1 / phi;
  const Rational grid{mpz_class(std::to_string(kCostGrid))};
  std::vector<Rational> balance(static_cast<size_t>(n));
  for (const auto& [a, b] : edges) {
    const auto cap = static_cast<long>(1 + uniform_below(rng, 10));
    const Rational draw{mpz_class(std::to_string(rng() >> 32))};
    Rational lo = (1 - width) * draw / grid;
    inst.network.add_edge(a, b, cap, lo);
    inst.intervals.push_back(CostInterval{std::move(lo), width});
    const auto f = static_cast<long>(uniform_below(rng, static_cast<std::uint64_t>(cap) + 1));
    balance[static_cast<size_t>(a)] += f;
    balance[static_cast<size_t>(b)] -= f;
  }
  for (NodeId v = 0; v < n; ++v) inst.network.set_budget(v, balance[static_cast<size_t>(v)]);
  return inst;
}

}  // namespace mcflab
