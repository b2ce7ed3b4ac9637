#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mcflab/netsimplex.hpp"
#include "mcflab/network.hpp"

namespace mcflab {

/// Uniform cost density on [lo, lo + width].
struct CostInterval {
  Rational lo;
  Rational width;

  Rational hi() const { return lo + width; }
  friend bool operator==(const CostInterval&, const CostInterval&) = default;
};

/// Flow network whose edge costs are drawn from intervals. The network's own
/// cost field holds each interval's lower end until costs are realized.
struct SmoothedInstance {
  FlowNetwork network;
  std::vector<CostInterval> intervals;
  Rational phi;
  std::optional<Flow> starting_flow;
  std::optional<TreeBasis> initial_basis;
};

inline constexpr std::uint64_t kCostGrid = std::uint64_t{1} << 32;

/// cost(e) = lo + width * r / 2^32 with r drawn from a generator seeded by
/// (seed, e), so each edge's cost depends only on the seed and its index.
std::vector<Rational> sample_costs(const SmoothedInstance& inst, std::uint64_t seed);

/// Copy of the instance's network carrying `costs`.
FlowNetwork realize(const SmoothedInstance& inst, std::span<const Rational> costs);

/// floor(log2(x)) for x >= 1.
int floor_log2(const Rational& x);

// ---- MMCC lower bound, general phi ------------------------------------------------

struct MmccGeneralParams {
  int n = 0;
  int m = 0;
  Rational phi;

  int k_w() const { return (floor_log2(phi) - 4) / 2; }
  int k_x() const { return (floor_log2(phi) - 5) / 2; }
};

/// Node roles of an MMCC lower-bound instance. For the general family
/// a_in == a_out and c_in == c_out; for the large-phi family they are the
/// ends of the split paths.
struct MmccLayout {
  NodeId a_in = 0;   // receives the (w_i, a) residual edges
  NodeId a_out = 0;  // source of the (a, u_i) edges
  NodeId b = 0;
  NodeId c_in = 0;
  NodeId c_out = 0;
  NodeId d = 0;
  std::vector<NodeId> u, v, w, x;
  std::vector<NodeId> a_path, c_path;  // interior nodes of the split paths
};

struct GeneratedMmcc {
  SmoothedInstance instance;
  MmccLayout layout;
  /// Iterations MMCC needs from the starting flow: m (k_w + k_x), or 2mn.
  std::int64_t predicted_iterations = 0;
};

GeneratedMmcc gen_mmcc_general(const MmccGeneralParams& params, std::uint64_t euv_seed);

/// Large-phi variant with phi = 400000 n^2 and |W| = |X| = n.
GeneratedMmcc gen_mmcc_large_phi(int n, int m, std::uint64_t euv_seed);

// ---- Network simplex lower bound ----------------------------------------------------

struct NsParams {
  int n = 0;
  int m = 0;
  Rational phi;

  int k() const { return floor_log2(phi) - 5; }
  int big_m() const;  // min{n, 2^floor(log phi) / 4 - 2}
};

struct NsLayout {
  NodeId s = 0;
  NodeId t = 0;
  std::vector<NodeId> u, w;
  std::vector<NodeId> s_level, t_level;  // s_1..s_k, t_1..t_k
  std::vector<NodeId> a, b, c, d, q;
  std::vector<EdgeId> uw_edges;
  std::vector<EdgeId> q_edges;  // (s,q_1), (q_1,q_2), ..., (q_2M, t)
};

struct GeneratedNs {
  SmoothedInstance instance;  // carries initial_basis
  NsLayout layout;
  int k = 0;
  int big_m = 0;
  Rational flow_f;                      // max s_k-t_k flow in G_k
  std::vector<Rational> level_capacity;  // N_1..N_k
  std::int64_t predicted_nondegenerate = 0;  // 2MF
};

GeneratedNs gen_ns_lower_bound(const NsParams& params, std::uint64_t euw_seed);

/// The instance without the Q chain: nodes q_i and their edges removed,
/// remaining ids compacted in order. `node_map[v]` is the new id or -1, and
/// `edge_map` likewise.
struct QlessInstance {
  SmoothedInstance instance;
  std::vector<NodeId> node_map;
  std::vector<EdgeId> edge_map;
};

QlessInstance remove_q_chain(const GeneratedNs& g);

// ---- Random instances --------------------------------------------------------------

/// Random simple digraph without antiparallel pairs, weakly connected when
/// m >= n - 1, capacities in {1..10}, width-1/phi intervals, and budgets
/// induced by a random integral flow so the instance is always feasible.
SmoothedInstance gen_random_smoothed(int n, int m, const Rational& phi, std::uint64_t seed);

}  // namespace mcflab
