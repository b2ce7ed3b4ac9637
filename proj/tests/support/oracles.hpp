#pragma once

// Independent reference computations used by the tests. None of these call
// into the solver code they check; they only read the core data types.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "mcflab/network.hpp"

namespace oracle {

using mcflab::FlowNetwork;
using mcflab::Flow;
using mcflab::Rational;
using mcflab::ResidualNetwork;

/// Sum of c(e) f(e), accumulated from the last edge to the first.
Rational naive_cost(const FlowNetwork& net, const Flow& f);

/// b(v) + inflow(v) - outflow(v) per node; all zero for a feasible flow.
std::vector<Rational> imbalance(const FlowNetwork& net, const Flow& f);

bool conserves(const FlowNetwork& net, const Flow& f);
bool within_capacity(const FlowNetwork& net, const Flow& f);

struct SimpleCycle {
  std::vector<int> edges;  // residual edge indices in order
  Rational total;
  Rational mean;
};

/// Every simple directed cycle exactly once, found by extending paths from
/// each start node through strictly larger nodes only.
std::vector<SimpleCycle> all_simple_cycles(const ResidualNetwork& r);

/// Minimum mean over all simple cycles, or nullopt when acyclic.
std::optional<Rational> min_cycle_mean(const ResidualNetwork& r);

/// Minimum cost of a walk with exactly k edges ending at v, over every start
/// node, by explicit recursion over walks.
std::optional<Rational> min_walk_cost(const ResidualNetwork& r, int k, int v);

/// Floyd-Warshall negative-cycle test.
bool has_negative_cycle(const ResidualNetwork& r);

struct SimplePath {
  std::vector<int> nodes;
  std::vector<int> edges;
  Rational cost;
};

/// All simple s-t paths in the residual network.
std::vector<SimplePath> all_simple_paths(const ResidualNetwork& r, int s, int t);

/// All simple s-t paths in the network itself (forward edges only).
std::vector<SimplePath> all_network_paths(const FlowNetwork& net, int s, int t);

/// Random residual network with `n` nodes, up to `m` edges (no self loops),
/// costs in {-3..3}/{1..3}, unit capacities.
ResidualNetwork random_residual(std::mt19937_64& rng, int n, int m);

/// Random network without antiparallel pairs: capacities 1..5 (or unbounded
/// with probability 1/8 when `allow_unbounded`), integer costs in [-2, 6].
FlowNetwork random_network(std::mt19937_64& rng, int n, int m, bool allow_unbounded = false);

}  // namespace oracle
