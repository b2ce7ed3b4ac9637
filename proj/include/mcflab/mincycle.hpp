#pragma once

#include <optional>
#include <vector>

#include "mcflab/network.hpp"

namespace mcflab {

/// Karp's walk table: walks[k][v] is the minimum cost of a k-edge walk
/// ending at v when every node starts at level 0 with cost 0, or nullopt when
/// no such walk exists. pred[k][v] is the residual edge index that attains
/// it, lowest index on ties.
struct KarpTable {
  std::vector<std::vector<std::optional<Rational>>> walks;
  std::vector<std::vector<int>> pred;
};

KarpTable karp_walk_table(const ResidualNetwork& r);

/// Minimum-mean directed cycle by Karp's dynamic program, or nullopt when the
/// network is acyclic. The cycle is simple and its mean_cost is exactly the
/// optimum.
std::optional<Cycle> karp_min_mean(const ResidualNetwork& r);

inline constexpr int kBruteForceNodeLimit = 12;

/// Exhaustive search over all simple directed cycles. Throws TooLarge above
/// `node_limit` nodes. Intended as a test oracle; sparse graphs stay cheap
/// well past the default limit.
std::optional<Cycle> brute_force_min_mean(const ResidualNetwork& r,
                                          int node_limit = kBruteForceNodeLimit);

}  // namespace mcflab
