#include <gtest/gtest.h>

#include <algorithm>

#include "expect_error.hpp"
#include "mcflab/generators.hpp"
#include "mcflab/mmcc.hpp"
#include "mcflab/netsimplex.hpp"
#include "oracles.hpp"

using namespace mcflab;

namespace {

Rational q(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

TreeBasis basis_of(std::initializer_list<EdgeState> states, NodeId root = 0) {
  return TreeBasis{std::vector<EdgeState>(states), root};
}

constexpr auto T = EdgeState::Tree;
constexpr auto L = EdgeState::Lower;
constexpr auto U = EdgeState::Upper;

// 0 -> 1 -> 2 on the tree, plus the shortcut (0,2).
FlowNetwork path_with_shortcut(long supply, long shortcut_cap) {
  FlowNetwork net(3);
  net.add_edge(0, 1, 10, 1);
  net.add_edge(1, 2, 10, 1);
  net.add_edge(0, 2, shortcut_cap, 0);
  net.set_budget(0, supply);
  net.set_budget(2, -supply);
  return net;
}

void expect_basis_invariants(const FlowNetwork& net, const SpanningTreeStructure& s) {
  EXPECT_NO_THROW(check_spanning_tree(net, s.basis()));
  EXPECT_EQ(s.potentials[static_cast<size_t>(s.root)], 0);
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    if (s.state[static_cast<size_t>(e)] == EdgeState::Tree) {
      EXPECT_EQ(reduced_cost(net, s.potentials, e), 0) << "tree edge " << e;
    }
  }
  EXPECT_EQ(s.potentials, compute_potentials(net, s.basis()));
}

}  // namespace

TEST(SpanningTree, RejectsNonSpanningSets) {
  const FlowNetwork net = path_with_shortcut(1, 1);
  EXPECT_NO_THROW(check_spanning_tree(net, basis_of({T, T, L})));
  EXPECT_MCF_ERROR(check_spanning_tree(net, basis_of({T, T, T})), ErrorCode::InvalidArgument);
  EXPECT_MCF_ERROR(check_spanning_tree(net, basis_of({T, L, L})), ErrorCode::InvalidArgument);
  EXPECT_MCF_ERROR(check_spanning_tree(net, basis_of({T, L})), ErrorCode::InvalidArgument);
}

TEST(TreeFlow, AllLowerStarWithZeroBudgetsIsZero) {
  FlowNetwork net(4);
  net.add_edge(0, 1, 3, 0);
  net.add_edge(0, 2, 3, 0);
  net.add_edge(3, 0, 3, 0);
  net.add_edge(1, 2, 3, 0);
  EXPECT_EQ(tree_flow(net, basis_of({T, T, T, L})), Flow::zero(net));
}

TEST(TreeFlow, UpperEdgesAndBudgets) {
  const FlowNetwork net = path_with_shortcut(3, 1);
  const Flow f = tree_flow(net, basis_of({T, T, U}));
  EXPECT_EQ(f[0], 2);
  EXPECT_EQ(f[1], 2);
  EXPECT_EQ(f[2], 1);
}

TEST(TreeFlow, InfeasibleStructure) {
  // Pushing the shortcut to U with zero supply needs negative tree flow.
  const FlowNetwork net = path_with_shortcut(0, 1);
  EXPECT_MCF_ERROR(tree_flow(net, basis_of({T, T, U})), ErrorCode::InfeasibleStructure);
  EXPECT_NO_THROW(solve_tree_flow(net, basis_of({T, T, U})));
}

TEST(TreeFlow, ConservesOnRandomStructures) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const SmoothedInstance inst = gen_random_smoothed(7, 12, q(4), trial + 1);
    const FlowNetwork& net = inst.network;
    const InitialStructure init = build_initial_structure(net, initial_feasible_flow(net));
    TreeBasis b = init.basis;
    for (auto& st : b.state) {
      if (st != EdgeState::Tree) st = rng() % 2 ? EdgeState::Upper : EdgeState::Lower;
    }
    const Flow f = solve_tree_flow(net, b);
    EXPECT_TRUE(oracle::conserves(net, f));
    for (EdgeId e = 0; e < net.edge_count(); ++e) {
      if (b.state[static_cast<size_t>(e)] == EdgeState::Lower) EXPECT_EQ(f[e], 0);
      if (b.state[static_cast<size_t>(e)] == EdgeState::Upper) EXPECT_EQ(f[e], net.edge(e).capacity.value());
    }
  }
}

TEST(Potentials, OneEdgeTree) {
  FlowNetwork net(2);
  net.add_edge(0, 1, 1, 5);
  EXPECT_EQ(compute_potentials(net, basis_of({T})), (std::vector<Rational>{0, -5}));
  FlowNetwork rev(2);
  rev.add_edge(1, 0, 1, 5);
  EXPECT_EQ(compute_potentials(rev, basis_of({T})), (std::vector<Rational>{0, 5}));
}

TEST(Potentials, NonZeroRoot) {
  const FlowNetwork net = path_with_shortcut(1, 1);
  const auto pi = compute_potentials(net, basis_of({T, T, L}, 2));
  EXPECT_EQ(pi, (std::vector<Rational>{2, 1, 0}));
}

TEST(Entering, MaxAbsoluteReducedCost) {
  // Star tree from 0 with zero costs, so reduced costs are the edge costs.
  FlowNetwork net(5);
  net.add_edge(0, 1, 1, 0);
  net.add_edge(0, 2, 1, 0);
  net.add_edge(0, 3, 1, 0);
  net.add_edge(0, 4, 1, 0);
  net.add_edge(1, 2, 1, -1);
  net.add_edge(2, 3, 1, -3);
  net.add_edge(3, 4, 1, 2);
  net.add_edge(4, 1, 1, 3);  // in L with positive reduced cost: fine
  const auto s = make_structure(net, basis_of({T, T, T, T, L, L, U, L}));
  EXPECT_EQ(entering_edge(net, s), std::optional<EdgeId>(5));
  const auto opt = make_structure(net, basis_of({T, T, T, T, U, U, L, L}));
  EXPECT_FALSE(entering_edge(net, opt));
}

TEST(Entering, TiesGoToLowestId) {
  FlowNetwork net(3);
  net.add_edge(0, 1, 1, 0);
  net.add_edge(0, 2, 1, 0);
  net.add_edge(1, 2, 1, -2);
  net.add_edge(2, 1, 1, -2);
  const auto s = make_structure(net, basis_of({T, T, L, L}));
  EXPECT_EQ(entering_edge(net, s), std::optional<EdgeId>(2));
}

TEST(Pivot, EnteringEdgeCanLeaveAgain) {
  const FlowNetwork net = path_with_shortcut(3, 1);
  const auto s = make_structure(net, basis_of({T, T, L}));
  const Flow f = tree_flow(net, s.basis());
  ASSERT_EQ(entering_edge(net, s), std::optional<EdgeId>(2));
  const PivotResult r = pivot(net, s, f, 2);
  EXPECT_EQ(r.leaving, 2);
  EXPECT_EQ(r.delta, 1);
  EXPECT_FALSE(r.degenerate);
  EXPECT_EQ(r.structure.state, (std::vector<EdgeState>{T, T, U}));
  EXPECT_EQ(r.flow, tree_flow(net, r.structure.basis()));
  EXPECT_EQ(r.cycle.front(), (CycleStep{2, true}));
  EXPECT_EQ(r.cycle.size(), 3u);
}

TEST(Pivot, DegenerateStepStillChangesTree) {
  const FlowNetwork net = path_with_shortcut(0, 1);
  const auto s = make_structure(net, basis_of({T, T, L}));
  const PivotResult r = pivot(net, s, Flow::zero(net), 2);
  EXPECT_TRUE(r.degenerate);
  EXPECT_EQ(r.delta, 0);
  EXPECT_EQ(r.leaving, 0);  // both tree edges block; lowest id
  EXPECT_EQ(r.structure.state, (std::vector<EdgeState>{L, T, T}));
  EXPECT_EQ(r.flow, Flow::zero(net));
  expect_basis_invariants(net, r.structure);
}

TEST(Pivot, LeavingRankOverridesId) {
  FlowNetwork net(3);
  net.add_edge(0, 1, 10, 1, 1);
  net.add_edge(1, 2, 10, 1, 0);
  net.add_edge(0, 2, 1, 0, 1);
  const auto s = make_structure(net, basis_of({T, T, L}));
  EXPECT_EQ(pivot(net, s, Flow::zero(net), 2).leaving, 1);
}

TEST(Pivot, StronglyFeasibleTakesLastBlockingEdgeFromApex) {
  const FlowNetwork net = path_with_shortcut(0, 1);
  const auto s = make_structure(net, basis_of({T, T, L}));
  PivotOptions opt;
  opt.leaving_rule = LeavingRule::StronglyFeasible;
  // Apex is the root 0: 0 -> 2 over the shortcut, then 2 -> 1 -> 0 backward.
  EXPECT_EQ(pivot(net, s, Flow::zero(net), 2, opt).leaving, 0);
}

TEST(Pivot, UnboundedCycle) {
  FlowNetwork net(3);
  net.add_edge(0, 1, Capacity::unbounded(), 1);
  net.add_edge(1, 2, Capacity::unbounded(), 1);
  net.add_edge(2, 0, Capacity::unbounded(), -5);
  const auto s = make_structure(net, basis_of({T, T, L}));
  ASSERT_EQ(entering_edge(net, s), std::optional<EdgeId>(2));
  EXPECT_MCF_ERROR(pivot(net, s, Flow::zero(net), 2), ErrorCode::UnboundedCycle);
  EXPECT_MCF_ERROR(ns_solve(net, s.basis()), ErrorCode::UnboundedCycle);
}

TEST(NsSolve, AlreadyOptimal) {
  const FlowNetwork net = path_with_shortcut(1, 1);
  const NsTrace t = ns_solve(net, basis_of({L, T, T}));
  EXPECT_TRUE(t.pivots.empty());
  EXPECT_EQ(t.final_flow[2], 1);
}

TEST(NsSolve, IncrementalAndFullRecomputeAgree) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const SmoothedInstance inst = gen_random_smoothed(8, 16, q(8), seed);
    const FlowNetwork net = realize(inst, sample_costs(inst, seed));
    const TreeBasis b = build_initial_structure(net, initial_feasible_flow(net)).basis;
    NsOptions inc;
    NsOptions full;
    full.pivot.potential_update = PotentialUpdate::FullRecompute;
    const NsTrace a = ns_solve(net, b, inc);
    const NsTrace c = ns_solve(net, b, full);
    ASSERT_EQ(a.pivots.size(), c.pivots.size());
    for (size_t i = 0; i < a.pivots.size(); ++i) {
      EXPECT_EQ(a.pivots[i].entering, c.pivots[i].entering);
      EXPECT_EQ(a.pivots[i].leaving, c.pivots[i].leaving);
    }
    EXPECT_EQ(a.final_structure.potentials, c.final_structure.potentials);
    EXPECT_EQ(a.final_flow, c.final_flow);
  }
}

TEST(NsSolve, PivotInvariantsOnRandomInstances) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const SmoothedInstance inst = gen_random_smoothed(7, 13, q(4), seed);
    const FlowNetwork net = realize(inst, sample_costs(inst, seed));
    const TreeBasis b = build_initial_structure(net, initial_feasible_flow(net)).basis;
    SpanningTreeStructure s = make_structure(net, b);
    Flow f = tree_flow(net, b);
    while (auto e = entering_edge(net, s)) {
      const Rational rc = reduced_cost(net, s.potentials, *e);
      EXPECT_TRUE(s.state[static_cast<size_t>(*e)] == EdgeState::Lower ? rc < 0 : rc > 0);
      const Rational before = flow_cost(net, f);
      PivotResult r = pivot(net, s, f, *e);
      EXPECT_EQ(r.degenerate, r.delta == 0);
      const Rational after = flow_cost(net, r.flow);
      if (r.degenerate) {
        EXPECT_EQ(after, before);
      } else {
        EXPECT_LT(after, before);
      }
      EXPECT_EQ(r.flow, tree_flow(net, r.structure.basis()));
      expect_basis_invariants(net, r.structure);
      s = std::move(r.structure);
      f = std::move(r.flow);
    }
    EXPECT_FALSE(oracle::has_negative_cycle(residual(net, f)));
  }
}

TEST(NsSolve, IterationCap) {
  auto g = gen_ns_lower_bound({6, 10, q(64)}, 1);
  const FlowNetwork net = realize(g.instance, sample_costs(g.instance, 1));
  NsOptions opt;
  opt.iteration_cap = 10;
  EXPECT_MCF_ERROR(ns_solve(net, *g.instance.initial_basis, opt), ErrorCode::IterationCapExceeded);
  opt.on_cap = CapPolicy::ReturnPartial;
  const NsTrace t = ns_solve(net, *g.instance.initial_basis, opt);
  EXPECT_EQ(t.pivots.size(), 10u);
  EXPECT_EQ(t.termination, Termination::IterationCapHit);
}

TEST(NsSolve, LowerBoundInstance) {
  auto g = gen_ns_lower_bound({6, 10, q(64)}, 2);
  const FlowNetwork net = realize(g.instance, sample_costs(g.instance, 2));
  const TreeBasis& b = *g.instance.initial_basis;

  // Initial flow: 2MF along the Q chain only.
  const Flow f0 = tree_flow(net, b);
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    const bool on_q = std::count(g.layout.q_edges.begin(), g.layout.q_edges.end(), e) > 0;
    EXPECT_EQ(f0[e], on_q ? Rational(2 * 6 * 10) : Rational(0)) << "edge " << e;
  }

  const NsTrace t = ns_solve(net, b);
  ASSERT_FALSE(t.pivots.empty());
  const EdgeId first = t.pivots.front().entering;
  EXPECT_TRUE(std::count(g.layout.uw_edges.begin(), g.layout.uw_edges.end(), first) > 0);
  EXPECT_EQ(t.nondegenerate_count(), 120);
  EXPECT_TRUE(verify_optimality(net, t.final_flow).optimal());
  for (const auto& p : t.pivots) EXPECT_EQ(p.degenerate, p.delta == 0);
}

TEST(InitialStructure, FromRandomFeasibleFlows) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const SmoothedInstance inst = gen_random_smoothed(8, 15, q(4), seed);
    const FlowNetwork net = realize(inst, sample_costs(inst, seed));
    const Flow start = initial_feasible_flow(net);
    const InitialStructure init = build_initial_structure(net, start);
    EXPECT_NO_THROW(check_spanning_tree(net, init.basis));
    EXPECT_EQ(tree_flow(net, init.basis), init.flow);
    EXPECT_LE(flow_cost(net, init.flow), flow_cost(net, start));
    for (EdgeId e = 0; e < net.edge_count(); ++e) {
      const auto st = init.basis.state[static_cast<size_t>(e)];
      if (st == EdgeState::Lower) EXPECT_EQ(init.flow[e], 0);
      if (st == EdgeState::Upper) EXPECT_EQ(init.flow[e], net.edge(e).capacity.value());
    }
  }
}

TEST(InitialStructure, CancelsFreeCycles) {
  // Two parallel routes 0->1->3 and 0->2->3, both half used: a free cycle.
  FlowNetwork net(4);
  net.add_edge(0, 1, 4, 1);
  net.add_edge(1, 3, 4, 1);
  net.add_edge(0, 2, 4, 2);
  net.add_edge(2, 3, 4, 2);
  net.set_budget(0, 4);
  net.set_budget(3, -4);
  Flow f = Flow::zero(net);
  f[0] = f[1] = f[2] = f[3] = 2;
  const InitialStructure init = build_initial_structure(net, f);
  EXPECT_EQ(flow_cost(net, init.flow), 8);  // everything moved to the cheap route
  EXPECT_NO_THROW(check_spanning_tree(net, init.basis));
}

TEST(InitialStructure, Disconnected) {
  FlowNetwork net(4);
  net.add_edge(0, 1, 1, 0);
  net.add_edge(2, 3, 1, 0);
  EXPECT_MCF_ERROR(build_initial_structure(net, Flow::zero(net)), ErrorCode::NotConnected);
}
