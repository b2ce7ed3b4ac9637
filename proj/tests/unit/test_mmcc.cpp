#include <gtest/gtest.h>

#include <random>

#include "expect_error.hpp"
#include "mcflab/generators.hpp"
#include "mcflab/mincycle.hpp"
#include "mcflab/mmcc.hpp"
#include "oracles.hpp"

using namespace mcflab;

namespace {

Rational q(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

FlowNetwork realized_random(int n, int m, std::uint64_t seed) {
  const SmoothedInstance inst = gen_random_smoothed(n, m, q(4), seed);
  return realize(inst, sample_costs(inst, seed));
}

}  // namespace

TEST(InitialFeasibleFlow, Examples) {
  FlowNetwork zero(3);
  zero.add_edge(0, 1, 1, 0);
  EXPECT_EQ(initial_feasible_flow(zero), Flow::zero(zero));

  FlowNetwork one(2);
  one.add_edge(0, 1, 1, 0);
  one.set_budget(0, 1);
  one.set_budget(1, -1);
  EXPECT_EQ(initial_feasible_flow(one)[0], 1);

  one.set_budget(0, 2);
  one.set_budget(1, -2);
  EXPECT_MCF_ERROR(initial_feasible_flow(one), ErrorCode::Infeasible);
}

TEST(Mmcc, AlreadyOptimalStartTakesNoIterations) {
  FlowNetwork net(3);
  net.add_edge(0, 1, 2, 1);
  net.add_edge(1, 2, 2, 1);
  net.add_edge(0, 2, 2, 5);
  net.set_budget(0, 2);
  net.set_budget(2, -2);
  Flow f = Flow::zero(net);
  f[0] = f[1] = 2;
  const MmccTrace t = mmcc_solve(net, f);
  EXPECT_TRUE(t.iterations.empty());
  EXPECT_EQ(t.final_flow, f);
  EXPECT_EQ(t.termination, Termination::Optimal);
}

TEST(Mmcc, CancelsTheCheaperDetour) {
  FlowNetwork net(3);
  net.add_edge(0, 1, 2, 1);
  net.add_edge(1, 2, 2, 1);
  net.add_edge(0, 2, 2, 5);
  net.set_budget(0, 2);
  net.set_budget(2, -2);
  Flow f = Flow::zero(net);
  f[2] = 2;
  const MmccTrace t = mmcc_solve(net, f);
  ASSERT_EQ(t.iterations.size(), 1u);
  EXPECT_EQ(t.iterations[0].mu, -1);
  EXPECT_EQ(t.iterations[0].delta, 2);
  EXPECT_EQ(flow_cost(net, t.final_flow), 4);
}

TEST(Mmcc, RejectsInfeasibleStart) {
  FlowNetwork net(2);
  net.add_edge(0, 1, 1, 0);
  net.set_budget(0, 1);
  net.set_budget(1, -1);
  EXPECT_MCF_ERROR(mmcc_solve(net, Flow::zero(net)), ErrorCode::Infeasible);
}

TEST(Mmcc, IterationCap) {
  auto g = gen_mmcc_general({6, 12, q(64)}, 1);
  const FlowNetwork net = realize(g.instance, sample_costs(g.instance, 1));
  MmccOptions opts;
  opts.iteration_cap = 5;
  EXPECT_MCF_ERROR(mmcc_solve(net, g.instance.starting_flow, opts), ErrorCode::IterationCapExceeded);
  opts.on_cap = CapPolicy::ReturnPartial;
  const MmccTrace t = mmcc_solve(net, g.instance.starting_flow, opts);
  EXPECT_EQ(t.iterations.size(), 5u);
  EXPECT_EQ(t.termination, Termination::IterationCapHit);
  EXPECT_FALSE(check_feasible(net, t.final_flow));
}

TEST(Mmcc, DefaultCapFormula) {
  FlowNetwork net(3);
  net.add_edge(0, 1, 1, 0);
  net.add_edge(1, 2, 1, 0);
  EXPECT_EQ(default_iteration_cap(net), 8 * 3 * 2 * 2 + 3 * 2);
}

TEST(Mmcc, TwelveIterationsOnG6_12_64) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto g = gen_mmcc_general({6, 12, q(64)}, seed);
    const FlowNetwork net = realize(g.instance, sample_costs(g.instance, seed));
    const MmccTrace t = mmcc_solve(net, g.instance.starting_flow);
    EXPECT_EQ(t.iterations.size(), 12u) << "seed " << seed;
    EXPECT_TRUE(verify_optimality(net, t.final_flow).optimal());
  }
}

TEST(Mmcc, TraceInvariantsOnRandomInstances) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const FlowNetwork net = realized_random(7, 14, seed);
    const Flow start = initial_feasible_flow(net);
    const MmccTrace t = mmcc_solve(net, start);
    Flow f = start;
    Rational cost = oracle::naive_cost(net, f);
    for (const auto& it : t.iterations) {
      EXPECT_LT(it.mu, 0);
      EXPECT_GT(it.delta, 0);
      // mu is the true minimum mean in the residual before the step.
      EXPECT_EQ(it.mu, *oracle::min_cycle_mean(residual(net, f)));
      augment_cycle_in_place(net, f, it.cycle);
      EXPECT_TRUE(oracle::conserves(net, f));
      EXPECT_TRUE(oracle::within_capacity(net, f));
      const Rational next = oracle::naive_cost(net, f);
      EXPECT_LT(next, cost);
      cost = next;
    }
    EXPECT_EQ(f, t.final_flow);
    EXPECT_FALSE(oracle::has_negative_cycle(residual(net, t.final_flow)));
    EXPECT_FALSE(find_halving_violation(t, net.node_count() * net.edge_count()));
  }
}

TEST(Mmcc, HalvingViolationDetector) {
  MmccTrace t;
  for (long mu : {-8, -7, -4, -3}) t.iterations.push_back(MmccIteration{Cycle{}, Rational(mu), 1});
  EXPECT_FALSE(find_halving_violation(t, 2));  // -4 vs -8, -3 vs -7
  EXPECT_EQ(find_halving_violation(t, 1), std::optional<size_t>(0));  // -7 vs -8
}
