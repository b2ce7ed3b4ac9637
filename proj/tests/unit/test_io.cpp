#include <gtest/gtest.h>

#include <sstream>

#include "expect_error.hpp"
#include "mcflab/generators.hpp"
#include "mcflab/io.hpp"
#include "mcflab/mmcc.hpp"

using namespace mcflab;

namespace {

void expect_same_network(const FlowNetwork& a, const FlowNetwork& b) {
  ASSERT_EQ(a.node_count(), b.node_count());
  ASSERT_EQ(a.edge_count(), b.edge_count());
  for (EdgeId e = 0; e < a.edge_count(); ++e) {
    EXPECT_EQ(a.edge(e).tail, b.edge(e).tail);
    EXPECT_EQ(a.edge(e).head, b.edge(e).head);
    EXPECT_EQ(a.edge(e).capacity, b.edge(e).capacity);
    EXPECT_EQ(a.edge(e).cost, b.edge(e).cost);
    EXPECT_EQ(a.edge(e).leaving_rank, b.edge(e).leaving_rank);
  }
  for (NodeId v = 0; v < a.node_count(); ++v) EXPECT_EQ(a.budget(v), b.budget(v));
}

void expect_same_instance(const SmoothedInstance& a, const SmoothedInstance& b) {
  expect_same_network(a.network, b.network);
  EXPECT_EQ(a.intervals, b.intervals);
  EXPECT_EQ(a.phi, b.phi);
  EXPECT_EQ(a.starting_flow, b.starting_flow);
  EXPECT_EQ(a.initial_basis, b.initial_basis);
}

SmoothedInstance round_trip(const SmoothedInstance& inst) {
  std::stringstream ss;
  write_smoothed(ss, inst);
  return read_smoothed(ss);
}

std::string parse_error_of(const std::string& text) {
  std::istringstream in(text);
  try {
    read_smoothed(in);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Dimacs, ReadsTheSmallExample) {
  std::istringstream in("c two nodes\np min 2 1\nn 1 3\nn 2 -3\na 1 2 0 1 3\n");
  const FlowNetwork net = read_dimacs(in);
  ASSERT_EQ(net.node_count(), 2);
  ASSERT_EQ(net.edge_count(), 1);
  EXPECT_EQ(net.edge(0).tail, 0);
  EXPECT_EQ(net.edge(0).head, 1);
  EXPECT_EQ(net.edge(0).capacity, Capacity(1));
  EXPECT_EQ(net.edge(0).cost, 3);
  EXPECT_EQ(net.budget(0), 3);
}

TEST(Dimacs, RationalsAndUnboundedCapacities) {
  std::istringstream in("p min 3 2\na 1 2 0 inf -1/2\na 2 3 0 7/3 0\n");
  const FlowNetwork net = read_dimacs(in);
  EXPECT_TRUE(net.edge(0).capacity.is_unbounded());
  EXPECT_EQ(net.edge(0).cost, Rational(-1, 2));
  EXPECT_EQ(net.edge(1).capacity, Capacity(Rational(7, 3)));

  std::stringstream ss;
  write_dimacs(ss, net);
  expect_same_network(net, read_dimacs(ss));
}

TEST(Dimacs, MalformedInputCitesTheLine) {
  auto error_of = [](const std::string& text) -> std::string {
    std::istringstream in(text);
    try {
      read_dimacs(in);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ParseError);
      return e.what();
    }
    return "";
  };
  EXPECT_NE(error_of("p min 2 1\nc ok\na 1 3 0 1 1\n").find("line 3"), std::string::npos);
  EXPECT_NE(error_of("p max 2 1\n").find("line 1"), std::string::npos);
  EXPECT_NE(error_of("p min 2 1\na 1 2 1 1 1\n").find("line 2"), std::string::npos);
  EXPECT_NE(error_of("p min 2 1\na 1 2 0 x 1\n").find("line 2"), std::string::npos);
  EXPECT_NE(error_of("p min 2 1\nn 1 1/0\n").find("line 2"), std::string::npos);
  EXPECT_NE(error_of("a 1 2 0 1 1\n").find("line 1"), std::string::npos);
  EXPECT_NE(error_of("p min 2 2\na 1 2 0 1 1\n"), "");
}

TEST(Dimacs, MissingFileIsAnIoError) {
  EXPECT_MCF_ERROR(read_dimacs_file("/nonexistent/mcflab.dimacs"), ErrorCode::Io);
}

TEST(Smoothed, RoundTripsEveryGenerator) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    expect_same_instance(gen_mmcc_general({6, 12, Rational(256)}, seed).instance,
                         round_trip(gen_mmcc_general({6, 12, Rational(256)}, seed).instance));
    const auto h = gen_mmcc_large_phi(4, 9, seed);
    expect_same_instance(h.instance, round_trip(h.instance));
    const auto ns = gen_ns_lower_bound({6, 10, Rational(64)}, seed);
    expect_same_instance(ns.instance, round_trip(ns.instance));
    const auto r = gen_random_smoothed(7, 12, Rational(3), seed);
    expect_same_instance(r, round_trip(r));
  }
}

TEST(Smoothed, WriteIsStable) {
  const auto g = gen_ns_lower_bound({6, 10, Rational(64)}, 2);
  std::stringstream a, b;
  write_smoothed(a, g.instance);
  write_smoothed(b, round_trip(g.instance));
  EXPECT_EQ(a.str(), b.str());
}

TEST(Smoothed, RequiresPhiAndIntervals) {
  EXPECT_NE(parse_error_of("p min 2 1\na 1 2 0 1 0\ni 1 2 0 1\n").find("phi"), std::string::npos);
  EXPECT_NE(parse_error_of("p min 2 1\nphi 4\na 1 2 0 1 0\n"), "");
  EXPECT_NE(parse_error_of("p min 2 1\nphi 4\na 1 2 0 1 0\ni 2 1 0 1\n").find("line 4"),
            std::string::npos);
  EXPECT_NE(parse_error_of("p min 2 1\nphi 4\na 1 2 0 1 0\ni 1 2 0 1\nt 9\n").find("line 5"),
            std::string::npos);
}

TEST(Smoothed, ReadsExtensionLines) {
  std::istringstream in(
      "p min 3 2\nn 1 1\nn 3 -1\nphi 8\n"
      "a 1 2 0 1 0\na 2 3 0 inf 1/2\n"
      "i 1 2 0 1/8\ni 2 3 1/2 1/4\n"
      "f 1 2 1\nf 2 3 1\nr 2 3 5\nroot 2\nt 1 2\n");
  const SmoothedInstance inst = read_smoothed(in);
  EXPECT_EQ(inst.phi, 8);
  EXPECT_EQ(inst.intervals[1], (CostInterval{Rational(1, 2), Rational(1, 4)}));
  ASSERT_TRUE(inst.starting_flow);
  EXPECT_EQ((*inst.starting_flow)[1], 1);
  EXPECT_EQ(inst.network.edge(1).leaving_rank, 5);
  ASSERT_TRUE(inst.initial_basis);
  EXPECT_EQ(inst.initial_basis->root, 1);
  EXPECT_EQ(inst.initial_basis->state,
            (std::vector<EdgeState>{EdgeState::Tree, EdgeState::Tree}));
}

TEST(FlowFiles, RoundTrip) {
  const auto g = gen_mmcc_general({6, 12, Rational(64)}, 1);
  const FlowNetwork net = realize(g.instance, sample_costs(g.instance, 1));
  const Flow f = mmcc_solve(net, g.instance.starting_flow).final_flow;
  std::stringstream ss;
  write_flow(ss, net, f);
  EXPECT_EQ(read_flow(ss, net), f);
}

TEST(FlowFiles, UnknownArcIsAnError) {
  FlowNetwork net(2);
  net.add_edge(0, 1, 1, 0);
  std::istringstream in("f 2 1 1\n");
  EXPECT_MCF_ERROR(read_flow(in, net), ErrorCode::ParseError);
}

TEST(TraceCsv, Headers) {
  FlowNetwork net(3);
  net.add_edge(0, 1, 2, 1);
  net.add_edge(1, 2, 2, 1);
  net.add_edge(0, 2, 2, 5);
  net.set_budget(0, 2);
  net.set_budget(2, -2);
  Flow f = Flow::zero(net);
  f[2] = 2;
  std::ostringstream mm;
  write_trace_csv(mm, mmcc_solve(net, f));
  EXPECT_EQ(mm.str(), "iteration,mu,delta,cycle_length,cycle_nodes\n1,-1,2,3,3 1 2\n");

  std::ostringstream ss;
  write_trace_csv(ss, ssp_solve(net, 0, 2, 2));
  EXPECT_EQ(ss.str(), "augmentation,path_cost,amount,path\n1,2,2,1 2 3\n");

  std::ostringstream ns;
  write_trace_csv(ns, NsTrace{});
  EXPECT_EQ(ns.str(), "pivot,entering,leaving,delta,degenerate,reduced_cost\n");
}
