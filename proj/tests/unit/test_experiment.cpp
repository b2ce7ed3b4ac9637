#include <gtest/gtest.h>

#include <sstream>

#include "mcflab/experiment.hpp"

using namespace mcflab;

namespace {

std::string csv_of(const ExperimentSpec& spec) {
  std::ostringstream out;
  write_experiment_csv(out, run_experiment(spec));
  return out.str();
}

ExperimentSpec random_all(int jobs) {
  ExperimentSpec spec;
  spec.family = Family::Random;
  spec.n = 7;
  spec.m = 12;
  spec.phi = 4;
  spec.seeds = {5, 1, 3, 2, 4, 6};
  spec.algorithms = {Algorithm::Mmcc, Algorithm::Ns, Algorithm::Ssp};
  spec.jobs = jobs;
  return spec;
}

}  // namespace

TEST(Names, RoundTrip) {
  for (Algorithm a : {Algorithm::Mmcc, Algorithm::Ns, Algorithm::Ssp}) {
    EXPECT_EQ(parse_algorithm(algorithm_name(a)), a);
  }
  for (Family f : {Family::MmccGeneral, Family::MmccLargePhi, Family::NsLower, Family::Random}) {
    EXPECT_EQ(parse_family(family_name(f)), f);
  }
  EXPECT_FALSE(parse_algorithm("simplex"));
  EXPECT_FALSE(parse_family(""));
}

TEST(Experiment, OutputIsByteIdenticalAcrossRunsAndJobCounts) {
  const std::string one = csv_of(random_all(1));
  EXPECT_EQ(one, csv_of(random_all(1)));
  EXPECT_EQ(one, csv_of(random_all(4)));
  EXPECT_EQ(one.rfind(std::string(kExperimentCsvVersion) + "\n", 0), 0u);
}

TEST(Experiment, RowsOrderedBySeedThenAlgorithm) {
  const auto rows = run_experiment(random_all(3));
  ASSERT_EQ(rows.size(), 18u);
  for (size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].seed, i / 3 + 1);
    EXPECT_EQ(rows[i].algorithm, static_cast<Algorithm>(i % 3));
  }
}

TEST(Experiment, AllSolversAgreeOnRandomInstances) {
  const auto rows = run_experiment(random_all(2));
  for (size_t i = 0; i < rows.size(); i += 3) {
    EXPECT_EQ(rows[i].final_cost, rows[i + 1].final_cost);
    EXPECT_EQ(rows[i].final_cost, rows[i + 2].final_cost);
    for (size_t j = i; j < i + 3; ++j) {
      EXPECT_TRUE(rows[j].match);
      EXPECT_FALSE(rows[j].predicted_iterations);
    }
  }
}

TEST(Experiment, PredictionsForTheLowerBoundFamilies) {
  ExperimentSpec spec;
  spec.family = Family::MmccGeneral;
  spec.n = 6;
  spec.m = 12;
  spec.phi = 64;
  spec.seeds = {1, 2};
  spec.algorithms = {Algorithm::Mmcc, Algorithm::Ssp};
  const auto rows = run_experiment(spec);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].predicted_iterations, std::optional<std::int64_t>(12));
  EXPECT_EQ(rows[0].iterations, 12);
  EXPECT_TRUE(rows[0].match);
  EXPECT_FALSE(rows[1].predicted_iterations);

  spec.family = Family::NsLower;
  spec.m = 10;
  spec.algorithms = {Algorithm::Ns};
  for (const auto& row : run_experiment(spec)) {
    EXPECT_EQ(row.nondegenerate, 120);
    EXPECT_EQ(row.iterations, row.nondegenerate + row.degenerate);
    EXPECT_TRUE(row.match);
  }
}

TEST(Solve, MatchesOnAPrescribedProblem) {
  const GeneratedInstance g = generate(Family::MmccGeneral, 6, 12, Rational(64), 7);
  const Problem p = realize_problem(g.instance, 7);
  const SolveResult mmcc = solve(p, Algorithm::Mmcc);
  const SolveResult ns = solve(p, Algorithm::Ns);
  const SolveResult ssp = solve(p, Algorithm::Ssp);
  EXPECT_TRUE(mmcc.optimal && ns.optimal && ssp.optimal);
  EXPECT_EQ(mmcc.cost, ns.cost);
  EXPECT_EQ(mmcc.cost, ssp.cost);
  EXPECT_EQ(mmcc.iterations, 12);
  EXPECT_EQ(g.predicted_for, std::optional<Algorithm>(Algorithm::Mmcc));
}
