#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mcflab/generators.hpp"
#include "mcflab/mmcc.hpp"
#include "mcflab/netsimplex.hpp"
#include "mcflab/ssp.hpp"

namespace mcflab {

enum class Algorithm { Mmcc, Ns, Ssp };

const char* algorithm_name(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view name);

/// A realized network plus whatever the instance prescribes for a solver's start.
struct Problem {
  FlowNetwork network;
  std::optional<Flow> starting_flow;
  std::optional<TreeBasis> initial_basis;
};

Problem realize_problem(const SmoothedInstance& inst, std::uint64_t cost_seed);

struct SolveResult {
  Algorithm algorithm = Algorithm::Mmcc;
  std::variant<MmccTrace, NsTrace, SspTrace> trace;
  Flow flow;
  Rational cost;
  std::int64_t iterations = 0;
  std::int64_t nondegenerate = 0;
  std::int64_t degenerate = 0;
  bool optimal = false;  // feasible and no negative residual cycle
};

/// MMCC starts from the prescribed flow (or a max-flow feasible flow). NS
/// starts from the prescribed basis, or from build_initial_structure on that
/// same starting flow. SSP ignores both and routes the budgets from zero.
SolveResult solve(const Problem& problem, Algorithm algorithm);

void write_trace_csv(std::ostream& out, const SolveResult& result);

enum class Family { MmccGeneral, MmccLargePhi, NsLower, Random };

const char* family_name(Family f);
std::optional<Family> parse_family(std::string_view name);

struct ExperimentSpec {
  Family family = Family::MmccGeneral;
  int n = 0;
  int m = 0;
  Rational phi;  // ignored by mmcc_large_phi, which fixes phi = 400000 n^2
  std::vector<std::uint64_t> seeds;
  std::vector<Algorithm> algorithms;  // several means "all"
  int jobs = 1;
};

struct ExperimentRow {
  Family family = Family::MmccGeneral;
  int n = 0;
  int m = 0;
  Rational phi;
  std::uint64_t seed = 0;
  Algorithm algorithm = Algorithm::Mmcc;
  std::int64_t iterations = 0;
  std::int64_t nondegenerate = 0;
  std::int64_t degenerate = 0;
  Rational final_cost;
  std::optional<std::int64_t> predicted_iterations;
  bool match = false;
};

/// A generated instance and the iteration prediction its construction makes
/// for one algorithm, if any.
struct GeneratedInstance {
  SmoothedInstance instance;
  std::optional<std::int64_t> predicted;
  std::optional<Algorithm> predicted_for;
};

GeneratedInstance generate(Family family, int n, int m, const Rational& phi, std::uint64_t seed);

/// Each seed drives both the structural choice (E_uv, E_UW, random graph)
/// and the cost draw. Seeds and algorithms are sorted and deduplicated, so
/// rows come out ordered by seed, then by algorithm, whatever `jobs` is.
std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec);

inline constexpr std::string_view kExperimentCsvVersion = "# mcflab-experiment-csv v1";

void write_experiment_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);

}  // namespace mcflab
