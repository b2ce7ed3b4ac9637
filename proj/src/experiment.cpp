#include "mcflab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <ostream>
#include <thread>

#include "mcflab/io.hpp"

namespace mcflab {

const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Mmcc: return "mmcc";
    case Algorithm::Ns: return "ns";
    case Algorithm::Ssp: return "ssp";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  if (name == "mmcc") return Algorithm::Mmcc;
  if (name == "ns") return Algorithm::Ns;
  if (name == "ssp") return Algorithm::Ssp;
  return std::nullopt;
}

const char* family_name(Family f) {
  switch (f) {
    case Family::MmccGeneral: return "mmcc_general";
    case Family::MmccLargePhi: return "mmcc_large_phi";
    case Family::NsLower: return "ns_lower";
    case Family::Random: return "random";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view name) {
  if (name == "mmcc_general") return Family::MmccGeneral;
  if (name == "mmcc_large_phi") return Family::MmccLargePhi;
  if (name == "ns_lower") return Family::NsLower;
  if (name == "random") return Family::Random;
  return std::nullopt;
}

Problem realize_problem(const SmoothedInstance& inst, std::uint64_t cost_seed) {
  return Problem{realize(inst, sample_costs(inst, cost_seed)), inst.starting_flow,
                 inst.initial_basis};
}

SolveResult solve(const Problem& problem, Algorithm algorithm) {
  const FlowNetwork& net = problem.network;
  SolveResult r;
  r.algorithm = algorithm;
  switch (algorithm) {
    case Algorithm::Mmcc: {
      MmccTrace t = mmcc_solve(net, problem.starting_flow);
      r.iterations = r.nondegenerate = static_cast<std::int64_t>(t.iterations.size());
      r.flow = t.final_flow;
      r.trace = std::move(t);
      break;
    }
    case Algorithm::Ns: {
      TreeBasis basis;
      if (problem.initial_basis) {
        basis = *problem.initial_basis;
      } else {
        const Flow start = problem.starting_flow ? *problem.starting_flow : initial_feasible_flow(net);
        basis = build_initial_structure(net, start).basis;
      }
      NsTrace t = ns_solve(net, basis);
      r.iterations = static_cast<std::int64_t>(t.pivots.size());
      r.nondegenerate = t.nondegenerate_count();
      r.degenerate = t.degenerate_count();
      r.flow = t.final_flow;
      r.trace = std::move(t);
      break;
    }
    case Algorithm::Ssp: {
      SspTrace t = ssp_solve_budgets(net);
      r.iterations = r.nondegenerate = static_cast<std::int64_t>(t.augmentations.size());
      r.flow = t.final_flow;
      r.trace = std::move(t);
      break;
    }
  }
  r.cost = flow_cost(net, r.flow);
  r.optimal = !check_feasible(net, r.flow) && verify_optimality(net, r.flow).optimal();
  return r;
}

void write_trace_csv(std::ostream& out, const SolveResult& result) {
  std::visit([&](const auto& t) { write_trace_csv(out, t); }, result.trace);
}

GeneratedInstance generate(Family family, int n, int m, const Rational& phi, std::uint64_t seed) {
  switch (family) {
    case Family::MmccGeneral: {
      GeneratedMmcc g = gen_mmcc_general({n, m, phi}, seed);
      return {std::move(g.instance), g.predicted_iterations, Algorithm::Mmcc};
    }
    case Family::MmccLargePhi: {
      GeneratedMmcc g = gen_mmcc_large_phi(n, m, seed);
      return {std::move(g.instance), g.predicted_iterations, Algorithm::Mmcc};
    }
    case Family::NsLower: {
      GeneratedNs g = gen_ns_lower_bound({n, m, phi}, seed);
      return {std::move(g.instance), g.predicted_nondegenerate, Algorithm::Ns};
    }
    case Family::Random:
      return {gen_random_smoothed(n, m, phi, seed), std::nullopt, std::nullopt};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown family");
}

namespace {

std::vector<ExperimentRow> run_seed(const ExperimentSpec& spec, std::uint64_t seed) {
  const GeneratedInstance g = generate(spec.family, spec.n, spec.m, spec.phi, seed);
  const Problem problem = realize_problem(g.instance, seed);
  std::vector<ExperimentRow> rows;
  for (Algorithm a : spec.algorithms) {
    const SolveResult r = solve(problem, a);
    ExperimentRow row;
    row.family = spec.family;
    row.n = spec.n;
    row.m = spec.m;
    row.phi = g.instance.phi;
    row.seed = seed;
    row.algorithm = a;
    row.iterations = r.iterations;
    row.nondegenerate = r.nondegenerate;
    row.degenerate = r.degenerate;
    row.final_cost = r.cost;
    row.match = r.optimal;
    if (g.predicted_for == a) {
      row.predicted_iterations = g.predicted;
      // NS predictions count non-degenerate pivots only.
      const std::int64_t observed = a == Algorithm::Ns ? r.nondegenerate : r.iterations;
      row.match = row.match && observed == *g.predicted;
    }
    rows.push_back(std::move(row));
  }
  for (auto& row : rows) {
    if (row.final_cost != rows.front().final_cost) {
      for (auto& r : rows) r.match = false;
      break;
    }
  }
  return rows;
}

}  // namespace

std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec) {
  if (spec.algorithms.empty()) throw Error(ErrorCode::InvalidArgument, "no algorithm selected");
  ExperimentSpec sorted = spec;
  std::sort(sorted.seeds.begin(), sorted.seeds.end());
  sorted.seeds.erase(std::unique(sorted.seeds.begin(), sorted.seeds.end()), sorted.seeds.end());
  std::sort(sorted.algorithms.begin(), sorted.algorithms.end());
  sorted.algorithms.erase(std::unique(sorted.algorithms.begin(), sorted.algorithms.end()),
                          sorted.algorithms.end());
  const size_t count = sorted.seeds.size();
  std::vector<std::vector<ExperimentRow>> per_seed(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < count; i = next++) {
      try {
        per_seed[i] = run_seed(sorted, sorted.seeds[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int jobs = std::max(1, std::min<int>(sorted.jobs, static_cast<int>(count)));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  std::vector<ExperimentRow> rows;
  for (size_t i = 0; i < count; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    for (auto& row : per_seed[i]) rows.push_back(std::move(row));
  }
  return rows;
}

void write_experiment_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  out << kExperimentCsvVersion << '\n'
      << "family,n,m,phi,seed,algorithm,iterations,nondegenerate_iterations,"
         "degenerate_iterations,final_cost,predicted_iterations,match\n";
  for (const auto& r : rows) {
    out << family_name(r.family) << ',' << r.n << ',' << r.m << ',' << to_string(r.phi) << ','
        << r.seed << ',' << algorithm_name(r.algorithm) << ',' << r.iterations << ','
        << r.nondegenerate << ',' << r.degenerate << ',' << to_string(r.final_cost) << ',';
    if (r.predicted_iterations) out << *r.predicted_iterations;
    out << ',' << (r.match ? "true" : "false") << '\n';
  }
}

}  // namespace mcflab
