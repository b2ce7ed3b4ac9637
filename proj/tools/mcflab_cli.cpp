// mcflab command-line front end. Talks to the library only through mcflab.h.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mcflab/mcflab.h"

namespace {

struct CliError {
  int exit_code;
};

void check(mcf_status s) {
  if (s != MCF_OK) {
    std::cerr << "error (" << mcf_status_name(s) << "): " << mcf_last_error() << '\n';
    throw CliError{2};
  }
}

std::string take(char* s) {
  std::string out = s ? s : "";
  mcf_string_free(s);
  return out;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) {
    std::cerr << "error: cannot write " << path << '\n';
    throw CliError{2};
  }
  out << text;
}

// "1-20", "3,5,8" or a mix such as "1-4,9".
std::vector<uint64_t> parse_seeds(const std::string& text) {
  std::vector<uint64_t> seeds;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) {
    const auto dash = part.find('-');
    try {
      if (dash == std::string::npos) {
        seeds.push_back(std::stoull(part));
      } else {
        const uint64_t lo = std::stoull(part.substr(0, dash));
        const uint64_t hi = std::stoull(part.substr(dash + 1));
        for (uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
      }
    } catch (const std::exception&) {
      throw CLI::ValidationError("--seeds", "bad seed list '" + text + "'");
    }
  }
  return seeds;
}

struct GenArgs {
  std::string family = "mmcc_general";
  int n = 6;
  int m = 12;
  std::string phi = "64";
  uint64_t seed = 1;
  std::string out;
  std::string realized;
};

int run_gen(const GenArgs& a) {
  mcf_instance* inst = nullptr;
  if (a.family == "mmcc_general") {
    check(mcf_gen_mmcc_general(a.n, a.m, a.phi.c_str(), a.seed, &inst));
  } else if (a.family == "mmcc_large_phi") {
    check(mcf_gen_mmcc_large_phi(a.n, a.m, a.seed, &inst));
  } else if (a.family == "ns_lower") {
    check(mcf_gen_ns_lower(a.n, a.m, a.phi.c_str(), a.seed, &inst));
  } else {
    check(mcf_gen_random(a.n, a.m, a.phi.c_str(), a.seed, &inst));
  }
  check(mcf_instance_write(inst, a.out.c_str()));
  if (!a.realized.empty()) {
    mcf_problem* p = nullptr;
    check(mcf_realize(inst, a.seed, &p));
    check(mcf_problem_write_dimacs(p, a.realized.c_str()));
    mcf_problem_free(p);
  }
  std::cerr << mcf_instance_node_count(inst) << " nodes, " << mcf_instance_edge_count(inst)
            << " arcs";
  if (mcf_instance_predicted_iterations(inst) >= 0) {
    std::cerr << ", predicted iterations " << mcf_instance_predicted_iterations(inst);
  }
  std::cerr << '\n';
  mcf_instance_free(inst);
  return 0;
}

mcf_problem* load_problem(const std::string& path, bool dimacs, uint64_t seed) {
  mcf_problem* p = nullptr;
  if (dimacs) {
    check(mcf_problem_read_dimacs(path.c_str(), &p));
  } else {
    mcf_instance* inst = nullptr;
    check(mcf_instance_read(path.c_str(), &inst));
    const mcf_status s = mcf_realize(inst, seed, &p);
    mcf_instance_free(inst);
    check(s);
  }
  return p;
}

struct SolveArgs {
  std::string input;
  bool dimacs = false;
  uint64_t seed = 1;
  std::string algorithm = "mmcc";
  std::string trace;
  std::string flow;
};

int run_solve(const SolveArgs& a) {
  mcf_problem* p = load_problem(a.input, a.dimacs, a.seed);
  const mcf_algorithm alg = a.algorithm == "ns"    ? MCF_ALG_NS
                            : a.algorithm == "ssp" ? MCF_ALG_SSP
                                                   : MCF_ALG_MMCC;
  mcf_trace* t = nullptr;
  check(mcf_solve(p, alg, &t));
  mcf_summary sum{};
  check(mcf_trace_summary(t, &sum));
  char* cost = nullptr;
  check(mcf_trace_final_cost(t, &cost));
  std::cout << "algorithm " << a.algorithm << "\niterations " << sum.iterations
            << "\nnondegenerate " << sum.nondegenerate << "\ndegenerate " << sum.degenerate
            << "\ncost " << take(cost) << "\noptimal " << (sum.optimal ? "yes" : "no") << '\n';
  if (!a.trace.empty()) {
    char* csv = nullptr;
    check(mcf_trace_csv(t, &csv));
    emit(take(csv), a.trace);
  }
  if (!a.flow.empty()) {
    mcf_flow* f = nullptr;
    check(mcf_trace_flow(t, &f));
    check(mcf_flow_write(p, f, a.flow.c_str()));
    mcf_flow_free(f);
  }
  mcf_trace_free(t);
  mcf_problem_free(p);
  return sum.optimal ? 0 : 1;
}

struct VerifyArgs {
  std::string input;
  std::string flow;
  bool dimacs = false;
  uint64_t seed = 1;
};

int run_verify(const VerifyArgs& a) {
  mcf_problem* p = load_problem(a.input, a.dimacs, a.seed);
  mcf_flow* f = nullptr;
  check(mcf_flow_read(p, a.flow.c_str(), &f));
  mcf_verdict verdict{};
  char* report = nullptr;
  check(mcf_verify(p, f, &verdict, &report));
  std::cout << take(report);
  mcf_flow_free(f);
  mcf_problem_free(p);
  return verdict == MCF_VERDICT_OPTIMAL ? 0 : 1;
}

struct ExperimentArgs {
  std::string family = "mmcc_general";
  int n = 6;
  int m = 12;
  std::string phi = "64";
  std::string seeds = "1-20";
  std::string algorithm = "mmcc";
  int jobs = 1;
  std::string out;
};

int run_experiment(const ExperimentArgs& a) {
  const std::vector<uint64_t> seeds = parse_seeds(a.seeds);
  char* csv = nullptr;
  int all_match = 0;
  check(mcf_experiment_run(a.family.c_str(), a.n, a.m, a.phi.c_str(), seeds.data(), seeds.size(),
                           a.algorithm.c_str(), a.jobs, &csv, &all_match));
  emit(take(csv), a.out);
  if (!all_match) std::cerr << "mismatch: at least one row has match=false\n";
  return all_match ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mcflab: min-cost flow lab (MMCC, network simplex, SSP)"};
  app.require_subcommand(1);
  const std::vector<std::string> families{"mmcc_general", "mmcc_large_phi", "ns_lower", "random"};

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a smoothed instance");
  g->add_option("--family", gen.family)->check(CLI::IsMember(families));
  g->add_option("--n", gen.n);
  g->add_option("--m", gen.m);
  g->add_option("--phi", gen.phi, "Smoothing parameter, integer or num/den");
  g->add_option("--seed", gen.seed, "Structure seed, also used for --realized costs");
  g->add_option("--out", gen.out, "Smoothed instance file")->required();
  g->add_option("--realized", gen.realized, "Also write the sampled network as DIMACS");

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Solve an instance and report the run");
  s->add_option("input", solve.input)->required();
  s->add_flag("--dimacs", solve.dimacs, "Input is a plain DIMACS network");
  s->add_option("--seed", solve.seed, "Cost seed for smoothed inputs");
  s->add_option("--algorithm", solve.algorithm)->check(CLI::IsMember({"mmcc", "ns", "ssp"}));
  s->add_option("--trace", solve.trace, "Per-iteration CSV ('-' for stdout)");
  s->add_option("--flow", solve.flow, "Write the final flow");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Check a flow for feasibility and optimality");
  v->add_option("input", verify.input)->required();
  v->add_option("flow", verify.flow)->required();
  v->add_flag("--dimacs", verify.dimacs, "Input is a plain DIMACS network");
  v->add_option("--seed", verify.seed, "Cost seed for smoothed inputs");

  ExperimentArgs exp;
  auto* e = app.add_subcommand("experiment", "Run seeds and emit a CSV report");
  e->add_option("--family", exp.family)->check(CLI::IsMember(families));
  e->add_option("--n", exp.n);
  e->add_option("--m", exp.m);
  e->add_option("--phi", exp.phi);
  e->add_option("--seeds", exp.seeds, "e.g. 1-20 or 1,4,7");
  e->add_option("--algorithm", exp.algorithm)
      ->check(CLI::IsMember({"mmcc", "ns", "ssp", "all"}));
  e->add_option("--jobs", exp.jobs)->check(CLI::PositiveNumber);
  e->add_option("--out", exp.out, "CSV path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*g) return run_gen(gen);
    if (*s) return run_solve(solve);
    if (*v) return run_verify(verify);
    if (*e) return run_experiment(exp);
  } catch (const CliError& err) {
    return err.exit_code;
  } catch (const CLI::Error& err) {
    return app.exit(err);
  }
  return 0;
}
