#include "mcflab/mcflab.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "mcflab/experiment.hpp"
#include "mcflab/io.hpp"

struct mcf_instance {
  mcflab::SmoothedInstance instance;
  std::optional<std::int64_t> predicted;
};

struct mcf_problem {
  mcflab::Problem problem;
};

struct mcf_flow {
  mcflab::Flow flow;
};

struct mcf_trace {
  mcflab::SolveResult result;
};

namespace {

thread_local std::string g_last_error;

mcf_status status_of(mcflab::ErrorCode code) {
  using mcflab::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return MCF_INVALID_ARGUMENT;
    case ErrorCode::ParamViolation: return MCF_PARAM_VIOLATION;
    case ErrorCode::CapacityViolation: return MCF_CAPACITY_VIOLATION;
    case ErrorCode::EmptyCycle: return MCF_EMPTY_CYCLE;
    case ErrorCode::ZeroResidualCapacity: return MCF_ZERO_RESIDUAL_CAPACITY;
    case ErrorCode::Infeasible: return MCF_INFEASIBLE;
    case ErrorCode::IterationCapExceeded: return MCF_ITERATION_CAP_EXCEEDED;
    case ErrorCode::UnboundedCycle: return MCF_UNBOUNDED_CYCLE;
    case ErrorCode::InfeasibleStructure: return MCF_INFEASIBLE_STRUCTURE;
    case ErrorCode::NotConnected: return MCF_NOT_CONNECTED;
    case ErrorCode::TooLarge: return MCF_TOO_LARGE;
    case ErrorCode::ParseError: return MCF_PARSE_ERROR;
    case ErrorCode::Io: return MCF_IO_ERROR;
  }
  return MCF_INTERNAL_ERROR;
}

mcf_status fail(mcf_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <class F>
mcf_status guarded(F&& body) {
  g_last_error.clear();
  try {
    body();
    return MCF_OK;
  } catch (const mcflab::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(MCF_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(MCF_INTERNAL_ERROR, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

mcflab::Rational rational_arg(const char* text, const char* what) {
  if (!text) throw mcflab::Error(mcflab::ErrorCode::InvalidArgument, std::string(what) + " is null");
  auto q = mcflab::parse_rational(text);
  if (!q) {
    throw mcflab::Error(mcflab::ErrorCode::InvalidArgument,
                        std::string("bad ") + what + " '" + text + "'");
  }
  return *q;
}

void require(bool ok, const char* message) {
  if (!ok) throw mcflab::Error(mcflab::ErrorCode::InvalidArgument, message);
}

mcf_status generate_into(mcflab::Family family, int n, int m, const char* phi, uint64_t seed,
                         mcf_instance** out) {
  return guarded([&] {
    require(out != nullptr, "null output handle");
    const mcflab::Rational q =
        family == mcflab::Family::MmccLargePhi ? mcflab::Rational(0) : rational_arg(phi, "phi");
    auto g = mcflab::generate(family, n, m, q, seed);
    *out = new mcf_instance{std::move(g.instance), g.predicted};
  });
}

}  // namespace

extern "C" {

const char* mcf_last_error(void) { return g_last_error.c_str(); }

const char* mcf_status_name(mcf_status status) {
  switch (status) {
    case MCF_OK: return "ok";
    case MCF_INVALID_ARGUMENT: return "invalid_argument";
    case MCF_PARAM_VIOLATION: return "param_violation";
    case MCF_CAPACITY_VIOLATION: return "capacity_violation";
    case MCF_EMPTY_CYCLE: return "empty_cycle";
    case MCF_ZERO_RESIDUAL_CAPACITY: return "zero_residual_capacity";
    case MCF_INFEASIBLE: return "infeasible";
    case MCF_ITERATION_CAP_EXCEEDED: return "iteration_cap_exceeded";
    case MCF_UNBOUNDED_CYCLE: return "unbounded_cycle";
    case MCF_INFEASIBLE_STRUCTURE: return "infeasible_structure";
    case MCF_NOT_CONNECTED: return "not_connected";
    case MCF_TOO_LARGE: return "too_large";
    case MCF_PARSE_ERROR: return "parse_error";
    case MCF_IO_ERROR: return "io_error";
    case MCF_INTERNAL_ERROR: return "internal_error";
  }
  return "unknown";
}

void mcf_string_free(char* s) { std::free(s); }

mcf_status mcf_gen_mmcc_general(int n, int m, const char* phi, uint64_t seed, mcf_instance** out) {
  return generate_into(mcflab::Family::MmccGeneral, n, m, phi, seed, out);
}

mcf_status mcf_gen_mmcc_large_phi(int n, int m, uint64_t seed, mcf_instance** out) {
  return generate_into(mcflab::Family::MmccLargePhi, n, m, nullptr, seed, out);
}

mcf_status mcf_gen_ns_lower(int n, int m, const char* phi, uint64_t seed, mcf_instance** out) {
  return generate_into(mcflab::Family::NsLower, n, m, phi, seed, out);
}

mcf_status mcf_gen_random(int n, int m, const char* phi, uint64_t seed, mcf_instance** out) {
  return generate_into(mcflab::Family::Random, n, m, phi, seed, out);
}

int64_t mcf_instance_predicted_iterations(const mcf_instance* inst) {
  return inst && inst->predicted ? *inst->predicted : -1;
}

int mcf_instance_node_count(const mcf_instance* inst) {
  return inst ? inst->instance.network.node_count() : -1;
}

int mcf_instance_edge_count(const mcf_instance* inst) {
  return inst ? inst->instance.network.edge_count() : -1;
}

mcf_status mcf_instance_read(const char* path, mcf_instance** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new mcf_instance{mcflab::read_smoothed_file(path), std::nullopt};
  });
}

mcf_status mcf_instance_write(const mcf_instance* inst, const char* path) {
  return guarded([&] {
    require(inst && path, "null argument");
    mcflab::write_smoothed_file(path, inst->instance);
  });
}

void mcf_instance_free(mcf_instance* inst) { delete inst; }

mcf_status mcf_realize(const mcf_instance* inst, uint64_t cost_seed, mcf_problem** out) {
  return guarded([&] {
    require(inst && out, "null argument");
    *out = new mcf_problem{mcflab::realize_problem(inst->instance, cost_seed)};
  });
}

mcf_status mcf_problem_read_dimacs(const char* path, mcf_problem** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new mcf_problem{mcflab::Problem{mcflab::read_dimacs_file(path), {}, {}}};
  });
}

mcf_status mcf_problem_write_dimacs(const mcf_problem* problem, const char* path) {
  return guarded([&] {
    require(problem && path, "null argument");
    mcflab::write_dimacs_file(path, problem->problem.network);
  });
}

void mcf_problem_free(mcf_problem* problem) { delete problem; }

mcf_status mcf_solve(const mcf_problem* problem, mcf_algorithm algorithm, mcf_trace** out) {
  return guarded([&] {
    require(problem && out, "null argument");
    mcflab::Algorithm a;
    switch (algorithm) {
      case MCF_ALG_MMCC: a = mcflab::Algorithm::Mmcc; break;
      case MCF_ALG_NS: a = mcflab::Algorithm::Ns; break;
      case MCF_ALG_SSP: a = mcflab::Algorithm::Ssp; break;
      default: throw mcflab::Error(mcflab::ErrorCode::InvalidArgument, "unknown algorithm");
    }
    *out = new mcf_trace{mcflab::solve(problem->problem, a)};
  });
}

mcf_status mcf_trace_summary(const mcf_trace* trace, mcf_summary* out) {
  return guarded([&] {
    require(trace && out, "null argument");
    const auto& r = trace->result;
    *out = mcf_summary{r.iterations, r.nondegenerate, r.degenerate, r.optimal ? 1 : 0};
  });
}

mcf_status mcf_trace_final_cost(const mcf_trace* trace, char** out) {
  return guarded([&] {
    require(trace && out, "null argument");
    *out = dup_string(mcflab::to_string(trace->result.cost));
  });
}

mcf_status mcf_trace_csv(const mcf_trace* trace, char** out) {
  return guarded([&] {
    require(trace && out, "null argument");
    std::ostringstream ss;
    mcflab::write_trace_csv(ss, trace->result);
    *out = dup_string(ss.str());
  });
}

mcf_status mcf_trace_flow(const mcf_trace* trace, mcf_flow** out) {
  return guarded([&] {
    require(trace && out, "null argument");
    *out = new mcf_flow{trace->result.flow};
  });
}

void mcf_trace_free(mcf_trace* trace) { delete trace; }

mcf_status mcf_flow_read(const mcf_problem* problem, const char* path, mcf_flow** out) {
  return guarded([&] {
    require(problem && path && out, "null argument");
    std::ifstream in(path);
    if (!in) throw mcflab::Error(mcflab::ErrorCode::Io, std::string("cannot open ") + path);
    *out = new mcf_flow{mcflab::read_flow(in, problem->problem.network)};
  });
}

mcf_status mcf_flow_write(const mcf_problem* problem, const mcf_flow* flow, const char* path) {
  return guarded([&] {
    require(problem && flow && path, "null argument");
    require(flow->flow.size() == static_cast<size_t>(problem->problem.network.edge_count()),
            "flow does not match the network");
    std::ofstream out(path);
    if (!out) throw mcflab::Error(mcflab::ErrorCode::Io, std::string("cannot write ") + path);
    mcflab::write_flow(out, problem->problem.network, flow->flow);
  });
}

void mcf_flow_free(mcf_flow* flow) { delete flow; }

mcf_status mcf_verify(const mcf_problem* problem, const mcf_flow* flow, mcf_verdict* verdict,
                      char** report) {
  return guarded([&] {
    require(problem && flow && verdict, "null argument");
    const mcflab::FlowNetwork& net = problem->problem.network;
    std::ostringstream ss;
    if (auto v = mcflab::check_feasible(net, flow->flow)) {
      *verdict = MCF_VERDICT_INFEASIBLE;
      ss << "infeasible: " << v->message << '\n';
    } else {
      const auto opt = mcflab::verify_optimality(net, flow->flow);
      ss << "cost " << mcflab::to_string(mcflab::flow_cost(net, flow->flow)) << '\n';
      if (opt.optimal()) {
        *verdict = MCF_VERDICT_OPTIMAL;
        ss << "optimal\n";
      } else {
        *verdict = MCF_VERDICT_NOT_OPTIMAL;
        ss << "not optimal: negative cycle";
        for (auto v : opt.witness->nodes()) ss << ' ' << v + 1;
        ss << " (cost " << mcflab::to_string(opt.witness->total_cost) << ", mean "
           << mcflab::to_string(opt.witness->mean_cost) << ")\n";
      }
    }
    if (report) *report = dup_string(ss.str());
  });
}

mcf_status mcf_experiment_run(const char* family, int n, int m, const char* phi,
                              const uint64_t* seeds, size_t seed_count, const char* algorithm,
                              int jobs, char** csv, int* all_match) {
  return guarded([&] {
    require(family && algorithm && csv && (seeds || seed_count == 0), "null argument");
    mcflab::ExperimentSpec spec;
    auto f = mcflab::parse_family(family);
    require(f.has_value(), "unknown family");
    spec.family = *f;
    spec.n = n;
    spec.m = m;
    spec.phi = spec.family == mcflab::Family::MmccLargePhi ? mcflab::Rational(0)
                                                           : rational_arg(phi, "phi");
    spec.seeds.assign(seeds, seeds + seed_count);
    if (std::string_view(algorithm) == "all") {
      spec.algorithms = {mcflab::Algorithm::Mmcc, mcflab::Algorithm::Ns, mcflab::Algorithm::Ssp};
    } else {
      auto a = mcflab::parse_algorithm(algorithm);
      require(a.has_value(), "unknown algorithm");
      spec.algorithms = {*a};
    }
    spec.jobs = jobs;
    const auto rows = mcflab::run_experiment(spec);
    std::ostringstream ss;
    mcflab::write_experiment_csv(ss, rows);
    bool ok = true;
    for (const auto& r : rows) ok = ok && r.match;
    if (all_match) *all_match = ok ? 1 : 0;
    *csv = dup_string(ss.str());
  });
}

}  // extern "C"
