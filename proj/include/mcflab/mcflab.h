#ifndef MCFLAB_H
#define MCFLAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define MCF_API __declspec(dllexport)
#else
#define MCF_API __attribute__((visibility("default")))
#endif

typedef enum mcf_status {
  MCF_OK = 0,
  MCF_INVALID_ARGUMENT,
  MCF_PARAM_VIOLATION,
  MCF_CAPACITY_VIOLATION,
  MCF_EMPTY_CYCLE,
  MCF_ZERO_RESIDUAL_CAPACITY,
  MCF_INFEASIBLE,
  MCF_ITERATION_CAP_EXCEEDED,
  MCF_UNBOUNDED_CYCLE,
  MCF_INFEASIBLE_STRUCTURE,
  MCF_NOT_CONNECTED,
  MCF_TOO_LARGE,
  MCF_PARSE_ERROR,
  MCF_IO_ERROR,
  MCF_INTERNAL_ERROR
} mcf_status;

typedef enum mcf_algorithm { MCF_ALG_MMCC = 0, MCF_ALG_NS, MCF_ALG_SSP } mcf_algorithm;

typedef enum mcf_verdict {
  MCF_VERDICT_OPTIMAL = 0,
  MCF_VERDICT_INFEASIBLE,
  MCF_VERDICT_NOT_OPTIMAL
} mcf_verdict;

/* Smoothed instance: network, cost intervals, phi, optional start flow and basis. */
typedef struct mcf_instance mcf_instance;
/* Realized network with fixed costs, plus the instance's start flow and basis. */
typedef struct mcf_problem mcf_problem;
typedef struct mcf_flow mcf_flow;
/* Solver run: trace, final flow and summary. */
typedef struct mcf_trace mcf_trace;

typedef struct mcf_summary {
  int64_t iterations;
  int64_t nondegenerate;
  int64_t degenerate;
  int optimal;
} mcf_summary;

/* Message for the last failing call on this thread; "" if none. */
MCF_API const char* mcf_last_error(void);
MCF_API const char* mcf_status_name(mcf_status status);
/* Frees strings returned through char** out-parameters. */
MCF_API void mcf_string_free(char* s);

/* Rationals are passed as "num/den" or integer strings. */
MCF_API mcf_status mcf_gen_mmcc_general(int n, int m, const char* phi, uint64_t seed,
                                        mcf_instance** out);
MCF_API mcf_status mcf_gen_mmcc_large_phi(int n, int m, uint64_t seed, mcf_instance** out);
MCF_API mcf_status mcf_gen_ns_lower(int n, int m, const char* phi, uint64_t seed,
                                    mcf_instance** out);
MCF_API mcf_status mcf_gen_random(int n, int m, const char* phi, uint64_t seed,
                                  mcf_instance** out);
/* Iteration count the construction predicts, or -1. */
MCF_API int64_t mcf_instance_predicted_iterations(const mcf_instance* inst);
MCF_API int mcf_instance_node_count(const mcf_instance* inst);
MCF_API int mcf_instance_edge_count(const mcf_instance* inst);
MCF_API mcf_status mcf_instance_read(const char* path, mcf_instance** out);
MCF_API mcf_status mcf_instance_write(const mcf_instance* inst, const char* path);
MCF_API void mcf_instance_free(mcf_instance* inst);

MCF_API mcf_status mcf_realize(const mcf_instance* inst, uint64_t cost_seed, mcf_problem** out);
MCF_API mcf_status mcf_problem_read_dimacs(const char* path, mcf_problem** out);
MCF_API mcf_status mcf_problem_write_dimacs(const mcf_problem* problem, const char* path);
MCF_API void mcf_problem_free(mcf_problem* problem);

MCF_API mcf_status mcf_solve(const mcf_problem* problem, mcf_algorithm algorithm,
                             mcf_trace** out);
MCF_API mcf_status mcf_trace_summary(const mcf_trace* trace, mcf_summary* out);
MCF_API mcf_status mcf_trace_final_cost(const mcf_trace* trace, char** out);
MCF_API mcf_status mcf_trace_csv(const mcf_trace* trace, char** out);
MCF_API mcf_status mcf_trace_flow(const mcf_trace* trace, mcf_flow** out);
MCF_API void mcf_trace_free(mcf_trace* trace);

MCF_API mcf_status mcf_flow_read(const mcf_problem* problem, const char* path, mcf_flow** out);
MCF_API mcf_status mcf_flow_write(const mcf_problem* problem, const mcf_flow* flow,
                                  const char* path);
MCF_API void mcf_flow_free(mcf_flow* flow);

/* Feasibility and optimality check. `report` (may be NULL) receives a
   human-readable explanation, including a negative cycle when one exists. */
MCF_API mcf_status mcf_verify(const mcf_problem* problem, const mcf_flow* flow,
                              mcf_verdict* verdict, char** report);

/* family: mmcc_general | mmcc_large_phi | ns_lower | random
   algorithm: mmcc | ns | ssp | all
   `csv` receives the versioned CSV report; `all_match` is 1 iff every row matched. */
MCF_API mcf_status mcf_experiment_run(const char* family, int n, int m, const char* phi,
                                      const uint64_t* seeds, size_t seed_count,
                                      const char* algorithm, int jobs, char** csv,
                                      int* all_match);

#ifdef __cplusplus
}
#endif

#endif
