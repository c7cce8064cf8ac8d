#ifndef TEMPOGRAPH_H
#define TEMPOGRAPH_H

/* Generated by cbindgen from tempograph-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a tempograph call. `Ok` is zero; everything else is a failure
 * and leaves a description in `tg_last_error_message`.
 */
typedef enum {
  TG_STATUS_OK = 0,
  TG_STATUS_NULL_POINTER = 1,
  TG_STATUS_INVALID_ARGUMENT = 2,
  TG_STATUS_PARSE_ERROR = 3,
  TG_STATUS_SCALE_ERROR = 4,
  TG_STATUS_IO_ERROR = 5,
  TG_STATUS_UTF8_ERROR = 6,
  TG_STATUS_INTERNAL_PANIC = 7,
} TgStatus;

/**
 * Graph family selector for `tg_graph_sample`.
 */
typedef enum {
  TG_FAMILY_CLIQUE = 0,
  TG_FAMILY_STAR = 1,
  TG_FAMILY_PATH = 2,
} TgFamily;

/**
 * Opaque bridges-solution handle.
 */
typedef struct TgBridges TgBridges;

/**
 * Opaque temporal graph handle.
 */
typedef struct TgGraph TgGraph;

/**
 * Distances for one ordered vertex pair. When `reachable` is false,
 * `delta_prime` is meaningless (set to 0) and `delta` equals the graph's
 * slow arrival time.
 */
typedef struct {
  bool reachable;
  uint64_t delta_prime;
  double delta;
} TgDistance;

/**
 * One time edge `(u, v, label)` crossed from `u` to `v`.
 */
typedef struct {
  size_t u;
  size_t v;
  uint32_t label;
} TgTimeEdge;

/**
 * Star closed form and its components.
 */
typedef struct {
  double value;
  double cond_exp;
  double p_fail;
} TgStarMd;

/**
 * Derived extend-try parameters.
 */
typedef struct {
  uint64_t n;
  double c1;
  double r;
  double k;
  double t0;
  double success_bound;
  bool window_reachable;
  bool small_params_warning;
  uint64_t max_hops;
} TgExtendTryParams;

/**
 * Aggregate of an extend-try experiment.
 */
typedef struct {
  uint64_t n;
  double c1;
  double r;
  double k;
  double t0;
  double success_bound;
  bool window_reachable;
  bool small_params_warning;
  uint64_t trials;
  uint64_t successes;
  double success_rate;
  double stderr;
  uint64_t failures_no_extension;
  uint64_t failures_window_exhausted;
  uint64_t failures_window_unreachable;
  uint64_t seed;
} TgExtendTryReport;

/**
 * A Monte Carlo estimate. `argmax_source`/`argmax_target` are meaningful
 * only when `has_argmax` is set (MD estimates).
 */
typedef struct {
  double mean;
  double stderr;
  uint64_t samples;
  uint64_t seed;
  bool has_argmax;
  size_t argmax_source;
  size_t argmax_target;
} TgEstimate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *tg_version(void);

/**
 * Message for this thread's most recent failure. Valid until the next
 * failing call on the same thread; never NULL.
 */
const char *tg_last_error_message(void);

/**
 * Parses a graph from tgraph-format text into a new handle.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string and `out` a valid pointer.
 */
TgStatus tg_graph_parse(const char *text, TgGraph **out);

/**
 * Loads a graph from a tgraph file.
 *
 * # Safety
 * `path` must be a valid NUL-terminated string and `out` a valid pointer.
 */
TgStatus tg_graph_load(const char *path, TgGraph **out);

/**
 * Writes a graph to a file in canonical tgraph form.
 *
 * # Safety
 * `graph` must be a live handle and `path` a valid NUL-terminated string.
 */
TgStatus tg_graph_save(const TgGraph *graph, const char *path);

/**
 * Samples one uniform labeling of a graph family into a new handle.
 * `n` counts vertices (the star center is vertex 0; path vertices are in
 * line order); labels are drawn from `{1..=a}` and `nprime` is the slow
 * arrival time of the resulting graph.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
TgStatus tg_graph_sample(TgFamily family,
                         size_t n,
                         uint32_t a,
                         double nprime,
                         uint64_t seed,
                         uint64_t sample_index,
                         TgGraph **out);

/**
 * Releases a graph handle. NULL is a no-op.
 *
 * # Safety
 * `graph` must be NULL or a handle not yet freed.
 */
void tg_graph_free(TgGraph *graph);

/**
 * Number of vertices; 0 for NULL.
 */
size_t tg_graph_num_vertices(const TgGraph *graph);

/**
 * Number of edges; 0 for NULL.
 */
size_t tg_graph_num_edges(const TgGraph *graph);

/**
 * Largest assignable label `a`; 0 for NULL.
 */
uint32_t tg_graph_max_label(const TgGraph *graph);

/**
 * Slow-journey arrival time `n'`; NaN for NULL.
 */
double tg_graph_slow_arrival(const TgGraph *graph);

/**
 * Foremost-journey distances from `source` to `target`.
 *
 * # Safety
 * `graph` must be a live handle and `out` a valid pointer.
 */
TgStatus tg_distance(const TgGraph *graph, size_t source, size_t target, TgDistance *out);

/**
 * True iff the given time-edge sequence is a valid journey of the graph.
 *
 * # Safety
 * `graph` must be a live handle; `edges` must point to `len` readable
 * elements (may be NULL when `len` is 0).
 */
bool tg_journey_is_valid(const TgGraph *graph, const TgTimeEdge *edges, size_t len);

/**
 * `n! / (n-1)^(n-1)` evaluated in log space.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
TgStatus tg_expected_paths_full(uint64_t n, double *out);

/**
 * Probability that `k` uniform labels from `{1..=a}` strictly increase.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
TgStatus tg_phi(uint64_t k, uint64_t a, double *out);

/**
 * Expected number of length-`k` journeys in the uniform random temporal
 * clique, plus the large-`a` approximation.
 *
 * # Safety
 * `out_value` and `out_large_a` must be valid pointers.
 */
TgStatus tg_expected_paths(uint64_t n,
                           uint64_t k,
                           uint64_t a,
                           double *out_value,
                           double *out_large_a);

/**
 * Star closed form `(a-1)(a+1)(a+2)/(6a^2) + n'(a+1)/(2a)` with its
 * components.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
TgStatus tg_star_md(uint64_t a, double nprime, TgStarMd *out);

/**
 * Derived extend-try parameters for the normalized clique K_n.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
TgStatus tg_extend_try_params(uint64_t n, double c1, double r, TgExtendTryParams *out);

/**
 * Seeded extend-try experiment on sampled normalized cliques (s = 0, t = 1).
 *
 * # Safety
 * `out` must be a valid pointer.
 */
TgStatus tg_extend_try_experiment(uint64_t n,
                                  double c1,
                                  double r,
                                  uint64_t trials,
                                  uint64_t seed,
                                  TgExtendTryReport *out);

/**
 * Monte Carlo maximum expected temporal distance of a family.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
TgStatus tg_estimate_md(TgFamily family,
                        size_t n,
                        uint32_t a,
                        double nprime,
                        uint64_t samples,
                        uint64_t seed,
                        TgEstimate *out);

/**
 * Monte Carlo temporal diameter of a family.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
TgStatus tg_estimate_td(TgFamily family,
                        size_t n,
                        uint32_t a,
                        double nprime,
                        uint64_t samples,
                        uint64_t seed,
                        TgEstimate *out);

/**
 * Monte Carlo expected journey count of length `k` in K_n (n <= 8).
 *
 * # Safety
 * `out` must be a valid pointer.
 */
TgStatus tg_estimate_path_count(size_t n,
                                size_t k,
                                uint32_t a,
                                uint64_t samples,
                                uint64_t seed,
                                TgEstimate *out);

/**
 * Solves the bridges problem for `n` people into a new handle.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
TgStatus tg_bridges_solve(uint64_t n, TgBridges **out);

/**
 * Releases a bridges handle. NULL is a no-op.
 *
 * # Safety
 * `solution` must be NULL or a handle not yet freed.
 */
void tg_bridges_free(TgBridges *solution);

/**
 * Maximum cost paid on any nonempty bridge; 0 for NULL.
 */
uint64_t tg_bridges_max_cost(const TgBridges *solution);

/**
 * Closed-form optimum stored in the solution; 0 for NULL.
 */
uint64_t tg_bridges_opt_formula(const TgBridges *solution);

/**
 * Number of bridges (equal to the number of people); 0 for NULL.
 */
size_t tg_bridges_len(const TgBridges *solution);

/**
 * People on bridge `index` (0-based); 0 when out of range or NULL.
 */
uint64_t tg_bridges_content(const TgBridges *solution, size_t index);

/**
 * Cost of bridge `index` (0-based; 0 for empty bridges, out of range, or
 * NULL).
 */
uint64_t tg_bridges_cost(const TgBridges *solution, size_t index);

/**
 * Feasibility-oracle optimum for `n` people; 0 for `n = 0`.
 */
uint64_t tg_bridges_oracle(uint64_t n);

/**
 * Closed form `ceil(sqrt(2n) + 1/2)`; 0 for `n = 0`.
 */
uint64_t tg_bridges_opt(uint64_t n);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TEMPOGRAPH_H */
