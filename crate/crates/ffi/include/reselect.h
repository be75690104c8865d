#ifndef RESELECT_H
#define RESELECT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum RslCategory {
  RSL_CATEGORY_FRIENDLY = 0,
  RSL_CATEGORY_AWARE = 1,
  RSL_CATEGORY_FREE = 2,
} RslCategory;

typedef enum RslMode {
  RSL_MODE_SET = 0,
  RSL_MODE_MULTISET = 1,
} RslMode;

// Result codes.
typedef enum RslStatus {
  RSL_STATUS_OK = 0,
  RSL_STATUS_NULL_POINTER = 1,
  RSL_STATUS_INVALID_ARGUMENT = 2,
  RSL_STATUS_PARSE = 3,
  RSL_STATUS_IO = 4,
  RSL_STATUS_TOO_LARGE = 5,
  RSL_STATUS_UNDEFINED = 6,
  RSL_STATUS_PANIC = 7,
} RslStatus;

typedef enum RslWeightModel {
  // 1 / in-degree of the target.
  RSL_WEIGHT_MODEL_WC = 0,
  // Uniform draw from {0.1, 0.01, 0.001}.
  RSL_WEIGHT_MODEL_TR = 1,
  // Text already holds `u v p` lines.
  RSL_WEIGHT_MODEL_EXPLICIT = 2,
} RslWeightModel;

// Opaque greedy curve.
typedef struct RslCurve RslCurve;

// Opaque weighted graph.
typedef struct RslGraph RslGraph;

typedef struct RslSpreadEstimate {
  double mean;
  double std_error;
  uint64_t runs;
} RslSpreadEstimate;

typedef struct RslExactSpread {
  double spread;
  double host_spread;
  uintptr_t set_size;
  uintptr_t unique;
} RslExactSpread;

typedef struct RslGreedyStep {
  uintptr_t k;
  uintptr_t node;
  uint32_t multiplicity_after;
  double spread_mean;
  double spread_se;
  double raw_mean;
} RslGreedyStep;

typedef struct RslSaturationFit {
  double sigma1;
  double sigma0;
  uintptr_t k_min;
  uintptr_t k_max;
} RslSaturationFit;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL. The pointer is
// valid until the next failing call on the same thread.
const char *rsl_last_error(void);

// Parses a SNAP edge list and weights it.
//
// With `RSL_WEIGHT_MODEL_TR` the draws use the same seed derivation as the
// command-line tool for the given master `seed`.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum RslStatus rsl_graph_from_edge_list(const char *text,
                                        enum RslWeightModel model,
                                        bool undirected,
                                        uint64_t seed,
                                        struct RslGraph **out);

// Star with core 0 and `n_leaves` leaves.
//
// # Safety
// `out` must be writable.
enum RslStatus rsl_graph_star(uintptr_t n_leaves, double p, struct RslGraph **out);

// Random directed graph; `edge_prob = 1` gives a clique.
//
// # Safety
// `out` must be writable.
enum RslStatus rsl_graph_random(uintptr_t n,
                                double edge_prob,
                                double p,
                                uint64_t seed,
                                struct RslGraph **out);

// # Safety
// `graph` must come from this library and not be freed already. NULL is a no-op.
void rsl_graph_free(struct RslGraph *graph);

// Node count, or 0 for NULL.
//
// # Safety
// `graph` must be NULL or a live handle.
uintptr_t rsl_graph_node_count(const struct RslGraph *graph);

// Edge count, or 0 for NULL.
//
// # Safety
// `graph` must be NULL or a live handle.
uintptr_t rsl_graph_edge_count(const struct RslGraph *graph);

// Monte Carlo spread of the multiset `{nodes[i]: multiplicities[i]}`.
// `seed` is the Monte Carlo master seed.
//
// # Safety
// `nodes` and `multiplicities` must hold `len` elements; `out` must be writable.
enum RslStatus rsl_estimate_spread(const struct RslGraph *graph,
                                   const uintptr_t *nodes,
                                   const uint32_t *multiplicities,
                                   uintptr_t len,
                                   double alpha,
                                   uint64_t runs,
                                   uint64_t seed,
                                   struct RslSpreadEstimate *out);

// Exact spread by enumeration; `RSL_STATUS_TOO_LARGE` past the edge guard.
//
// # Safety
// As for [`rsl_estimate_spread`].
enum RslStatus rsl_exact_spread(const struct RslGraph *graph,
                                const uintptr_t *nodes,
                                const uint32_t *multiplicities,
                                uintptr_t len,
                                double alpha,
                                struct RslExactSpread *out);

// Lazy greedy selection of `budget` seeds.
//
// # Safety
// `graph` must be a live handle; `out` must be writable.
enum RslStatus rsl_greedy_select(const struct RslGraph *graph,
                                 uintptr_t budget,
                                 enum RslMode mode,
                                 double alpha,
                                 uint64_t runs,
                                 uint64_t seed,
                                 struct RslCurve **out);

// Number of steps, or 0 for NULL.
//
// # Safety
// `curve` must be NULL or a live handle.
uintptr_t rsl_curve_len(const struct RslCurve *curve);

// Step at 0-based `index`.
//
// # Safety
// `curve` must be a live handle; `out` must be writable.
enum RslStatus rsl_curve_step(const struct RslCurve *curve,
                              uintptr_t index,
                              struct RslGreedyStep *out);

// # Safety
// `curve` must come from this library and not be freed already. NULL is a no-op.
void rsl_curve_free(struct RslCurve *curve);

// Multiset over set greedy spread at budget `k`.
//
// # Safety
// Both curves must be live handles; `out` must be writable.
enum RslStatus rsl_reselection_gain(const struct RslCurve *simple,
                                    const struct RslCurve *resel,
                                    uintptr_t k,
                                    double *out);

// Least-squares line through `(k, values[k - 1])` for `k` in `[k_min, k_max]`.
//
// # Safety
// `values` must hold `len` elements; `out` must be writable.
enum RslStatus rsl_fit_saturation(const double *values,
                                  uintptr_t len,
                                  uintptr_t k_min,
                                  uintptr_t k_max,
                                  struct RslSaturationFit *out);

// `(sigma1 + sigma0) / sigma1`; `RSL_STATUS_UNDEFINED` for a flat fit.
//
// # Safety
// `fit` must be readable; `out` must be writable.
enum RslStatus rsl_influence_saturation(const struct RslSaturationFit *fit, double *out);

enum RslCategory rsl_categorize(double rg);

// Pearson correlation of two equal-length sequences.
//
// # Safety
// `xs` and `ys` must hold `len` elements; `out` must be writable.
enum RslStatus rsl_pearson(const double *xs, const double *ys, uintptr_t len, double *out);

// Single-node spreads of every node, highest first. Writes `node_count`
// entries into each output buffer.
//
// # Safety
// `nodes_out` and `spreads_out` must have room for `capacity` elements.
enum RslStatus rsl_rank_nodes(const struct RslGraph *graph,
                              uint64_t runs,
                              uint64_t seed,
                              uintptr_t *nodes_out,
                              double *spreads_out,
                              uintptr_t capacity);

// `HR_k` of a ranking given as spreads sorted highest first.
//
// # Safety
// `spreads` must hold `len` elements; `out` must be writable.
enum RslStatus rsl_hub_ratio(const double *spreads, uintptr_t len, uintptr_t k, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RESELECT_H */
