#ifndef CHEMHULL_H
#define CHEMHULL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  CH_LOCATION_INTERIOR = 0,
  CH_LOCATION_BOUNDARY = 1,
  CH_LOCATION_OUTSIDE = 2,
} ChLocation;

typedef enum {
  CH_SENSE_MAX = 0,
  CH_SENSE_MIN = 1,
} ChSense;

typedef enum {
  CH_STATUS_OK = 0,
  CH_STATUS_INVALID_PAIR = 1,
  CH_STATUS_INCONSISTENT_POINT = 2,
  CH_STATUS_BAD_FORMULA = 3,
  CH_STATUS_UNREALIZABLE = 4,
  CH_STATUS_BUDGET_EXHAUSTED = 5,
  CH_STATUS_NULL_POINTER = 6,
  CH_STATUS_INVALID_ARGUMENT = 7,
  CH_STATUS_INTERNAL = 8,
} ChStatus;

typedef struct ChGraph ChGraph;

typedef struct ChOptimization ChOptimization;

typedef struct ChPolytope ChPolytope;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Owned by the
 * library; valid until the next call on this thread.
 */
const char *ch_last_error_message(void);

/**
 * Character offset of the last formula syntax error on this thread, or -1.
 */
int64_t ch_last_error_position(void);

void ch_string_free(char *s);

const char *ch_version(void);

ChStatus ch_polytope_new(int64_t n, int64_t m, ChPolytope **out);

void ch_polytope_free(ChPolytope *p);

/**
 * Affine dimension, or -1 for a NULL handle.
 */
int32_t ch_polytope_dim(const ChPolytope *p);

size_t ch_polytope_vertex_count(const ChPolytope *p);

size_t ch_polytope_facet_count(const ChPolytope *p);

size_t ch_polytope_equality_count(const ChPolytope *p);

/**
 * Writes `(m12, m13, m22, m23, m33)` of vertex `index` to `out[0..5]`.
 */
ChStatus ch_polytope_vertex(const ChPolytope *p, size_t index, int64_t *out);

/**
 * Writes row `index` of `a . x >= b` over `(m12, m13, m33)`: `a` to
 * `a_out[0..3]` and `b` to `b_out`.
 */
ChStatus ch_polytope_facet(const ChPolytope *p, size_t index, int64_t *a_out, int64_t *b_out);

ChStatus ch_polytope_locate(const ChPolytope *p,
                            int64_t m12,
                            int64_t m13,
                            int64_t m33,
                            ChLocation *out);

ChStatus ch_polytope_to_json(const ChPolytope *p, char **out);

/**
 * `alpha` is read only for `generalized_randic`; pass NaN for its default.
 */
ChStatus ch_optimize_preset(int64_t n,
                            int64_t m,
                            const char *name,
                            double alpha,
                            ChSense sense,
                            ChOptimization **out);

/**
 * Formula in `i` and `j`; a syntax error sets [`ch_last_error_position`].
 */
ChStatus ch_optimize_formula(int64_t n,
                             int64_t m,
                             const char *formula,
                             ChSense sense,
                             ChOptimization **out);

/**
 * `coeffs` holds `c12, c13, c22, c23, c33`.
 */
ChStatus ch_optimize_coefficients(int64_t n,
                                  int64_t m,
                                  const double *coeffs,
                                  ChSense sense,
                                  ChOptimization **out);

void ch_optimization_free(ChOptimization *o);

/**
 * Optimal index value, including the `(n, m)` constant.
 */
ChStatus ch_optimization_value(const ChOptimization *o, double *out);

size_t ch_optimization_arg_count(const ChOptimization *o);

/**
 * Writes `(m12, m13, m22, m23, m33)` of optimal point `index` to `out[0..5]`.
 */
ChStatus ch_optimization_arg_point(const ChOptimization *o, size_t index, int64_t *out);

ChStatus ch_optimization_to_json(const ChOptimization *o, char **out);

/**
 * Builds a graph at `(m12, m13, m33)`; the same seed gives the same graph.
 */
ChStatus ch_realize(int64_t n,
                    int64_t m,
                    int64_t m12,
                    int64_t m13,
                    int64_t m33,
                    uint64_t seed,
                    ChGraph **out);

void ch_graph_free(ChGraph *g);

size_t ch_graph_order(const ChGraph *g);

size_t ch_graph_size(const ChGraph *g);

/**
 * Writes edges as `u0, v0, u1, v1, ...`; `capacity` must be at least
 * twice the size.
 */
ChStatus ch_graph_edges(const ChGraph *g, uint32_t *out, size_t capacity);

/**
 * Writes `(m12, m13, m22, m23, m33)` recomputed from the edges.
 */
ChStatus ch_graph_counts(const ChGraph *g, int64_t *out);

ChStatus ch_graph_to_json(const ChGraph *g, char **out);

ChStatus ch_graph_to_dot(const ChGraph *g, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHEMHULL_H */
