#ifndef REDBLUE_H
#define REDBLUE_H

/* Generated by cbindgen from the redblue-ffi crate; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Edge colour constant: red.
 */
#define RB_COLOUR_RED 0

/**
 * Edge colour constant: blue.
 */
#define RB_COLOUR_BLUE 1

/**
 * Status code of every fallible call.
 */
typedef enum RbStatus {
  RB_STATUS_OK = 0,
  RB_STATUS_INVALID_ARGUMENT = 1,
  RB_STATUS_PARSE_ERROR = 2,
  RB_STATUS_CAP_EXCEEDED = 3,
  RB_STATUS_OVERFLOW = 4,
  RB_STATUS_NULL_POINTER = 5,
  RB_STATUS_INVALID_UTF8 = 6,
  RB_STATUS_PANIC = 7,
} RbStatus;

/**
 * Opaque red-blue complete graph handle.
 */
typedef struct RbGraph RbGraph;

/**
 * Opaque pattern handle.
 */
typedef struct RbPattern RbPattern;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds the partitioned graph: the `bip_colour` class is `K_{a, n−a}`.
 */
enum RbStatus rb_graph_partitioned(uintptr_t n,
                                   uintptr_t a,
                                   int32_t bip_colour,
                                   struct RbGraph **out);

/**
 * Builds the graph whose red edges form the balanced complete
 * `parts`-partite graph.
 */
enum RbStatus rb_graph_turan_red(uintptr_t n, uintptr_t parts, struct RbGraph **out);

/**
 * Builds the seeded binomial graph: each pair is red with probability
 * `sigma`, reproducibly for a given seed.
 */
enum RbStatus rb_graph_quasirandom(uintptr_t n, double sigma, uint64_t seed, struct RbGraph **out);

/**
 * Parses the two-line text format (`n`, then the `R`/`B` pair string).
 */
enum RbStatus rb_graph_parse(const char *text, struct RbGraph **out);

/**
 * Serialises a graph into the two-line text format. The returned string
 * must be released with [`rb_string_free`].
 */
enum RbStatus rb_graph_to_text(const struct RbGraph *g, char **out);

void rb_graph_free(struct RbGraph *g);

void rb_string_free(char *s);

/**
 * Vertex count of a graph; zero for a null handle.
 */
uintptr_t rb_graph_n(const struct RbGraph *g);

/**
 * New graph with the two colours exchanged.
 */
enum RbStatus rb_graph_swap_colours(const struct RbGraph *g, struct RbGraph **out);

/**
 * New graph with the colour of one pair toggled.
 */
enum RbStatus rb_graph_flip_edge(const struct RbGraph *g,
                                 uintptr_t x,
                                 uintptr_t y,
                                 struct RbGraph **out);

/**
 * Balance deviation `ε` and quasirandomness (`σ`, score) of a graph.
 */
enum RbStatus rb_graph_assess(const struct RbGraph *g,
                              double *out_balance_epsilon,
                              double *out_sigma,
                              double *out_quasirandom_score);

/**
 * Looks up a named pattern (`rbrb_c4`, `rrbb_c4`, `rrrb_c4`, `ccext`,
 * `rrbbext_a`, `rrbbext_b`, `ccextt`, `rbr_path`, `alt_cycle_<len>`).
 */
enum RbStatus rb_pattern_named(const char *name, struct RbPattern **out);

/**
 * Parses the literal 1-based edge list `"1-2:R,2-3:B"`.
 */
enum RbStatus rb_pattern_from_edges(const char *spec, struct RbPattern **out);

void rb_pattern_free(struct RbPattern *p);

/**
 * Pattern with every edge colour swapped.
 */
enum RbStatus rb_pattern_swap_colours(const struct RbPattern *p, struct RbPattern **out);

/**
 * Order of the colour-preserving automorphism group.
 */
enum RbStatus rb_pattern_aut_count(const struct RbPattern *p, uint64_t *out);

/**
 * Copies of a pattern in a graph (specialised counter when one applies).
 */
enum RbStatus rb_count_copies(const struct RbPattern *p, const struct RbGraph *g, uint64_t *out);

/**
 * Injective embeddings of a pattern in a graph.
 */
enum RbStatus rb_count_embeddings(const struct RbPattern *p,
                                  const struct RbGraph *g,
                                  uint64_t *out);

/**
 * Unlabelled alternating cycles on `len` edges.
 */
enum RbStatus rb_count_alternating_cycles(const struct RbGraph *g, uintptr_t len, uint64_t *out);

/**
 * Alternating walks of length `t`.
 */
enum RbStatus rb_count_alternating_walks(const struct RbGraph *g, uintptr_t t, uint64_t *out);

/**
 * Both sides of the triangle/path identity; they are always equal.
 */
enum RbStatus rb_goodman_identity(const struct RbGraph *g, uint64_t *out_lhs, uint64_t *out_rhs);

/**
 * Evaluates a named closed-form formula (see the library's formula
 * registry) with the parameters it needs; unused parameters are ignored.
 */
enum RbStatus rb_formula_eval(const char *name,
                              uint64_t n,
                              uint32_t t,
                              uint64_t a,
                              double sigma,
                              double epsilon,
                              double *out);

/**
 * Exact `max(H, n)` by isomorph-free exhaustive search (`n ≤ 9`).
 */
enum RbStatus rb_brute_force_max(const struct RbPattern *p,
                                 uintptr_t n,
                                 uint64_t *out_value,
                                 uint64_t *out_extremal_count);

/**
 * Best value found by seeded edge-flip local search (a lower bound on
 * `max(H, n)`).
 */
enum RbStatus rb_local_search_max(const struct RbPattern *p,
                                  uintptr_t n,
                                  uint64_t seed,
                                  uint32_t restarts,
                                  uint64_t *out_value);

/**
 * Canonical-pattern score `p_H(α, β)`.
 */
enum RbStatus rb_canonical_score(const struct RbPattern *p, double alpha, double beta, double *out);

/**
 * Runs the acceptance battery; `out_failed` receives the number of failed
 * criteria.
 */
enum RbStatus rb_acceptance_run(uint32_t *out_failed);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* REDBLUE_H */
