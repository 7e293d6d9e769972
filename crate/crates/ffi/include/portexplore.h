#ifndef PORTEXPLORE_H
#define PORTEXPLORE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define PX_ALGO_TREE 0

#define PX_ALGO_HAMILTONIAN 1

#define PX_ALGO_POLY 2

#define PX_ORACLE_INSTANCE 0

#define PX_ORACLE_MAP 1

typedef enum PxStatus {
  PX_STATUS_OK = 0,
  PX_STATUS_NULL_POINTER = 1,
  PX_STATUS_INVALID_ARGUMENT = 2,
  PX_STATUS_GRAPH = 3,
  PX_STATUS_ADVICE = 4,
  PX_STATUS_CAP_EXCEEDED = 5,
  PX_STATUS_EXPLORE = 6,
  PX_STATUS_PANIC = 7,
} PxStatus;

typedef struct PxAdvice PxAdvice;

typedef struct PxGraph PxGraph;

// Result of one exploration run.
typedef struct PxOutcome {
  size_t steps_used;
  size_t visited_count;
  bool completed;
} PxOutcome;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null after a
// successful one. Valid until the next call on the same thread.
const char *px_last_error_message(void);

// Parses a graph in the text format.
//
// # Safety
// `text` must be a nul-terminated string; `out` must be writable.
enum PxStatus px_graph_parse(const char *text, struct PxGraph **out);

// Oriented ring on `n >= 3` nodes.
//
// # Safety
// `out` must be writable.
enum PxStatus px_graph_ring(size_t n, struct PxGraph **out);

// Complete bipartite graph `K_{k,k}`.
//
// # Safety
// `out` must be writable.
enum PxStatus px_graph_complete_bipartite(size_t k, struct PxGraph **out);

// Seeded random connected graph.
//
// # Safety
// `out` must be writable.
enum PxStatus px_graph_random(size_t n, double density, uint64_t seed, struct PxGraph **out);

// # Safety
// `graph` must be null or a handle from this library.
size_t px_graph_node_count(const struct PxGraph *graph);

// # Safety
// `graph` must be null or a handle from this library.
size_t px_graph_edge_count(const struct PxGraph *graph);

// Serializes `graph` as nul-terminated text. Free the result with
// [`px_string_free`].
//
// # Safety
// `graph` must be a handle from this library; `out` must be writable.
enum PxStatus px_graph_to_text(const struct PxGraph *graph, char **out);

// # Safety
// `s` must be null or a string returned by this library.
void px_string_free(char *s);

// # Safety
// `graph` must be null or a handle from this library, not yet freed.
void px_graph_free(struct PxGraph *graph);

// Spanning-tree advice. Instance advice is rooted at `start`; map advice
// ignores `start` and is rooted at node 0.
//
// # Safety
// `graph` must be a handle from this library; `out` must be writable.
enum PxStatus px_advice_tree(const struct PxGraph *graph,
                             uint32_t oracle,
                             size_t start,
                             struct PxAdvice **out);

// Hamiltonian-cycle advice for the agent at `start`. `cycle` lists all
// `cycle_len` nodes in cycle order.
//
// # Safety
// `graph` must be a handle from this library; `cycle` must point to
// `cycle_len` readable values; `out` must be writable.
enum PxStatus px_advice_hamiltonian(const struct PxGraph *graph,
                                    const size_t *cycle,
                                    size_t cycle_len,
                                    size_t start,
                                    struct PxAdvice **out);

// Size advice for an `n`-node graph with precision parameter `c`.
//
// # Safety
// `out` must be writable.
enum PxStatus px_advice_size(uint64_t n, uint32_t c, struct PxAdvice **out);

// Length in bits.
//
// # Safety
// `advice` must be null or a handle from this library.
size_t px_advice_len(const struct PxAdvice *advice);

// Bit `index` (0 or 1), or -1 if out of range.
//
// # Safety
// `advice` must be null or a handle from this library.
int32_t px_advice_bit(const struct PxAdvice *advice, size_t index);

// # Safety
// `advice` must be null or a handle from this library, not yet freed.
void px_advice_free(struct PxAdvice *advice);

// Runs an explorer with the given advice from `start`. `c` is the size
// advice parameter and `uxs_cap` the largest certified UXS bound (poly
// only); with `clamp` set, larger decoded bounds use the cap's sequence.
// A budget of 0 means unbounded.
//
// # Safety
// `graph` and `advice` must be handles from this library; `out` must be
// writable.
enum PxStatus px_explore(const struct PxGraph *graph,
                         const struct PxAdvice *advice,
                         uint32_t algorithm,
                         uint32_t oracle,
                         size_t start,
                         uint32_t c,
                         size_t uxs_cap,
                         bool clamp,
                         size_t budget,
                         struct PxOutcome *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PORTEXPLORE_H */
