#ifndef PLAB_H
#define PLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum PlabStatus {
  PLAB_STATUS_OK = 0,
  PLAB_STATUS_NULL_ARGUMENT = 1,
  PLAB_STATUS_INVALID_UTF8 = 2,
  PLAB_STATUS_MALFORMED_PERMUTATION = 3,
  PLAB_STATUS_DISCONNECTED = 4,
  PLAB_STATUS_BUDGET_EXCEEDED = 5,
  PLAB_STATUS_INVALID_INPUT = 6,
  PLAB_STATUS_ORACLE_UNAVAILABLE = 7,
  PLAB_STATUS_INTERNAL = 8,
  PLAB_STATUS_IO = 9,
  PLAB_STATUS_BUFFER_TOO_SMALL = 10,
} PlabStatus;

// An exchange graph together with its necklace.
typedef struct PlabGraph PlabGraph;

// A Grassmann necklace.
typedef struct PlabNecklace PlabNecklace;

// Message of the most recent failure on this thread, or null. The pointer
// stays valid until the next failing call on the same thread.
const char *plab_last_error(void);

// # Safety
// `s` must be null or a string returned by this library.
void plab_string_free(char *s);

// Builds the necklace of a permutation string such as `"3(10)98712654"`.
//
// # Safety
// `perm` must be a NUL-terminated string and `out` a valid pointer.
enum PlabStatus plab_necklace_from_permutation(const char *perm, struct PlabNecklace **out);

// # Safety
// `necklace` must be null or a handle from this library, freed once.
void plab_necklace_free(struct PlabNecklace *necklace);

// # Safety
// `necklace` must be a live handle.
uintptr_t plab_necklace_n(const struct PlabNecklace *necklace);

// # Safety
// `necklace` must be a live handle.
uintptr_t plab_necklace_k(const struct PlabNecklace *necklace);

// Number of non-boundary sets in every maximal collection.
//
// # Safety
// `necklace` must be a live handle.
uintptr_t plab_necklace_interior_size(const struct PlabNecklace *necklace);

// Set `index` (zero-based) of the necklace as a bitmask, label `j` at bit
// `j - 1`.
//
// # Safety
// `necklace` and `out` must be valid.
enum PlabStatus plab_necklace_set(const struct PlabNecklace *necklace,
                                  uintptr_t index,
                                  uint64_t *out);

// # Safety
// `necklace` and `out` must be valid.
enum PlabStatus plab_necklace_is_prime(const struct PlabNecklace *necklace, bool *out);

// # Safety
// `necklace` and `out` must be valid.
enum PlabStatus plab_necklace_is_mutation_friendly(const struct PlabNecklace *necklace, bool *out);

// # Safety
// `necklace` and `out` must be valid.
enum PlabStatus plab_necklace_is_very_mutation_friendly(const struct PlabNecklace *necklace,
                                                        bool *out);

// Lexicographically least member of the permutation's equivalence class.
//
// # Safety
// `perm` must be a NUL-terminated string and `out` a valid pointer.
enum PlabStatus plab_canonical_representative(const char *perm, char **out);

// Enumerates the exchange graph; `budget` caps the number of collections
// (0 selects the default).
//
// # Safety
// `necklace` must be a live handle and `out` a valid pointer.
enum PlabStatus plab_exchange_graph(const struct PlabNecklace *necklace,
                                    uintptr_t budget,
                                    struct PlabGraph **out);

// # Safety
// `graph` must be null or a handle from this library, freed once.
void plab_graph_free(struct PlabGraph *graph);

// # Safety
// `graph` must be a live handle.
uintptr_t plab_graph_order(const struct PlabGraph *graph);

// # Safety
// `graph` must be a live handle.
uintptr_t plab_graph_size(const struct PlabGraph *graph);

// Writes the edges as `(u, v)` pairs of zero-based vertex indices into
// `buf`, which holds `capacity` pairs. `written` receives the edge count;
// `BufferTooSmall` is returned when it exceeds `capacity`.
//
// # Safety
// `buf` must hold `2 * capacity` elements; `graph` and `written` must be
// valid.
enum PlabStatus plab_graph_edges(const struct PlabGraph *graph,
                                 uintptr_t *buf,
                                 uintptr_t capacity,
                                 uintptr_t *written);

// Canonical certificate text; equal strings mean isomorphic graphs.
//
// # Safety
// `graph` must be a live handle and `out` a valid pointer.
enum PlabStatus plab_graph_certificate(const struct PlabGraph *graph, char **out);

// Catalog name of the graph, or null in `*out` when it has none.
//
// # Safety
// `graph` must be a live handle and `out` a valid pointer.
enum PlabStatus plab_graph_catalog_name(const struct PlabGraph *graph, char **out);

// The graph document as JSON.
//
// # Safety
// `graph` must be a live handle and `out` a valid pointer.
enum PlabStatus plab_graph_to_json(const struct PlabGraph *graph, char **out);

// Prime very-mutation-friendly classes of one interior size as a JSON
// array of rows. `jobs` of 0 uses all cores.
//
// # Safety
// `out` must be a valid pointer.
enum PlabStatus plab_classify_json(uintptr_t interior, uintptr_t jobs, char **out);

#endif  /* PLAB_H */
