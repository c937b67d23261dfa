#ifndef GROUPOID_HOMOLOGY_H
#define GROUPOID_HOMOLOGY_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GhStatus {
  GH_STATUS_OK = 0,
  GH_STATUS_NULL_POINTER = 1,
  GH_STATUS_INVALID_UTF8 = 2,
  // Malformed document or failed validation.
  GH_STATUS_INVALID_INPUT = 3,
  // Budget, hypothesis or depth-cap refusal.
  GH_STATUS_REFUSED = 4,
  // Operands live on different graphs or supports.
  GH_STATUS_MISMATCH = 5,
  // A Rust panic was caught at the boundary.
  GH_STATUS_INTERNAL = 6,
} GhStatus;

// Graded homology `H_*(G)`.
typedef struct GhHomology GhHomology;

// Parsed groupoid spec.
typedef struct GhSpec GhSpec;

// Full-group element as a prefix-exchange table.
typedef struct GhTable GhTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. The pointer
// stays valid until the next `gh_*` call on the same thread.
const char *gh_last_error(void);

// Library version as a static NUL-terminated string.
const char *gh_version(void);

// # Safety
// `s` is NULL or was returned by this library and not yet freed.
void gh_string_free(char *s);

// Parses a groupoid spec from JSON text.
//
// # Safety
// `json` is a NUL-terminated string; `out` is writable.
enum GhStatus gh_spec_parse_json(const char *json, struct GhSpec **out);

// # Safety
// `spec` is NULL or a live handle from [`gh_spec_parse_json`].
void gh_spec_free(struct GhSpec *spec);

// Computes `H_*` of a spec. Finite groupoids are reduced through
// `max_degree` within `memory_budget` bytes; 0 selects the defaults.
//
// # Safety
// `spec` is a live handle; `out` is writable.
enum GhStatus gh_homology_compute(const struct GhSpec *spec,
                                  uint32_t max_degree,
                                  uint64_t memory_budget,
                                  struct GhHomology **out);

// # Safety
// `h` is NULL or a live handle from [`gh_homology_compute`].
void gh_homology_free(struct GhHomology *h);

// Free rank and number of torsion summands of `H_degree`. Fails with
// `InvalidInput` past the known range of a truncated result.
//
// # Safety
// `h` is a live handle; `rank` and `torsion_count` are writable.
enum GhStatus gh_homology_degree(const struct GhHomology *h,
                                 uint32_t degree,
                                 size_t *rank,
                                 size_t *torsion_count);

// # Safety
// `h` is a live handle; `out` is writable.
enum GhStatus gh_homology_to_json(const struct GhHomology *h, char **out);

// Rational homology, Poincaré series through degree `n`, vanishing
// verdict and AH resolution as one JSON object. `declare` is NULL or a
// comma-separated list of `minimal`, `comparison`, `no-isolated-points`.
//
// # Safety
// `h` is a live handle; `declare` is NULL or NUL-terminated; `out` is writable.
enum GhStatus gh_invariants_json(const struct GhHomology *h,
                                 uint32_t n,
                                 const char *declare,
                                 char **out);

// Parses an element document `{"graph": …, "pairs": […]}`. A zero
// `depth_cap` selects the default.
//
// # Safety
// `json` is NUL-terminated; `out` is writable.
enum GhStatus gh_table_parse_json(const char *json, uint32_t depth_cap, struct GhTable **out);

// # Safety
// `t` is NULL or a live table handle.
void gh_table_free(struct GhTable *t);

// `a ∘ b`: apply `b`, then `a`.
//
// # Safety
// `a` and `b` are live handles; `out` is writable.
enum GhStatus gh_table_compose(const struct GhTable *a,
                               const struct GhTable *b,
                               struct GhTable **out);

// # Safety
// `t` is a live handle; `out` is writable.
enum GhStatus gh_table_inverse(const struct GhTable *t, struct GhTable **out);

// Extends `t` by the identity to the `len` copy indices in `copies`.
//
// # Safety
// `t` is a live handle; `copies` points to `len` readable values; `out` is writable.
enum GhStatus gh_table_embed(const struct GhTable *t,
                             const uint32_t *copies,
                             size_t len,
                             struct GhTable **out);

// # Safety
// `a` and `b` are live handles; `out` is writable.
enum GhStatus gh_table_equals(const struct GhTable *a, const struct GhTable *b, bool *out);

// Order of `t` if at most `cap`; writes 0 when the order exceeds `cap`
// or a power outgrows the depth cap.
//
// # Safety
// `t` is a live handle; `out` is writable.
enum GhStatus gh_table_order(const struct GhTable *t, uint64_t cap, uint64_t *out);

// # Safety
// `t` is a live handle; `out` is writable.
enum GhStatus gh_table_to_json(const struct GhTable *t, char **out);

// Compact form such as `{(00→1),(01→00),(1→01)}`, in UTF-8.
//
// # Safety
// `t` is a live handle; `out` is writable.
enum GhStatus gh_table_compact(const struct GhTable *t, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GROUPOID_HOMOLOGY_H */
