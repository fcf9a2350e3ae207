#ifndef GALECUBIC_H
#define GALECUBIC_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum GcStatus {
  GC_STATUS_OK = 0,
  GC_STATUS_NULL_POINTER = 1,
  GC_STATUS_INVALID_INPUT = 2,
  GC_STATUS_PARSE_ERROR = 3,
  GC_STATUS_DEGENERATE_TUPLE = 4,
  GC_STATUS_CONDITION_FAILED = 5,
  GC_STATUS_INTERNAL = 6,
  GC_STATUS_PANIC = 7,
} GcStatus;

/**
 * One equation `det M ± L1 L2 L3`.
 */
typedef struct GcEquation GcEquation;

/**
 * A parsed instance file.
 */
typedef struct GcInstance GcInstance;

/**
 * A validated ρ-Lagrangian subspace.
 */
typedef struct GcLagrangian GcLagrangian;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null. The pointer
 * stays valid until the next call into the library on the same thread.
 */
const char *gc_last_error(void);

/**
 * Release a string returned by this library.
 *
 * # Safety
 * `s` must be null or a pointer obtained from this library that has not been freed.
 */
void gc_string_free(char *s);

/**
 * Library version as a static string.
 */
const char *gc_version(void);

/**
 * Parse an instance from JSON.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum GcStatus gc_instance_parse(const char *json, struct GcInstance **out);

/**
 * Serialize an instance to pretty-printed JSON.
 *
 * # Safety
 * `inst` must be a live handle; `out` must be writable.
 */
enum GcStatus gc_instance_to_json(const struct GcInstance *inst, char **out);

/**
 * # Safety
 * `inst` must be null or a live handle.
 */
void gc_instance_free(struct GcInstance *inst);

/**
 * # Safety
 * `inst` must be a live handle; `out` must be writable.
 */
enum GcStatus gc_instance_equation_count(const struct GcInstance *inst, size_t *out);

/**
 * Copy equation `index` out of an instance.
 *
 * # Safety
 * `inst` must be a live handle; `out` must be writable.
 */
enum GcStatus gc_instance_equation(const struct GcInstance *inst,
                                   size_t index,
                                   struct GcEquation **out);

/**
 * A random equation of full rank over `field` (e.g. `"rational"`, `"prime:101"`).
 *
 * # Safety
 * `field` must be a nul-terminated string; `out` must be writable.
 */
enum GcStatus gc_equation_random(const char *field, uint64_t seed, struct GcEquation **out);

/**
 * # Safety
 * `eq` must be null or a live handle.
 */
void gc_equation_free(struct GcEquation *eq);

/**
 * The Gale dual; fails with `DegenerateTuple` for rank-deficient input.
 *
 * # Safety
 * `eq` must be a live handle; `out` must be writable.
 */
enum GcStatus gc_equation_gale_dual(const struct GcEquation *eq, struct GcEquation **out);

/**
 * Whether the coefficient map has rank 6 and at least two L-forms are independent.
 *
 * # Safety
 * `eq` must be a live handle; `out` must be writable.
 */
enum GcStatus gc_equation_is_valid(const struct GcEquation *eq, bool *out);

/**
 * Whether the coefficient maps of `a` and `b` compose to zero.
 *
 * # Safety
 * `a` and `b` must be live handles over the same field; `out` must be writable.
 */
enum GcStatus gc_equation_composes_to_zero(const struct GcEquation *a,
                                           const struct GcEquation *b,
                                           bool *out);

/**
 * The equation as JSON (`vars`, `m`, `l`, `sign`).
 *
 * # Safety
 * `eq` must be a live handle; `out` must be writable.
 */
enum GcStatus gc_equation_to_json(const struct GcEquation *eq, char **out);

/**
 * The cubic polynomial as JSON (`vars`, `terms`).
 *
 * # Safety
 * `eq` must be a live handle; `out` must be writable.
 */
enum GcStatus gc_equation_cubic_json(const struct GcEquation *eq, char **out);

/**
 * The ρ-Lagrangian attached to `eq` and the choice `i ∈ {1,2,3}` of L-form.
 *
 * # Safety
 * `eq` must be a live handle; `out` must be writable.
 */
enum GcStatus gc_lagrangian_from_gale(const struct GcEquation *eq,
                                      uint32_t i,
                                      struct GcLagrangian **out);

/**
 * # Safety
 * `a` must be null or a live handle.
 */
void gc_lagrangian_free(struct GcLagrangian *a);

/**
 * Basis of the subspace as a JSON list of ten 20-vectors.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum GcStatus gc_lagrangian_to_json(const struct GcLagrangian *a, char **out);

/**
 * Rank test for a point given as a JSON 6-vector. Writes membership and
 * `dim(A ∩ F_λ)`.
 *
 * # Safety
 * `a` must be a live handle, `point_json` a nul-terminated string, and both
 * outputs writable.
 */
enum GcStatus gc_epw_contains(const struct GcLagrangian *a,
                              const char *point_json,
                              bool *on_sextic,
                              size_t *dim);

/**
 * Up to `count` points of the EPW sextic over a prime field, as a JSON list
 * of 6-vectors.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum GcStatus gc_epw_harvest(const struct GcLagrangian *a, size_t count, uint64_t seed, char **out);

/**
 * Number of glue groups in the overlattice count.
 *
 * # Safety
 * `out` must be writable.
 */
enum GcStatus gc_lattice_count(size_t *out);

/**
 * The A4 family member for integer parameters `(α, β, γ, δ, λ)`: an
 * instance with both cubics, the generators and the parameters.
 *
 * # Safety
 * `params` must point to five integers, `field` must be a nul-terminated
 * string, and `out` must be writable.
 */
enum GcStatus gc_a4_emit(const int64_t *params, const char *field, struct GcInstance **out);

/**
 * Run acceptance criterion `number` (1..=12). Writes whether it passed
 * within its time bound, and a JSON report if `report` is non-null.
 *
 * # Safety
 * `pass` must be writable; `report` must be null or writable.
 */
enum GcStatus gc_selftest_run(uint8_t number, uint64_t seed, bool *pass, char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GALECUBIC_H */
