#ifndef INJCLASS_H
#define INJCLASS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum InjStatus {
  INJ_STATUS_OK = 0,
  INJ_STATUS_NULL_ARGUMENT = 1,
  INJ_STATUS_INVALID_UTF8 = 2,
  INJ_STATUS_PARSE = 3,
  /**
   * The value is well formed but violates a validity rule or a precondition.
   */
  INJ_STATUS_INVALID = 4,
  /**
   * The output buffer is too small; the required length is still reported.
   */
  INJ_STATUS_BUFFER_TOO_SMALL = 5,
  INJ_STATUS_PANIC = 6,
} InjStatus;

typedef struct InjCycleType InjCycleType;

typedef struct InjDescriptor InjDescriptor;

typedef struct InjDressedMap InjDressedMap;

typedef struct InjMonoid InjMonoid;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty after a success. Valid until the
 * next call on the same thread.
 */
const char *inj_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void inj_string_free(char *s);

/**
 * Parses and validates a cycle type such as `ct(open=0,fwd=1,default=0,2:3)`.
 *
 * # Safety
 * `s` must be a nul-terminated string; `out` must be writable.
 */
enum InjStatus inj_cycle_type_parse(const char *s, struct InjCycleType **out);

/**
 * # Safety
 * `t` must be null or a live handle.
 */
void inj_cycle_type_free(struct InjCycleType *t);

/**
 * Normal form of a cycle type; free the result with [`inj_string_free`].
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum InjStatus inj_cycle_type_to_string(const struct InjCycleType *t, char **out);

/**
 * Coimage size; `*infinite` is set when it is infinite, in which case `*size` is 0.
 *
 * # Safety
 * `t` must be a live handle; the outputs must be writable.
 */
enum InjStatus inj_cycle_type_coimage(const struct InjCycleType *t, uint64_t *size, bool *infinite);

/**
 * Whether the two types are equal, i.e. their maps are conjugate.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum InjStatus inj_cycle_type_conjugate(const struct InjCycleType *a,
                                        const struct InjCycleType *b,
                                        bool *out);

/**
 * The finitary relation.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum InjStatus inj_cycle_type_approx_fin(const struct InjCycleType *a,
                                         const struct InjCycleType *b,
                                         bool *out);

/**
 * The even relation.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum InjStatus inj_cycle_type_approx_even(const struct InjCycleType *a,
                                          const struct InjCycleType *b,
                                          bool *out);

/**
 * Type after cutting an `n`-cycle off an infinite cycle.
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum InjStatus inj_cycle_type_split(const struct InjCycleType *t,
                                    uint64_t n,
                                    struct InjCycleType **out);

/**
 * Type after splicing an `n`-cycle into an infinite cycle.
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum InjStatus inj_cycle_type_merge(const struct InjCycleType *t,
                                    uint64_t n,
                                    struct InjCycleType **out);

/**
 * Parses a numerical monoid such as `nm(3,5)`.
 *
 * # Safety
 * `s` must be a nul-terminated string; `out` must be writable.
 */
enum InjStatus inj_monoid_parse(const char *s, struct InjMonoid **out);

/**
 * # Safety
 * `m` must be null or a live handle.
 */
void inj_monoid_free(struct InjMonoid *m);

/**
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum InjStatus inj_monoid_contains(const struct InjMonoid *m, uint64_t n, bool *out);

/**
 * Copies the minimal generators, ascending, into `buf`. `*len` receives their number
 * even when `cap` is too small.
 *
 * # Safety
 * `m` must be a live handle; `buf` must hold `cap` values (it may be null when `cap` is 0);
 * `len` must be writable.
 */
enum InjStatus inj_monoid_min_gens(const struct InjMonoid *m,
                                   uint64_t *buf,
                                   size_t cap,
                                   size_t *len);

/**
 * Parses a dressed map such as `dmap(p=perm((0 1)),t=ct(open=0,fwd=1,default=0),q=perm())`.
 *
 * # Safety
 * `s` must be a nul-terminated string; `out` must be writable.
 */
enum InjStatus inj_dmap_parse(const char *s, struct InjDressedMap **out);

/**
 * # Safety
 * `m` must be null or a live handle.
 */
void inj_dmap_free(struct InjDressedMap *m);

/**
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum InjStatus inj_dmap_eval(const struct InjDressedMap *m, uint64_t x, uint64_t *out);

/**
 * Preimage of `y`; `*found` is false for points outside the image.
 *
 * # Safety
 * `m` must be a live handle; the outputs must be writable.
 */
enum InjStatus inj_dmap_preimage(const struct InjDressedMap *m,
                                 uint64_t y,
                                 uint64_t *out,
                                 bool *found);

/**
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum InjStatus inj_dmap_exact_type(const struct InjDressedMap *m, struct InjCycleType **out);

/**
 * Decides whether a map of type `th` is a product of conjugates of maps of types `tf` and
 * `tg`. `*verified` is set when witnesses were built and checked on `0..window`.
 *
 * # Safety
 * The type handles must be live; the outputs must be writable.
 */
enum InjStatus inj_factor(const struct InjCycleType *tf,
                          const struct InjCycleType *tg,
                          const struct InjCycleType *th,
                          uint64_t window,
                          bool *decision,
                          bool *verified);

/**
 * Parses a submonoid descriptor line. The descriptor is not validated here.
 *
 * # Safety
 * `s` must be a nul-terminated string; `out` must be writable.
 */
enum InjStatus inj_descriptor_parse(const char *s, struct InjDescriptor **out);

/**
 * # Safety
 * `d` must be null or a live handle.
 */
void inj_descriptor_free(struct InjDescriptor *d);

/**
 * `*ok` is false when the descriptor has violations; they are listed, one per line, in
 * [`inj_last_error`].
 *
 * # Safety
 * `d` must be a live handle; `ok` must be writable.
 */
enum InjStatus inj_descriptor_validate(const struct InjDescriptor *d, bool *ok);

/**
 * Membership of maps of type `t`; fails with `Invalid` if the descriptor is invalid.
 *
 * # Safety
 * `d` and `t` must be live handles; `out` must be writable.
 */
enum InjStatus inj_descriptor_member(const struct InjDescriptor *d,
                                     const struct InjCycleType *t,
                                     bool *out);

/**
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum InjStatus inj_descriptor_to_string(const struct InjDescriptor *d, char **out);

/**
 * Runs a property suite by name; `*passed` is true when no trial failed.
 *
 * # Safety
 * `suite` must be a nul-terminated string; `passed` must be writable.
 */
enum InjStatus inj_verify(const char *suite,
                          uint64_t trials,
                          uint64_t seed,
                          uint64_t window,
                          bool *passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* INJCLASS_H */
