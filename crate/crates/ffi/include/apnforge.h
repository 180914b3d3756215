#ifndef APNFORGE_H
#define APNFORGE_H

/* Generated by the apnforge-ffi build script; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call.
typedef enum ApnForgeStatus {
  ApnForgeStatus_Ok = 0,
  // A required pointer argument was null.
  ApnForgeStatus_NullArgument = 1,
  // A string argument was not valid UTF-8.
  ApnForgeStatus_InvalidUtf8 = 2,
  // The input was rejected (parse failure, constraint violation, …).
  ApnForgeStatus_InvalidInput = 3,
  // A size cap refused the computation (field too large, exponent cap).
  ApnForgeStatus_CapExceeded = 4,
  // A search budget ran out before the computation finished.
  ApnForgeStatus_BudgetExhausted = 5,
  // A panic was caught at the boundary.
  ApnForgeStatus_PanicCaught = 6,
  // An internal invariant failed.
  ApnForgeStatus_InternalError = 7,
} ApnForgeStatus;

// Opaque handle to a quadratic binomial in normal form.
typedef struct ApnForgeBinomial ApnForgeBinomial;

// Opaque handle to a binary field GF(2^m).
typedef struct ApnForgeField ApnForgeField;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Build GF(2^m) with the built-in modulus for m.
//
// # Safety
// `out` must point to writable storage for one pointer.
enum ApnForgeStatus apnforge_field_new(uint32_t m, struct ApnForgeField **out);

// Build GF(2^m) with an explicit irreducible modulus, given as hex bits
// ("0x409" is x^10 + x^3 + 1).
//
// # Safety
// `modulus_hex` must be a valid C string; `out` as in `apnforge_field_new`.
enum ApnForgeStatus apnforge_field_new_with_modulus(uint32_t m,
                                                    const char *modulus_hex,
                                                    struct ApnForgeField **out);

// Degree m of the field, or 0 for a null handle.
//
// # Safety
// `field` must be a live handle from this library, or null.
uint32_t apnforge_field_degree(const struct ApnForgeField *field);

// Release a field handle.  Null is ignored.
//
// # Safety
// `field` must be a handle from this library, not yet freed, or null.
void apnforge_field_free(struct ApnForgeField *field);

// Build the binomial x^(2^i+1) + delta*x^(2^s(2^t+1)) over the given
// field.  `delta` accepts hex bits, a decimal bit pattern, or a generator
// power like "a^374".
//
// # Safety
// `field` must be a live handle; `delta` a valid C string; `out` writable.
enum ApnForgeStatus apnforge_binomial_new(const struct ApnForgeField *field,
                                          uint32_t i,
                                          uint32_t s,
                                          uint32_t t,
                                          const char *delta,
                                          struct ApnForgeBinomial **out);

// Bring a raw binomial c1*x^e1 + c2*x^e2 to normal form.  Both exponents
// must be sums of two powers of two (quadratic terms).
//
// # Safety
// As for `apnforge_binomial_new`; `c1` and `c2` must be valid C strings.
enum ApnForgeStatus apnforge_binomial_normalize(const struct ApnForgeField *field,
                                                const char *c1,
                                                uint64_t e1,
                                                const char *c2,
                                                uint64_t e2,
                                                struct ApnForgeBinomial **out);

// Release a binomial handle.  Null is ignored.
//
// # Safety
// `binomial` must be a handle from this library, not yet freed, or null.
void apnforge_binomial_free(struct ApnForgeBinomial *binomial);

// Classify the binomial and return the full report as a JSON string.
// Pass 0 for either budget argument to use the default.
//
// # Safety
// `binomial` must be a live handle; `out_json` writable.
enum ApnForgeStatus apnforge_classify_json(const struct ApnForgeBinomial *binomial,
                                           uint64_t max_beta_trials,
                                           uint64_t max_spec_degree,
                                           char **out_json);

// Differential uniformity of the binomial over its coefficient field.
//
// # Safety
// `binomial` must be a live handle; `out_du` writable.
enum ApnForgeStatus apnforge_differential_uniformity(const struct ApnForgeBinomial *binomial,
                                                     uint64_t *out_du);

// Count off-diagonal zeros of the difference polynomial over the degree-n
// extension of the coefficient field (n = 1 counts over the field itself).
//
// # Safety
// `binomial` must be a live handle; `out_count` writable.
enum ApnForgeStatus apnforge_count_points(const struct ApnForgeBinomial *binomial,
                                          uint32_t extension_degree,
                                          uint64_t *out_count);

// Release a string returned by this library.  Null is ignored.
//
// # Safety
// `text` must have been returned by this library, not yet freed, or null.
void apnforge_string_free(char *text);

// Message for the most recent failure on this thread.  The pointer stays
// valid until the next failing call on the same thread; do not free it.
const char *apnforge_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* APNFORGE_H */
