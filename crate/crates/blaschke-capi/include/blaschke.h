/* C interface to the blaschke library. Regenerated by the build script. */

#ifndef BLASCHKE_H
#define BLASCHKE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible call.
 */
typedef enum BlaschkeStatus {
  /**
   * Success; out-pointers hold the result.
   */
  BlaschkeStatus_Ok = 0,
  /**
   * An argument is outside its documented domain.
   */
  BlaschkeStatus_InvalidArgument = 1,
  /**
   * The computation itself is infeasible (degenerate fit, saturated
   * exceptional set, diverging measure).
   */
  BlaschkeStatus_Math = 2,
  /**
   * File system failure.
   */
  BlaschkeStatus_Io = 3,
  /**
   * A required pointer was NULL.
   */
  BlaschkeStatus_NullPointer = 4,
  /**
   * A string argument was not valid UTF-8.
   */
  BlaschkeStatus_InvalidUtf8 = 5,
  /**
   * Internal panic, caught at the boundary.
   */
  BlaschkeStatus_Panic = 6,
} BlaschkeStatus;

/**
 * A circular exceptional set handle.
 */
typedef struct BlaschkeIntervalSet BlaschkeIntervalSet;

/**
 * A zero sequence handle.
 */
typedef struct BlaschkeSequence BlaschkeSequence;

/**
 * A weight function handle.
 */
typedef struct BlaschkeWeight BlaschkeWeight;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copy the current thread's last error message into `buf` as a
 * NUL-terminated string. Returns the full length of the message including
 * the NUL; if it exceeds `cap` the copy is truncated (still terminated).
 * With no recorded error the result is an empty string of length 1.
 *
 * # Safety
 * `buf` must point to `cap` writable bytes, or be NULL (then only the
 * required length is returned).
 */
size_t blaschke_last_error(char *buf, size_t cap);

/**
 * Static name of a status code ("ok", "invalid-argument", ...).
 */
const char *blaschke_status_name(enum BlaschkeStatus status);

/**
 * Build the geometric family `1 - r_n = c^n`, `n = 1..=count`, with the
 * deterministic golden-rotation angle rule.
 *
 * # Safety
 * `out` must be a valid pointer; on `Ok` it receives an owned handle that
 * must be released with [`blaschke_sequence_free`].
 */
enum BlaschkeStatus blaschke_sequence_geometric(double c,
                                                size_t count,
                                                struct BlaschkeSequence **out);

/**
 * Build the power-law family `1 - r_n = (n+1)^{-p}`, `n = 1..=count`, with
 * the deterministic golden-rotation angle rule.
 *
 * # Safety
 * `out` must be a valid pointer; on `Ok` it receives an owned handle that
 * must be released with [`blaschke_sequence_free`].
 */
enum BlaschkeStatus blaschke_sequence_power_law(double p,
                                                size_t count,
                                                struct BlaschkeSequence **out);

/**
 * Parse a sequence from the zero-file text format: one `r theta` pair per
 * line, `#` comments allowed.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be a valid pointer and
 * on `Ok` receives an owned handle (release with [`blaschke_sequence_free`]).
 */
enum BlaschkeStatus blaschke_sequence_parse(const char *text, struct BlaschkeSequence **out);

/**
 * Number of zeros in the sequence; 0 for NULL.
 *
 * # Safety
 * `seq` must be a live handle or NULL.
 */
size_t blaschke_sequence_len(const struct BlaschkeSequence *seq);

/**
 * Fetch zero `index` (0-based, original order) as `(r, theta)`.
 *
 * # Safety
 * `seq` must be a live handle; `out_r` and `out_theta` must be valid
 * pointers.
 */
enum BlaschkeStatus blaschke_sequence_zero(const struct BlaschkeSequence *seq,
                                           size_t index,
                                           double *out_r,
                                           double *out_theta);

/**
 * Release a sequence handle. NULL is a no-op.
 *
 * # Safety
 * `seq` must come from a constructor of this library and not be used again.
 */
void blaschke_sequence_free(struct BlaschkeSequence *seq);

/**
 * Build the weight `h(t) = t^alpha * prod_k (log_k 1/t)^{e_k}` from `alpha`
 * and `len` iterated-log exponents (`log_exponents` may be NULL when
 * `len == 0`).
 *
 * # Safety
 * `log_exponents` must point to `len` doubles (or be NULL with `len == 0`);
 * `out` must be a valid pointer and on `Ok` receives an owned handle
 * (release with [`blaschke_weight_free`]).
 */
enum BlaschkeStatus blaschke_weight_new(double alpha,
                                        const double *log_exponents,
                                        size_t len,
                                        struct BlaschkeWeight **out);

/**
 * Evaluate the weight at `t` (within its domain `(0, cutoff)`).
 *
 * # Safety
 * `weight` must be a live handle; `out` must be a valid pointer.
 */
enum BlaschkeStatus blaschke_weight_eval(const struct BlaschkeWeight *weight,
                                         double t,
                                         double *out);

/**
 * Release a weight handle. NULL is a no-op.
 *
 * # Safety
 * `weight` must come from [`blaschke_weight_new`] and not be used again.
 */
void blaschke_weight_free(struct BlaschkeWeight *weight);

/**
 * Evaluate the Blaschke product at `z = re + i im`, `|z| < 1`.
 *
 * # Safety
 * `seq` must be a live handle; `out_re` and `out_im` must be valid pointers.
 */
enum BlaschkeStatus blaschke_eval_product(const struct BlaschkeSequence *seq,
                                          double re,
                                          double im,
                                          double *out_re,
                                          double *out_im);

/**
 * Evaluate the logarithmic derivative `B'(z)/B(z)` at `z = re + i im`.
 *
 * # Safety
 * `seq` must be a live handle; `out_re` and `out_im` must be valid pointers.
 */
enum BlaschkeStatus blaschke_eval_logderiv(const struct BlaschkeSequence *seq,
                                           double re,
                                           double im,
                                           double *out_re,
                                           double *out_im);

/**
 * Build the circular exceptional set: one radial interval
 * `(r_n - w_n, r_n + w_n)` with `w_n = (1 - r_n)^beta h(1 - r_n)` per zero,
 * overlaps merged.
 *
 * # Safety
 * `seq` and `weight` must be live handles; `out` must be a valid pointer
 * and on `Ok` receives an owned handle (release with
 * [`blaschke_exset_free`]).
 */
enum BlaschkeStatus blaschke_exset_build(const struct BlaschkeSequence *seq,
                                         const struct BlaschkeWeight *weight,
                                         double beta,
                                         struct BlaschkeIntervalSet **out);

/**
 * Number of merged intervals; 0 for NULL.
 *
 * # Safety
 * `set` must be a live handle or NULL.
 */
size_t blaschke_exset_len(const struct BlaschkeIntervalSet *set);

/**
 * Total Lebesgue measure of the merged intervals (clipped to `(0, 1)`).
 *
 * # Safety
 * `set` must be a live handle; `out` must be a valid pointer.
 */
enum BlaschkeStatus blaschke_exset_measure(const struct BlaschkeIntervalSet *set, double *out);

/**
 * Whether radius `r` lies inside the (open) exceptional set.
 *
 * # Safety
 * `set` must be a live handle; `out` must be a valid pointer.
 */
enum BlaschkeStatus blaschke_exset_contains(const struct BlaschkeIntervalSet *set,
                                            double r,
                                            bool *out);

/**
 * Release an exceptional-set handle. NULL is a no-op.
 *
 * # Safety
 * `set` must come from [`blaschke_exset_build`] and not be used again.
 */
void blaschke_exset_free(struct BlaschkeIntervalSet *set);

/**
 * Run the circular growth verification on the dyadic radius ladder
 * `1 - 2^{-k}`, `k_min..=k_max`: fit the growth exponent of
 * `max_theta |B'/B|` off the exceptional set and compare it against the
 * predicted `beta + 2 alpha` plus `epsilon`.
 *
 * `out_pass` receives the overall verdict; `out_fitted` and
 * `out_predicted` receive the fitted slope and the predicted exponent.
 *
 * # Safety
 * `seq` and `weight` must be live handles; the three out-pointers must be
 * valid.
 */
enum BlaschkeStatus blaschke_verify_circular(const struct BlaschkeSequence *seq,
                                             const struct BlaschkeWeight *weight,
                                             double beta,
                                             uint32_t k_min,
                                             uint32_t k_max,
                                             size_t angle_fill,
                                             double epsilon,
                                             double *out_fitted,
                                             double *out_predicted,
                                             bool *out_pass);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* BLASCHKE_H */
