/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef SPIRALLIKE_H
#define SPIRALLIKE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. Values 2–4 match the command-line exit codes.
 */
typedef enum SplStatus {
  SPL_STATUS_OK = 0,
  /**
   * Invalid parameters, measure, or JSON.
   */
  SPL_STATUS_INVALID_INPUT = 2,
  /**
   * Point outside the domain, or a numerical refinement failure.
   */
  SPL_STATUS_DOMAIN = 3,
  /**
   * Requested accuracy could not be met.
   */
  SPL_STATUS_ACCURACY = 4,
  SPL_STATUS_NULL_POINTER = 5,
  SPL_STATUS_INVALID_UTF8 = 6,
  /**
   * An internal panic was caught.
   */
  SPL_STATUS_PANIC = 7,
} SplStatus;

/**
 * Gallery selectors for [`spl_function_gallery`].
 */
typedef enum SplGallery {
  SPL_GALLERY_IDENTITY = 0,
  SPL_GALLERY_KOEBE = 1,
  SPL_GALLERY_G0 = 2,
} SplGallery;

/**
 * Opaque function handle.
 */
typedef struct SplFunction SplFunction;

/**
 * A complex number.
 */
typedef struct SplComplex {
  double re;
  double im;
} SplComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *spl_last_error_message(void);

/**
 * Builds the λ-spirallike function of a measure given as JSON text
 * `{"atoms": [{"t": .., "jump": ..}], "density_knots": [{"t": .., "value": ..}]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be valid for writes.
 */
enum SplStatus spl_function_from_measure_json(const char *json,
                                              double lambda,
                                              struct SplFunction **out);

/**
 * Builds the λ-spirallike function of a purely atomic measure.
 *
 * # Safety
 * `positions` and `jumps` must point to `count` doubles each; `out` must be
 * valid for writes.
 */
enum SplStatus spl_function_from_atoms(const double *positions,
                                       const double *jumps,
                                       size_t count,
                                       double lambda,
                                       struct SplFunction **out);

/**
 * The λ-spirallike partner of a gallery function.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum SplStatus spl_function_gallery(enum SplGallery kind, double lambda, struct SplFunction **out);

/**
 * The λ-spirallike partner of the Hansen function with the given parameters.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum SplStatus spl_function_hansen(double alpha,
                                   double beta_exp,
                                   double c,
                                   double lambda,
                                   struct SplFunction **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `f` must be null or a handle not yet freed.
 */
void spl_function_free(struct SplFunction *f);

/**
 * `f(z)`.
 *
 * # Safety
 * `f` must be a live handle and `out` valid for writes.
 */
enum SplStatus spl_evaluate(const struct SplFunction *f,
                            struct SplComplex z,
                            struct SplComplex *out);

/**
 * `log(f(z)/z)`, the branch vanishing at 0.
 *
 * # Safety
 * `f` must be a live handle and `out` valid for writes.
 */
enum SplStatus spl_log_f_over_z(const struct SplFunction *f,
                                struct SplComplex z,
                                struct SplComplex *out);

/**
 * `z f'(z)/f(z)`.
 *
 * # Safety
 * `f` must be a live handle and `out` valid for writes.
 */
enum SplStatus spl_log_derivative(const struct SplFunction *f,
                                  struct SplComplex z,
                                  struct SplComplex *out);

/**
 * Principal λ-argument of a nonzero `w`, in `(-π, π]`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum SplStatus spl_arg_lambda(struct SplComplex w, double lambda, double *out);

/**
 * `M(r, f)` from `coarse` angles plus local refinement.
 *
 * # Safety
 * `f` must be a live handle and `out` valid for writes.
 */
enum SplStatus spl_max_modulus(const struct SplFunction *f, double r, size_t coarse, double *out);

/**
 * Minimum of `Re(e^{-iλ} zf'/f)` over a polar grid, using the handle's λ.
 *
 * # Safety
 * `f` must be a live handle and `out` valid for writes.
 */
enum SplStatus spl_spirallikeness_margin(const struct SplFunction *f,
                                         size_t radial,
                                         size_t angular,
                                         double r_max,
                                         double *out);

/**
 * Taylor coefficients `a_1..a_{n_max}` written to `out[0..n_max]`.
 *
 * # Safety
 * `f` must be a live handle and `out` valid for `n_max` writes.
 */
enum SplStatus spl_taylor_coefficients(const struct SplFunction *f,
                                       size_t n_max,
                                       double radius,
                                       struct SplComplex *out);

/**
 * `Q(θ)` for `0 < θ < π/2`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum SplStatus spl_q_function(double theta, double *out);

/**
 * Samples the boundary function on `t_grid` points at radius `r`.
 * Angles go to `t_out`, values to `beta_out`.
 *
 * # Safety
 * `f` must be a live handle; `t_out` and `beta_out` must be valid for
 * `t_grid` writes each.
 */
enum SplStatus spl_beta_trace(const struct SplFunction *f,
                              size_t t_grid,
                              double r,
                              double *t_out,
                              double *beta_out);

/**
 * Largest boundary jump estimated from a trace on `t_grid` points at radius
 * `r`, with its location and midpoint value.
 *
 * # Safety
 * `f` must be a live handle; the three outputs must be valid for writes.
 */
enum SplStatus spl_estimate_max_jump(const struct SplFunction *f,
                                     size_t t_grid,
                                     double r,
                                     double *jump,
                                     double *location,
                                     double *center);

/**
 * Growth exponents `log(M/r)/log(1/(1-r))` for `count ≥ 3` increasing radii,
 * written to `exponents_out`, and the predicted limit to `q0_out`.
 *
 * # Safety
 * `f` must be a live handle; `radii` and `exponents_out` must be valid for
 * `count` elements; `q0_out` must be valid for writes.
 */
enum SplStatus spl_growth_exponent(const struct SplFunction *f,
                                   const double *radii,
                                   size_t count,
                                   double *exponents_out,
                                   double *q0_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPIRALLIKE_H */
