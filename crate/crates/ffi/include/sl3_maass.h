#ifndef SL3_MAASS_H
#define SL3_MAASS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Whittaker algorithm selector.
typedef enum Sl3Algorithm {
  SL3_ALGORITHM_AUTO = 0,
  SL3_ALGORITHM_STADE = 1,
  SL3_ALGORITHM_ORIGIN = 2,
  SL3_ALGORITHM_SMALL_ARG = 3,
} Sl3Algorithm;

// Source of Whittaker values inside Maass evaluation.
typedef enum Sl3Backend {
  SL3_BACKEND_FIXED_D = 0,
  SL3_BACKEND_STADE = 1,
  SL3_BACKEND_AUTO = 2,
} Sl3Backend;

// Status codes.
typedef enum Sl3Status {
  SL3_STATUS_OK = 0,
  SL3_STATUS_NULL_POINTER = 1,
  SL3_STATUS_DOMAIN = 2,
  SL3_STATUS_POLE = 3,
  SL3_STATUS_UNDERFLOW = 4,
  SL3_STATUS_NON_CONVERGENCE = 5,
  SL3_STATUS_SERIES_NON_CONVERGENCE = 6,
  SL3_STATUS_NON_TEMPERED = 7,
  SL3_STATUS_DEGENERATE = 8,
  SL3_STATUS_CANCELLATION = 9,
  SL3_STATUS_ACCURACY_RANGE = 10,
  SL3_STATUS_DETERMINANT = 11,
  SL3_STATUS_NUMERICAL_DEGENERACY = 12,
  SL3_STATUS_MISSING_COEFFICIENT = 13,
  SL3_STATUS_MISSING_INPUT = 14,
  SL3_STATUS_PARSE = 15,
  SL3_STATUS_IO = 16,
  SL3_STATUS_PANIC = 17,
} Sl3Status;

// Opaque Maass form (parameters, coefficients and cutoff).
typedef struct Sl3Form Sl3Form;

// Opaque Langlands parameters.
typedef struct Sl3Params Sl3Params;

// A Whittaker value. The scaled value `e^{π|α-β|} W` equals
// `(scaled_re + i scaled_im) · e^{scaled_log}`; `re`, `im` hold `W`
// itself (zero or infinite when it does not fit in a double).
typedef struct Sl3Whittaker {
  double scaled_re;
  double scaled_im;
  double scaled_log;
  double re;
  double im;
  double rel_error;
  // 1 Stade, 2 origin series, 3 small-argument series, 4 fixed-D Mellin.
  int32_t algorithm;
} Sl3Whittaker;

// A Maass form value.
typedef struct Sl3MaassValue {
  double re;
  double im;
  double abs_error;
  // Largest `m2` whose terms reach the accuracy threshold.
  uint32_t max_m2;
  uint32_t distinct_d;
} Sl3MaassValue;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call on this thread.
const char *sl3_last_error(void);

// Parameters from imaginary parts; `gamma_im` must equal `-alpha_im - beta_im`
// up to rounding of printed values.
//
// # Safety
// `out` must be a valid pointer.
enum Sl3Status sl3_params_new(double alpha_im,
                              double beta_im,
                              double gamma_im,
                              struct Sl3Params **out);

// # Safety
// `p` must come from [`sl3_params_new`] and not be used afterwards. Null is ignored.
void sl3_params_free(struct Sl3Params *p);

// Evaluate the Whittaker function.
//
// # Safety
// `p` must be a live handle and `out` a valid pointer.
enum Sl3Status sl3_whittaker(const struct Sl3Params *p,
                             double y1,
                             double y2,
                             enum Sl3Algorithm algorithm,
                             struct Sl3Whittaker *out);

// Load a coefficient file and compute the cutoff for accuracy goal `eps`.
//
// # Safety
// `path` must be a NUL-terminated string and `out` a valid pointer.
enum Sl3Status sl3_form_load(const char *path, double eps, struct Sl3Form **out);

// # Safety
// `f` must come from [`sl3_form_load`] and not be used afterwards. Null is ignored.
void sl3_form_free(struct Sl3Form *f);

// The cutoff `C` of a form.
//
// # Safety
// `f` must be a live handle and `out` a valid pointer.
enum Sl3Status sl3_form_cutoff(const struct Sl3Form *f, double *out);

// `f(z)` at `z = ((x1, x2, x3), (y1, y2))`.
//
// # Safety
// `f` must be a live handle and `out` a valid pointer.
enum Sl3Status sl3_form_eval(const struct Sl3Form *f,
                             double x1,
                             double x2,
                             double x3,
                             double y1,
                             double y2,
                             enum Sl3Backend backend_kind,
                             struct Sl3MaassValue *out);

// `|f(z) - f(g z)|` where `word` lists generators S1, S2, T1, T2, T3
// separated by spaces.
//
// # Safety
// `f` must be a live handle, `word` a NUL-terminated string and `out` a valid pointer.
enum Sl3Status sl3_form_automorphy(const struct Sl3Form *f,
                                   double x1,
                                   double x2,
                                   double x3,
                                   double y1,
                                   double y2,
                                   const char *word,
                                   double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SL3_MAASS_H */
