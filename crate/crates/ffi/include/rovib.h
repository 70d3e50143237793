#ifndef ROVIB_H
#define ROVIB_H

/* Generated by cbindgen from rovib-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every API call.
typedef enum RvStatus {
  // Success.
  RV_OK = 0,
  // Invalid physical parameters or malformed configuration.
  RV_CONFIG_ERROR = 2,
  // Numerical failure (solver non-convergence, bistable working point,
  // degenerate denominator).
  RV_NUMERICAL_ERROR = 3,
  // I/O failure.
  RV_IO_ERROR = 4,
  // The linearized model is unstable; spectra are refused.
  RV_UNSTABLE = 5,
  // A required pointer argument was null.
  RV_NULL_ARGUMENT = 6,
  // A string argument was not valid UTF-8.
  RV_INVALID_UTF8 = 7,
  // Internal panic captured at the boundary.
  RV_PANIC = 8,
} RvStatus;

// Opaque built model: derived quantities, working point, linear dynamics
// and the bath temperature the configuration carried.
typedef struct RvModel RvModel;

// Opaque parameter set: defaults plus an ordered list of key=value
// assignments, resolved on use exactly like the CLI config path.
typedef struct RvParams RvParams;

// Flat derived-quantity view (all rates in 1/s, frequencies in rad/s).
typedef struct RvDerived {
  double omega_c;
  uint64_t mode_index;
  double wave_number;
  double moment_of_inertia;
  double g_z;
  double g_phi;
  double gamma;
  double gamma_z;
  double gamma_phi;
  double input_amplitude;
  double resonance_error;
} RvDerived;

// One spectral sample of the entanglement measure.
typedef struct RvSpectrumPoint {
  double omega;
  double entanglement;
  double v_ru;
  double v_rv;
  double commutator_density;
} RvSpectrumPoint;

// Outcome of the wavelength/length coupling balancer.
typedef struct RvTuneResult {
  double lambda_new;
  double cavity_length_new;
  uint64_t mode_index;
  double residual_imbalance;
  double delta_lambda;
  double delta_length;
  double first_order_delta_lambda;
  // 1 when the residual met the balance target, 0 when the window was
  // too narrow (the best candidate is still reported).
  uint8_t target_reached;
} RvTuneResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *rv_version(void);

// Copies the last error message on this thread into `buf` (truncated to
// `len−1` bytes, always NUL-terminated). Returns the full message length.
//
// # Safety
// `buf` must point to at least `len` writable bytes (or be null, in which
// case only the length is returned).
size_t rv_last_error_message(char *buf, size_t len);

// Creates a parameter handle holding the default configuration.
struct RvParams *rv_params_new(void);

// Creates a parameter handle from flat key=value config text.
//
// # Safety
// `text` must be a valid NUL-terminated string; `out` must be writable.
enum RvStatus rv_params_from_config(const char *text, struct RvParams **out);

// Sets one configuration key (same keys and units as the config file).
//
// # Safety
// `params` must come from this library; `key`/`value` must be valid
// NUL-terminated strings.
enum RvStatus rv_params_set(struct RvParams *params, const char *key, const char *value);

// Destroys a parameter handle (null is a no-op).
//
// # Safety
// `params` must come from this library and not be used afterwards.
void rv_params_free(struct RvParams *params);

// Computes the derived quantities into `out`.
//
// # Safety
// Valid handle and writable `out` required.
enum RvStatus rv_params_derive(const struct RvParams *params, struct RvDerived *out);

// Writes g_z/g_φ into `out`.
//
// # Safety
// Valid handle and writable `out` required.
enum RvStatus rv_coupling_ratio(const struct RvParams *params, double *out);

// Builds the linearized model at the configured working point. Succeeds
// even when the model is unstable (query with [`rv_model_is_stable`]);
// spectral calls on an unstable model fail with `RvUnstable`.
//
// # Safety
// Valid handle and writable `out` required.
enum RvStatus rv_model_build(const struct RvParams *params, struct RvModel **out);

// Destroys a model handle (null is a no-op).
//
// # Safety
// `model` must come from this library and not be used afterwards.
void rv_model_free(struct RvModel *model);

// Writes 1 into `out` when every drift eigenvalue has negative real part.
//
// # Safety
// Valid handle and writable `out` required.
enum RvStatus rv_model_is_stable(const struct RvModel *model, uint8_t *out);

// Copies the six drift eigenvalues into `re[0..6]` / `im[0..6]`.
//
// # Safety
// `re` and `im` must each point to six writable doubles.
enum RvStatus rv_model_eigenvalues(const struct RvModel *model, double *re, double *im);

// Evaluates the entanglement measure at one response frequency, using the
// configured bath temperature.
//
// # Safety
// Valid handle and writable `out` required.
enum RvStatus rv_model_entanglement(const struct RvModel *model,
                                    double omega,
                                    struct RvSpectrumPoint *out);

// Like [`rv_model_entanglement`] with an explicit temperature override
// (pass NaN to use the configured one).
//
// # Safety
// Valid handle and writable `out` required.
enum RvStatus rv_model_entanglement_at(const struct RvModel *model,
                                       double omega,
                                       double temperature,
                                       struct RvSpectrumPoint *out);

// Fills `out[0..points]` with the measure on a linear grid over
// [omega_min, omega_max].
//
// # Safety
// `out` must point to at least `points` writable entries.
enum RvStatus rv_model_spectrum(const struct RvModel *model,
                                double omega_min,
                                double omega_max,
                                size_t points,
                                struct RvSpectrumPoint *out);

// Runs the wavelength/length coupling balancer. When the window cannot
// reach balance the best candidate is written with `target_reached = 0`
// and the call still returns `RvOk`.
//
// # Safety
// Valid handle and writable `out` required.
enum RvStatus rv_tune_couplings(const struct RvParams *params,
                                double lambda_window,
                                struct RvTuneResult *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ROVIB_H */
