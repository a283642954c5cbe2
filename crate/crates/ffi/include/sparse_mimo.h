#ifndef SPARSE_MIMO_H
#define SPARSE_MIMO_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Gain draw for path amplitudes.
 */
#define SMIMO_GAIN_COMPLEX_GAUSSIAN 0

#define SMIMO_GAIN_NORMALIZED_ENERGY 1

/**
 * Status codes returned by every `smimo_*` function.
 */
enum SmimoStatus
#if defined(__cplusplus) || __STDC_VERSION__ >= 202311L
  : int32_t
#endif // defined(__cplusplus) || __STDC_VERSION__ >= 202311L
 {
    SMIMO_STATUS_OK = 0,
    SMIMO_STATUS_NULL_POINTER = 1,
    /**
     * Invalid configuration or argument combination.
     */
    SMIMO_STATUS_CONFIG = 2,
    /**
     * Argument outside the mathematical domain of the function.
     */
    SMIMO_STATUS_DOMAIN = 3,
    /**
     * A numerical contract was violated (non-convergence, rank loss, ...).
     */
    SMIMO_STATUS_NUMERICAL = 4,
    /**
     * Output buffer shorter than required.
     */
    SMIMO_STATUS_BUFFER_TOO_SMALL = 5,
    /**
     * A Rust panic was caught at the boundary.
     */
    SMIMO_STATUS_PANIC = 6,
};
#ifndef __cplusplus
#if __STDC_VERSION__ >= 202311L
typedef enum SmimoStatus SmimoStatus;
#else
typedef int32_t SmimoStatus;
#endif // __STDC_VERSION__ >= 202311L
#endif // __cplusplus

/**
 * Opaque channel matrix handle.
 */
typedef struct SmimoChannel SmimoChannel;

/**
 * Plain-data mirror of the system configuration. Large-scale fading is
 * taken as 1 for every user.
 */
typedef struct SmimoSystemParams {
    size_t antennas;
    size_t users;
    double carrier_hz;
    double bandwidth_hz;
    size_t ofdm_size;
    size_t guard_len;
    size_t paths;
    double d_over_lambda;
    /**
     * 1-based subcarrier index.
     */
    size_t subcarrier;
    /**
     * `SMIMO_GAIN_COMPLEX_GAUSSIAN` or `SMIMO_GAIN_NORMALIZED_ENERGY`.
     */
    int32_t gain_mode;
    double speed_of_light;
} SmimoSystemParams;

typedef struct SmimoMoments {
    double mean_re;
    double mean_im;
    double variance;
    double second_moment;
    double std_error;
    size_t trials;
} SmimoMoments;

typedef struct SmimoEigenSummary {
    double lambda_min;
    double lambda_max;
    /**
     * `INFINITY` when `lambda_min` is zero.
     */
    double condition_number;
} SmimoEigenSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code. Unknown codes map to
 * "unknown status". Never returns NULL.
 */
const char *smimo_status_string(int32_t status);

/**
 * Message for the last failure on this thread, or "" after a success. The
 * pointer stays valid until the next `smimo_*` call on the same thread.
 */
const char *smimo_last_error_message(void);

/**
 * Fills `out` with the library defaults.
 *
 * # Safety
 * `out` must be NULL or valid for writes.
 */
SmimoStatus smimo_system_params_default(struct SmimoSystemParams *out);

/**
 * `J0(x)`.
 *
 * # Safety
 * `out` must be NULL or valid for writes.
 */
SmimoStatus smimo_bessel_j0(double x, double *out);

/**
 * Closed-form variance of the normalized inner product for complex
 * Gaussian gains.
 *
 * # Safety
 * `params` must be NULL or point to a valid struct; `out` must be NULL or
 * valid for writes.
 */
SmimoStatus smimo_analytical_variance_cn(const struct SmimoSystemParams *params, double *out);

/**
 * Monte Carlo moments of `g_1 g_2^H / M` over `trials` realizations.
 *
 * # Safety
 * `params` must be NULL or point to a valid struct; `out` must be NULL or
 * valid for writes.
 */
SmimoStatus smimo_mc_moments(const struct SmimoSystemParams *params,
                             size_t trials,
                             uint64_t seed,
                             struct SmimoMoments *out);

/**
 * Sparse channel matrix drawn from stream `(seed, stream)`.
 *
 * # Safety
 * `params` must be NULL or point to a valid struct; `out` must be NULL or
 * valid for writes. The handle written to `*out` must be released with
 * `smimo_channel_free`.
 */
SmimoStatus smimo_channel_new(const struct SmimoSystemParams *params,
                              uint64_t seed,
                              uint64_t stream,
                              struct SmimoChannel **out);

/**
 * `users x antennas` matrix with i.i.d. `CN(0, 1)` entries.
 *
 * # Safety
 * `out` must be NULL or valid for writes. The handle must be released with
 * `smimo_channel_free`.
 */
SmimoStatus smimo_gaussian_channel_new(size_t antennas,
                                       size_t users,
                                       uint64_t seed,
                                       uint64_t stream,
                                       struct SmimoChannel **out);

/**
 * Releases a handle. NULL is ignored.
 *
 * # Safety
 * `channel` must be NULL or a handle not yet freed.
 */
void smimo_channel_free(struct SmimoChannel *channel);

/**
 * Number of users (rows) and antennas (columns).
 *
 * # Safety
 * `channel` must be NULL or a live handle; `rows` and `cols` must be NULL
 * or valid for writes.
 */
SmimoStatus smimo_channel_shape(const struct SmimoChannel *channel, size_t *rows, size_t *cols);

/**
 * Copies the entries row-major as interleaved `(re, im)` pairs. `len` is
 * the capacity of `buffer` in doubles and must be at least
 * `2 * rows * cols`.
 *
 * # Safety
 * `channel` must be NULL or a live handle; `buffer` must be NULL or valid
 * for `len` writes.
 */
SmimoStatus smimo_channel_copy_entries(const struct SmimoChannel *channel,
                                       double *buffer,
                                       size_t len);

/**
 * Extreme eigenvalues and condition number of `G G^H`.
 *
 * # Safety
 * `channel` must be NULL or a live handle; `out` must be NULL or valid for
 * writes.
 */
SmimoStatus smimo_channel_eigen_summary(const struct SmimoChannel *channel,
                                        struct SmimoEigenSummary *out);

/**
 * Sum capacity in bits per channel use. `beta` may be NULL (all ones);
 * otherwise it holds `beta_len` weights, one per row.
 *
 * # Safety
 * `channel` must be NULL or a live handle; `beta` must be NULL or valid for
 * `beta_len` reads; `out_bits` must be NULL or valid for writes.
 */
SmimoStatus smimo_channel_capacity(const struct SmimoChannel *channel,
                                   double rho_d,
                                   const double *beta,
                                   size_t beta_len,
                                   double *out_bits);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPARSE_MIMO_H */
