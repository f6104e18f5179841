/*---------------------------------------------------------------------------//
 * Copyright 2026 qrng-lab contributors
 * SPDX-License-Identifier: Apache-2.0
 *---------------------------------------------------------------------------//
 * \file qrnglab/qrnglab.h
 *
 * C interface of qrng-lab: exact output distributions and min-entropies of a
 * CMOS-sensor quantum random number generator, synthetic frame generation,
 * statistical estimators and the frame health test.
 *
 * Every fallible call returns a qrng_status; on failure a description is
 * available from qrng_last_error() on the same thread. Handles are opaque
 * and must be released with the matching *_destroy function. Functions that
 * fill caller buffers take the buffer length and fail with
 * QRNG_ERR_INVALID_ARGUMENT when it is wrong.
 *---------------------------------------------------------------------------*/
#ifndef QRNGLAB_QRNGLAB_H
#define QRNGLAB_QRNGLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#    ifdef QRNG_BUILDING_LIBRARY
#        define QRNG_API __declspec(dllexport)
#    else
#        define QRNG_API __declspec(dllimport)
#    endif
#else
#    define QRNG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qrng_status
{
    QRNG_OK = 0,
    QRNG_ERR_INVALID_ARGUMENT = 1, /* null pointer or wrong buffer size */
    QRNG_ERR_DOMAIN = 2,           /* parameter outside its domain */
    QRNG_ERR_CONVERGENCE = 3,      /* quadrature did not settle */
    QRNG_ERR_FIT = 4,              /* noise fit did not converge */
    QRNG_ERR_UNFITTABLE = 5,       /* histogram clipped at a rail */
    QRNG_ERR_IO = 6,
    QRNG_ERR_FORMAT = 7, /* malformed frame file */
    QRNG_ERR_INTERNAL = 8
} qrng_status;

typedef struct qrng_model qrng_model; /* pixel array sharing one converter */
typedef struct qrng_batch qrng_batch; /* T x P frames of ADC codes */

typedef struct qrng_chip_params
{
    double gain_k;
    int adc_bits;
    double adc_offset;
    int retained_bits[2]; /* first index is the low bit of the symbol */
} qrng_chip_params;

typedef struct qrng_noise_params
{
    double mu_r;
    double sigma_r; /* zero: readout noise is a point mass at mu_r */
    double mu_dark;
} qrng_noise_params;

typedef struct qrng_quadrature
{
    double tail_eps;
    double range_sigmas;
    int gl_order;
    int initial_panels;
    int max_refinements;
    double tolerance;
    double divergence_limit;
} qrng_quadrature;

typedef struct qrng_entropy_result
{
    double p_guess;
    double h_min_total;
    double h_min_per_bit;
    double truncation_bound;
    double quadrature_delta;
    int refinements;
} qrng_entropy_result;

typedef struct qrng_health_config
{
    int t_minus;
    int t_plus;
    int n_minus_max;
    int n_plus_max;
    double h_min_floor; /* bits per retained symbol */
    double epsilon;
    int condition_on_acceptance;
} qrng_health_config;

typedef struct qrng_frame_verdict
{
    int n_minus;
    int n_plus;
    int failed;
} qrng_frame_verdict;

typedef struct qrng_sweep_point
{
    double mu_e;
    double p_fail;
    double p_pass;
    double avg_h_min_per_bit;
} qrng_sweep_point;

typedef struct qrng_var_mean_fit
{
    double slope;
    double intercept;
    double r_squared;
} qrng_var_mean_fit;

typedef struct qrng_mcv_result
{
    uint64_t num_symbols;
    double p_hat;
    double p_upper;
    double h_per_symbol;
    double h_per_bit;
} qrng_mcv_result;

typedef struct qrng_fit_options
{
    int fit_gain;
    int max_iterations;
    double tolerance;
    double clip_limit;
    double min_total_count;
} qrng_fit_options;

typedef struct qrng_noise_fit
{
    qrng_noise_params params;
    double gain_k;
    double neg_log_likelihood;
    double chi2;
    int chi2_dof;
    int num_params;         /* 3, or 4 when the gain is co-fitted */
    double std_errors[4];   /* mu_r, sigma_r, mu_dark, gain_k */
    double covariance[16];  /* num_params x num_params, row-major */
    int iterations;
} qrng_noise_fit;

/*---------------------------------------------------------------------------*/
QRNG_API const char* qrng_version(void);
QRNG_API const char* qrng_last_error(void);
QRNG_API const char* qrng_status_name(qrng_status status);

QRNG_API void qrng_chip_defaults(qrng_chip_params* chip);
QRNG_API void qrng_quadrature_defaults(qrng_quadrature* quad);
QRNG_API void qrng_health_defaults(qrng_health_config* cfg);
QRNG_API void qrng_fit_defaults(qrng_fit_options* options);
/* Characterized noise of reference pixel 1..4 at the default ADC offset */
QRNG_API qrng_status qrng_noise_reference(int label, qrng_noise_params* out);

/*--- Exact model -----------------------------------------------------------*/
/* out has 2^adc_bits entries */
QRNG_API qrng_status qrng_adc_pmf(qrng_chip_params const* chip,
                                  qrng_noise_params const* noise, double mu_e,
                                  double tail_eps, double* out, size_t len);
QRNG_API qrng_status qrng_symbol_pmf(qrng_chip_params const* chip,
                                     double const* pmf_z, size_t len,
                                     double out[4]);
QRNG_API qrng_status qrng_extract_symbol(qrng_chip_params const* chip, int z,
                                         int* out);
QRNG_API qrng_status qrng_noise_pdf(qrng_chip_params const* chip,
                                    qrng_noise_params const* noise, double e,
                                    double tail_eps, double* out);
QRNG_API qrng_status qrng_conditional_symbol_pmf(qrng_chip_params const* chip,
                                                 double mu_e, double e,
                                                 double tail_eps,
                                                 double out[4]);
QRNG_API qrng_status
qrng_entropy_conditional(qrng_chip_params const* chip,
                         qrng_noise_params const* noise, double mu_e,
                         qrng_quadrature const* quad, qrng_entropy_result* out);
QRNG_API qrng_status qrng_entropy_unconditional(
    qrng_chip_params const* chip, qrng_noise_params const* noise, double mu_e,
    double tail_eps, qrng_entropy_result* out);
/* On QRNG_ERR_CONVERGENCE, *failed_index (if non-null) is the grid index */
QRNG_API qrng_status qrng_entropy_curve(qrng_chip_params const* chip,
                                        qrng_noise_params const* noise,
                                        double const* grid, size_t n,
                                        qrng_quadrature const* quad,
                                        qrng_entropy_result* out,
                                        size_t* failed_index);

/*--- Array model -----------------------------------------------------------*/
/* mu_e and noise each hold num_pixels entries */
QRNG_API qrng_status qrng_model_create(qrng_chip_params const* chip,
                                       size_t num_pixels, double const* mu_e,
                                       qrng_noise_params const* noise,
                                       qrng_model** out);
QRNG_API void qrng_model_destroy(qrng_model* model);
QRNG_API size_t qrng_model_num_pixels(qrng_model const* model);
QRNG_API qrng_status qrng_model_digest(qrng_model const* model,
                                       uint64_t* out);

/*--- Frames ----------------------------------------------------------------*/
QRNG_API qrng_status qrng_sample_frames(qrng_model const* model,
                                        uint32_t t_frames, uint64_t seed,
                                        qrng_batch** out);
/* codes holds t_frames * num_pixels values, frame-major */
QRNG_API qrng_status qrng_batch_from_codes(uint32_t t_frames,
                                           uint32_t num_pixels, int adc_bits,
                                           uint16_t const* codes,
                                           qrng_batch** out);
QRNG_API void qrng_batch_destroy(qrng_batch* batch);
QRNG_API qrng_status qrng_batch_info(qrng_batch const* batch,
                                     uint32_t* t_frames, uint32_t* num_pixels,
                                     int* adc_bits, uint64_t* seed,
                                     uint64_t* model_digest);
/* Borrowed pointer, valid until the batch is destroyed */
QRNG_API uint16_t const* qrng_batch_codes(qrng_batch const* batch);
QRNG_API qrng_status qrng_batch_hash(qrng_batch const* batch, uint64_t* out);
QRNG_API qrng_status qrng_frames_write(qrng_batch const* batch,
                                       char const* path);
QRNG_API qrng_status qrng_frames_read(char const* path, qrng_batch** out);

/* With out == NULL only *written (the required size) is set */
QRNG_API qrng_status qrng_export_bitstream(qrng_batch const* batch,
                                           qrng_chip_params const* chip,
                                           uint8_t* out, size_t capacity,
                                           size_t* written);
QRNG_API qrng_status qrng_bytes_write(char const* path, uint8_t const* data,
                                      size_t len);
/* *data is allocated by the library; release with qrng_bytes_free */
QRNG_API qrng_status qrng_bytes_read(char const* path, uint8_t** data,
                                     size_t* len);
QRNG_API void qrng_bytes_free(uint8_t* data);

/*--- Estimators ------------------------------------------------------------*/
/* out has P*P entries; NaN marks pairs with a zero-variance pixel */
QRNG_API qrng_status qrng_pearson_matrix(qrng_batch const* batch, double* out,
                                         size_t len);
/* out has max_lag entries; all NaN for a zero-variance pixel */
QRNG_API qrng_status qrng_autocorrelation(qrng_batch const* batch,
                                          size_t pixel, size_t max_lag,
                                          double* out, size_t len);
QRNG_API qrng_status qrng_variance_mean_fit(qrng_batch const* const* batches,
                                            size_t n, size_t pixel,
                                            qrng_var_mean_fit* out);
QRNG_API qrng_status qrng_code_histogram(qrng_batch const* batch,
                                         size_t pixel, double* out,
                                         size_t len);
QRNG_API qrng_status qrng_fit_noise(double const* counts, size_t len,
                                    qrng_chip_params const* chip,
                                    qrng_noise_params const* init,
                                    qrng_fit_options const* options,
                                    qrng_noise_fit* out);
QRNG_API qrng_status qrng_mcv_entropy(uint8_t const* bits, size_t len,
                                      int symbol_bits, qrng_mcv_result* out);

/*--- Health test -----------------------------------------------------------*/
QRNG_API qrng_status qrng_judge_frame(uint16_t const* codes, size_t n,
                                      qrng_health_config const* cfg,
                                      qrng_frame_verdict* out);
QRNG_API qrng_status qrng_failure_probability(qrng_model const* model,
                                              qrng_health_config const* cfg,
                                              double tail_eps, double* p_fail,
                                              double* p_pass);
/* efficiency may be NULL (uniform illumination) */
QRNG_API qrng_status qrng_health_sweep(qrng_model const* model,
                                       double const* grid, size_t n,
                                       qrng_health_config const* cfg,
                                       qrng_quadrature const* quad,
                                       double const* efficiency,
                                       qrng_sweep_point* out);
/* witness_indices may be NULL; at most capacity indices are written */
QRNG_API qrng_status qrng_verify_guarantee(qrng_sweep_point const* sweep,
                                           size_t n,
                                           qrng_health_config const* cfg,
                                           int* holds,
                                           size_t* witness_indices,
                                           size_t capacity,
                                           size_t* num_witnesses);

#ifdef __cplusplus
}
#endif

#endif /* QRNGLAB_QRNGLAB_H */
