#ifndef CSAUDIO_H
#define CSAUDIO_H

/*
 * C interface to the csaudio compressive-sensing audio toolkit.
 *
 * The library recovers a time-domain signal frame from a random subset of
 * its samples by l1 minimization under a DCT or DFT sparsity basis, and
 * provides the measurement-rate sweep harness used to compare the two
 * bases.
 *
 * Conventions:
 *   - Every fallible function returns csa_status; CSA_OK is 0. On failure
 *     csa_last_error() returns a message for the calling thread.
 *   - Objects handed out through an out-parameter are owned by the caller
 *     and released with the matching csa_*_free function. Handles are
 *     opaque.
 *   - All randomness is seeded and reproducible: the same seeds give the
 *     same patterns, signals and sweep results on every platform.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CSA_API __declspec(dllexport)
#else
#define CSA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum csa_status {
  CSA_OK = 0,
  CSA_ERR_INVALID_ARGUMENT = 1,
  CSA_ERR_IO = 2,
  CSA_ERR_BAD_FORMAT = 3,
  CSA_ERR_OUT_OF_RANGE = 4,
  CSA_ERR_MISMATCH = 5,
  CSA_ERR_INTERNAL = 6
} csa_status;

typedef enum csa_basis {
  CSA_BASIS_DCT = 0,
  CSA_BASIS_DFT = 1
} csa_basis;

typedef struct csa_frame csa_frame;
typedef struct csa_pattern csa_pattern;
typedef struct csa_reconstruction csa_reconstruction;
typedef struct csa_sweep_report csa_sweep_report;

CSA_API const char* csa_version(void);
/* Message for the most recent failure on the calling thread ("" if none). */
CSA_API const char* csa_last_error(void);

/* ---------------- frames ---------------- */

CSA_API csa_status csa_frame_create(const double* samples, size_t n, int sample_rate,
                                    csa_frame** out);
/* Reads `len` samples starting at offset `start` from a 16-bit PCM WAV
 * (channel 0 of multi-channel files); sample v maps to v / 32768. */
CSA_API csa_status csa_frame_read_wav(const char* path, size_t start, size_t len, csa_frame** out);
/* Mono 16-bit PCM; amplitudes clamped to [-1, 1], scaled by 32767. */
CSA_API csa_status csa_frame_write_wav(const csa_frame* frame, const char* path);
CSA_API size_t csa_frame_length(const csa_frame* frame);
CSA_API int csa_frame_sample_rate(const csa_frame* frame);
/* Copies the samples into `out`; capacity must be >= csa_frame_length. */
CSA_API csa_status csa_frame_samples(const csa_frame* frame, double* out, size_t capacity);
CSA_API void csa_frame_free(csa_frame* frame);

/* ---------------- synthesis ---------------- */

typedef enum csa_synth_kind {
  CSA_SYNTH_SPARSE = 0,      /* exactly `sparsity` seeded random coefficients */
  CSA_SYNTH_HARMONIC = 1,    /* decaying ladder at multiples of fundamental_index */
  CSA_SYNTH_VOWEL_PROXY = 2  /* harmonic plus 1%-energy dense perturbation */
} csa_synth_kind;

typedef struct csa_synth_spec {
  csa_synth_kind kind;
  size_t n;
  size_t sparsity;          /* sparse kind */
  size_t fundamental_index; /* harmonic kinds */
  size_t harmonic_count;
  double decay;             /* per-harmonic amplitude ratio in (0, 1] */
  uint64_t seed;
  int sample_rate;
} csa_synth_spec;

/* kind=sparse, n=3000, sparsity=10, fundamental=8, harmonics=10,
 * decay=0.7, seed=1, sample_rate=8000. */
CSA_API csa_synth_spec csa_synth_spec_default(void);
/* Deterministic per (spec, basis); output peak-normalized to 0.9. */
CSA_API csa_status csa_synthesize(const csa_synth_spec* spec, csa_basis basis, csa_frame** out);

/* ---------------- transforms ---------------- */

/* Forward transform of a frame. Buffers hold csa_frame_length(frame)
 * doubles; coeff_im may be NULL for the DCT (real coefficients). The DCT
 * is the orthonormal DCT-II, the DFT is unitary; both preserve energy. */
CSA_API csa_status csa_transform_forward(const csa_frame* frame, csa_basis basis, double* coeff_re,
                                         double* coeff_im);
/* Inverse transform of n coefficients back to a frame. coeff_im may be
 * NULL (treated as zero). For the DFT the real part is taken and the
 * discarded relative imaginary energy is reported through
 * discarded_imag_energy when non-NULL. */
CSA_API csa_status csa_transform_inverse(const double* coeff_re, const double* coeff_im, size_t n,
                                         csa_basis basis, int sample_rate, csa_frame** out,
                                         double* discarded_imag_energy);
/* Number of coefficients above rel_threshold times the largest magnitude;
 * rel_threshold in (0, 1). */
CSA_API csa_status csa_sparsity_count(const csa_frame* frame, csa_basis basis, double rel_threshold,
                                      size_t* out);

/* ---------------- sampling patterns ---------------- */

/* First m entries of a seeded Fisher-Yates permutation of [0, n); the
 * generator is SplitMix64, so patterns are bit-reproducible. */
CSA_API csa_status csa_pattern_draw(size_t n, size_t m, uint64_t seed, csa_pattern** out);
CSA_API size_t csa_pattern_m(const csa_pattern* pattern);
CSA_API size_t csa_pattern_n(const csa_pattern* pattern);
CSA_API uint64_t csa_pattern_seed(const csa_pattern* pattern);
CSA_API csa_status csa_pattern_indices(const csa_pattern* pattern, uint32_t* out, size_t capacity);
/* Serializes to the text form "N M seed" (plus the index list when
 * with_indices is nonzero). Writes at most `capacity` bytes including the
 * terminator; `needed` (optional) receives the full size including the
 * terminator. Fails with CSA_ERR_OUT_OF_RANGE when the buffer is short. */
CSA_API csa_status csa_pattern_to_text(const csa_pattern* pattern, int with_indices, char* buf,
                                       size_t capacity, size_t* needed);
CSA_API csa_status csa_pattern_from_text(const char* text, csa_pattern** out);
CSA_API void csa_pattern_free(csa_pattern* pattern);

/* ---------------- solving ---------------- */

typedef struct csa_solver_config {
  size_t max_iters;
  double residual_tol; /* relative feasibility tolerance */
  double change_tol;   /* relative iterate-change tolerance */
  double rho;          /* ADMM penalty; shrinkage threshold is 1/rho */
} csa_solver_config;

/* max_iters=5000, residual_tol=1e-6, change_tol=1e-8, rho=1.0 */
CSA_API csa_solver_config csa_solver_config_default(void);

/* Basis pursuit (min ||x||_1 s.t. the observed samples are reproduced),
 * solved by ADMM. Samples are taken from `frame` at the pattern's
 * indices. Non-convergence is reported through the reconstruction, not
 * as an error. config may be NULL for defaults. */
CSA_API csa_status csa_solve_bp(const csa_frame* frame, csa_basis basis,
                                const csa_pattern* pattern, const csa_solver_config* config,
                                csa_reconstruction** out);
/* Orthogonal matching pursuit cross-check solver; selects at most k_max
 * atoms (1 <= k_max <= M). */
CSA_API csa_status csa_solve_omp(const csa_frame* frame, csa_basis basis,
                                 const csa_pattern* pattern, size_t k_max, double residual_tol,
                                 csa_reconstruction** out);

CSA_API csa_status csa_reconstruction_frame(const csa_reconstruction* rec, csa_frame** out);
/* Recovered coefficients; buffers hold N doubles, im may be NULL for DCT. */
CSA_API csa_status csa_reconstruction_coeffs(const csa_reconstruction* rec, double* re, double* im);
CSA_API size_t csa_reconstruction_iterations(const csa_reconstruction* rec);
CSA_API double csa_reconstruction_residual(const csa_reconstruction* rec);
CSA_API int csa_reconstruction_converged(const csa_reconstruction* rec);
CSA_API double csa_reconstruction_discarded_imag_energy(const csa_reconstruction* rec);
CSA_API void csa_reconstruction_free(csa_reconstruction* rec);

/* ---------------- evaluation ---------------- */

/* Time-domain mean squared error between equal-length frames. */
CSA_API csa_status csa_mse(const csa_frame* a, const csa_frame* b, double* out);

typedef struct csa_cell_result {
  csa_basis basis;
  int percentage;
  uint64_t seed;
  size_t m;
  double mse;
  int converged;
  size_t iterations;
} csa_cell_result;

/* One experiment cell: M = round(percentage/100 * N), pattern drawn from
 * `seed`, basis-pursuit reconstruction scored against the input frame.
 * `reconstructed` (optional) receives the reconstructed frame. */
CSA_API csa_status csa_run_cell(const csa_frame* frame, csa_basis basis, int percentage,
                                uint64_t seed, const csa_solver_config* config,
                                csa_cell_result* out, csa_frame** reconstructed);

typedef struct csa_sweep_spec {
  const int* percentages; /* strictly increasing, in [1,100]; NULL -> 20..90 step 10 */
  size_t percentage_count;
  int trials;             /* <= 0 -> 10 */
  int use_dct;            /* at least one basis must be selected */
  int use_dft;
  uint64_t base_seed;
  const csa_solver_config* solver; /* NULL -> defaults */
} csa_sweep_spec;

typedef struct csa_sweep_row {
  csa_basis basis;
  int percentage;
  int trial;
  uint64_t seed;
  size_t m;
  double mse;
  int converged;
  size_t iterations;
} csa_sweep_row;

typedef struct csa_sweep_aggregate {
  csa_basis basis;
  int percentage;
  double mean_mse;
  double median_mse;
} csa_sweep_aggregate;

/* Runs every (basis, percentage, trial) cell; trial seeds are
 * base_seed + cell counter in (basis, percentage, trial) order. */
CSA_API csa_status csa_sweep_run(const csa_frame* frame, const csa_sweep_spec* spec,
                                 csa_sweep_report** out);
CSA_API size_t csa_sweep_row_count(const csa_sweep_report* report);
CSA_API csa_status csa_sweep_row_get(const csa_sweep_report* report, size_t i, csa_sweep_row* out);
CSA_API size_t csa_sweep_aggregate_count(const csa_sweep_report* report);
CSA_API csa_status csa_sweep_aggregate_get(const csa_sweep_report* report, size_t i,
                                           csa_sweep_aggregate* out);
/* CSV: header "basis,percentage,trial,seed,M,mse,converged,iterations",
 * one row per cell-trial, aggregates appended as '#' comment lines.
 * Byte-identical for identical inputs. */
CSA_API csa_status csa_sweep_write_csv(const csa_sweep_report* report, const char* path);
CSA_API void csa_sweep_report_free(csa_sweep_report* report);

#ifdef __cplusplus
}
#endif

#endif /* CSAUDIO_H */
