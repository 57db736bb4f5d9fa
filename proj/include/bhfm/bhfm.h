/*
 * bhfm: near-field biharmonic scattering synthesis and factorization-method
 * imaging of simply supported obstacles.
 *
 * C interface. All objects are opaque handles created by a *_create / *_load
 * function and released with the matching *_destroy. Every fallible call
 * returns a bhfm_status; on failure bhfm_last_error() describes the problem
 * (per thread, valid until the next failing call on that thread).
 *
 * Complex matrices cross the boundary as interleaved (re, im) doubles in
 * row-major order: element (i, j) of an M x M matrix lives at
 * [2 * (i * M + j)] and [2 * (i * M + j) + 1].
 */
#ifndef BHFM_BHFM_H
#define BHFM_BHFM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(BHFM_BUILDING)
#    define BHFM_API __declspec(dllexport)
#  else
#    define BHFM_API __declspec(dllimport)
#  endif
#else
#  define BHFM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bhfm_status {
  BHFM_OK = 0,
  BHFM_ERR_INVALID_ARGUMENT = 1,
  BHFM_ERR_DIMENSION = 2,
  BHFM_ERR_NUMERICAL = 3,
  BHFM_ERR_IO = 4,
  BHFM_ERR_INTERNAL = 5
} bhfm_status;

typedef enum bhfm_filter_kind {
  BHFM_FILTER_TIKHONOV = 0,
  BHFM_FILTER_GLSM = 1,
  BHFM_FILTER_CUTOFF = 2,
  BHFM_FILTER_NONE = 3
} bhfm_filter_kind;

typedef struct bhfm_curve bhfm_curve;
typedef struct bhfm_nearfield bhfm_nearfield;
typedef struct bhfm_spectrum bhfm_spectrum;
typedef struct bhfm_grid bhfm_grid;

typedef struct bhfm_wave_params {
  double k;       /* wavenumber */
  double radius;  /* measurement circle radius R */
  int sensors;    /* M, sources and receivers coincide */
  int n_boundary; /* Nystrom nodes on the obstacle, even */
  int trunc;      /* series truncation of the far-field transforms */
} bhfm_wave_params;

typedef struct bhfm_grid_spec {
  double xmin, xmax, ymin, ymax;
  int nx, ny;
} bhfm_grid_spec;

BHFM_API const char* bhfm_version(void);
BHFM_API const char* bhfm_last_error(void);
BHFM_API const char* bhfm_status_string(bhfm_status status);

/* k = 2, R = 3, M = 64, n_boundary = 256, trunc = 10. */
BHFM_API void bhfm_wave_params_default(bhfm_wave_params* params);
/* [-3, 3]^2 at 200 x 200. */
BHFM_API void bhfm_grid_spec_default(bhfm_grid_spec* spec);

/* ---- obstacle boundary ------------------------------------------------- */

/* shape: "star", "peanut", "kite" or "disk:<radius>"; n_nodes even, >= 16. */
BHFM_API bhfm_status bhfm_curve_create(const char* shape, int n_nodes, bhfm_curve** out);
BHFM_API void bhfm_curve_destroy(bhfm_curve* curve);
BHFM_API bhfm_status bhfm_curve_max_radius(const bhfm_curve* curve, double* out);
BHFM_API bhfm_status bhfm_curve_contains(const bhfm_curve* curve, double x, double y, int* out);

/* ---- near-field data --------------------------------------------------- */

/* Solves the direct problem for every source on the measurement circle.
 * params->n_boundary must equal the curve's node count. */
BHFM_API bhfm_status bhfm_simulate(const bhfm_curve* curve, const bhfm_wave_params* params, bhfm_nearfield** out);
/* Multiplicative noise U o (1 + delta E1), L o (1 + delta E2), ||E||_2 = 1. */
BHFM_API bhfm_status bhfm_nearfield_add_noise(const bhfm_nearfield* data, double delta, uint64_t seed,
                                              bhfm_nearfield** out);
BHFM_API bhfm_status bhfm_nearfield_load(const char* path, bhfm_nearfield** out);
BHFM_API bhfm_status bhfm_nearfield_save(const bhfm_nearfield* data, const char* path);
BHFM_API void bhfm_nearfield_destroy(bhfm_nearfield* data);

BHFM_API bhfm_status bhfm_nearfield_params(const bhfm_nearfield* data, bhfm_wave_params* params, double* delta,
                                           uint64_t* seed);
/* Copies the shape name (NUL-terminated) into buf; fails if cap is too small. */
BHFM_API bhfm_status bhfm_nearfield_shape(const bhfm_nearfield* data, char* buf, size_t cap);
BHFM_API bhfm_status bhfm_nearfield_set_trunc(bhfm_nearfield* data, int trunc);
/* u and lap each receive 2 * M * M doubles; either may be NULL. */
BHFM_API bhfm_status bhfm_nearfield_matrices(const bhfm_nearfield* data, double* u, double* lap, size_t count);
/* Largest entry modulus of L - k^2 U (propagating) and L + k^2 U (evanescent). */
BHFM_API bhfm_status bhfm_nearfield_component_norms(const bhfm_nearfield* data, double* propagating,
                                                    double* evanescent);
/* ||N - N^T||_2 / ||N||_2 for N = L - k^2 U, or N = -2k^2 U when scattered_only. */
BHFM_API bhfm_status bhfm_nearfield_noise_estimate(const bhfm_nearfield* data, int scattered_only, double* out);

/* Closed-form disk fields (u_pr, u_ev) as interleaved complex pairs. */
BHFM_API bhfm_status bhfm_disk_field(double k, double a, const double x[2], const double y[2], double u_pr[2],
                                     double u_ev[2]);

/* ---- transformed operator and imaging ----------------------------------- */

/* Eigenpairs of Q N Q^T R. */
BHFM_API bhfm_status bhfm_spectrum_create(const bhfm_nearfield* data, int scattered_only, bhfm_spectrum** out);
BHFM_API void bhfm_spectrum_destroy(bhfm_spectrum* spectrum);
BHFM_API bhfm_status bhfm_spectrum_size(const bhfm_spectrum* spectrum, int* out);
/* Eigenvalues by descending modulus, interleaved; count >= 2 * size. */
BHFM_API bhfm_status bhfm_spectrum_eigenvalues(const bhfm_spectrum* spectrum, double* out, size_t count);
/* Noise estimate of the kernel matrix the spectrum was built from. */
BHFM_API bhfm_status bhfm_spectrum_noise_estimate(const bhfm_spectrum* spectrum, double* out);

BHFM_API bhfm_status bhfm_filter_value(bhfm_filter_kind kind, double t, double alpha, double* out);
/* a_priori = 0: returns fixed_alpha. Otherwise the a-priori rule with
 * exponent p in (0, 1/4) for Tikhonov or GLSM. */
BHFM_API bhfm_status bhfm_select_alpha(int a_priori, double fixed_alpha, double p, bhfm_filter_kind kind,
                                       double delta_estimate, double* out);

/* Unnormalized indicator at z; +inf when every term vanishes. */
BHFM_API bhfm_status bhfm_indicator(const bhfm_spectrum* spectrum, double zx, double zy, bhfm_filter_kind kind,
                                    double alpha, double* out);
BHFM_API bhfm_status bhfm_grid_evaluate(const bhfm_spectrum* spectrum, const bhfm_grid_spec* spec,
                                        bhfm_filter_kind kind, double alpha, bhfm_grid** out);
BHFM_API void bhfm_grid_destroy(bhfm_grid* grid);
BHFM_API bhfm_status bhfm_grid_size(const bhfm_grid* grid, int* nx, int* ny);
/* Row-major values (index iy * nx + ix), normalized to max 1. */
BHFM_API bhfm_status bhfm_grid_values(const bhfm_grid* grid, double* out, size_t count);
/* 64-bit FNV-1a over the IEEE bit patterns of the values. */
BHFM_API bhfm_status bhfm_grid_checksum(const bhfm_grid* grid, uint64_t* out);
BHFM_API bhfm_status bhfm_grid_write_csv(const bhfm_grid* grid, const char* path);
BHFM_API bhfm_status bhfm_grid_write_pgm(const bhfm_grid* grid, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* BHFM_BHFM_H */
