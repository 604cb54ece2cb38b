/* C interface to the Muttalib-Borodin ensemble library.
 *
 * Every fallible call returns an mb_status; on failure mb_last_error() holds a
 * message for the calling thread. Handles are opaque and must be released with
 * the matching *_free function. Strings returned through char** are owned by
 * the caller and released with mb_string_free. */
#ifndef MB_MB_H
#define MB_MB_H

#include <stddef.h>
#include <stdint.h>

#if defined(MB_BUILDING_LIBRARY)
#define MB_API __attribute__((visibility("default")))
#else
#define MB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define MB_VERSION_STRING "0.1.0"

typedef enum mb_status {
  MB_OK = 0,
  MB_ERR_VALIDATION = 1, /* bad arguments or parameters */
  MB_ERR_NUMERICAL = 2,  /* a numerical routine could not reach its target */
  MB_ERR_INTERNAL = 3
} mb_status;

typedef enum mb_family { MB_FAMILY_LAGUERRE = 0, MB_FAMILY_JACOBI = 1, MB_FAMILY_THETA_ZERO = 2 } mb_family;

typedef enum mb_method { MB_METHOD_MATRIX = 0, MB_METHOD_CORNER = 1 } mb_method;

/* c is the Laguerre exponent; c1, c2 the Jacobi exponents. theta is ignored for
 * MB_FAMILY_THETA_ZERO. */
typedef struct mb_params {
  mb_family family;
  double theta;
  double c;
  double c1;
  double c2;
  int n;
} mb_params;

typedef struct mb_spectra mb_spectra;
typedef struct mb_kernel mb_kernel;

MB_API const char* mb_version(void);
MB_API const char* mb_git_describe(void);
MB_API const char* mb_last_error(void);
MB_API void mb_string_free(char* s);

MB_API mb_status mb_params_validate(const mb_params* p);
MB_API mb_status mb_params_to_json(const mb_params* p, char** json);
MB_API mb_status mb_params_from_json(const char* json, mb_params* out);

/* Sampling. Replica r uses random stream first_id + r of the seed. Spectra are
 * sorted in descending order. */
MB_API mb_status mb_sample(const mb_params* p, mb_method method, uint64_t seed, int replicas, uint64_t first_id,
                           mb_spectra** out);
MB_API int mb_spectra_count(const mb_spectra* s);
MB_API int mb_spectra_size(const mb_spectra* s);
MB_API const double* mb_spectra_row(const mb_spectra* s, int i);
MB_API void mb_spectra_free(mb_spectra* s);
/* Global rescaling of one spectrum of length len. in and out may alias. */
MB_API mb_status mb_transform_spectrum(const mb_params* p, const double* in, int len, double* out);

/* Limiting global densities (only family and theta are read). */
MB_API mb_status mb_density_support(const mb_params* p, double* lo, double* hi);
MB_API mb_status mb_density(const mb_params* p, double x, double* out);
MB_API mb_status mb_moment(const mb_params* p, unsigned k, double* out);

/* Finite-N correlation kernel. error_estimate and experimental may be NULL;
 * experimental is set for Jacobi with non-integer c2. */
MB_API mb_status mb_kernel_create(const mb_params* p, mb_kernel** out);
MB_API mb_status mb_kernel_eval(const mb_kernel* k, double x, double y, double* value, double* error_estimate,
                                int* experimental);
MB_API mb_status mb_kernel_two_level(const mb_kernel* k, int n1, double x, int n2, double y, double* out);
MB_API mb_status mb_kernel_density(const mb_kernel* k, double x, double* out);
MB_API void mb_kernel_free(mb_kernel* k);
MB_API mb_status mb_kernel_quadrature(const mb_params* p, double x, double y, double* out);

/* Monic q_j(x) of the biorthogonal pair. */
MB_API mb_status mb_q_eval(const mb_params* p, int j, double x, double* out);

/* Hard edge */
MB_API mb_status mb_wright_bessel(double a, double b, double x, double* out);
MB_API mb_status mb_hard_edge_kernel(double c, double theta, double x, double y, double* out);
MB_API mb_status mb_hard_edge_kernel_contour(double c, double theta, double x, double y, double* out);
MB_API mb_status mb_hard_edge_scaled(const mb_params* p, double x, double y, double* out);
MB_API mb_status mb_hard_edge_convergence(const mb_params* p, const int* n_list, int n_count, const double* xs,
                                          const double* ys, int n_points, char** report_json, int* pass);

/* Verification suites. reports_json receives a JSON array of reports;
 * n_failed the number of failing reports. */
MB_API int mb_verify_suite_count(void);
MB_API const char* mb_verify_suite_name(int i);
MB_API mb_status mb_verify(const char* suite, const uint64_t* seeds, int n_seeds, char** reports_json,
                           int* n_failed);

#ifdef __cplusplus
}
#endif

#endif
