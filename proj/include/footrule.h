/* C API of the footrule library: exact Spearman's footrule bounds under
 * missing data, derived Kendall tau and p-value bounds, an assumption-free
 * independence test, and the Monte Carlo experiment harness.
 *
 * All functions return ft_status; out-parameters are written only on FT_OK.
 * Handles are opaque and freed with the matching *_free function.
 * ft_last_error_message() gives a thread-local detail string for the most
 * recent failure on the calling thread.
 */
#ifndef FOOTRULE_H
#define FOOTRULE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FT_API __declspec(dllexport)
#else
#define FT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ft_status {
    FT_OK = 0,
    FT_ERROR_NULL_ARGUMENT = 1,
    FT_ERROR_INVALID_ARGUMENT = 2,
    FT_ERROR_DUPLICATE_VALUE = 3,
    FT_ERROR_LENGTH_MISMATCH = 4,
    FT_ERROR_WRONG_CASE = 5,
    FT_ERROR_BUDGET_EXCEEDED = 6,
    FT_ERROR_BAD_DIMENSION = 7,
    FT_ERROR_BAD_ALPHA = 8,
    FT_ERROR_BAD_RANGE = 9,
    FT_ERROR_PARSE = 10,
    FT_ERROR_IO = 11,
    FT_ERROR_ALL_MISSING = 12,
    FT_ERROR_INTERNAL = 13
} ft_status;

FT_API const char* ft_status_name(ft_status status);
FT_API const char* ft_last_error_message(void);

/* ------------------------------------------------------------------ */
/* Samples                                                             */

typedef struct ft_sample ft_sample;

/* observed masks: nonzero = value present. Unobserved slots of x/y are
 * ignored. Observed values must be finite and distinct per coordinate. */
FT_API ft_status ft_sample_create(const double* x, const uint8_t* x_observed, const double* y,
                                  const uint8_t* y_observed, size_t n, ft_sample** out);
FT_API ft_status ft_sample_read_csv(const char* path, ft_sample** out);
FT_API ft_status ft_sample_read_csv_string(const char* text, ft_sample** out);
FT_API void ft_sample_free(ft_sample* sample);

/* missing_case: 1, 2, 3, or 0 for the general case */
typedef struct ft_pattern {
    int64_t n;
    int64_t n_u; /* x missing, y observed */
    int64_t n_v; /* y missing, x observed */
    int64_t n_w; /* both missing */
    int64_t n_complete;
    int missing_case;
} ft_pattern;

FT_API ft_status ft_sample_pattern(const ft_sample* sample, ft_pattern* out);

/* ------------------------------------------------------------------ */
/* Bounds, coefficients, test                                          */

typedef struct ft_bounds_result {
    int64_t d_min;
    int64_t d_max;
    double d_min_scaled; /* scaled footrule coefficient at d_min */
    double d_max_scaled;
    double tau_min; /* Kendall bounds, raw discordance scale */
    double tau_max;
} ft_bounds_result;

FT_API ft_status ft_footrule_bounds(const ft_sample* sample, ft_bounds_result* out);

/* Exhaustive enumeration ground truth; max_candidates == 0 selects the
 * default budget of 10^7 rank-vector pairs. */
FT_API ft_status ft_brute_force_bounds(const ft_sample* sample, uint64_t max_candidates,
                                       ft_bounds_result* out);

typedef struct ft_coeffs_result {
    int64_t footrule;
    int64_t rho_raw;
    int64_t tau_raw;
    double footrule_scaled;
    double rho_scaled;
    double tau_scaled;
} ft_coeffs_result;

/* Requires a fully observed sample. */
FT_API ft_status ft_coefficients(const ft_sample* sample, ft_coeffs_result* out);

typedef enum ft_outcome {
    FT_REJECT = 0,
    FT_FAIL_ALL_INSIGNIFICANT = 1,
    FT_FAIL_AMBIGUOUS = 2
} ft_outcome;

typedef struct ft_test_result {
    ft_bounds_result bounds;
    double p_min;
    double p_max;
    double p_at_dmin;
    double p_at_dmax;
    int outcome;              /* ft_outcome */
    int small_sample_warning; /* nonzero when n < 40 */
} ft_test_result;

FT_API ft_status ft_independence_test(const ft_sample* sample, double alpha, int reject_on_equal,
                                      ft_test_result* out);

/* ranks_out must hold n entries; values must be distinct. */
FT_API ft_status ft_rank_vector(const double* values, size_t n, int64_t* ranks_out);

/* ------------------------------------------------------------------ */
/* Monte Carlo experiments                                             */

typedef enum ft_mechanism { FT_MCAR = 0, FT_MNAR_PRODUCT = 1, FT_MNAR_RANKDIFF = 2 } ft_mechanism;

/* Method bits follow the order of ft_method_name(0..15). */
#define FT_METHOD_ALL 0xFFFFu

FT_API const char* ft_method_name(uint32_t method_index); /* NULL past the end */
FT_API uint32_t ft_method_bit_from_name(const char* name);

typedef struct ft_sim_config {
    int64_t n;
    double gamma;
    double s;
    int mechanism; /* ft_mechanism */
    double alpha;
    int64_t trials;
    uint64_t seed;
    uint32_t methods; /* bitmask; 0 = all */
    int reject_on_equal;
    int threads; /* 0 = auto */
} ft_sim_config;

typedef struct ft_sim_method_row {
    char method[24];
    int64_t rejections;
    double reject_rate;
    double std_error;
} ft_sim_method_row;

typedef struct ft_sim_means {
    double footrule_lower;
    double footrule_upper;
    double footrule_ignore;
    double footrule_complete;
    double tau_lower;
    double tau_upper;
    double tau_ignore;
    double tau_complete;
    double rho_ignore;
    double rho_complete;
} ft_sim_means;

typedef struct ft_sim_result ft_sim_result;

FT_API ft_status ft_run_experiment(const ft_sim_config* config, ft_sim_result** out);
FT_API size_t ft_sim_result_row_count(const ft_sim_result* result);
FT_API ft_status ft_sim_result_row(const ft_sim_result* result, size_t index,
                                   ft_sim_method_row* out);
FT_API ft_status ft_sim_result_means(const ft_sim_result* result, ft_sim_means* out);
FT_API void ft_sim_result_free(ft_sim_result* result);

/* ------------------------------------------------------------------ */
/* Randomized oracle-equivalence check                                 */

/* cases: bitmask, bit 0 = Case I, 1 = Case II, 2 = Case III, 3 = general;
 * 0 = all four. budget == 0 selects the default enumeration budget. */
typedef struct ft_oracle_check_config {
    int64_t n_min;
    int64_t n_max;
    int64_t trials;
    uint64_t seed;
    uint64_t budget;
    uint32_t cases;
} ft_oracle_check_config;

typedef struct ft_oracle_check_report {
    int64_t instances;
    int64_t mismatches;
    char first_mismatch[512]; /* empty when all instances agree */
} ft_oracle_check_report;

FT_API ft_status ft_oracle_check(const ft_oracle_check_config* config,
                                 ft_oracle_check_report* out);

#ifdef __cplusplus
}
#endif

#endif /* FOOTRULE_H */
