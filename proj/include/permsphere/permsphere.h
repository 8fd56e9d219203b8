/* C interface to the permsphere library.
 *
 * Every fallible call returns a ps_status; on failure ps_last_error() gives a
 * thread-local message describing the most recent error on the calling thread.
 * Output buffers are caller-owned; a buffer that is too short yields
 * PS_ERR_BUFFER_TOO_SMALL and leaves it untouched. */
#ifndef PERMSPHERE_H
#define PERMSPHERE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  ifdef PERMSPHERE_BUILDING_LIBRARY
#    define PS_API __declspec(dllexport)
#  else
#    define PS_API __declspec(dllimport)
#  endif
#else
#  define PS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ps_status {
  PS_OK = 0,
  PS_ERR_INVALID_ARGUMENT = 1,
  PS_ERR_INVALID_DIMENSION = 2,
  PS_ERR_INDEX = 3,
  PS_ERR_ZERO_PROJECTION = 4,
  PS_ERR_TOO_LARGE = 5,
  PS_ERR_DOMAIN = 6,
  PS_ERR_NUMERIC = 7,
  PS_ERR_BUFFER_TOO_SMALL = 8,
  PS_ERR_INTERNAL = 9
} ps_status;

typedef enum ps_family {
  PS_FAMILY_REGULAR = 0,
  PS_FAMILY_MAXIMAL = 1,
  PS_FAMILY_NORMAL = 2,
  PS_FAMILY_SIMPLEX = 3,
  PS_FAMILY_CUSTOM = 4
} ps_family;

typedef struct ps_estimate {
  double value;
  double std_error;
  uint64_t n;
  uint64_t seed;
} ps_estimate;

PS_API const char* ps_version(void);
PS_API const char* ps_last_error(void);
PS_API const char* ps_status_string(ps_status status);
PS_API unsigned ps_worker_count(void);

PS_API ps_status ps_family_parse(const char* name, ps_family* out);
PS_API const char* ps_family_name(ps_family family);

/* ---- configurations ---------------------------------------------------- */

typedef struct ps_config ps_config;

enum { PS_ADJUSTED_SORTED = 1, PS_ADJUSTED_CENTERED = 2 };

PS_API ps_status ps_config_new_family(ps_family family, size_t q, ps_config** out);
/* Sorts and centers x. `adjusted` (nullable) receives PS_ADJUSTED_* bits. */
PS_API ps_status ps_config_new_custom(const double* x, size_t q, ps_config** out, int* adjusted);
PS_API void ps_config_free(ps_config* config);
PS_API size_t ps_config_dim(const ps_config* config);
PS_API ps_family ps_config_family(const ps_config* config);
PS_API double ps_config_norm(const ps_config* config);
PS_API ps_status ps_config_entries(const ps_config* config, double* out, size_t len);
/* a_hat (maximal) or a_breve (normal) and its norm; other families fail. */
PS_API ps_status ps_config_weights(const ps_config* config, double* out, size_t len, double* norm);

PS_API double ps_regular_norm(size_t q);
/* b_1..b_q of the maximal configuration. */
PS_API ps_status ps_maximal_b(size_t q, double* out, size_t len);
PS_API ps_status ps_ck(size_t q, size_t k, double* out);
PS_API ps_status ps_ck_expanded(size_t q, size_t k, double* out);
/* ||a_hat||^2 from the differences of b and from the c_k sum. */
PS_API ps_status ps_maximal_norm_sq(size_t q, double* from_b, double* from_ck);
PS_API ps_status ps_maximal_norm_bounds(size_t q, double* lower, double* exact, double* upper);
PS_API ps_status ps_maximal_threshold(size_t q, double* out);
PS_API ps_status ps_ray_objective(const double* z, size_t q, double* out);

typedef struct ps_optimality_report {
  size_t q;
  uint64_t trials;
  uint64_t seed;
  double lambda_hat;
  double max_objective;
  double gap;
  uint64_t violations;
  uint64_t near_optimizers;
  uint64_t majorization_failures;
} ps_optimality_report;

PS_API ps_status ps_verify_maximal_optimality(size_t q, uint64_t trials, uint64_t seed, ps_optimality_report* out);
PS_API ps_status ps_quantile_tail(size_t q, double* exact, double* approx, double* ratio);

/* ---- geometry ------------------------------------------------------------ */

PS_API ps_status ps_helmert_column(size_t q, size_t j, double* out, size_t len);
PS_API ps_status ps_extreme_ray(size_t q, size_t k, double* out, size_t len);
PS_API ps_status ps_extreme_ray_inner(size_t q, size_t k, size_t l, double* out);
PS_API ps_status ps_simplex_vertex(size_t q, size_t i, double* out, size_t len);

/* ---- special functions ------------------------------------------------- */

PS_API ps_status ps_log_gamma(double x, double* out);
PS_API double ps_normal_cdf(double x);
PS_API ps_status ps_normal_quantile(double p, double* out);
PS_API ps_status ps_incomplete_beta(double a, double b, double x, double* out);
PS_API ps_status ps_cap_area(size_t q, double t, double* out);
PS_API ps_status ps_cap_area_wendel_bound(size_t q, double t, double* out);
PS_API ps_status ps_cap_area_gaussian_bound(size_t q, double t, double* out);
/* t_out[i] = lambda/sqrt(q_i) (1 when infinite), beta_out[i] = cap area there. */
PS_API ps_status ps_cap_scaling(double lambda, const size_t* qs, size_t count, double* t_out, double* beta_out);

/* ---- discrepancy --------------------------------------------------------- */

typedef struct ps_discrepancy_report {
  size_t q;
  ps_family family;
  double t_star;
  double lecd;
  double lecad;
  double wendel_upper;
  double gaussian_lower;
  size_t argmin_count;
} ps_discrepancy_report;

/* `argmin` (nullable) receives up to argmin_len ray indices. */
PS_API ps_status ps_discrepancy(const ps_config* config, ps_discrepancy_report* out, size_t* argmin, size_t argmin_len);
PS_API ps_status ps_orbit_threshold_oracle(const ps_config* config, uint64_t directions, uint64_t seed, double* out);

typedef enum ps_cap_mode { PS_CAP_EXHAUSTIVE = 0, PS_CAP_SAMPLED = 1 } ps_cap_mode;

PS_API ps_status ps_cap_fraction(const ps_config* config, const double* center, size_t q, double t, ps_cap_mode mode,
                                 uint64_t n, uint64_t seed, ps_estimate* out);
PS_API ps_status ps_nscd_lower_bound(const ps_config* config, uint64_t directions, uint64_t seed, ps_estimate* out);
PS_API ps_status ps_marginal_distance(const ps_config* config, double* out);

typedef struct ps_certificate {
  size_t ray;
  double t;
  double max_inner;
  double bound;
  size_t ray_count;
  int verified;
} ps_certificate;

/* `center` (nullable, length q) receives the cap center; `ray_thresholds`
 * (nullable) receives y'z_k/||y|| for each argmin ray. */
PS_API ps_status ps_empty_cap_certificate(const ps_config* config, ps_certificate* out, double* center, size_t center_len,
                                          double* ray_thresholds, size_t thresholds_len);

/* ---- laws ---------------------------------------------------------------- */

typedef struct ps_law ps_law;

typedef enum ps_reference {
  PS_REF_UNIFORM_SQRT3 = 0, /* Uniform(-sqrt3, sqrt3) */
  PS_REF_NORMAL = 1,        /* N(0, 1) */
  PS_REF_F12 = 2,           /* F(1, 2) */
  PS_REF_THREE_BETA = 3     /* 3 Beta(1/2, 1) */
} ps_reference;

PS_API ps_status ps_law_from_atoms(const double* atoms, size_t count, ps_law** out);
PS_API ps_status ps_law_orbit_marginal(const ps_config* config, ps_law** out);
PS_API ps_status ps_law_scaled_marginal(ps_family family, size_t q, ps_law** out);
PS_API ps_status ps_law_w_bar(size_t q, ps_law** out);
PS_API ps_status ps_law_w_hat(size_t q, ps_law** out);
PS_API ps_status ps_law_z(size_t q, ps_law** out);
PS_API void ps_law_free(ps_law* law);
PS_API size_t ps_law_size(const ps_law* law);
PS_API ps_status ps_law_atoms(const ps_law* law, double* out, size_t len);
PS_API double ps_law_mean(const ps_law* law);
PS_API double ps_law_variance(const ps_law* law);
PS_API double ps_law_median(const ps_law* law);
PS_API double ps_law_cdf(const ps_law* law, double x);
PS_API double ps_law_mgf(const ps_law* law, double t);
PS_API ps_status ps_law_ks(const ps_law* law, ps_reference reference, double* out);
/* KS distance to the scaled coordinate law of the sphere in dimension q. */
PS_API ps_status ps_law_ks_sphere(const ps_law* law, size_t q, double* out);

PS_API ps_status ps_scaled_marginal_ks(ps_family family, size_t q, double* out);

typedef struct ps_dominance {
  int holds;
  size_t violations;
  size_t first_violation;
  double worst_gap;
} ps_dominance;

PS_API ps_status ps_stochastic_order(size_t q, ps_dominance* lower_printed, ps_dominance* lower_proof, ps_dominance* upper);
PS_API ps_status ps_sphere_marginal_survival(size_t q, double radius, double s, double* out);
PS_API ps_status ps_sphere_marginal_scaled_cdf(size_t q, double x, double* out);
PS_API ps_status ps_regular_mgf(size_t q, double t, double* out);

typedef struct ps_range_order {
  size_t q;
  double regular;
  double normal;
  double maximal;
  double sphere;
  int ordered;
} ps_range_order;

PS_API ps_status ps_range_order_check(size_t q, ps_range_order* out);

/* ---- permutohedron ----------------------------------------------------- */

PS_API ps_status ps_hull_contains(const ps_config* config, const double* v, size_t q, int* out);
PS_API ps_status ps_regular_volume(size_t q, double* out, double* log_out);
PS_API ps_status ps_ball_volume(size_t q, double r, double* out, double* log_out);
PS_API ps_status ps_regular_ratio(size_t q, double* exact, double* asymptote, double* ratio);
PS_API ps_status ps_cube_ratio(size_t q, double* exact, double* asymptote, double* ratio);
PS_API ps_status ps_mc_volume_ratio(ps_family family, size_t q, uint64_t samples, uint64_t seed, ps_estimate* out);

typedef struct ps_volume_report {
  size_t q;
  ps_family family;
  double ball_volume;
  int closed_form_used;
  double hull_volume;
  double ratio;
  ps_estimate mc;
} ps_volume_report;

PS_API ps_status ps_volume_report_compute(ps_family family, size_t q, uint64_t samples, uint64_t seed,
                                          ps_volume_report* out);

/* ---- Monte Carlo ----------------------------------------------------------- */

/* Row-major n x q output. */
PS_API ps_status ps_sphere_sample(size_t q, double r, uint64_t n, uint64_t seed, double* out, size_t len);
PS_API ps_status ps_ball_sample(size_t q, double r, uint64_t n, uint64_t seed, double* out, size_t len);

typedef struct ps_coverage_report {
  ps_family family;
  size_t q;
  double t_cap;
  double coordinate_threshold;
  int two_sided;
  size_t caps;
  ps_estimate coverage;
  double complement;
  double max_orbit_inner;
  double cap_level;
  int empty_verified;
} ps_coverage_report;

PS_API ps_status ps_ape_coverage(ps_family family, size_t q, uint64_t n, uint64_t seed, ps_coverage_report* out);

typedef struct ps_hypothesis_report {
  size_t q;
  double critical_value;
  ps_estimate size;
  double power;
} ps_hypothesis_report;

PS_API ps_status ps_hypothesis_test(size_t q, uint64_t n, uint64_t seed, ps_hypothesis_report* out);

PS_API ps_status ps_draw_thresholds(size_t n_dim, size_t draws, uint64_t seed, double* out, size_t len);

typedef struct ps_subindep_row {
  ps_estimate joint;
  double mc_product;
  double mc_product_se;
  double exact_product;
  int pass;
} ps_subindep_row;

typedef struct ps_split_row {
  size_t r;
  double joint;
  double product;
  double product_se;
  int pass;
} ps_split_row;

/* `thresholds` holds `sets` consecutive vectors of length n_dim; `rows` has
 * `sets` entries. With `splits` nonzero, `split_rows` (length
 * sets * (n_dim - 1)) receives the split comparisons. */
PS_API ps_status ps_subindependence(size_t n_dim, const double* thresholds, size_t sets, uint64_t trials, uint64_t seed,
                                    int splits, ps_subindep_row* rows, ps_split_row* split_rows, int* all_pass);

typedef struct ps_slepian_report {
  size_t q;
  double threshold;
  ps_estimate halfspaces_f;
  ps_estimate halfspaces_gamma;
  double analytic_product;
  int slepian_pass;
  int product_pass;
} ps_slepian_report;

PS_API ps_status ps_slepian(size_t q, double threshold, uint64_t trials, uint64_t seed, ps_slepian_report* out);

#ifdef __cplusplus
}
#endif

#endif /* PERMSPHERE_H */
