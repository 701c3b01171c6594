/* dslit — double-slit single-qubit Deutsch experiment simulator.
 *
 * C API for the shared library. All entry points are thread-safe; handles are
 * opaque and must be released with their destroy function. Functions return
 * DSLIT_OK on success and a nonzero status otherwise; dslit_last_error()
 * gives a thread-local human-readable detail message for the latest failure
 * on the calling thread.
 *
 * Units are SI throughout (meters, seconds, hertz); probabilities and
 * efficiencies are dimensionless in [0, 1]. A detector width of +infinity
 * means full-plane coverage.
 */

#ifndef DSLIT_H
#define DSLIT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dslit_status {
    DSLIT_OK = 0,
    DSLIT_ERR_INVALID_ARGUMENT = 1, /* bad parameter or violated invariant */
    DSLIT_ERR_PARSE = 2,            /* malformed config or input data */
    DSLIT_ERR_DOMAIN = 3,           /* physically meaningless request */
    DSLIT_ERR_NO_CONVERGENCE = 4,   /* iterative solver hit its cap */
    DSLIT_ERR_IO = 5,
    DSLIT_ERR_BUFFER_TOO_SMALL = 6,
    DSLIT_ERR_INTERNAL = 7
} dslit_status;

const char* dslit_version(void);
const char* dslit_status_name(dslit_status status);
/* Detail message of the most recent failure on this thread ("" if none). */
const char* dslit_last_error(void);

/* ---- plain value types ------------------------------------------------- */

typedef struct dslit_complex {
    double re;
    double im;
} dslit_complex;

typedef struct dslit_qubit {
    dslit_complex alpha; /* |0>, inferior slit */
    dslit_complex beta;  /* |1>, superior slit */
} dslit_qubit;

typedef struct dslit_density {
    dslit_complex rho00;
    dslit_complex rho01;
    dslit_complex rho10;
    dslit_complex rho11;
} dslit_density;

typedef struct dslit_diag_map {
    dslit_complex m0;
    dslit_complex m1;
} dslit_diag_map;

typedef struct dslit_operator {
    dslit_complex e00;
    dslit_complex e01;
    dslit_complex e10;
    dslit_complex e11;
} dslit_operator;

typedef struct dslit_prob_table {
    double p00, p01, p10, p11;
    double p_c; /* (p00 + p11)/2 */
    double p_b; /* (p01 + p10)/2 */
} dslit_prob_table;

typedef struct dslit_count_result {
    uint64_t coincidences;
    double expected;
    double std_error; /* sqrt(expected) */
} dslit_count_result;

typedef struct dslit_fit_result {
    double amplitude;
    double visibility;
    double delta_phi;       /* radians in [0, 2 pi) */
    double center_offset_m;
    double residual_rms;
} dslit_fit_result;

typedef struct dslit_scan_summary {
    double optimal_width_m; /* smallest width attaining the maximum */
    double optimal_p;
} dslit_scan_summary;

typedef enum dslit_plane {
    DSLIT_PLANE_FOURIER = 0,
    DSLIT_PLANE_IMAGE = 1
} dslit_plane;

typedef enum dslit_rule {
    DSLIT_RULE_DETECT_CONSTANT = 0,
    DSLIT_RULE_DETECT_BALANCED = 1,
    DSLIT_RULE_BEST = 2
} dslit_rule;

/* ---- experiment handle -------------------------------------------------- */

/* Owns the validated configuration: slit geometry, visibility, detector,
 * herald window, Monte Carlo and scan parameters. */
typedef struct dslit_experiment dslit_experiment;

/* Paper defaults: slits 100/250 um at 650 nm, focal length from the 0.11 mm
 * pattern crossing, V = 1, detector 100 um at x = 0 with eta = 1. */
dslit_status dslit_experiment_create(dslit_experiment** out);
dslit_status dslit_experiment_create_from_json(const char* config_json, dslit_experiment** out);
void dslit_experiment_destroy(dslit_experiment* exp);

/* Canonical effective-config JSON. Two-call sizing: pass buf = NULL to query
 * the required size (including the terminating NUL) in *needed. */
dslit_status dslit_experiment_to_json(const dslit_experiment* exp, char* buf, size_t cap,
                                      size_t* needed);

/* ---- exact one-qubit algebra ------------------------------------------- */

/* diag((-1)^f0, (-1)^f1) */
dslit_status dslit_oracle_unitary(int f0, int f1, dslit_diag_map* out);
/* diag(a0 e^{i phi0}, a1 e^{i phi1}); attenuations must lie in [0, 1] */
dslit_status dslit_slm_map(double a0, double phi0, double a1, double phi1, dslit_diag_map* out);
/* post-selected application; *survival gets ||m psi||^2 */
dslit_status dslit_apply_map(const dslit_diag_map* m, const dslit_qubit* psi, dslit_qubit* out,
                             double* survival);
dslit_status dslit_deutsch_output(int f0, int f1, dslit_qubit* out);
dslit_status dslit_overlap(const dslit_qubit* a, const dslit_qubit* b, dslit_complex* out);
dslit_status dslit_density_from_state(const dslit_qubit* psi, dslit_density* out);
dslit_status dslit_density_purity(const dslit_density* rho, double* out);

/* ---- heralded preparation ----------------------------------------------- */

/* phi(x_i) = 2 pi * slit_separation * x_i / (lambda * f) */
dslit_status dslit_herald_phase(const dslit_experiment* exp, double x_i, double* out);
/* (|0> + e^{i phi(x_i)} |1>)/sqrt(2) */
dslit_status dslit_conditional_state(const dslit_experiment* exp, double x_i, dslit_qubit* out);
/* envelope-weighted projector average over an idler window of given center
 * and width (width 0 = point detector) */
dslit_status dslit_heralded_state(const dslit_experiment* exp, double center_m, double width_m,
                                  dslit_density* out);
/* *out_commutes = 1 iff oracle-then-herald equals herald-then-oracle within 1e-9 */
dslit_status dslit_verify_commutation(const dslit_experiment* exp, int f0, int f1, double center_m,
                                      double width_m, int* out_commutes);

/* ---- intensity patterns -------------------------------------------------- */

dslit_status dslit_fourier_intensity(const dslit_experiment* exp, const dslit_density* rho,
                                     double x_m, double* out);
dslit_status dslit_image_intensity(const dslit_experiment* exp, const dslit_density* rho,
                                   double magnification, double x_m, double* out);
/* Number of samples of a uniform grid on [x_min, x_max]; 0 on invalid range. */
size_t dslit_pattern_sample_count(double x_min_m, double x_max_m, double step_m);
/* Fills xs/values (each of the given capacity) with the sampled pattern. */
dslit_status dslit_sample_pattern(const dslit_experiment* exp, const dslit_density* rho,
                                  dslit_plane plane, double magnification, double x_min_m,
                                  double x_max_m, double step_m, double* xs, double* values,
                                  size_t capacity, size_t* count);
/* f = 8 d_half x_cross / lambda so the |+>/|-> patterns cross at x_cross */
dslit_status dslit_calibrate_focal_length(double x_cross_m, double slit_separation_m,
                                          double wavelength_m, double* out_focal_m);

/* ---- detector model ------------------------------------------------------ */

/* eta * integral of the state's Fourier pattern over [center - w/2, center + w/2] */
dslit_status dslit_window_probability(const dslit_experiment* exp, const dslit_density* rho,
                                      double center_m, double width_m, double efficiency,
                                      double* out);
dslit_status dslit_povm_element(const dslit_experiment* exp, double center_m, double width_m,
                                double efficiency, dslit_operator* out);
/* p_ij for the four oracles using the experiment's configured detector */
dslit_status dslit_detection_probabilities(const dslit_experiment* exp, dslit_prob_table* out);

/* ---- one-query betting analysis ------------------------------------------ */

/* Table entries must be efficiency-free areas; eta enters here exactly once. */
dslit_status dslit_success_probability(const dslit_prob_table* table, double eta, dslit_rule rule,
                                       double* out);
dslit_status dslit_bayes_posteriors(const dslit_prob_table* table, double eta,
                                    double* p_constant_given_detection,
                                    double* p_balanced_given_no_detection);
size_t dslit_scan_sample_count(double w_min_m, double w_max_m, double step_m);
/* Detector-width sweep at x = 0 with the per-width better decision rule; eta
 * is taken from the experiment's detector efficiency. */
dslit_status dslit_scan_detector_width(const dslit_experiment* exp, double w_min_m, double w_max_m,
                                       double step_m, double* widths, double* p_success,
                                       size_t capacity, size_t* count,
                                       dslit_scan_summary* summary);
/* V such that P(S) at the experiment's detector equals target_p */
dslit_status dslit_calibrate_visibility(const dslit_experiment* exp, double target_p,
                                        double* out_visibility);

/* ---- stochastic experiment ------------------------------------------------ */

dslit_status dslit_simulate_coincidences(const dslit_experiment* exp, int f0, int f1,
                                         double herald_rate_hz, double duration_s, uint64_t seed,
                                         dslit_count_result* out);
/* (V_t, herald rate) reproducing a constant/balanced coincidence pair */
dslit_status dslit_calibrate_to_table(const dslit_experiment* exp, double counts_constant,
                                      double counts_balanced, double duration_s,
                                      double* out_visibility, double* out_herald_rate_hz);
/* empirical success frequency of `trials` single-shot bets */
dslit_status dslit_play_game(const dslit_experiment* exp, uint64_t trials, uint64_t seed,
                             double* out_frequency);

/* ---- pattern fitting ------------------------------------------------------ */

dslit_status dslit_fit_pattern_pair(const dslit_experiment* exp, const double* x_ref,
                                    const double* y_ref, size_t n_ref, const double* x_shifted,
                                    const double* y_shifted, size_t n_shifted,
                                    dslit_fit_result* out);
dslit_status dslit_peak_areas(const double* xs, const double* ys, size_t n, double boundary_m,
                              double* area_negative, double* area_positive);

#ifdef __cplusplus
}
#endif

#endif /* DSLIT_H */
