// extern-C wrapper around the C++ core; translates exceptions into status
// codes and keeps a thread-local detail message.

#include "dslit.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "../core/biphoton.hpp"
#include "../core/config.hpp"
#include "../core/detection.hpp"
#include "../core/fitting.hpp"
#include "../core/inference.hpp"
#include "../core/montecarlo.hpp"
#include "../core/optics.hpp"
#include "../core/qubit.hpp"

struct dslit_experiment {
    dslit::ExperimentConfig config;
};

namespace {

thread_local std::string g_last_error;

dslit_status status_of(const dslit::Error& e)
{
    switch (e.code()) {
    case dslit::Errc::invalid_argument: return DSLIT_ERR_INVALID_ARGUMENT;
    case dslit::Errc::parse: return DSLIT_ERR_PARSE;
    case dslit::Errc::domain: return DSLIT_ERR_DOMAIN;
    case dslit::Errc::no_convergence: return DSLIT_ERR_NO_CONVERGENCE;
    case dslit::Errc::io: return DSLIT_ERR_IO;
    }
    return DSLIT_ERR_INTERNAL;
}

dslit_status set_error(dslit_status status, const char* message)
{
    g_last_error = message;
    return status;
}

template <typename Fn>
dslit_status guarded(Fn&& fn)
{
    try {
        fn();
        g_last_error.clear();
        return DSLIT_OK;
    } catch (const dslit::Error& e) {
        g_last_error = e.what();
        return status_of(e);
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return DSLIT_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return DSLIT_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return DSLIT_ERR_INTERNAL;
    }
}

dslit_complex to_c(dslit::Complex z)
{
    return {z.real(), z.imag()};
}

dslit::Complex from_c(dslit_complex z)
{
    return {z.re, z.im};
}

dslit_qubit to_c(const dslit::QubitState& s)
{
    return {to_c(s.alpha), to_c(s.beta)};
}

dslit::QubitState from_c(const dslit_qubit& s)
{
    return {from_c(s.alpha), from_c(s.beta)};
}

dslit_density to_c(const dslit::MixedState& r)
{
    return {to_c(r.rho00), to_c(r.rho01), to_c(r.rho10), to_c(r.rho11)};
}

dslit::MixedState from_c(const dslit_density& r)
{
    return {from_c(r.rho00), from_c(r.rho01), from_c(r.rho10), from_c(r.rho11)};
}

dslit_prob_table to_c(const dslit::ProbabilityTable& t)
{
    return {t.p00, t.p01, t.p10, t.p11, t.p_c, t.p_b};
}

dslit::ProbabilityTable from_c(const dslit_prob_table& t)
{
    return {t.p00, t.p01, t.p10, t.p11, t.p_c, t.p_b};
}

bool null_arg(const void* p)
{
    return p == nullptr;
}

} // namespace

extern "C" {

const char* dslit_version(void)
{
    return "1.0.0";
}

const char* dslit_status_name(dslit_status status)
{
    switch (status) {
    case DSLIT_OK: return "ok";
    case DSLIT_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case DSLIT_ERR_PARSE: return "parse_error";
    case DSLIT_ERR_DOMAIN: return "domain_error";
    case DSLIT_ERR_NO_CONVERGENCE: return "no_convergence";
    case DSLIT_ERR_IO: return "io_error";
    case DSLIT_ERR_BUFFER_TOO_SMALL: return "buffer_too_small";
    case DSLIT_ERR_INTERNAL: return "internal_error";
    }
    return "unknown";
}

const char* dslit_last_error(void)
{
    return g_last_error.c_str();
}

dslit_status dslit_experiment_create(dslit_experiment** out)
{
    if (null_arg(out))
        return set_error(DSLIT_ERR_INVALID_ARGUMENT, "out is NULL");
    return guarded([&] { *out = new dslit_experiment{dslit::ExperimentConfig::defaults()}; });
}

dslit_status dslit_experiment_create_from_json(const char* config_json, dslit_experiment** out)
{
    if (null_arg(out) || null_arg(config_json))
        return set_error(DSLIT_ERR_INVALID_ARGUMENT, "config_json/out is NULL");
    return guarded(
        [&] { *out = new dslit_experiment{dslit::ExperimentConfig::from_json_text(config_json)}; });
}

void dslit_experiment_destroy(dslit_experiment* exp)
{
    delete exp;
}

dslit_status dslit_experiment_to_json(const dslit_experiment* exp, char* buf, size_t cap,
                                      size_t* needed)
{
    if (null_arg(exp) || null_arg(needed))
        return set_error(DSLIT_ERR_INVALID_ARGUMENT, "exp/needed is NULL");
    std::string text;
    const dslit_status st = guarded([&] { text = exp->config.to_json_text(); });
    if (st != DSLIT_OK)
        return st;
    *needed = text.size() + 1;
    if (buf == nullptr)
        return DSLIT_OK;
    if (cap < text.size() + 1)
        return set_error(DSLIT_ERR_BUFFER_TOO_SMALL, "config buffer too small");
    std::memcpy(buf, text.c_str(), text.size() + 1);
    return DSLIT_OK;
}

dslit_status dslit_oracle_unitary(int f0, int f1, dslit_diag_map* out)
{
    if (null_arg(out))
        return set_error(DSLIT_ERR_INVALID_ARGUMENT, "out is NULL");
    return guarded([&] {
        const auto m = dslit::oracle_unitary(dslit::OracleFunction(f0, f1));
        *out = {to_c(m.m0), to_c(m.m1)};
    });
}

dslit_status dslit_slm_map(double a0, double phi0, double a1, double phi1, dslit_diag_map* out)
{
    if (null_arg(out))
        return set_error(DSLIT_ERR_INVALID_ARGUMENT, "out is NULL");
    return guarded([&] {
        const auto m = dslit::slm_map(a0, phi0, a1, phi1);
        *out = {to_c(m.m0), to_c(m.m1)};
    });
}

dslit_status dslit_apply_map(const dslit_diag_map* m, const dslit_qubit* psi, dslit_qubit* out,
                             double* survival)
{
    if (null_arg(m) || null_arg(psi) || null_arg(out))
        return set_error(DSLIT_ERR_INVALID_ARGUMENT, "m/psi/out is NULL");
    return guarded([&] {
        const dslit::DiagonalMap map(from_c(m->m0), from_c(m->m1));
        const auto applied = dslit::apply_map(map, from_c(*psi));
        *out = to_c(applied.state);
        if (survival != nullptr)
            *survival = applied.survival;
    });
}

dslit_status dslit_deutsch_output(int f0, int f1, dslit_qubit* out)
{
    if (null_arg(out))
        return set_error(DSLIT_ERR_INVALID_ARGUMENT, "out is NULL");
    return guarded([&] { *out = to_c(dslit::deutsch_output(dslit::OracleFunction(f0, f1))); });
}

dslit_status dslit_overlap(const dslit_qubit* a, const dslit_qubit* b, dslit_complex* out)
{
    if (null_arg(a) || null_arg(b) || null_arg(out))
        return set_error(DSLIT_ERR_INVALID_ARGUMENT, "a/b/out is NULL");
    return guarded([&] { *out = to_c(dslit::overlap(from_c(*a), from_c(*b))); });
}

dslit_status dslit_density_from_state(const dslit_qubit* psi, dslit_density* out)
{
    if (null_arg(psi) || null_arg(out))
        return set_error(DSLIT_ERR_INVALID_ARGUMENT, "psi/out is NULL");
    return guarded([&] { *out = to_c(dslit::MixedState::pure(from_c(*psi))); });
}

dslit_status dslit_density_purity(const dslit_density* rho, double* out)
{
    if (null_arg(rho) || null_arg(out))
        return set_error(DSLIT_ERR_INVALID_ARGUMENT, "rho/out is NULL");
    return guarded([&] { *out = from_c(*rho).purity(); });
}

dslit_status dslit_herald_phase(const dslit_experiment* exp, double x_i, double* out)
{
    if (null_arg(exp) || null_arg(out))
        return set_error(DSLIT_ERR_INVALID_ARGUMENT, "exp/out is NULL");
    return guarded([&] { *out = dslit::herald_phase(x_i, exp->config.geometry); });
}

dslit_status dslit_conditional_state(const dslit_experiment* exp, double x_i, dslit_qubit* out)
{
    if (null_arg(exp) || null_arg(out))
        return set_error(DSLIT_ERR_INVALID_ARGUMENT, "exp/out is NULL");
    return guarded(
        [&] { *out = to_c(dslit::conditional_signal_state(x_i, exp->config.geometry)); });
}

dslit_status dslit_heralded_state(const dslit_experiment* exp, double center_m, double width_m,
                                  dslit_density* out)
{
    if (null_arg(exp) || null_arg(out))
        return set_error(DSLIT_ERR_INVALID_ARGUMENT, "exp/out is NULL");
    return guarded([&] {
        const dslit::HeraldWindow window(center_m, width_m);
        *out = to_c(dslit::heralded_mixed_state(window, exp->config.pattern_model()));
    });
}

dslit_status dslit_verify_commutation(const dslit_experiment* exp, int f0, int f1, double center_m,
                                      double width_m, int* out_commutes)
{
    if (null_arg(exp) || null_arg(out_commutes))
        return set_error(DSLIT_ERR_INVALID_ARGUMENT, "exp/out is NULL");
    return guarded([&] {
        const dslit::HeraldWindow window(center_m, width_m);
        *out_commutes = dslit::verify_commutation(dslit::OracleFunction(f0, f1), window,
                                                  exp->config.pattern_model())
            ? 1
            : 0;
    });
}

dslit_status dslit_fourier_intensity(const dslit_experiment* exp, const dslit_density* rho,
                                     double x_m, double* out)
{
    if (null_arg(exp) || null_arg(rho) || null_arg(out))
        return set_error(DSLIT_ERR_INVALID_ARGUMENT, "exp/rho/out is NULL");
    return guarded(
        [&] { *out = dslit::fourier_intensity(from_c(*rho), exp->config.pattern_model(), x_m); });
}

dslit_status dslit_image_intensity(const dslit_experiment* exp, const dslit_density* rho,
                                   double magnification, double x_m, double* out)
{
    if (null_arg(exp) || null_arg(rho) || null_arg(out))
        return set_error(DSLIT_ERR_INVALID_ARGUMENT, "exp/rho/out is NULL");
    return guarded([&] {
        *out = dslit::image_intensity(from_c(*rho), exp->config.geometry, magnification, x_m);
    });
}

size_t dslit_pattern_sample_count(double x_min_m, double x_max_m, double step_m)
{
    if (!(step_m > 0.0) || !(x_min_m < x_max_m))
        return 0;
    return static_cast<size_t>((x_max_m - x_min_m) / step_m + 1e-9) + 1;
}

dslit_status dslit_sample_pattern(const dslit_experiment* exp, const dslit_density* rho,
                                  dslit_plane plane, double magnification, double x_min_m,
                                  double x_max_m, double step_m, double* xs, double* values,
                                  size_t capacity, size_t* count)
{
    if (null_arg(exp) || null_arg(rho) || null_arg(xs) || null_arg(values) || null_arg(count))
        return set_error(DSLIT_ERR_INVALID_ARGUMENT, "exp/rho/xs/values/count is NULL");
    std::vector<dslit::IntensitySample> samples;
    const dslit_status st = guarded([&] {
        const dslit::MixedState state = from_c(*rho);
        samples = plane == DSLIT_PLANE_IMAGE
            ? dslit::sample_image(state, exp->config.geometry, magnification, x_min_m, x_max_m,
                                  step_m)
            : dslit::sample_pattern(state, exp->config.pattern_model(), x_min_m, x_max_m, step_m);
    });
    if (st != DSLIT_OK)
        return st;
    if (samples.size() > capacity)
        return set_error(DSLIT_ERR_BUFFER_TOO_SMALL, "buffer too small for sample grid");
    for (size_t i = 0; i < samples.size(); ++i) {
        xs[i] = samples[i].x;
        values[i] = samples[i].value;
    }
    *count = samples.size();
    return DSLIT_OK;
}

dslit_status dslit_calibrate_focal_length(double x_cross_m, double slit_separation_m,
                                          double wavelength_m, double* out_focal_m)
{
    if (null_arg(out_focal_m))
        return set_error(DSLIT_ERR_INVALID_ARGUMENT, "out is NULL");
    return guarded([&] {
        *out_focal_m = dslit::calibrate_focal_length(x_cross_m, slit_separation_m, wavelength_m);
    });
}

dslit_status dslit_window_probability(const dslit_experiment* exp, const dslit_density* rho,
                                      double center_m, double width_m, double efficiency,
                                      double* out)
{
    if (null_arg(exp) || null_arg(rho) || null_arg(out))
        return set_error(DSLIT_ERR_INVALID_ARGUMENT, "exp/rho/out is NULL");
    return guarded([&] {
        const dslit::DetectorConfig det(center_m, width_m, efficiency);
        *out = dslit::window_probability(from_c(*rho), exp->config.pattern_model(), det);
    });
}

dslit_status dslit_povm_element(const dslit_experiment* exp, double center_m, double width_m,
                                double efficiency, dslit_operator* out)
{
    if (null_arg(exp) || null_arg(out))
        return set_error(DSLIT_ERR_INVALID_ARGUMENT, "exp/out is NULL");
    return guarded([&] {
        const dslit::DetectorConfig det(center_m, width_m, efficiency);
        const auto e = dslit::povm_element(exp->config.pattern_model(), det);
        *out = {to_c(e.e00), to_c(e.e01), to_c(e.e10), to_c(e.e11)};
    });
}

dslit_status dslit_detection_probabilities(const dslit_experiment* exp, dslit_prob_table* out)
{
    if (null_arg(exp) || null_arg(out))
        return set_error(DSLIT_ERR_INVALID_ARGUMENT, "exp/out is NULL");
    return guarded([&] {
        *out = to_c(dslit::detection_probabilities(exp->config.pattern_model(),
                                                   exp->config.detector));
    });
}

dslit_status dslit_success_probability(const dslit_prob_table* table, double eta, dslit_rule rule,
                                       double* out)
{
    if (null_arg(table) || null_arg(out))
        return set_error(DSLIT_ERR_INVALID_ARGUMENT, "table/out is NULL");
    return guarded([&] {
        const dslit::ProbabilityTable t = from_c(*table);
        switch (rule) {
        case DSLIT_RULE_DETECT_CONSTANT:
            *out = dslit::success_probability(t, eta, dslit::DecisionRule::DetectMeansConstant);
            break;
        case DSLIT_RULE_DETECT_BALANCED:
            *out = dslit::success_probability(t, eta, dslit::DecisionRule::DetectMeansBalanced);
            break;
        case DSLIT_RULE_BEST:
            *out = dslit::analyze_bet(t, eta).p_success;
            break;
        default:
            dslit::fail(dslit::Errc::invalid_argument, "unknown decision rule");
        }
    });
}

dslit_status dslit_bayes_posteriors(const dslit_prob_table* table, double eta,
                                    double* p_constant_given_detection,
                                    double* p_balanced_given_no_detection)
{
    if (null_arg(table) || null_arg(p_constant_given_detection)
        || null_arg(p_balanced_given_no_detection))
        return set_error(DSLIT_ERR_INVALID_ARGUMENT, "table/out is NULL");
    return guarded([&] {
        const auto posteriors = dslit::bayes_posteriors(from_c(*table), eta);
        *p_constant_given_detection = posteriors.first;
        *p_balanced_given_no_detection = posteriors.second;
    });
}

size_t dslit_scan_sample_count(double w_min_m, double w_max_m, double step_m)
{
    if (!(step_m > 0.0) || !(w_min_m < w_max_m) || !(w_min_m > 0.0))
        return 0;
    return static_cast<size_t>((w_max_m - w_min_m) / step_m + 1e-9) + 1;
}

dslit_status dslit_scan_detector_width(const dslit_experiment* exp, double w_min_m, double w_max_m,
                                       double step_m, double* widths, double* p_success,
                                       size_t capacity, size_t* count, dslit_scan_summary* summary)
{
    if (null_arg(exp) || null_arg(widths) || null_arg(p_success) || null_arg(count)
        || null_arg(summary))
        return set_error(DSLIT_ERR_INVALID_ARGUMENT, "exp/widths/p_success/count/summary is NULL");
    dslit::ScanResult result;
    const dslit_status st = guarded([&] {
        result = dslit::scan_detector_width(exp->config.pattern_model(),
                                            exp->config.detector.efficiency, w_min_m, w_max_m,
                                            step_m);
    });
    if (st != DSLIT_OK)
        return st;
    if (result.widths.size() > capacity)
        return set_error(DSLIT_ERR_BUFFER_TOO_SMALL, "buffer too small for scan grid");
    for (size_t i = 0; i < result.widths.size(); ++i) {
        widths[i] = result.widths[i];
        p_success[i] = result.p_success[i];
    }
    *count = result.widths.size();
    summary->optimal_width_m = result.optimal_width;
    summary->optimal_p = result.optimal_p;
    return DSLIT_OK;
}

dslit_status dslit_calibrate_visibility(const dslit_experiment* exp, double target_p,
                                        double* out_visibility)
{
    if (null_arg(exp) || null_arg(out_visibility))
        return set_error(DSLIT_ERR_INVALID_ARGUMENT, "exp/out is NULL");
    return guarded([&] {
        *out_visibility =
            dslit::calibrate_visibility(exp->config.geometry, exp->config.detector,
                                        exp->config.detector.efficiency, target_p);
    });
}

dslit_status dslit_simulate_coincidences(const dslit_experiment* exp, int f0, int f1,
                                         double herald_rate_hz, double duration_s, uint64_t seed,
                                         dslit_count_result* out)
{
    if (null_arg(exp) || null_arg(out))
        return set_error(DSLIT_ERR_INVALID_ARGUMENT, "exp/out is NULL");
    return guarded([&] {
        const dslit::RunConfig cfg(dslit::OracleFunction(f0, f1), exp->config.pattern_model(),
                                   exp->config.detector, herald_rate_hz, duration_s, seed);
        const auto result = dslit::simulate_coincidences(cfg);
        *out = {result.coincidences, result.expected, result.std_error};
    });
}

dslit_status dslit_calibrate_to_table(const dslit_experiment* exp, double counts_constant,
                                      double counts_balanced, double duration_s,
                                      double* out_visibility, double* out_herald_rate_hz)
{
    if (null_arg(exp) || null_arg(out_visibility) || null_arg(out_herald_rate_hz))
        return set_error(DSLIT_ERR_INVALID_ARGUMENT, "exp/out is NULL");
    return guarded([&] {
        const auto cal = dslit::calibrate_to_table(counts_constant, counts_balanced, duration_s,
                                                   exp->config.detector, exp->config.geometry);
        *out_visibility = cal.visibility;
        *out_herald_rate_hz = cal.herald_rate;
    });
}

dslit_status dslit_play_game(const dslit_experiment* exp, uint64_t trials, uint64_t seed,
                             double* out_frequency)
{
    if (null_arg(exp) || null_arg(out_frequency))
        return set_error(DSLIT_ERR_INVALID_ARGUMENT, "exp/out is NULL");
    return guarded([&] {
        *out_frequency =
            dslit::play_single_shot_game(trials, exp->config.pattern_model(),
                                         exp->config.detector,
                                         exp->config.detector.efficiency, seed);
    });
}

dslit_status dslit_fit_pattern_pair(const dslit_experiment* exp, const double* x_ref,
                                    const double* y_ref, size_t n_ref, const double* x_shifted,
                                    const double* y_shifted, size_t n_shifted,
                                    dslit_fit_result* out)
{
    if (null_arg(exp) || null_arg(x_ref) || null_arg(y_ref) || null_arg(x_shifted)
        || null_arg(y_shifted) || null_arg(out))
        return set_error(DSLIT_ERR_INVALID_ARGUMENT, "exp/data/out is NULL");
    return guarded([&] {
        std::vector<dslit::IntensitySample> reference(n_ref);
        for (size_t i = 0; i < n_ref; ++i)
            reference[i] = {x_ref[i], y_ref[i]};
        std::vector<dslit::IntensitySample> shifted(n_shifted);
        for (size_t i = 0; i < n_shifted; ++i)
            shifted[i] = {x_shifted[i], y_shifted[i]};
        const auto fit = dslit::fit_pattern_pair(reference, shifted, exp->config.geometry);
        *out = {fit.amplitude, fit.visibility, fit.delta_phi, fit.center_offset,
                fit.residual_rms};
    });
}

dslit_status dslit_peak_areas(const double* xs, const double* ys, size_t n, double boundary_m,
                              double* area_negative, double* area_positive)
{
    if (null_arg(xs) || null_arg(ys) || null_arg(area_negative) || null_arg(area_positive))
        return set_error(DSLIT_ERR_INVALID_ARGUMENT, "xs/ys/out is NULL");
    return guarded([&] {
        std::vector<dslit::IntensitySample> samples(n);
        for (size_t i = 0; i < n; ++i)
            samples[i] = {xs[i], ys[i]};
        const auto areas = dslit::peak_areas(samples, boundary_m);
        *area_negative = areas.first;
        *area_positive = areas.second;
    });
}

} // extern "C"
