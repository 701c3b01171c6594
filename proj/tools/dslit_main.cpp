// dslit command-line front end. Talks to the simulator exclusively through
// the C API in dslit.h; JSON/CSV assembly is local plumbing.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dslit.h"

using nlohmann::json;

namespace {

struct CliError {
    std::string code;
    std::string message;
};

[[noreturn]] void die(const std::string& code, const std::string& message)
{
    throw CliError{code, message};
}

void check(dslit_status status)
{
    if (status != DSLIT_OK)
        die(dslit_status_name(status), dslit_last_error());
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        die("io_error", "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::optional<std::string>& path, const std::string& text)
{
    if (!path || *path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(*path, std::ios::binary);
    if (!out)
        die("io_error", "cannot open " + *path + " for writing");
    out << text;
    if (!out)
        die("io_error", "failed writing " + *path);
}

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// RAII wrapper for the experiment handle
struct Experiment {
    dslit_experiment* handle = nullptr;
    ~Experiment() { dslit_experiment_destroy(handle); }
};

json effective_config(const Experiment& exp)
{
    size_t needed = 0;
    check(dslit_experiment_to_json(exp.handle, nullptr, 0, &needed));
    std::string text(needed, '\0');
    check(dslit_experiment_to_json(exp.handle, text.data(), text.size(), &needed));
    text.resize(needed - 1); // drop the NUL
    return json::parse(text);
}

// ---- options shared by all subcommands --------------------------------------

struct CommonOptions {
    std::optional<std::string> config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_path;
    std::optional<std::string> dump_config_path;

    // overrides merged into the config before the experiment is created
    std::optional<double> visibility;
    std::optional<double> det_center;
    std::optional<std::string> det_width; // number or "inf"
    std::optional<double> efficiency;
    std::optional<double> herald_center;
    std::optional<double> herald_width;
};

void add_common(CLI::App* cmd, CommonOptions& opt)
{
    cmd->add_option("--config", opt.config_path, "JSON config file");
    cmd->add_option("--seed", opt.seed, "RNG seed (required for stochastic commands)");
    cmd->add_option("--out", opt.out_path, "output path ('-' = stdout)");
    cmd->add_option("--dump-config", opt.dump_config_path,
                    "write the effective config JSON to this path");
    cmd->add_option("--visibility", opt.visibility, "fringe visibility in [0,1]");
    cmd->add_option("--center", opt.det_center, "detector center [m]");
    cmd->add_option("--width", opt.det_width, "detector width [m] or 'inf'");
    cmd->add_option("--efficiency", opt.efficiency, "detector efficiency in [0,1]");
    cmd->add_option("--herald-center", opt.herald_center, "idler window center [m]");
    cmd->add_option("--herald-width", opt.herald_width, "idler window width [m]");
}

Experiment make_experiment(const CommonOptions& opt)
{
    json cfg = json::object();
    if (opt.config_path) {
        cfg = json::parse(read_file(*opt.config_path), nullptr, false);
        if (cfg.is_discarded())
            die("parse_error", *opt.config_path + " is not valid JSON");
    }
    if (opt.visibility)
        cfg["visibility"] = *opt.visibility;
    if (opt.det_center)
        cfg["detector"]["center_m"] = *opt.det_center;
    if (opt.det_width) {
        try {
            std::size_t pos = 0;
            const double w = std::stod(*opt.det_width, &pos);
            if (pos == opt.det_width->size())
                cfg["detector"]["width_m"] = w;
            else
                cfg["detector"]["width_m"] = *opt.det_width;
        } catch (const std::exception&) {
            cfg["detector"]["width_m"] = *opt.det_width; // "inf" handled by the library
        }
    }
    if (opt.efficiency)
        cfg["detector"]["efficiency"] = *opt.efficiency;
    if (opt.herald_center)
        cfg["herald"]["center_m"] = *opt.herald_center;
    if (opt.herald_width)
        cfg["herald"]["width_m"] = *opt.herald_width;
    if (opt.seed)
        cfg["monte_carlo"]["seed"] = *opt.seed;

    Experiment exp;
    check(dslit_experiment_create_from_json(cfg.dump().c_str(), &exp.handle));
    if (opt.dump_config_path) {
        size_t needed = 0;
        check(dslit_experiment_to_json(exp.handle, nullptr, 0, &needed));
        std::string text(needed, '\0');
        check(dslit_experiment_to_json(exp.handle, text.data(), text.size(), &needed));
        text.resize(needed - 1);
        write_output(opt.dump_config_path, text);
    }
    return exp;
}

std::uint64_t require_seed(const CommonOptions& opt, const Experiment& exp)
{
    if (opt.seed)
        return *opt.seed;
    const json cfg = effective_config(exp);
    if (cfg.contains("monte_carlo") && cfg["monte_carlo"].contains("seed"))
        return cfg["monte_carlo"]["seed"].get<std::uint64_t>();
    die("invalid_argument", "this command is stochastic: give --seed or monte_carlo.seed");
}

// ---- state selection for pattern/herald --------------------------------------

struct StateSelector {
    std::optional<std::string> oracle;  // "00", "01", "10", "11"
    std::optional<double> herald_x;     // point herald position
    bool herald_window = false;         // use the configured idler window
};

dslit_density resolve_state(const Experiment& exp, const StateSelector& sel)
{
    const int picked = (sel.oracle ? 1 : 0) + (sel.herald_x ? 1 : 0) + (sel.herald_window ? 1 : 0);
    if (picked > 1)
        die("invalid_argument", "pick one of --oracle, --herald-x, --herald-window");
    dslit_density rho{};
    if (sel.herald_x) {
        dslit_qubit psi{};
        check(dslit_conditional_state(exp.handle, *sel.herald_x, &psi));
        check(dslit_density_from_state(&psi, &rho));
        return rho;
    }
    if (sel.herald_window) {
        const json cfg = effective_config(exp);
        check(dslit_heralded_state(exp.handle, cfg["herald"]["center_m"].get<double>(),
                                   cfg["herald"]["width_m"].get<double>(), &rho));
        return rho;
    }
    const std::string name = sel.oracle.value_or("00");
    if (name.size() != 2 || (name[0] != '0' && name[0] != '1')
        || (name[1] != '0' && name[1] != '1'))
        die("invalid_argument", "--oracle must be one of 00, 01, 10, 11");
    dslit_qubit psi{};
    check(dslit_deutsch_output(name[0] - '0', name[1] - '0', &psi));
    check(dslit_density_from_state(&psi, &rho));
    return rho;
}

json complex_json(const dslit_complex& z)
{
    return json{{"re", z.re}, {"im", z.im}};
}

// ---- subcommand bodies ---------------------------------------------------------

int run_pattern(const CommonOptions& opt, const StateSelector& sel, const std::string& plane,
                double magnification, double x_min, double x_max, double step)
{
    const Experiment exp = make_experiment(opt);
    const dslit_density rho = resolve_state(exp, sel);
    const dslit_plane p = plane == "image" ? DSLIT_PLANE_IMAGE : DSLIT_PLANE_FOURIER;
    if (plane != "image" && plane != "fourier")
        die("invalid_argument", "--plane must be fourier or image");

    const size_t capacity = dslit_pattern_sample_count(x_min, x_max, step);
    if (capacity == 0)
        die("invalid_argument", "empty sampling grid");
    std::vector<double> xs(capacity);
    std::vector<double> values(capacity);
    size_t count = 0;
    check(dslit_sample_pattern(exp.handle, &rho, p, magnification, x_min, x_max, step, xs.data(),
                               values.data(), capacity, &count));

    std::string csv = "x_m,intensity_per_m\n";
    for (size_t i = 0; i < count; ++i)
        csv += format_double(xs[i]) + "," + format_double(values[i]) + "\n";
    write_output(opt.out_path, csv);
    return 0;
}

int run_herald(const CommonOptions& opt, const std::optional<double>& x_point)
{
    const Experiment exp = make_experiment(opt);
    json out;
    if (x_point) {
        double phase = 0.0;
        check(dslit_herald_phase(exp.handle, *x_point, &phase));
        dslit_qubit psi{};
        check(dslit_conditional_state(exp.handle, *x_point, &psi));
        dslit_density rho{};
        check(dslit_density_from_state(&psi, &rho));
        double purity = 0.0;
        check(dslit_density_purity(&rho, &purity));
        out["x_i_m"] = *x_point;
        out["phase_rad"] = phase;
        out["state"] = {{"alpha", complex_json(psi.alpha)}, {"beta", complex_json(psi.beta)}};
        out["rho"] = {{"rho00", complex_json(rho.rho00)},
                      {"rho01", complex_json(rho.rho01)},
                      {"rho10", complex_json(rho.rho10)},
                      {"rho11", complex_json(rho.rho11)}};
        out["purity"] = purity;
    } else {
        const json cfg = effective_config(exp);
        const double center = cfg["herald"]["center_m"].get<double>();
        const double width = cfg["herald"]["width_m"].get<double>();
        dslit_density rho{};
        check(dslit_heralded_state(exp.handle, center, width, &rho));
        double purity = 0.0;
        check(dslit_density_purity(&rho, &purity));
        double phase = 0.0;
        check(dslit_herald_phase(exp.handle, center, &phase));
        out["window"] = {{"center_m", center}, {"width_m", width}};
        out["phase_rad_at_center"] = phase;
        out["rho"] = {{"rho00", complex_json(rho.rho00)},
                      {"rho01", complex_json(rho.rho01)},
                      {"rho10", complex_json(rho.rho10)},
                      {"rho11", complex_json(rho.rho11)}};
        out["purity"] = purity;
    }
    write_output(opt.out_path, out.dump(2) + "\n");
    return 0;
}

int run_table(const CommonOptions& opt, std::optional<double> counts_constant,
              std::optional<double> counts_balanced)
{
    const Experiment exp = make_experiment(opt);
    const std::uint64_t seed = require_seed(opt, exp);
    const json cfg = effective_config(exp);
    const double cc =
        counts_constant.value_or(cfg["table_calibration"]["counts_constant"].get<double>());
    const double cb =
        counts_balanced.value_or(cfg["table_calibration"]["counts_balanced"].get<double>());
    const double duration = cfg["monte_carlo"]["duration_s"].get<double>();

    double visibility = 0.0;
    double rate = 0.0;
    check(dslit_calibrate_to_table(exp.handle, cc, cb, duration, &visibility, &rate));

    // re-create the experiment with the calibrated visibility
    json cal_cfg = cfg;
    cal_cfg["visibility"] = visibility;
    Experiment cal;
    check(dslit_experiment_create_from_json(cal_cfg.dump().c_str(), &cal.handle));

    json rows = json::array();
    const char* names[4] = {"00", "01", "10", "11"};
    for (int i = 0; i < 4; ++i) {
        dslit_count_result r{};
        const std::uint64_t row_seed = seed + static_cast<std::uint64_t>(i);
        check(dslit_simulate_coincidences(cal.handle, names[i][0] - '0', names[i][1] - '0', rate,
                                          duration, row_seed, &r));
        rows.push_back({{"f", names[i]},
                        {"coincidences", r.coincidences},
                        {"expected", r.expected},
                        {"std_error", r.std_error},
                        {"seed", row_seed}});
    }
    const json out = {{"visibility", visibility},
                      {"herald_rate_hz", rate},
                      {"duration_s", duration},
                      {"counts_constant", cc},
                      {"counts_balanced", cb},
                      {"rows", rows}};
    write_output(opt.out_path, out.dump(2) + "\n");
    return 0;
}

int run_scan(const CommonOptions& opt, const std::optional<std::string>& summary_path,
             std::optional<double> w_min, std::optional<double> w_max, std::optional<double> step)
{
    const Experiment exp = make_experiment(opt);
    const json cfg = effective_config(exp);
    const double lo = w_min.value_or(cfg["scan"]["min_width_m"].get<double>());
    const double hi = w_max.value_or(cfg["scan"]["max_width_m"].get<double>());
    const double st = step.value_or(cfg["scan"]["step_m"].get<double>());

    const size_t capacity = dslit_scan_sample_count(lo, hi, st);
    if (capacity == 0)
        die("invalid_argument", "empty scan range");
    std::vector<double> widths(capacity);
    std::vector<double> probs(capacity);
    size_t count = 0;
    dslit_scan_summary summary{};
    check(dslit_scan_detector_width(exp.handle, lo, hi, st, widths.data(), probs.data(), capacity,
                                    &count, &summary));

    std::string csv = "width_m,p_success\n";
    for (size_t i = 0; i < count; ++i)
        csv += format_double(widths[i]) + "," + format_double(probs[i]) + "\n";
    if (!opt.out_path)
        die("invalid_argument", "scan writes CSV to --out; summary JSON goes to stdout");
    write_output(opt.out_path, csv);

    const json out = {{"optimal_width_m", summary.optimal_width_m},
                      {"optimal_p", summary.optimal_p},
                      {"visibility", cfg["visibility"].get<double>()},
                      {"eta", cfg["detector"]["efficiency"].get<double>()}};
    write_output(summary_path ? summary_path : std::optional<std::string>{},
                 out.dump(2) + "\n");
    return 0;
}

int run_game(const CommonOptions& opt, std::uint64_t trials)
{
    const Experiment exp = make_experiment(opt);
    const std::uint64_t seed = require_seed(opt, exp);
    double frequency = 0.0;
    check(dslit_play_game(exp.handle, trials, seed, &frequency));
    const double err =
        std::sqrt(frequency * (1.0 - frequency) / static_cast<double>(trials));
    const json out = {{"trials", trials},
                      {"frequency", frequency},
                      {"std_error", err},
                      {"seed", seed}};
    write_output(opt.out_path, out.dump(2) + "\n");
    return 0;
}

std::pair<std::vector<double>, std::vector<double>> read_pattern_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        die("io_error", "cannot open " + path);
    std::string line;
    if (!std::getline(in, line))
        die("parse_error", path + ": empty file");
    if (line == "x_m,intensity_per_m\r")
        line.pop_back();
    if (line != "x_m,intensity_per_m")
        die("parse_error", path + ": expected header x_m,intensity_per_m");
    std::vector<double> xs;
    std::vector<double> ys;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            die("parse_error", path + ": malformed row \"" + line + "\"");
        try {
            std::size_t pos = 0;
            const double x = std::stod(line.substr(0, comma), &pos);
            const double y = std::stod(line.substr(comma + 1), &pos);
            xs.push_back(x);
            ys.push_back(y);
        } catch (const std::exception&) {
            die("parse_error", path + ": malformed row \"" + line + "\"");
        }
    }
    return {xs, ys};
}

int run_fit(const CommonOptions& opt, const std::string& reference_path,
            const std::string& shifted_path)
{
    const Experiment exp = make_experiment(opt);
    const auto [x_ref, y_ref] = read_pattern_csv(reference_path);
    const auto [x_sh, y_sh] = read_pattern_csv(shifted_path);
    dslit_fit_result fit{};
    check(dslit_fit_pattern_pair(exp.handle, x_ref.data(), y_ref.data(), x_ref.size(),
                                 x_sh.data(), y_sh.data(), x_sh.size(), &fit));
    const json out = {{"amplitude", fit.amplitude},
                      {"visibility", fit.visibility},
                      {"delta_phi_rad", fit.delta_phi},
                      {"center_offset_m", fit.center_offset_m},
                      {"residual_rms", fit.residual_rms}};
    write_output(opt.out_path, out.dump(2) + "\n");
    return 0;
}

int run_calibrate(const CommonOptions& opt, std::optional<double> crossing,
                  std::optional<double> target_p, std::vector<double> counts)
{
    const Experiment exp = make_experiment(opt);
    const json cfg = effective_config(exp);
    json out;
    const bool nothing_specific = !crossing && !target_p && counts.empty();

    if (crossing || nothing_specific) {
        const double x_cross = crossing.value_or(0.11e-3);
        double focal = 0.0;
        check(dslit_calibrate_focal_length(
            x_cross, cfg["geometry"]["slit_separation_m"].get<double>(),
            cfg["geometry"]["wavelength_m"].get<double>(), &focal));
        out["crossing_point_m"] = x_cross;
        out["focal_length_m"] = focal;
    }
    if (target_p || nothing_specific) {
        double visibility = 0.0;
        check(dslit_calibrate_visibility(exp.handle, target_p.value_or(0.55), &visibility));
        out["target_p"] = target_p.value_or(0.55);
        out["visibility"] = visibility;
    }
    if (!counts.empty() || nothing_specific) {
        double cc = cfg["table_calibration"]["counts_constant"].get<double>();
        double cb = cfg["table_calibration"]["counts_balanced"].get<double>();
        if (!counts.empty()) {
            if (counts.size() != 2)
                die("invalid_argument", "--counts takes exactly two values: constant balanced");
            cc = counts[0];
            cb = counts[1];
        }
        double visibility = 0.0;
        double rate = 0.0;
        check(dslit_calibrate_to_table(exp.handle, cc, cb,
                                       cfg["monte_carlo"]["duration_s"].get<double>(),
                                       &visibility, &rate));
        out["table"] = {{"counts_constant", cc},
                        {"counts_balanced", cb},
                        {"visibility", visibility},
                        {"herald_rate_hz", rate}};
    }
    write_output(opt.out_path, out.dump(2) + "\n");
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"double-slit one-qubit Deutsch experiment simulator"};
    app.require_subcommand(1);

    // pattern
    CommonOptions pattern_opt;
    StateSelector pattern_sel;
    std::string pattern_plane = "fourier";
    double pattern_mag = 1.0;
    double pattern_xmin = -1e-3;
    double pattern_xmax = 1e-3;
    double pattern_step = 40e-6;
    CLI::App* pattern = app.add_subcommand("pattern", "sample a detection-plane intensity curve");
    add_common(pattern, pattern_opt);
    pattern->add_option("--oracle", pattern_sel.oracle, "oracle label 00/01/10/11");
    pattern->add_option("--herald-x", pattern_sel.herald_x, "point-herald position [m]");
    pattern->add_flag("--herald-window", pattern_sel.herald_window,
                      "use the configured idler window state");
    pattern->add_option("--plane", pattern_plane, "fourier (default) or image");
    pattern->add_option("--mag", pattern_mag, "image-plane magnification");
    pattern->add_option("--xmin", pattern_xmin, "grid start [m]");
    pattern->add_option("--xmax", pattern_xmax, "grid end [m]");
    pattern->add_option("--xstep", pattern_step, "grid step [m]");

    // herald
    CommonOptions herald_opt;
    std::optional<double> herald_x;
    CLI::App* herald = app.add_subcommand("herald", "heralded signal state for an idler detection");
    add_common(herald, herald_opt);
    herald->add_option("--x", herald_x, "point idler position [m]; default: configured window");

    // table
    CommonOptions table_opt;
    std::optional<double> table_cc;
    std::optional<double> table_cb;
    CLI::App* table = app.add_subcommand("table", "calibrated four-oracle coincidence simulation");
    add_common(table, table_opt);
    table->add_option("--counts-constant", table_cc, "measured constant-row coincidences");
    table->add_option("--counts-balanced", table_cb, "measured balanced-row coincidences");

    // scan
    CommonOptions scan_opt;
    std::optional<std::string> scan_summary;
    std::optional<double> scan_wmin;
    std::optional<double> scan_wmax;
    std::optional<double> scan_step;
    CLI::App* scan = app.add_subcommand("scan", "success probability vs detector width");
    add_common(scan, scan_opt);
    scan->add_option("--summary-out", scan_summary, "summary JSON path (default stdout)");
    scan->add_option("--wmin", scan_wmin, "smallest width [m]");
    scan->add_option("--wmax", scan_wmax, "largest width [m]");
    scan->add_option("--wstep", scan_step, "width step [m]");

    // game
    CommonOptions game_opt;
    std::uint64_t game_trials = 1000000;
    CLI::App* game = app.add_subcommand("game", "repeated single-shot betting game");
    add_common(game, game_opt);
    game->add_option("--trials", game_trials, "number of trials (default 1e6)");

    // fit
    CommonOptions fit_opt;
    std::string fit_reference;
    std::string fit_shifted;
    CLI::App* fit = app.add_subcommand("fit", "joint fit of two sampled interference patterns");
    add_common(fit, fit_opt);
    fit->add_option("--reference", fit_reference, "reference pattern CSV")->required();
    fit->add_option("--shifted", fit_shifted, "phase-shifted pattern CSV")->required();

    // calibrate
    CommonOptions cal_opt;
    std::optional<double> cal_crossing;
    std::optional<double> cal_target;
    std::vector<double> cal_counts;
    CLI::App* calibrate =
        app.add_subcommand("calibrate", "derive focal length, visibility or herald rate");
    add_common(calibrate, cal_opt);
    calibrate->add_option("--crossing", cal_crossing, "pattern crossing point [m]");
    calibrate->add_option("--target-p", cal_target, "success probability to match");
    calibrate->add_option("--counts", cal_counts,
                          "constant and balanced coincidence counts")
        ->expected(2);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e); // --help
        const json err = {{"error", {{"code", "usage"}, {"message", e.what()}}}};
        std::cerr << err.dump() << "\n";
        return 2;
    }

    try {
        if (pattern->parsed())
            return run_pattern(pattern_opt, pattern_sel, pattern_plane, pattern_mag, pattern_xmin,
                               pattern_xmax, pattern_step);
        if (herald->parsed())
            return run_herald(herald_opt, herald_x);
        if (table->parsed())
            return run_table(table_opt, table_cc, table_cb);
        if (scan->parsed())
            return run_scan(scan_opt, scan_summary, scan_wmin, scan_wmax, scan_step);
        if (game->parsed())
            return run_game(game_opt, game_trials);
        if (fit->parsed())
            return run_fit(fit_opt, fit_reference, fit_shifted);
        if (calibrate->parsed())
            return run_calibrate(cal_opt, cal_crossing, cal_target, cal_counts);
    } catch (const CliError& e) {
        const json err = {{"error", {{"code", e.code}, {"message", e.message}}}};
        std::cerr << err.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        const json err = {{"error", {{"code", "internal_error"}, {"message", e.what()}}}};
        std::cerr << err.dump() << "\n";
        return 1;
    }
    return 0;
}
