#include "config.hpp"

#include <cmath>
#include <limits>
#include <set>

#include <json.hpp>

namespace dslit {

using nlohmann::json;

namespace {

// Paper-default layout: 2a = 100 um, 2d = 250 um, lambda = 650 nm, with the
// focal length fixed by the 0.11 mm pattern crossing.
SlitGeometry default_geometry()
{
    const double width = 100e-6;
    const double separation = 250e-6;
    const double wavelength = 650e-9;
    return {width, separation, wavelength,
            calibrate_focal_length(0.11e-3, separation, wavelength)};
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& where)
{
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!known.count(it.key()))
            fail(Errc::parse, "unknown config key \"" + it.key() + "\" in " + where);
}

double require_number(const json& obj, const std::string& key, const std::string& where)
{
    const auto it = obj.find(key);
    if (it == obj.end() || !it->is_number())
        fail(Errc::parse, "config key \"" + key + "\" in " + where + " must be a number");
    return it->get<double>();
}

double number_or(const json& obj, const std::string& key, const std::string& where, double fallback)
{
    const auto it = obj.find(key);
    if (it == obj.end())
        return fallback;
    if (!it->is_number())
        fail(Errc::parse, "config key \"" + key + "\" in " + where + " must be a number");
    return it->get<double>();
}

// width accepts a number or the string "inf" (full-plane detector)
double width_or(const json& obj, const std::string& key, const std::string& where, double fallback)
{
    const auto it = obj.find(key);
    if (it == obj.end())
        return fallback;
    if (it->is_string()) {
        const auto s = it->get<std::string>();
        if (s == "inf" || s == "infinity")
            return std::numeric_limits<double>::infinity();
        fail(Errc::parse, "config key \"" + key + "\" in " + where + " must be a number or \"inf\"");
    }
    if (!it->is_number())
        fail(Errc::parse, "config key \"" + key + "\" in " + where + " must be a number or \"inf\"");
    return it->get<double>();
}

} // namespace

ExperimentConfig::ExperimentConfig() : geometry(default_geometry()) {}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text)
{
    json root = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (root.is_discarded())
        fail(Errc::parse, "config is not valid JSON");
    if (!root.is_object())
        fail(Errc::parse, "config root must be a JSON object");
    reject_unknown_keys(root, {"geometry", "visibility", "detector", "herald", "monte_carlo",
                               "table_calibration", "scan"},
                        "config root");

    ExperimentConfig cfg;

    if (root.contains("geometry")) {
        const json& g = root["geometry"];
        if (!g.is_object())
            fail(Errc::parse, "geometry must be an object");
        reject_unknown_keys(g,
                            {"slit_width_m", "slit_separation_m", "wavelength_m", "focal_length_m",
                             "crossing_point_m"},
                            "geometry");
        const double width = number_or(g, "slit_width_m", "geometry", 100e-6);
        const double separation = number_or(g, "slit_separation_m", "geometry", 250e-6);
        const double wavelength = number_or(g, "wavelength_m", "geometry", 650e-9);
        if (g.contains("focal_length_m") && g.contains("crossing_point_m"))
            fail(Errc::parse, "geometry: give focal_length_m or crossing_point_m, not both");
        double focal = 0.0;
        if (g.contains("focal_length_m"))
            focal = require_number(g, "focal_length_m", "geometry");
        else
            focal = calibrate_focal_length(number_or(g, "crossing_point_m", "geometry", 0.11e-3),
                                           separation, wavelength);
        cfg.geometry = SlitGeometry(width, separation, wavelength, focal);
    }

    if (root.contains("visibility")) {
        if (!root["visibility"].is_number())
            fail(Errc::parse, "visibility must be a number");
        cfg.visibility = root["visibility"].get<double>();
        if (!(cfg.visibility >= 0.0 && cfg.visibility <= 1.0))
            fail(Errc::invalid_argument, "visibility must lie in [0, 1]");
    }

    if (root.contains("detector")) {
        const json& d = root["detector"];
        if (!d.is_object())
            fail(Errc::parse, "detector must be an object");
        reject_unknown_keys(d, {"center_m", "width_m", "efficiency"}, "detector");
        cfg.detector = DetectorConfig(number_or(d, "center_m", "detector", 0.0),
                                      width_or(d, "width_m", "detector", 100e-6),
                                      number_or(d, "efficiency", "detector", 1.0));
    }

    if (root.contains("herald")) {
        const json& h = root["herald"];
        if (!h.is_object())
            fail(Errc::parse, "herald must be an object");
        reject_unknown_keys(h, {"center_m", "width_m"}, "herald");
        cfg.herald = HeraldWindow(number_or(h, "center_m", "herald", 0.0),
                                  number_or(h, "width_m", "herald", 0.0));
    }

    if (root.contains("monte_carlo")) {
        const json& m = root["monte_carlo"];
        if (!m.is_object())
            fail(Errc::parse, "monte_carlo must be an object");
        reject_unknown_keys(m, {"herald_rate_hz", "duration_s", "seed"}, "monte_carlo");
        if (m.contains("herald_rate_hz")) {
            const double rate = require_number(m, "herald_rate_hz", "monte_carlo");
            if (!(rate > 0.0))
                fail(Errc::invalid_argument, "herald_rate_hz must be positive");
            cfg.monte_carlo.herald_rate = rate;
        }
        cfg.monte_carlo.duration = number_or(m, "duration_s", "monte_carlo", 1000.0);
        if (!(cfg.monte_carlo.duration > 0.0))
            fail(Errc::invalid_argument, "duration_s must be positive");
        if (m.contains("seed")) {
            if (!m["seed"].is_number_unsigned())
                fail(Errc::parse, "monte_carlo.seed must be an unsigned integer");
            cfg.monte_carlo.seed = m["seed"].get<std::uint64_t>();
        }
    }

    if (root.contains("table_calibration")) {
        const json& t = root["table_calibration"];
        if (!t.is_object())
            fail(Errc::parse, "table_calibration must be an object");
        reject_unknown_keys(t, {"counts_constant", "counts_balanced"}, "table_calibration");
        cfg.table_calibration.counts_constant =
            number_or(t, "counts_constant", "table_calibration", 5218.0);
        cfg.table_calibration.counts_balanced =
            number_or(t, "counts_balanced", "table_calibration", 450.0);
        if (cfg.table_calibration.counts_constant < cfg.table_calibration.counts_balanced
            || cfg.table_calibration.counts_balanced < 0.0)
            fail(Errc::invalid_argument,
                 "table_calibration needs counts_constant >= counts_balanced >= 0");
    }

    if (root.contains("scan")) {
        const json& s = root["scan"];
        if (!s.is_object())
            fail(Errc::parse, "scan must be an object");
        reject_unknown_keys(s, {"min_width_m", "max_width_m", "step_m"}, "scan");
        cfg.scan.min_width = number_or(s, "min_width_m", "scan", 5e-6);
        cfg.scan.max_width = number_or(s, "max_width_m", "scan", 1e-3);
        cfg.scan.step = number_or(s, "step_m", "scan", 5e-6);
        if (!(cfg.scan.min_width > 0.0) || !(cfg.scan.min_width < cfg.scan.max_width)
            || !(cfg.scan.step > 0.0))
            fail(Errc::invalid_argument, "scan needs 0 < min_width_m < max_width_m and step_m > 0");
    }

    return cfg;
}

std::string ExperimentConfig::to_json_text() const
{
    json root;
    root["geometry"] = {{"slit_width_m", geometry.slit_width},
                        {"slit_separation_m", geometry.slit_separation},
                        {"wavelength_m", geometry.wavelength},
                        {"focal_length_m", geometry.focal_length}};
    root["visibility"] = visibility;
    if (detector.full_plane())
        root["detector"] = {{"center_m", detector.center},
                            {"width_m", "inf"},
                            {"efficiency", detector.efficiency}};
    else
        root["detector"] = {{"center_m", detector.center},
                            {"width_m", detector.width},
                            {"efficiency", detector.efficiency}};
    root["herald"] = {{"center_m", herald.center}, {"width_m", herald.width}};
    json mc = {{"duration_s", monte_carlo.duration}};
    if (monte_carlo.herald_rate)
        mc["herald_rate_hz"] = *monte_carlo.herald_rate;
    if (monte_carlo.seed)
        mc["seed"] = *monte_carlo.seed;
    root["monte_carlo"] = mc;
    root["table_calibration"] = {{"counts_constant", table_calibration.counts_constant},
                                 {"counts_balanced", table_calibration.counts_balanced}};
    root["scan"] = {{"min_width_m", scan.min_width},
                    {"max_width_m", scan.max_width},
                    {"step_m", scan.step}};
    return root.dump(2) + "\n";
}

} // namespace dslit
