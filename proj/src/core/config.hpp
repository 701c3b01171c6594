#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "biphoton.hpp"
#include "detection.hpp"
#include "geometry.hpp"

namespace dslit {

struct MonteCarloParams {
    std::optional<double> herald_rate; // heralds per second; unset until calibrated
    double duration = 1000.0;          // seconds
    std::optional<std::uint64_t> seed; // stochastic commands refuse to run without one
};

struct TableCounts {
    double counts_constant = 5218.0;
    double counts_balanced = 450.0;
};

struct ScanRange {
    double min_width = 5e-6;
    double max_width = 1e-3;
    double step = 5e-6;
};

// Full experiment description; every field is re-validated on load and the
// JSON form rejects unknown keys. Geometry accepts either focal_length_m or
// crossing_point_m (the x where the |+> and |-> patterns cross).
struct ExperimentConfig {
    SlitGeometry geometry;
    double visibility = 1.0;
    DetectorConfig detector{0.0, 100e-6, 1.0};
    HeraldWindow herald{0.0, 0.0};
    MonteCarloParams monte_carlo;
    TableCounts table_calibration;
    ScanRange scan;

    ExperimentConfig();

    static ExperimentConfig defaults() { return {}; }
    static ExperimentConfig from_json_text(const std::string& text);

    // Canonical effective-config dump (focal length resolved); reloading the
    // dump reproduces identical behavior byte for byte.
    std::string to_json_text() const;

    PatternModel pattern_model() const { return {geometry, visibility}; }
};

} // namespace dslit
