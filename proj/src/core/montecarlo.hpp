#pragma once

#include <cstdint>

#include "detection.hpp"

namespace dslit {

// One coincidence run: heralds arrive as a Poisson process for `duration`
// seconds and each heralded signal photon is detected with the window
// probability of the oracle's output state.
struct RunConfig {
    OracleFunction f;
    PatternModel model;
    DetectorConfig detector;
    double herald_rate; // idler heralds per second
    double duration;    // seconds
    std::uint64_t seed;

    RunConfig(const OracleFunction& f_, const PatternModel& model_, const DetectorConfig& det,
              double rate, double dur, std::uint64_t seed_);
};

struct CountResult {
    std::uint64_t coincidences;
    double expected;
    double std_error; // sqrt(expected), Poisson
};

CountResult simulate_coincidences(const RunConfig& cfg);

// Inverts a measured constant/balanced count pair into (fringe visibility,
// herald rate): V solves p_b(V)/p_c(V) = counts_balanced/counts_constant
// (the ratio is strictly decreasing in V), then the rate matches the
// constant-row mean  rate * duration * eta * p_c(V).
struct TableCalibration {
    double visibility;
    double herald_rate;
};

TableCalibration calibrate_to_table(double counts_constant, double counts_balanced,
                                    double duration, const DetectorConfig& det,
                                    const SlitGeometry& g);

// Repeated single-shot bets: draw f uniformly, sample detect/no-detect,
// bet constant on detection. Returns the empirical success frequency.
// Trials use independent substreams of `seed`, so any execution order
// reproduces the same result.
double play_single_shot_game(std::uint64_t trials, const PatternModel& model,
                             const DetectorConfig& det, double eta, std::uint64_t seed);

} // namespace dslit
