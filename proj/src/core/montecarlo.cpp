#include "montecarlo.hpp"

#include <cmath>

#include "rng.hpp"

namespace dslit {

RunConfig::RunConfig(const OracleFunction& f_, const PatternModel& model_,
                     const DetectorConfig& det, double rate, double dur, std::uint64_t seed_)
    : f(f_), model(model_), detector(det), herald_rate(rate), duration(dur), seed(seed_)
{
    if (!(rate > 0.0) || !std::isfinite(rate))
        fail(Errc::invalid_argument, "herald rate must be positive");
    if (!(dur > 0.0) || !std::isfinite(dur))
        fail(Errc::invalid_argument, "duration must be positive");
}

CountResult simulate_coincidences(const RunConfig& cfg)
{
    const MixedState rho = MixedState::pure(deutsch_output(cfg.f));
    const double p = window_probability(rho, cfg.model, cfg.detector);
    const double mean_heralds = cfg.herald_rate * cfg.duration;

    SplitMix64 herald_stream = substream(cfg.seed, 0);
    const std::uint64_t heralds = sample_poisson(herald_stream, mean_heralds);

    std::uint64_t hits = 0;
    for (std::uint64_t i = 1; i <= heralds; ++i) {
        if (substream(cfg.seed, i).next_double() < p)
            ++hits;
    }
    const double expected = mean_heralds * p;
    return {hits, expected, std::sqrt(expected)};
}

TableCalibration calibrate_to_table(double counts_constant, double counts_balanced,
                                    double duration, const DetectorConfig& det,
                                    const SlitGeometry& g)
{
    if (!(counts_balanced >= 0.0) || !(counts_constant >= counts_balanced))
        fail(Errc::invalid_argument, "need counts_constant >= counts_balanced >= 0");
    if (!(counts_constant > 0.0))
        fail(Errc::invalid_argument, "constant counts must be positive");
    if (!(duration > 0.0))
        fail(Errc::invalid_argument, "duration must be positive");
    if (!(det.efficiency > 0.0))
        fail(Errc::domain, "counts inconsistent with a dead detector (eta = 0)");

    const DetectorConfig unit_det(det.center, det.width, 1.0);
    auto ratio_at = [&](double v) {
        const ProbabilityTable t = detection_probabilities(PatternModel(g, v), unit_det);
        if (!(t.p_c > 0.0))
            fail(Errc::domain, "detector window carries no light");
        return t.p_b / t.p_c;
    };

    const double target = counts_balanced / counts_constant;
    double v = 0.0;
    if (target >= 1.0) {
        v = 0.0; // equal counts: fringe contrast carries no information
    } else {
        const double floor_ratio = ratio_at(1.0);
        if (target < floor_ratio - 1e-9)
            fail(Errc::domain, "counts inconsistent with geometry: ratio below the V = 1 floor");
        if (target <= floor_ratio) {
            v = 1.0;
        } else {
            double lo = 0.0; // ratio(0) = 1 >= target
            double hi = 1.0; // ratio(1) <= target
            for (int iter = 0; iter < 200; ++iter) {
                const double mid = 0.5 * (lo + hi);
                if (ratio_at(mid) > target)
                    lo = mid;
                else
                    hi = mid;
                if (hi - lo < 1e-12)
                    break;
            }
            v = 0.5 * (lo + hi);
        }
    }

    const ProbabilityTable t = detection_probabilities(PatternModel(g, v), unit_det);
    const double rate = counts_constant / (duration * det.efficiency * t.p_c);
    return {v, rate};
}

double play_single_shot_game(std::uint64_t trials, const PatternModel& model,
                             const DetectorConfig& det, double eta, std::uint64_t seed)
{
    if (trials == 0)
        fail(Errc::invalid_argument, "need at least one trial");
    if (!(eta >= 0.0 && eta <= 1.0))
        fail(Errc::invalid_argument, "efficiency must lie in [0, 1]");

    // Efficiency-free areas; eta is applied per trial below.
    const DetectorConfig unit_det(det.center, det.width, 1.0);
    const ProbabilityTable table = detection_probabilities(model, unit_det);
    const double p_detect[4] = {eta * table.p00, eta * table.p01, eta * table.p10,
                                eta * table.p11};
    const bool is_constant[4] = {true, false, false, true};

    std::uint64_t successes = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        SplitMix64 rng = substream(seed, i);
        const auto f = static_cast<std::size_t>(rng.next() & 3ULL);
        const bool detected = rng.next_double() < p_detect[f];
        if (detected == is_constant[f])
            ++successes;
    }
    return static_cast<double>(successes) / static_cast<double>(trials);
}

} // namespace dslit
