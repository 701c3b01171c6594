#include "inference.hpp"

#include <cmath>

namespace dslit {

namespace {

void check_eta(double eta)
{
    if (!(eta >= 0.0 && eta <= 1.0))
        fail(Errc::invalid_argument, "efficiency must lie in [0, 1]");
}

DetectorConfig unit_efficiency(const DetectorConfig& det)
{
    return {det.center, det.width, 1.0};
}

} // namespace

double success_probability(const ProbabilityTable& table, double eta, DecisionRule rule)
{
    check_eta(eta);
    if (rule == DecisionRule::DetectMeansConstant)
        return 0.25
            * (eta * table.p00 + eta * table.p11 + (1.0 - eta * table.p01)
               + (1.0 - eta * table.p10));
    return 0.25
        * (eta * table.p01 + eta * table.p10 + (1.0 - eta * table.p00) + (1.0 - eta * table.p11));
}

std::pair<double, double> bayes_posteriors(const ProbabilityTable& table, double eta)
{
    check_eta(eta);
    const double pc = table.p_c;
    const double pb = table.p_b;
    if (pc + pb <= 0.0)
        fail(Errc::domain, "no detections possible: p_c + p_b = 0");
    return {pc / (pc + pb), (1.0 - eta * pb) / (2.0 - eta * (pc + pb))};
}

BetOutcome analyze_bet(const ProbabilityTable& table, double eta)
{
    const double direct = success_probability(table, eta, DecisionRule::DetectMeansConstant);
    const double inverted = success_probability(table, eta, DecisionRule::DetectMeansBalanced);
    const auto posteriors = bayes_posteriors(table, eta);
    return {std::max(direct, inverted), posteriors.first, posteriors.second,
            direct >= inverted ? DecisionRule::DetectMeansConstant
                               : DecisionRule::DetectMeansBalanced};
}

ScanResult scan_detector_width(const PatternModel& model, double eta, double w_min, double w_max,
                               double step)
{
    check_eta(eta);
    if (!(w_min > 0.0) || !(w_min < w_max) || !(step > 0.0))
        fail(Errc::invalid_argument, "scan range needs 0 < w_min < w_max and step > 0");

    ScanResult result;
    const auto count = static_cast<std::size_t>(std::floor((w_max - w_min) / step + 1e-9)) + 1;
    result.widths.reserve(count);
    result.p_success.reserve(count);
    result.optimal_width = w_min;
    result.optimal_p = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double width = w_min + static_cast<double>(i) * step;
        const ProbabilityTable table =
            detection_probabilities(model, DetectorConfig(0.0, width, 1.0));
        const double direct = success_probability(table, eta, DecisionRule::DetectMeansConstant);
        const double inverted = success_probability(table, eta, DecisionRule::DetectMeansBalanced);
        const double best = std::max(direct, inverted);
        result.widths.push_back(width);
        result.p_success.push_back(best);
        if (best > result.optimal_p) { // strict: ties keep the smaller width
            result.optimal_p = best;
            result.optimal_width = width;
        }
    }
    return result;
}

double calibrate_visibility(const SlitGeometry& g, const DetectorConfig& det, double eta,
                            double target_p)
{
    check_eta(eta);
    if (!(target_p >= 0.5))
        fail(Errc::invalid_argument, "target success probability below the classical 1/2");

    const DetectorConfig unit_det = unit_efficiency(det);
    auto p_at = [&](double v) {
        const ProbabilityTable table = detection_probabilities(PatternModel(g, v), unit_det);
        return success_probability(table, eta, DecisionRule::DetectMeansConstant);
    };

    if (target_p == 0.5)
        return 0.0;
    const double p_ideal = p_at(1.0);
    if (target_p > p_ideal + 1e-12)
        fail(Errc::domain, "target exceeds ideal model: unattainable with V <= 1");
    if (target_p >= p_ideal)
        return 1.0;

    double lo = 0.0;
    double hi = 1.0;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double p = p_at(mid);
        if (std::abs(p - target_p) <= 1e-9)
            return mid;
        (p < target_p ? lo : hi) = mid;
        if (hi - lo < 1e-14)
            break;
    }
    return 0.5 * (lo + hi);
}

} // namespace dslit
