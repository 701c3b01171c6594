#pragma once

#include <utility>
#include <vector>

#include "detection.hpp"

namespace dslit {

enum class DecisionRule {
    DetectMeansConstant, // bet constant on a click, balanced on silence
    DetectMeansBalanced, // the inverted bet
};

// One-query betting summary for a given table and efficiency.
struct BetOutcome {
    double p_success;
    double posterior_constant_given_detection;
    double posterior_balanced_given_no_detection;
    DecisionRule decision_rule;
};

// P(S) under a uniform prior over the four functions:
//   (1/4) [eta p00 + eta p11 + (1 - eta p01) + (1 - eta p10)]
// for detect=>constant, and the mirrored expression for the inverted rule.
// The table must carry efficiency-free areas; eta enters here exactly once.
double success_probability(const ProbabilityTable& table, double eta,
                           DecisionRule rule = DecisionRule::DetectMeansConstant);

// ( p_c / (p_c + p_b),  (1 - eta p_b) / (2 - eta (p_c + p_b)) ).
std::pair<double, double> bayes_posteriors(const ProbabilityTable& table, double eta);

// Picks the better of the two decision rules for this table.
BetOutcome analyze_bet(const ProbabilityTable& table, double eta);

struct ScanResult {
    std::vector<double> widths;
    std::vector<double> p_success; // best-rule success probability per width
    double optimal_width;          // smallest width attaining the maximum
    double optimal_p;
};

// Sweeps the detector opening on a uniform grid (detector centered at x = 0,
// the Fig.-5 arrangement) and records the best-rule success probability.
ScanResult scan_detector_width(const PatternModel& model, double eta, double w_min, double w_max,
                               double step);

// Solves success_probability(V; det, eta) = target_p for V by bisection
// (P(S) is linear in V, so the root is unique). target_p = 0.5 gives V = 0;
// targets above the V = 1 value are rejected.
double calibrate_visibility(const SlitGeometry& g, const DetectorConfig& det, double eta,
                            double target_p);

} // namespace dslit
