#pragma once

#include <array>

#include "geometry.hpp"
#include "qubit.hpp"

namespace dslit {

// Slit-limited detector: opening `width` centered at `center`, quantum
// efficiency in [0, 1]. width may be +infinity for full-plane coverage.
struct DetectorConfig {
    double center;     // meters
    double width;      // meters, >= 0 (or +inf)
    double efficiency; // eta

    DetectorConfig(double c, double w, double eta);
    bool full_plane() const;
};

// 2x2 positive operator E with Tr(E rho) = window_probability(rho) for all rho.
struct PovmElement {
    Complex e00;
    Complex e01;
    Complex e10;
    Complex e11;

    std::array<double, 2> eigenvalues() const; // ascending
};

// eta * integral of fourier_intensity over the detector opening.
double window_probability(const MixedState& rho, const PatternModel& model,
                          const DetectorConfig& det);

// The window integral of the rank-one intensity kernel:
//   E = eta * Integral_window N sinc^2(q a) [[1, V e^{-i 2 q d}], [V e^{i 2 q d}, 1]] dx.
PovmElement povm_element(const PatternModel& model, const DetectorConfig& det);

// Detection probabilities p_ij for the four Deutsch outputs, plus the
// constant/balanced averages. p00 = p11 and p01 = p10 hold exactly here
// because paired oracles differ only by a global phase.
struct ProbabilityTable {
    double p00;
    double p01;
    double p10;
    double p11;
    double p_c; // (p00 + p11) / 2
    double p_b; // (p01 + p10) / 2
};

ProbabilityTable detection_probabilities(const PatternModel& model, const DetectorConfig& det);

} // namespace dslit
