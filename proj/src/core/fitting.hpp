#pragma once

#include <span>
#include <utility>

#include "optics.hpp"

namespace dslit {

struct FitResult {
    double amplitude;     // arbitrary units
    double visibility;    // in [0, 1]
    double delta_phi;     // radians, reported in [0, 2 pi)
    double center_offset; // meters
    double residual_rms;  // arbitrary units
};

// Joint least-squares fit of two sampled interference patterns to
//   A sinc^2(q a) (1 + V cos(2 q d + phi_k)),  q = 2 pi (x - x0)/(lambda f),
// sharing A, V, x0 with phi_ref = 0; delta_phi is the shifted pattern's phase.
// Phase is grid-seeded on [0, 2 pi) and refined by damped Gauss-Newton.
FitResult fit_pattern_pair(std::span<const IntensitySample> reference,
                           std::span<const IntensitySample> shifted, const SlitGeometry& g);

// Trapezoidal areas left/right of `boundary` (left is the |0> peak). The two
// areas always sum to the full trapezoidal integral of the samples.
std::pair<double, double> peak_areas(std::span<const IntensitySample> samples, double boundary);

} // namespace dslit
