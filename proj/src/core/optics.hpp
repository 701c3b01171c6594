#pragma once

#include <vector>

#include "geometry.hpp"
#include "quadrature.hpp"
#include "qubit.hpp"

namespace dslit {

struct IntensitySample {
    double x;     // meters
    double value; // probability density per meter
};

// sin(u)/u with the removable singularity handled.
double sinc(double u);

// V-independent single-state envelope N sinc^2(q a), normalized so its
// full-plane integral is 1 (N = 2 a / (lambda f); the fringe cross term
// integrates to zero because the slits do not overlap).
double envelope_density(const SlitGeometry& g, double x);

// Fourier-plane probability density at x for a (possibly mixed) state:
//   N sinc^2(q a) [rho00 + rho11 + 2 V Re(rho01 e^{i 2 q d})].
double fourier_intensity(const MixedState& rho, const PatternModel& model, double x);

// Image-plane density: two top-hat peaks of width slit_width*magnification at
// -d*magnification (|0> population) and +d*magnification (|1> population).
double image_intensity(const MixedState& rho, const SlitGeometry& g, double magnification,
                       double x);

// Uniform-grid samples of fourier_intensity on [x_min, x_max].
std::vector<IntensitySample> sample_pattern(const MixedState& rho, const PatternModel& model,
                                            double x_min, double x_max, double step);

// Image-plane counterpart, used by the CLI's image output.
std::vector<IntensitySample> sample_image(const MixedState& rho, const SlitGeometry& g,
                                          double magnification, double x_min, double x_max,
                                          double step);

// Shared integration settings for detector/herald window integrals: panels
// track the fringe count, and the absolute floor (all these integrals are
// probabilities <= 1) stops refinement on rounding-noise integrands.
QuadratureOptions window_quadrature_options(const SlitGeometry& g, double width);

} // namespace dslit
