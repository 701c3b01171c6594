#pragma once

#include "error.hpp"

namespace dslit {

// Physical double-slit layout plus the effective Fourier-transform focal
// length that maps detector position to transverse wavenumber.
struct SlitGeometry {
    double slit_width;      // full slit opening 2a, meters
    double slit_separation; // center-to-center 2d, meters
    double wavelength;      // meters
    double focal_length;    // effective f, meters

    SlitGeometry(double width, double separation, double lambda, double f);

    double half_width() const { return 0.5 * slit_width; }
    double half_separation() const { return 0.5 * slit_separation; }

    // q(x) = 2 pi x / (lambda f); slit-1 phase relative to slit-0 is +2 q d.
    double wavenumber(double x) const;
    double fringe_period() const; // x distance for a 2 pi relative-phase sweep
};

// Solves for f such that the |+> and |-> patterns (V = 1) cross at x_cross,
// i.e. 2 q(x_cross) d = pi/2:  f = 8 d x_cross / lambda.
double calibrate_focal_length(double x_cross, double slit_separation, double wavelength);

// Geometry plus a single fringe-contrast scalar V in [0, 1] multiplying the
// coherence term of the Fourier-plane pattern.
struct PatternModel {
    SlitGeometry geometry;
    double visibility;

    PatternModel(const SlitGeometry& g, double v);
};

} // namespace dslit
