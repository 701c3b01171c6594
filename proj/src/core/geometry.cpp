#include "geometry.hpp"

#include <cmath>
#include <numbers>

namespace dslit {

SlitGeometry::SlitGeometry(double width, double separation, double lambda, double f)
    : slit_width(width), slit_separation(separation), wavelength(lambda), focal_length(f)
{
    if (!(width > 0.0) || !(separation > 0.0) || !(lambda > 0.0) || !(f > 0.0))
        fail(Errc::invalid_argument, "slit geometry fields must be positive");
    if (!(separation > width))
        fail(Errc::invalid_argument, "slit separation must exceed slit width (non-overlapping slits)");
    if (!std::isfinite(width) || !std::isfinite(separation) || !std::isfinite(lambda) || !std::isfinite(f))
        fail(Errc::invalid_argument, "slit geometry fields must be finite");
}

double SlitGeometry::wavenumber(double x) const
{
    return 2.0 * std::numbers::pi * x / (wavelength * focal_length);
}

double SlitGeometry::fringe_period() const
{
    return wavelength * focal_length / slit_separation;
}

double calibrate_focal_length(double x_cross, double slit_separation, double wavelength)
{
    if (!(x_cross > 0.0))
        fail(Errc::invalid_argument, "crossing point must be positive");
    if (!(slit_separation > 0.0) || !(wavelength > 0.0))
        fail(Errc::invalid_argument, "slit separation and wavelength must be positive");
    return 4.0 * slit_separation * x_cross / wavelength; // 8 * d_half * x_cross / lambda
}

PatternModel::PatternModel(const SlitGeometry& g, double v) : geometry(g), visibility(v)
{
    if (!(v >= 0.0 && v <= 1.0))
        fail(Errc::invalid_argument, "visibility must lie in [0, 1]");
}

} // namespace dslit
