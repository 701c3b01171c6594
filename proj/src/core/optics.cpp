#include "optics.hpp"

#include <cmath>

namespace dslit {

double sinc(double u)
{
    if (std::abs(u) < 1e-4) {
        const double u2 = u * u;
        return 1.0 - u2 / 6.0 + u2 * u2 / 120.0;
    }
    return std::sin(u) / u;
}

double envelope_density(const SlitGeometry& g, double x)
{
    const double q = g.wavenumber(x);
    const double s = sinc(q * g.half_width());
    const double norm = 2.0 * g.half_width() / (g.wavelength * g.focal_length);
    return norm * s * s;
}

double fourier_intensity(const MixedState& rho, const PatternModel& model, double x)
{
    const SlitGeometry& g = model.geometry;
    const double q = g.wavenumber(x);
    const Complex fringe = std::polar(1.0, 2.0 * q * g.half_separation());
    const double bracket = rho.rho00.real() + rho.rho11.real()
        + 2.0 * model.visibility * (rho.rho01 * fringe).real();
    const double value = envelope_density(g, x) * bracket;
    return value < 0.0 ? 0.0 : value; // clamp the odd -1e-18 from rounding
}

double image_intensity(const MixedState& rho, const SlitGeometry& g, double magnification,
                       double x)
{
    if (!(magnification > 0.0))
        fail(Errc::invalid_argument, "magnification must be positive");
    const double peak_width = g.slit_width * magnification;
    const double peak_center = g.half_separation() * magnification;
    const double height = 1.0 / peak_width; // each top-hat has unit area before weighting
    double value = 0.0;
    if (std::abs(x + peak_center) <= 0.5 * peak_width)
        value += rho.rho00.real() * height;
    if (std::abs(x - peak_center) <= 0.5 * peak_width)
        value += rho.rho11.real() * height;
    return value;
}

namespace {

template <typename F>
std::vector<IntensitySample> sample_grid(double x_min, double x_max, double step, const F& f)
{
    if (!(step > 0.0) || !(x_min < x_max))
        fail(Errc::invalid_argument, "sampling grid is empty (need x_min < x_max and step > 0)");
    std::vector<IntensitySample> out;
    // 1e-9-step slack so a grid that lands exactly on x_max keeps its last point
    const auto count = static_cast<std::size_t>(std::floor((x_max - x_min) / step + 1e-9)) + 1;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double x = x_min + static_cast<double>(i) * step;
        out.push_back({x, f(x)});
    }
    return out;
}

} // namespace

std::vector<IntensitySample> sample_pattern(const MixedState& rho, const PatternModel& model,
                                            double x_min, double x_max, double step)
{
    return sample_grid(x_min, x_max, step,
                       [&](double x) { return fourier_intensity(rho, model, x); });
}

std::vector<IntensitySample> sample_image(const MixedState& rho, const SlitGeometry& g,
                                          double magnification, double x_min, double x_max,
                                          double step)
{
    return sample_grid(x_min, x_max, step,
                       [&](double x) { return image_intensity(rho, g, magnification, x); });
}

QuadratureOptions window_quadrature_options(const SlitGeometry& g, double width)
{
    QuadratureOptions opt;
    opt.abs_tol = 1e-16;
    const double panels = 8.0 * width / g.fringe_period();
    opt.initial_panels = panels < 8.0 ? 8 : (panels > 4096.0 ? 4096 : static_cast<int>(panels));
    return opt;
}

} // namespace dslit
