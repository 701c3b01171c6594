#include "detection.hpp"

#include <cmath>

#include "optics.hpp"
#include "quadrature.hpp"

namespace dslit {

DetectorConfig::DetectorConfig(double c, double w, double eta)
    : center(c), width(w), efficiency(eta)
{
    if (!std::isfinite(c))
        fail(Errc::invalid_argument, "detector center must be finite");
    if (std::isnan(w) || w < 0.0)
        fail(Errc::invalid_argument, "detector width must be >= 0");
    if (!(eta >= 0.0 && eta <= 1.0))
        fail(Errc::invalid_argument, "detector efficiency must lie in [0, 1]");
}

bool DetectorConfig::full_plane() const
{
    return std::isinf(width);
}

double window_probability(const MixedState& rho, const PatternModel& model,
                          const DetectorConfig& det)
{
    if (det.width == 0.0)
        return 0.0;
    if (det.full_plane()) {
        // Full-plane analytic limit: the envelope integrates to 1 and the
        // fringe cross term vanishes (non-overlapping slits).
        return det.efficiency * (rho.rho00.real() + rho.rho11.real());
    }
    const double lo = det.center - 0.5 * det.width;
    const double hi = det.center + 0.5 * det.width;
    const double area = integrate([&](double x) { return fourier_intensity(rho, model, x); }, lo,
                                  hi, window_quadrature_options(model.geometry, det.width));
    return det.efficiency * area;
}

PovmElement povm_element(const PatternModel& model, const DetectorConfig& det)
{
    if (det.width == 0.0)
        return {{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}};
    const double eta = det.efficiency;
    if (det.full_plane())
        return {{eta, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {eta, 0.0}};

    const SlitGeometry& g = model.geometry;
    const double lo = det.center - 0.5 * det.width;
    const double hi = det.center + 0.5 * det.width;
    const QuadratureOptions opt = window_quadrature_options(g, det.width);
    const double w = integrate([&](double x) { return envelope_density(g, x); }, lo, hi, opt);
    const double c = integrate(
        [&](double x) {
            return envelope_density(g, x) * std::cos(2.0 * g.wavenumber(x) * g.half_separation());
        },
        lo, hi, opt);
    const double s = integrate(
        [&](double x) {
            return envelope_density(g, x) * std::sin(2.0 * g.wavenumber(x) * g.half_separation());
        },
        lo, hi, opt);
    // Tr(E rho) = eta [w (rho00 + rho11) + 2 V Re(rho01 (c + i s))]
    const Complex off = eta * model.visibility * Complex(c, -s);
    return {{eta * w, 0.0}, off, std::conj(off), {eta * w, 0.0}};
}

std::array<double, 2> PovmElement::eigenvalues() const
{
    const double tr = e00.real() + e11.real();
    const double diff = e00.real() - e11.real();
    const double disc = std::sqrt(diff * diff + 4.0 * std::norm(e01));
    return {0.5 * (tr - disc), 0.5 * (tr + disc)};
}

ProbabilityTable detection_probabilities(const PatternModel& model, const DetectorConfig& det)
{
    auto p_of = [&](int f0, int f1) {
        const MixedState rho = MixedState::pure(deutsch_output(OracleFunction(f0, f1)));
        return window_probability(rho, model, det);
    };
    ProbabilityTable t{};
    t.p00 = p_of(0, 0);
    t.p01 = p_of(0, 1);
    t.p10 = p_of(1, 0);
    t.p11 = p_of(1, 1);
    t.p_c = 0.5 * (t.p00 + t.p11);
    t.p_b = 0.5 * (t.p01 + t.p10);
    return t;
}

} // namespace dslit
