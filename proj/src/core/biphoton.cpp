#include "biphoton.hpp"

#include <cmath>
#include <numbers>

#include "optics.hpp"
#include "quadrature.hpp"

namespace dslit {

HeraldWindow::HeraldWindow(double c, double w) : center(c), width(w)
{
    if (!(w >= 0.0) || !std::isfinite(w) || !std::isfinite(c))
        fail(Errc::invalid_argument, "herald window needs finite center and width >= 0");
}

double herald_phase(double x_i, const SlitGeometry& g)
{
    return 2.0 * std::numbers::pi * g.slit_separation * x_i / (g.wavelength * g.focal_length);
}

QubitState conditional_signal_state(double x_i, const SlitGeometry& g)
{
    const double s = 1.0 / std::sqrt(2.0);
    return {{s, 0.0}, std::polar(s, herald_phase(x_i, g))};
}

MixedState heralded_mixed_state(const HeraldWindow& w, const PatternModel& model)
{
    const SlitGeometry& g = model.geometry;
    if (w.width == 0.0) {
        if (envelope_density(g, w.center) <= 0.0)
            fail(Errc::domain, "no heralds: point detector sits on an envelope zero");
        return MixedState::pure(conditional_signal_state(w.center, g));
    }

    const double lo = w.center - 0.5 * w.width;
    const double hi = w.center + 0.5 * w.width;
    const QuadratureOptions opt = window_quadrature_options(g, w.width);
    const double weight = integrate([&](double x) { return envelope_density(g, x); }, lo, hi, opt);
    if (!(weight > 0.0))
        fail(Errc::domain, "no heralds: window carries zero idler intensity");
    // rho01 of the averaged projector: <e^{-i phi}>/2 under the envelope weight.
    const double re = integrate(
        [&](double x) { return envelope_density(g, x) * std::cos(herald_phase(x, g)); }, lo, hi, opt);
    const double im = integrate(
        [&](double x) { return envelope_density(g, x) * std::sin(herald_phase(x, g)); }, lo, hi, opt);
    const Complex coherence = Complex(re, -im) / (2.0 * weight);
    return {{0.5, 0.0}, coherence, std::conj(coherence), {0.5, 0.0}};
}

bool verify_commutation(const OracleFunction& f, const HeraldWindow& w, const PatternModel& model,
                        double tol)
{
    const DiagonalMap u = oracle_unitary(f);

    // herald first, then the oracle on the heralded mixed state
    const MixedState herald_then_oracle = apply_map(u, heralded_mixed_state(w, model)).state;

    // oracle on the signal half of psi+ first, then project the idler:
    // the integrand becomes the oracle-evolved conditional projector.
    const SlitGeometry& g = model.geometry;
    MixedState oracle_then_herald = MixedState::maximally_mixed();
    if (w.width == 0.0) {
        oracle_then_herald =
            MixedState::pure(apply_map(u, conditional_signal_state(w.center, g)).state);
    } else {
        const double lo = w.center - 0.5 * w.width;
        const double hi = w.center + 0.5 * w.width;
        const QuadratureOptions opt = window_quadrature_options(g, w.width);
        const double weight =
            integrate([&](double x) { return envelope_density(g, x); }, lo, hi, opt);
        if (!(weight > 0.0))
            fail(Errc::domain, "no heralds: window carries zero idler intensity");
        // oracle-evolved conditional amplitudes (m is unitary, survival 1)
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        auto amplitude = [&](double x, int k) -> Complex {
            return k == 0 ? u.m0 * inv_sqrt2
                          : u.m1 * std::polar(inv_sqrt2, herald_phase(x, g));
        };
        auto entry = [&](int row, int col) {
            auto projector = [&](double x) {
                return envelope_density(g, x) * amplitude(x, row) * std::conj(amplitude(x, col));
            };
            return Complex(integrate([&](double x) { return projector(x).real(); }, lo, hi, opt),
                           integrate([&](double x) { return projector(x).imag(); }, lo, hi, opt))
                / weight;
        };
        oracle_then_herald = MixedState(entry(0, 0), entry(0, 1), entry(1, 0), entry(1, 1));
    }

    const auto close = [tol](Complex a, Complex b) { return std::abs(a - b) <= tol; };
    return close(herald_then_oracle.rho00, oracle_then_herald.rho00)
        && close(herald_then_oracle.rho01, oracle_then_herald.rho01)
        && close(herald_then_oracle.rho10, oracle_then_herald.rho10)
        && close(herald_then_oracle.rho11, oracle_then_herald.rho11);
}

} // namespace dslit
