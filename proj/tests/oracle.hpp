// Test-side oracles, kept independent of the library code paths they check:
// a dense fixed-grid composite Simpson rule and the double-slit intensity
// written out from scratch.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>

namespace oracle {

// Composite Simpson on 2^k uniform panels; no adaptivity, no shared code
// with the implementation's integrator.
inline double simpson_dense(const std::function<double(double)>& f, double a, double b,
                            int panels = 1 << 14)
{
    const double h = (b - a) / panels;
    double odd = 0.0;
    double even = 0.0;
    for (int i = 1; i < panels; i += 2)
        odd += f(a + i * h);
    for (int i = 2; i < panels; i += 2)
        even += f(a + i * h);
    return (f(a) + f(b) + 4.0 * odd + 2.0 * even) * h / 3.0;
}

struct Geometry {
    double a_half;   // slit half-width
    double d_half;   // slit half-separation
    double lambda;
    double focal;

    double q(double x) const { return 2.0 * M_PI * x / (lambda * focal); }
    double norm() const { return 2.0 * a_half / (lambda * focal); }
};

inline const Geometry& paper_geometry()
{
    // 2a = 100 um, 2d = 250 um, lambda = 650 nm, f from the 0.11 mm crossing
    static const Geometry g{50e-6, 125e-6, 650e-9, 8.0 * 125e-6 * 0.11e-3 / 650e-9};
    return g;
}

inline double sinc(double u)
{
    return u == 0.0 ? 1.0 : std::sin(u) / u;
}

inline double envelope(const Geometry& g, double x)
{
    const double s = sinc(g.q(x) * g.a_half);
    return g.norm() * s * s;
}

// Intensity for density-matrix entries (p0, p1 real diagonal, c = rho01).
inline double intensity(const Geometry& g, double visibility, double p0, double p1,
                        std::complex<double> c, double x)
{
    const std::complex<double> fringe = std::polar(1.0, 2.0 * g.q(x) * g.d_half);
    return envelope(g, x) * (p0 + p1 + 2.0 * visibility * (c * fringe).real());
}

// eta-free window area for the |+>/|-> family at visibility V:  W +- V*C.
inline double window_envelope(const Geometry& g, double center, double width)
{
    return simpson_dense([&](double x) { return envelope(g, x); }, center - 0.5 * width,
                         center + 0.5 * width);
}

inline double window_cosine(const Geometry& g, double center, double width)
{
    return simpson_dense(
        [&](double x) { return envelope(g, x) * std::cos(2.0 * g.q(x) * g.d_half); },
        center - 0.5 * width, center + 0.5 * width);
}

// Minimal deterministic generator for property-style tests.
class Rand {
public:
    explicit Rand(std::uint64_t seed) : state_(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0)
    {
        state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
        const double u = static_cast<double>(state_ >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }

private:
    std::uint64_t state_;
};

} // namespace oracle
