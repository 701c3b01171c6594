#pragma once

#include <cmath>
#include <cstddef>

namespace dslit {

// Adaptive Simpson integration with a relative tolerance and a hard cap on
// interval subdivisions. All window/normalization integrals in the project
// run through here so probabilities stay mutually consistent.
struct QuadratureOptions {
    double rel_tol = 1e-9;
    double abs_tol = 0.0; // floor; keeps rounding-noise integrands from running to the cap
    std::size_t max_subdivisions = 1'000'000;
    int initial_panels = 8; // pre-split guards against symmetric-oscillation aliasing
};

namespace detail {

inline double simpson(double fa, double fm, double fb, double h)
{
    return (fa + 4.0 * fm + fb) * (h / 6.0);
}

template <typename F>
double simpson_adaptive(const F& f, double a, double m, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth, std::size_t& subdivisions,
                        std::size_t cap)
{
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double err = left + right - whole;
    if (depth <= 0 || subdivisions >= cap || std::abs(err) <= 15.0 * tol)
        return left + right + err / 15.0;
    ++subdivisions;
    return simpson_adaptive(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1, subdivisions, cap)
        + simpson_adaptive(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1, subdivisions, cap);
}

} // namespace detail

template <typename F>
double integrate(const F& f, double a, double b, const QuadratureOptions& opt = {})
{
    if (a == b)
        return 0.0;

    // Coarse pass to fix the tolerance scale. The scale is the L1 sum of the
    // panel estimates, so odd integrands over symmetric windows (signed total
    // near zero) do not drive the refinement into the subdivision cap.
    const int panels = opt.initial_panels < 1 ? 1 : opt.initial_panels;
    const double h = (b - a) / panels;
    double scale = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double x0 = a + i * h;
        scale += std::abs(detail::simpson(f(x0), f(x0 + 0.5 * h), f(x0 + h), h));
    }
    if (scale < 1e-300 && opt.abs_tol == 0.0)
        scale = 1.0; // absolute fallback for identically vanishing integrands

    const double tol_per_panel = std::max(opt.rel_tol * scale, opt.abs_tol) / panels;
    std::size_t subdivisions = 0;
    double total = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double x0 = a + i * h;
        const double x1 = x0 + h;
        const double xm = 0.5 * (x0 + x1);
        const double fa = f(x0);
        const double fm = f(xm);
        const double fb = f(x1);
        const double whole = detail::simpson(fa, fm, fb, h);
        total += detail::simpson_adaptive(f, x0, xm, x1, fa, fm, fb, whole, tol_per_panel,
                                          /*depth=*/48, subdivisions, opt.max_subdivisions);
    }
    return total;
}

} // namespace dslit
