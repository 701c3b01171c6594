#include "fitting.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace dslit {

namespace {

constexpr int kMaxIterations = 200;
constexpr double kStepTol = 1e-10;
constexpr int kPhaseSeeds = 64;

struct Point {
    double x;
    double y;
    double phase_offset; // 0 for the reference pattern, delta_phi slot otherwise
    bool shifted;
};

double sinc_derivative(double u)
{
    if (std::abs(u) < 1e-4)
        return -u / 3.0 + u * u * u / 30.0;
    return (std::cos(u) - std::sin(u) / u) / u;
}

// Model and its Jacobian row for parameters (A, V, x0, dphi).
struct Eval {
    double value;
    std::array<double, 4> jac;
};

Eval evaluate(const Point& p, double a_amp, double vis, double x0, double dphi, double alpha,
              double beta)
{
    const double u = alpha * (p.x - x0);
    const double sc = sinc(u);
    const double env = sc * sc;
    const double arg = beta * (p.x - x0) + (p.shifted ? dphi : 0.0);
    const double c = std::cos(arg);
    const double s = std::sin(arg);
    const double bracket = 1.0 + vis * c;

    Eval e{};
    e.value = a_amp * env * bracket;
    e.jac[0] = env * bracket;                                      // d/dA
    e.jac[1] = a_amp * env * c;                                    // d/dV
    const double denv = 2.0 * sc * sinc_derivative(u) * (-alpha);  // d env / d x0
    e.jac[2] = a_amp * (denv * bracket + env * vis * s * beta);    // d/dx0
    e.jac[3] = p.shifted ? -a_amp * env * vis * s : 0.0;           // d/d dphi
    return e;
}

double sum_squares(const std::vector<Point>& pts, double a_amp, double vis, double x0, double dphi,
                   double alpha, double beta)
{
    double sse = 0.0;
    for (const Point& p : pts) {
        const double r = evaluate(p, a_amp, vis, x0, dphi, alpha, beta).value - p.y;
        sse += r * r;
    }
    return sse;
}

// Solves the 4x4 system M x = b in place; returns false when singular.
bool solve4(std::array<std::array<double, 4>, 4>& m, std::array<double, 4>& b,
            std::array<double, 4>& x)
{
    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        for (int row = col + 1; row < 4; ++row)
            if (std::abs(m[row][col]) > std::abs(m[pivot][col]))
                pivot = row;
        if (std::abs(m[pivot][col]) < 1e-300)
            return false;
        std::swap(m[col], m[pivot]);
        std::swap(b[col], b[pivot]);
        for (int row = col + 1; row < 4; ++row) {
            const double f = m[row][col] / m[col][col];
            for (int k = col; k < 4; ++k)
                m[row][k] -= f * m[col][k];
            b[row] -= f * b[col];
        }
    }
    for (int row = 3; row >= 0; --row) {
        double acc = b[row];
        for (int k = row + 1; k < 4; ++k)
            acc -= m[row][k] * x[k];
        x[row] = acc / m[row][row];
    }
    return true;
}

void validate_input(std::span<const IntensitySample> samples, const SlitGeometry& g,
                    const char* which)
{
    if (samples.size() < 8)
        fail(Errc::invalid_argument, std::string(which) + " pattern needs at least 8 samples");
    auto [lo, hi] = std::minmax_element(samples.begin(), samples.end(),
                                        [](auto& a, auto& b) { return a.x < b.x; });
    if (hi->x - lo->x < g.fringe_period())
        fail(Errc::invalid_argument,
             std::string(which) + " pattern must span at least one fringe period");
    const auto [ymin, ymax] = std::minmax_element(
        samples.begin(), samples.end(), [](auto& a, auto& b) { return a.value < b.value; });
    const double spread = ymax->value - ymin->value;
    if (!(spread > 1e-12 * std::max(std::abs(ymax->value), 1.0)))
        fail(Errc::domain, std::string(which) + " pattern has no fringes (all samples equal)");
}

} // namespace

FitResult fit_pattern_pair(std::span<const IntensitySample> reference,
                           std::span<const IntensitySample> shifted, const SlitGeometry& g)
{
    validate_input(reference, g, "reference");
    validate_input(shifted, g, "shifted");

    const double alpha = g.wavenumber(1.0) * g.half_width();      // q a per meter
    const double beta = 2.0 * g.wavenumber(1.0) * g.half_separation(); // 2 q d per meter

    std::vector<Point> pts;
    pts.reserve(reference.size() + shifted.size());
    for (const auto& s : reference)
        pts.push_back({s.x, s.value, 0.0, false});
    for (const auto& s : shifted)
        pts.push_back({s.x, s.value, 0.0, true});

    double y_peak = 0.0;
    for (const Point& p : pts)
        y_peak = std::max(y_peak, std::abs(p.y));
    if (!(y_peak > 0.0))
        fail(Errc::domain, "patterns carry no intensity");

    // Phase grid seed: for each candidate dphi solve the linear pair
    // (A, A V) by least squares with x0 = 0, keep the best.
    double best_sse = std::numeric_limits<double>::infinity();
    double seed_a = y_peak / 1.5;
    double seed_v = 0.5;
    double seed_phi = 0.0;
    for (int j = 0; j < kPhaseSeeds; ++j) {
        const double phi = 2.0 * std::numbers::pi * j / kPhaseSeeds;
        // basis: g1 = env, g2 = env * cos(arg)
        double s11 = 0.0, s12 = 0.0, s22 = 0.0, b1 = 0.0, b2 = 0.0;
        for (const Point& p : pts) {
            const double u = alpha * p.x;
            const double env = sinc(u) * sinc(u);
            const double arg = beta * p.x + (p.shifted ? phi : 0.0);
            const double g1 = env;
            const double g2 = env * std::cos(arg);
            s11 += g1 * g1;
            s12 += g1 * g2;
            s22 += g2 * g2;
            b1 += g1 * p.y;
            b2 += g2 * p.y;
        }
        const double det = s11 * s22 - s12 * s12;
        if (std::abs(det) < 1e-300)
            continue;
        const double ca = (b1 * s22 - b2 * s12) / det;  // A
        const double cb = (s11 * b2 - s12 * b1) / det;  // A V
        if (!(ca > 0.0))
            continue;
        const double v = std::clamp(cb / ca, 0.0, 1.0);
        const double sse = sum_squares(pts, ca, v, 0.0, phi, alpha, beta);
        if (sse < best_sse) {
            best_sse = sse;
            seed_a = ca;
            seed_v = v;
            seed_phi = phi;
        }
    }

    double a_amp = seed_a;
    double vis = seed_v;
    double x0 = 0.0;
    double dphi = seed_phi;
    double sse = best_sse;
    double lambda = 1e-6;
    const double x_scale = std::max(std::abs(pts.front().x), std::abs(pts.back().x));

    bool converged = false;
    for (int iter = 0; iter < kMaxIterations && !converged; ++iter) {
        std::array<std::array<double, 4>, 4> jtj{};
        std::array<double, 4> jtr{};
        for (const Point& p : pts) {
            const Eval e = evaluate(p, a_amp, vis, x0, dphi, alpha, beta);
            const double r = e.value - p.y;
            for (int i = 0; i < 4; ++i) {
                jtr[i] += e.jac[i] * r;
                for (int k = i; k < 4; ++k)
                    jtj[i][k] += e.jac[i] * e.jac[k];
            }
        }
        for (int i = 0; i < 4; ++i)
            for (int k = 0; k < i; ++k)
                jtj[i][k] = jtj[k][i];

        bool stepped = false;
        for (int attempt = 0; attempt < 12 && !stepped; ++attempt) {
            auto m = jtj;
            for (int i = 0; i < 4; ++i)
                m[i][i] += lambda * std::max(jtj[i][i], 1e-30);
            std::array<double, 4> rhs{-jtr[0], -jtr[1], -jtr[2], -jtr[3]};
            std::array<double, 4> step{};
            if (!solve4(m, rhs, step)) {
                lambda *= 10.0;
                continue;
            }
            const double na = a_amp + step[0];
            const double nv = vis + step[1];
            const double nx = x0 + step[2];
            const double np = dphi + step[3];
            const double nsse = sum_squares(pts, na, nv, nx, np, alpha, beta);
            if (nsse <= sse) {
                // relative parameter step, used as the convergence measure
                const double rel = std::max(
                    {std::abs(step[0]) / std::max(std::abs(a_amp), 1e-30),
                     std::abs(step[1]), std::abs(step[2]) / std::max(x_scale, 1e-30),
                     std::abs(step[3])});
                a_amp = na;
                vis = nv;
                x0 = nx;
                dphi = np;
                sse = nsse;
                lambda = std::max(lambda / 3.0, 1e-12);
                stepped = true;
                if (rel < kStepTol)
                    converged = true;
            } else {
                lambda *= 10.0;
            }
        }
        if (!stepped)
            converged = true; // no productive step left at any damping: local minimum
    }
    if (!converged)
        fail(Errc::no_convergence, "fit failed: no convergence within the iteration cap");

    const double two_pi = 2.0 * std::numbers::pi;
    dphi = std::fmod(dphi, two_pi);
    if (dphi < 0.0)
        dphi += two_pi;
    vis = std::clamp(vis, 0.0, 1.0);

    FitResult out{};
    out.amplitude = a_amp;
    out.visibility = vis;
    out.delta_phi = dphi;
    out.center_offset = x0;
    out.residual_rms = std::sqrt(sse / static_cast<double>(pts.size()));
    return out;
}

std::pair<double, double> peak_areas(std::span<const IntensitySample> samples, double boundary)
{
    if (samples.size() < 2)
        fail(Errc::invalid_argument, "need at least two samples for areas");
    for (std::size_t i = 1; i < samples.size(); ++i)
        if (!(samples[i].x > samples[i - 1].x))
            fail(Errc::invalid_argument, "samples must be sorted by x");

    const double first = samples.front().x;
    const double last = samples.back().x;
    if (boundary < first || boundary > last)
        fail(Errc::domain, "empty side: boundary lies outside the sampled range");

    double left = 0.0;
    double right = 0.0;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        const auto& a = samples[i - 1];
        const auto& b = samples[i];
        const double dx = b.x - a.x;
        if (b.x <= boundary) {
            left += 0.5 * (a.value + b.value) * dx;
        } else if (a.x >= boundary) {
            right += 0.5 * (a.value + b.value) * dx;
        } else {
            // split the straddling trapezoid at the boundary
            const double t = (boundary - a.x) / dx;
            const double yb = a.value + t * (b.value - a.value);
            left += 0.5 * (a.value + yb) * (boundary - a.x);
            right += 0.5 * (yb + b.value) * (b.x - boundary);
        }
    }
    return {left, right};
}

} // namespace dslit
