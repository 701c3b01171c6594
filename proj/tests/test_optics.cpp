#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/optics.hpp"
#include "oracle.hpp"

using namespace dslit;

namespace {

SlitGeometry paper_geometry()
{
    const auto& g = oracle::paper_geometry();
    return {2.0 * g.a_half, 2.0 * g.d_half, g.lambda, g.focal};
}

// Quadrature over [-X, X] plus the analytic sinc^2 tail N/(alpha^2 X); the
// fringe term's tail is O(1/(beta X^2)) and far below 1e-6 at X = 1 m.
double full_plane_norm(const MixedState& rho, const PatternModel& model)
{
    const double X = 1.0;
    const double body = oracle::simpson_dense(
        [&](double x) { return fourier_intensity(rho, model, x); }, -X, X, 1 << 17);
    const auto& g = oracle::paper_geometry();
    const double alpha = g.q(1.0) * g.a_half;
    const double tail = g.norm() / (alpha * alpha * X);
    return body + tail;
}

} // namespace

TEST_CASE("focal-length calibration from the pattern crossing")
{
    const double f = calibrate_focal_length(0.11e-3, 250e-6, 650e-9);
    CHECK(f == doctest::Approx(0.16923076923076924).epsilon(1e-12));
    // linear in the crossing point
    CHECK(calibrate_focal_length(0.22e-3, 250e-6, 650e-9)
          == doctest::Approx(2.0 * f).epsilon(1e-12));
    CHECK_THROWS_AS(calibrate_focal_length(-1e-3, 250e-6, 650e-9), Error);
}

TEST_CASE("plus and minus patterns cross at the calibration point")
{
    const SlitGeometry g = paper_geometry();
    const PatternModel model(g, 1.0);
    const MixedState plus = MixedState::pure(QubitState::plus());
    const MixedState minus = MixedState::pure(QubitState::minus());

    const double ip = fourier_intensity(plus, model, 0.11e-3);
    const double im = fourier_intensity(minus, model, 0.11e-3);
    CHECK(ip == doctest::Approx(im).epsilon(1e-9));

    // round trip: the crossing recomputed from the calibrated f is 0.11 mm
    const double q_quarter = M_PI / (4.0 * g.half_separation());
    const double x_cross = q_quarter * g.wavelength * g.focal_length / (2.0 * M_PI);
    CHECK(std::abs(x_cross - 0.11e-3) <= 1e-9);
}

TEST_CASE("pattern extremes: destructive center for |->, maximum for |+>")
{
    const PatternModel model(paper_geometry(), 1.0);
    const MixedState minus = MixedState::pure(QubitState::minus());
    CHECK(fourier_intensity(minus, model, 0.0) <= 1e-12);

    const MixedState plus = MixedState::pure(QubitState::plus());
    const double at_zero = fourier_intensity(plus, model, 0.0);
    for (double x = -1e-3; x <= 1e-3; x += 10e-6)
        CHECK(fourier_intensity(plus, model, x) <= at_zero + 1e-12);
}

TEST_CASE("intensity matches the independently written formula")
{
    const PatternModel model(paper_geometry(), 0.73);
    oracle::Rand rnd(0x071c5);
    for (int i = 0; i < 50; ++i) {
        const QubitState psi = QubitState::normalized(
            {rnd.uniform(-1, 1), rnd.uniform(-1, 1)}, {rnd.uniform(-1, 1), rnd.uniform(-1, 1)});
        const MixedState rho = MixedState::pure(psi);
        const double x = rnd.uniform(-2e-3, 2e-3);
        const double expected = oracle::intensity(oracle::paper_geometry(), 0.73,
                                                  rho.rho00.real(), rho.rho11.real(), rho.rho01, x);
        CHECK(fourier_intensity(rho, model, x) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("full-plane normalization within 1e-6 for states and visibilities")
{
    const SlitGeometry g = paper_geometry();
    const MixedState states[] = {
        MixedState::pure(QubitState::plus()),
        MixedState::pure(QubitState::minus()),
        MixedState::pure(QubitState::zero()),
        MixedState::maximally_mixed(),
        MixedState({0.5, 0.0}, {0.0, -0.5}, {0.0, 0.5}, {0.5, 0.0}), // (|0>+i|1>)/sqrt(2)
    };
    for (const double v : {0.0, 0.37, 1.0})
        for (const auto& rho : states)
            CHECK(full_plane_norm(rho, PatternModel(g, v)) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("visibility identity on the envelope-normalized central fringe")
{
    const SlitGeometry g = paper_geometry();
    const MixedState plus = MixedState::pure(QubitState::plus());
    for (const double v : {0.05, 0.5, 0.84, 1.0}) {
        const PatternModel model(g, v);
        double rmax = 0.0;
        double rmin = 1e300;
        for (double x = -220e-6; x <= 220e-6; x += 1e-6) {
            const double r = fourier_intensity(plus, model, x) / envelope_density(g, x);
            rmax = std::max(rmax, r);
            rmin = std::min(rmin, r);
        }
        const double contrast = (rmax - rmin) / (rmax + rmin);
        CHECK(contrast == doctest::Approx(v).epsilon(1e-6));
    }
}

TEST_CASE("plus and minus patterns sum to twice the envelope")
{
    const SlitGeometry g = paper_geometry();
    const PatternModel model(g, 0.7);
    const MixedState plus = MixedState::pure(QubitState::plus());
    const MixedState minus = MixedState::pure(QubitState::minus());
    for (double x = -2e-3; x <= 2e-3; x += 37e-6) {
        const double sum = fourier_intensity(plus, model, x) + fourier_intensity(minus, model, x);
        CHECK(sum == doctest::Approx(2.0 * envelope_density(g, x)).epsilon(1e-9));
    }
}

TEST_CASE("image plane: two top-hats carrying the populations")
{
    const SlitGeometry g = paper_geometry();

    SUBCASE("|+> puts half the light in each peak")
    {
        const MixedState rho = MixedState::pure(QubitState::plus());
        const double peak = image_intensity(rho, g, 1.0, -g.half_separation());
        CHECK(peak * g.slit_width == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(image_intensity(rho, g, 1.0, g.half_separation()) * g.slit_width
              == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(image_intensity(rho, g, 1.0, 0.0) == 0.0); // gap between peaks
    }

    SUBCASE("|0> occupies only the negative peak")
    {
        const MixedState rho = MixedState::pure(QubitState::zero());
        CHECK(image_intensity(rho, g, 1.0, -g.half_separation()) * g.slit_width
              == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(image_intensity(rho, g, 1.0, g.half_separation()) == 0.0);
    }

    SUBCASE("oracle phases leave the image plane unchanged")
    {
        const MixedState before = MixedState::pure(QubitState::plus());
        const MixedState after =
            MixedState::pure(apply_map(oracle_unitary({0, 1}), QubitState::plus()).state);
        for (double x = -300e-6; x <= 300e-6; x += 5e-6)
            CHECK(image_intensity(after, g, 1.0, x)
                  == doctest::Approx(image_intensity(before, g, 1.0, x)).epsilon(1e-9));
    }

    SUBCASE("magnification moves and stretches the peaks")
    {
        const MixedState rho = MixedState::pure(QubitState::plus());
        const double m = 3.0;
        CHECK(image_intensity(rho, g, m, -m * g.half_separation()) * (m * g.slit_width)
              == doctest::Approx(0.5).epsilon(1e-12));
        CHECK_THROWS_AS(image_intensity(rho, g, 0.0, 0.0), Error);
    }
}

TEST_CASE("sample_pattern grids")
{
    const SlitGeometry g = paper_geometry();
    const PatternModel model(g, 1.0);

    SUBCASE("51 symmetric samples across +-1 mm at 40 um steps")
    {
        const auto samples =
            sample_pattern(MixedState::pure(QubitState::plus()), model, -1e-3, 1e-3, 40e-6);
        REQUIRE(samples.size() == 51);
        for (std::size_t i = 0; i < samples.size(); ++i) {
            CHECK(samples[i].value >= 0.0);
            CHECK(samples[i].value
                  == doctest::Approx(samples[samples.size() - 1 - i].value).epsilon(1e-9));
        }
    }

    SUBCASE("|-> grid contains an exact zero at the center")
    {
        const auto samples =
            sample_pattern(MixedState::pure(QubitState::minus()), model, -1e-3, 1e-3, 40e-6);
        CHECK(samples[25].x == doctest::Approx(0.0));
        CHECK(samples[25].value <= 1e-12);
    }

    SUBCASE("herald at the crossing shifts the pattern a quarter fringe")
    {
        // rho01 = e^{-i pi/2}/2: bracket becomes 1 + V sin(2 q d)
        const MixedState rho({0.5, 0.0}, {0.0, -0.5}, {0.0, 0.5}, {0.5, 0.0});
        const auto samples = sample_pattern(rho, model, -1e-3, 1e-3, 10e-6);
        const double at_zero = fourier_intensity(rho, model, 0.0);
        const double at_crossing = fourier_intensity(rho, model, 0.11e-3);
        CHECK(at_zero == doctest::Approx(envelope_density(g, 0.0)).epsilon(1e-9));
        CHECK(at_crossing == doctest::Approx(2.0 * envelope_density(g, 0.11e-3)).epsilon(1e-9));
        // the sampled maximum sits at +110 um instead of 0
        double best_x = 0.0;
        double best_v = 0.0;
        for (const auto& s : samples)
            if (s.value > best_v) {
                best_v = s.value;
                best_x = s.x;
            }
        CHECK(best_x == doctest::Approx(0.11e-3).epsilon(0.1));
    }

    SUBCASE("empty grids are rejected")
    {
        const MixedState rho = MixedState::pure(QubitState::plus());
        CHECK_THROWS_AS(sample_pattern(rho, model, 1e-3, -1e-3, 40e-6), Error);
        CHECK_THROWS_AS(sample_pattern(rho, model, -1e-3, 1e-3, 0.0), Error);
    }
}
