#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "core/biphoton.hpp"
#include "core/optics.hpp"
#include "oracle.hpp"

using namespace dslit;

namespace {

SlitGeometry paper_geometry()
{
    const auto& g = oracle::paper_geometry();
    return {2.0 * g.a_half, 2.0 * g.d_half, g.lambda, g.focal};
}

double oracle_purity(double center, double width)
{
    const auto& g = oracle::paper_geometry();
    const double w = oracle::window_envelope(g, center, width);
    const double c = oracle::window_cosine(g, center, width);
    const double s = oracle::simpson_dense(
        [&](double x) { return oracle::envelope(g, x) * std::sin(2.0 * g.q(x) * g.d_half); },
        center - 0.5 * width, center + 0.5 * width);
    const std::complex<double> rho01(c / (2.0 * w), -s / (2.0 * w));
    return 0.5 + 2.0 * std::norm(rho01);
}

} // namespace

TEST_CASE("herald phase is linear, odd, and pi/2 at the crossing")
{
    const SlitGeometry g = paper_geometry();
    CHECK(herald_phase(0.0, g) == 0.0);
    CHECK(herald_phase(0.11e-3, g) == doctest::Approx(M_PI / 2.0).epsilon(1e-12));
    for (double x = -3e-4; x <= 3e-4; x += 7e-5)
        CHECK(herald_phase(-x, g) == doctest::Approx(-herald_phase(x, g)).epsilon(1e-12));
    // linearity
    CHECK(herald_phase(2.0 * 0.11e-3, g) == doctest::Approx(M_PI).epsilon(1e-12));
}

TEST_CASE("conditional states carry the herald phase on |1>")
{
    const SlitGeometry g = paper_geometry();

    const QubitState at_center = conditional_signal_state(0.0, g);
    CHECK(std::abs(std::abs(overlap(QubitState::plus(), at_center)) - 1.0) <= kAlgebraTol);

    // crossing point gives (|0> + i|1>)/sqrt(2)
    const QubitState at_cross = conditional_signal_state(0.11e-3, g);
    CHECK(at_cross.alpha.real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(at_cross.beta.imag() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(std::abs(at_cross.beta.real()) <= 1e-12);

    // half a fringe period away the state is |->
    const double half_fringe = 0.5 * g.fringe_period();
    const QubitState at_half = conditional_signal_state(half_fringe, g);
    CHECK(std::abs(std::abs(overlap(QubitState::minus(), at_half)) - 1.0) <= 1e-12);

    // populations are always balanced; only the relative phase moves
    oracle::Rand rnd(0xb1f0);
    for (int i = 0; i < 100; ++i) {
        const QubitState psi = conditional_signal_state(rnd.uniform(-5e-3, 5e-3), g);
        CHECK(std::abs(psi.alpha) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
        CHECK(std::abs(psi.beta) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    }
}

TEST_CASE("heralded mixed state: point limit, dephasing, fixed diagonal")
{
    const PatternModel model(paper_geometry(), 1.0);

    SUBCASE("width 0 reproduces the pure conditional projector")
    {
        const MixedState rho = heralded_mixed_state({0.0, 0.0}, model);
        CHECK(rho.purity() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(rho.rho01.real() == doctest::Approx(0.5).epsilon(1e-12));
    }

    SUBCASE("narrow windows converge to the point limit")
    {
        const MixedState rho = heralded_mixed_state({0.11e-3, 1e-9}, model);
        const MixedState point =
            MixedState::pure(conditional_signal_state(0.11e-3, model.geometry));
        CHECK(std::abs(rho.rho01 - point.rho01) <= 1e-9);
        CHECK(rho.purity() == doctest::Approx(1.0).epsilon(1e-9));
    }

    SUBCASE("100 um window: frozen oracle purity 0.92074")
    {
        const MixedState rho = heralded_mixed_state({0.0, 100e-6}, model);
        CHECK(rho.purity() == doctest::Approx(0.9207402953034631).epsilon(1e-6));
        CHECK(rho.purity() == doctest::Approx(oracle_purity(0.0, 100e-6)).epsilon(1e-9));
        CHECK(rho.rho00.real() == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(rho.rho11.real() == doctest::Approx(0.5).epsilon(1e-9));
    }

    SUBCASE("purity decreases monotonically with window width")
    {
        double previous = 1.0 + 1e-12;
        for (const double width : {10e-6, 25e-6, 50e-6, 100e-6, 200e-6, 400e-6, 800e-6, 2e-3}) {
            const MixedState rho = heralded_mixed_state({0.0, width}, model);
            CHECK(rho.purity() < previous);
            CHECK(rho.purity() >= 0.5 - 1e-12);
            CHECK(rho.rho00.real() == doctest::Approx(0.5).epsilon(1e-9));
            previous = rho.purity();
        }
    }

    SUBCASE("wide windows suppress the coherence below the diagonal")
    {
        const MixedState rho = heralded_mixed_state({0.0, 10e-3}, model);
        CHECK(std::abs(rho.rho01) < 0.45);
        CHECK(std::abs(rho.rho01) < rho.rho00.real());
    }

    SUBCASE("off-center windows match the oracle")
    {
        for (const double center : {-0.2e-3, 0.11e-3, 0.3e-3}) {
            const MixedState rho = heralded_mixed_state({center, 80e-6}, model);
            CHECK(rho.purity() == doctest::Approx(oracle_purity(center, 80e-6)).epsilon(1e-9));
        }
    }

    SUBCASE("a window outside all light yields no heralds")
    {
        CHECK_THROWS_AS(heralded_mixed_state({1e200, 0.0}, model), Error);
        CHECK_THROWS_AS(heralded_mixed_state({1e200, 1e-6}, model), Error);
    }
}

TEST_CASE("oracle application and idler projection commute")
{
    const PatternModel model(paper_geometry(), 1.0);
    const OracleFunction functions[4] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};

    // 5 centers x 4 widths = 20 windows, all four oracles
    int checked = 0;
    for (const double center : {-200e-6, -100e-6, 0.0, 100e-6, 200e-6}) {
        for (const double width : {0.0, 25e-6, 100e-6, 250e-6}) {
            for (const auto& f : functions) {
                CHECK(verify_commutation(f, {center, width}, model, 1e-9));
                ++checked;
            }
        }
    }
    CHECK(checked == 80);
}

TEST_CASE("herald window validation")
{
    CHECK_THROWS_AS(HeraldWindow(0.0, -1e-6), Error);
    CHECK_NOTHROW(HeraldWindow(-1e-3, 0.0));
}
