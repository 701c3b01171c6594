#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/inference.hpp"
#include "core/montecarlo.hpp"
#include "core/rng.hpp"
#include "oracle.hpp"

using namespace dslit;

namespace {

SlitGeometry paper_geometry()
{
    const auto& g = oracle::paper_geometry();
    return {2.0 * g.a_half, 2.0 * g.d_half, g.lambda, g.focal};
}

} // namespace

TEST_CASE("splitmix substreams are deterministic and index-independent")
{
    SplitMix64 a = substream(42, 7);
    SplitMix64 b = substream(42, 7);
    CHECK(a.next() == b.next());
    CHECK(a.next_double() == b.next_double());

    SplitMix64 c = substream(42, 8);
    SplitMix64 d = substream(43, 7);
    SplitMix64 e = substream(42, 7);
    const std::uint64_t first = e.next();
    CHECK(c.next() != first);
    CHECK(d.next() != first);
}

TEST_CASE("exact Poisson sampler has the right first two moments")
{
    for (const double mean : {0.5, 12.0, 450.0, 31245.0}) {
        SplitMix64 rng(0xAB5EED);
        const int draws = mean > 1000.0 ? 400 : 4000;
        double sum = 0.0;
        double sum2 = 0.0;
        for (int i = 0; i < draws; ++i) {
            const double k = static_cast<double>(sample_poisson(rng, mean));
            sum += k;
            sum2 += k * k;
        }
        const double m = sum / draws;
        const double var = sum2 / draws - m * m;
        // mean within 5 sigma of the sample mean, variance within 25%
        CHECK(std::abs(m - mean) <= 5.0 * std::sqrt(mean / draws));
        CHECK(var == doctest::Approx(mean).epsilon(0.25));
    }
    SplitMix64 rng(1);
    CHECK(sample_poisson(rng, 0.0) == 0);
    CHECK(sample_poisson(rng, -3.0) == 0);
}

TEST_CASE("simulate_coincidences")
{
    const PatternModel model(paper_geometry(), 1.0);
    const DetectorConfig det(0.0, 100e-6, 1.0);

    SUBCASE("identical configs give identical counts")
    {
        const RunConfig cfg({0, 0}, model, det, 31.2447, 1000.0, 12345);
        const CountResult a = simulate_coincidences(cfg);
        const CountResult b = simulate_coincidences(cfg);
        CHECK(a.coincidences == b.coincidences);
        CHECK(a.expected == b.expected);
        const RunConfig other({0, 0}, model, det, 31.2447, 1000.0, 12346);
        CHECK(simulate_coincidences(other).coincidences != a.coincidences);
    }

    SUBCASE("closed detector records nothing")
    {
        const RunConfig cfg({0, 0}, model, {0.0, 0.0, 1.0}, 31.2447, 1000.0, 7);
        const CountResult r = simulate_coincidences(cfg);
        CHECK(r.coincidences == 0);
        CHECK(r.expected == 0.0);
        CHECK(r.std_error == 0.0);
    }

    SUBCASE("std_error is the Poisson square root of the expectation")
    {
        const RunConfig cfg({0, 1}, model, det, 31.2447, 1000.0, 99);
        const CountResult r = simulate_coincidences(cfg);
        CHECK(r.std_error == doctest::Approx(std::sqrt(r.expected)).epsilon(1e-12));
    }

    SUBCASE("counts track the expectation within Poisson scatter")
    {
        const RunConfig cfg({1, 1}, model, det, 31.2447, 1000.0, 2026);
        const CountResult r = simulate_coincidences(cfg);
        CHECK(std::abs(static_cast<double>(r.coincidences) - r.expected) <= 4.0 * r.std_error);
    }

    SUBCASE("invalid run parameters are rejected")
    {
        CHECK_THROWS_AS(RunConfig({0, 0}, model, det, 0.0, 1000.0, 1), Error);
        CHECK_THROWS_AS(RunConfig({0, 0}, model, det, 10.0, -1.0, 1), Error);
    }
}

TEST_CASE("table calibration inverts the measured count pair")
{
    const SlitGeometry g = paper_geometry();
    const DetectorConfig det(0.0, 100e-6, 1.0);

    SUBCASE("paper counts 5218/450: frozen oracle values")
    {
        const TableCalibration cal = calibrate_to_table(5218.0, 450.0, 1000.0, det, g);
        CHECK(cal.visibility == doctest::Approx(0.91703171048634).epsilon(1e-6));
        CHECK(cal.herald_rate == doctest::Approx(31.244677242103023).epsilon(1e-6));

        // the defining property: the ratio is reproduced within 1e-6
        const ProbabilityTable t = detection_probabilities({g, cal.visibility}, det);
        CHECK(t.p_b / t.p_c == doctest::Approx(450.0 / 5218.0).epsilon(1e-6));
        // and the constant-row mean is matched exactly
        CHECK(cal.herald_rate * 1000.0 * t.p_c == doctest::Approx(5218.0).epsilon(1e-9));
        CHECK(cal.herald_rate * 1000.0 * t.p_b == doctest::Approx(450.0).epsilon(1e-6));
    }

    SUBCASE("equal counts mean zero visibility")
    {
        const TableCalibration cal = calibrate_to_table(1000.0, 1000.0, 10.0, det, g);
        CHECK(cal.visibility == 0.0);
    }

    SUBCASE("counts in the exact V = 1 ratio give V = 1")
    {
        const ProbabilityTable ideal = detection_probabilities({g, 1.0}, det);
        const TableCalibration cal =
            calibrate_to_table(1e6 * ideal.p_c, 1e6 * ideal.p_b, 1000.0, det, g);
        CHECK(cal.visibility == doctest::Approx(1.0).epsilon(1e-9));
    }

    SUBCASE("ratios below the V = 1 floor are inconsistent with the geometry")
    {
        CHECK_THROWS_AS(calibrate_to_table(1e6, 100.0, 1000.0, det, g), Error);
        CHECK_THROWS_AS(calibrate_to_table(100.0, 200.0, 1000.0, det, g), Error);
        CHECK_THROWS_AS(calibrate_to_table(5218.0, 450.0, 1000.0, {0.0, 100e-6, 0.0}, g), Error);
    }

    SUBCASE("efficiency rescales the herald rate, not the visibility")
    {
        const TableCalibration full = calibrate_to_table(5218.0, 450.0, 1000.0, det, g);
        const TableCalibration half =
            calibrate_to_table(5218.0, 450.0, 1000.0, {0.0, 100e-6, 0.5}, g);
        CHECK(half.visibility == doctest::Approx(full.visibility).epsilon(1e-9));
        CHECK(half.herald_rate == doctest::Approx(2.0 * full.herald_rate).epsilon(1e-9));
    }
}

TEST_CASE("calibrated simulation reproduces the measured rows")
{
    const SlitGeometry g = paper_geometry();
    const DetectorConfig det(0.0, 100e-6, 1.0);
    const TableCalibration cal = calibrate_to_table(5218.0, 450.0, 1000.0, det, g);
    const PatternModel model(g, cal.visibility);

    const CountResult constant_row =
        simulate_coincidences({{0, 0}, model, det, cal.herald_rate, 1000.0, 11});
    CHECK(constant_row.expected == doctest::Approx(5218.0).epsilon(1e-6));
    CHECK(std::abs(static_cast<double>(constant_row.coincidences) - 5218.0)
          <= 4.0 * constant_row.std_error);

    const CountResult balanced_row =
        simulate_coincidences({{0, 1}, model, det, cal.herald_rate, 1000.0, 11});
    CHECK(balanced_row.expected == doctest::Approx(450.0).epsilon(1e-6));
    CHECK(std::abs(static_cast<double>(balanced_row.coincidences) - 450.0)
          <= 4.0 * balanced_row.std_error);
}

TEST_CASE("single-shot game")
{
    const SlitGeometry g = paper_geometry();
    const DetectorConfig det(0.0, 100e-6, 1.0);

    SUBCASE("deterministic under a fixed seed")
    {
        const PatternModel model(g, 0.6);
        const double a = play_single_shot_game(20000, model, det, 1.0, 5);
        const double b = play_single_shot_game(20000, model, det, 1.0, 5);
        CHECK(a == b);
    }

    SUBCASE("eta = 0 is a fair coin")
    {
        const double freq = play_single_shot_game(100000, {g, 1.0}, det, 0.0, 31);
        CHECK(std::abs(freq - 0.5) <= 3.0 * 0.5 / std::sqrt(100000.0));
    }

    SUBCASE("frequency converges to the analytic success probability")
    {
        const PatternModel model(g, 1.0);
        const ProbabilityTable t = detection_probabilities(model, {0.0, 100e-6, 1.0});
        const double analytic = success_probability(t, 1.0);
        for (const std::uint64_t trials : {1000ULL, 10000ULL, 100000ULL}) {
            const double freq = play_single_shot_game(trials, model, det, 1.0, 77);
            const double sigma = std::sqrt(analytic * (1.0 - analytic) / trials);
            CHECK(std::abs(freq - analytic) <= 3.5 * sigma);
        }
    }

    SUBCASE("zero trials are rejected")
    {
        CHECK_THROWS_AS(play_single_shot_game(0, {g, 1.0}, det, 1.0, 1), Error);
    }
}
