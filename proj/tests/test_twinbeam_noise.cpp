#include "catch_amalgamated.hpp"

#include <cmath>

#include "fwm/error.hpp"
#include "fwm/grid.hpp"
#include "fwm/twinbeam_noise.hpp"

using namespace fwm;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("dB conversions", "[noise]") {
    for (const double x : {1e-6, 0.2, 1.0, 3.7, 1e5}) CHECK_THAT(from_db(to_db(x)), WithinRel(x, 1e-12));
    CHECK(to_db(1.0) == 0.0);
    CHECK_THROWS_AS(to_db(0.0), DomainError);
    CHECK_THROWS_AS(to_db(-1.0), DomainError);
}

TEST_CASE("closed-form reference values", "[noise]") {
    CHECK_THAT(squeezing_with_loss(2.0, 1.0, 1.0), WithinRel(1.0 / 3.0, 1e-14));
    CHECK_THAT(squeezing_with_loss(2.0, 0.9, 0.9), WithinRel(0.4, 1e-14));
    CHECK_THAT(squeezing_with_loss(3.0, 0.7, 0.93), WithinRel(0.2866666666666667, 1e-14));
    CHECK_THAT(squeezing_with_loss(10.0, 0.5, 0.95), WithinRel(2.491143911439114, 1e-14));
    CHECK_THAT(squeezing_with_loss(1.5, 0.95, 0.2), WithinRel(1.5270491803278688, 1e-14));
    CHECK(squeezing_with_loss(1.0, 0.3, 0.8) == 1.0);
}

TEST_CASE("ideal and equal-loss identities", "[noise]") {
    for (const double g : {1.0, 1.5, 2.0, 5.0, 20.0}) CHECK_THAT(ideal_squeezing(g) * (2 * g - 1), WithinAbs(1.0, 1e-12));
    for (double g = 1.0; g <= 30.0; g += 0.73) {
        for (double eta = 0.05; eta <= 1.0; eta += 0.095) {
            const double expected = 1.0 - eta + eta / (2 * g - 1);
            CHECK_THAT(squeezing_with_loss(g, eta, eta), WithinAbs(expected, 1e-12));
            CHECK(squeezing_with_loss(g, eta, eta) > 1.0 - eta);
        }
    }
}

TEST_CASE("S decreases with gain at equal losses", "[noise]") {
    for (const double eta : {0.3, 0.8, 1.0}) {
        double prev = squeezing_with_loss(1.0, eta, eta);
        for (double g = 1.1; g < 50.0; g += 0.1) {
            const double s = squeezing_with_loss(g, eta, eta);
            CHECK(s < prev);
            prev = s;
        }
    }
}

TEST_CASE("domain errors", "[noise]") {
    CHECK_THROWS_AS(squeezing_with_loss(0.9, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(squeezing_with_loss(2.0, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(squeezing_with_loss(2.0, 1.0, 1.2), DomainError);
    CHECK_THROWS_AS(squeezing_with_loss(INFINITY, 1.0, 1.0), DomainError);
}

TEST_CASE("loss floor", "[noise]") {
    // Balanced losses: infimum 1 - eta approached only as G -> inf.
    const auto f = squeezing_floor(0.9, 0.9);
    CHECK_THAT(f.min_linear, WithinAbs(0.1, 1e-12));
    CHECK(std::isinf(f.at_gain));

    // Unbalanced: a finite optimum exists and no sample beats it.
    const auto u = squeezing_floor(0.73, 0.931);
    REQUIRE(std::isfinite(u.at_gain));
    CHECK_THAT(squeezing_with_loss(u.at_gain, 0.73, 0.931), WithinRel(u.min_linear, 1e-12));
    for (double g = 1.0; g < 100.0; g += 0.01) CHECK(squeezing_with_loss(g, 0.73, 0.931) >= u.min_linear * (1 - 1e-12));
}

TEST_CASE("infer_gain", "[noise]") {
    CHECK_THAT(infer_gain(-5.4, 0.73, 0.931), WithinRel(2.4788479844276703, 1e-9));
    CHECK_THAT(infer_gain(-3.5, 0.7, 0.931), WithinRel(1.585175112907163, 1e-9));
    CHECK_THAT(infer_gain(-1.0, 0.9, 0.9), WithinRel(1.1481084557632825, 1e-9));
    CHECK(infer_gain(0.0, 0.9, 0.9) == 1.0);

    // Round trip.
    const double g = infer_gain(-4.2, 0.8, 0.9);
    CHECK_THAT(to_db(squeezing_with_loss(g, 0.8, 0.9)), WithinAbs(-4.2, 1e-9));

    // Below the floor.
    try {
        infer_gain(-12.0, 0.9, 0.9);
        FAIL("expected UnreachableTargetError");
    } catch (const UnreachableTargetError& e) {
        CHECK_THAT(e.min_achievable(), WithinAbs(0.1, 1e-12));
    }
    CHECK_THROWS_AS(infer_gain(-9.0, 0.867, 0.931), UnreachableTargetError);
}

TEST_CASE("electronic noise", "[noise]") {
    CHECK(subtract_electronic_noise(0.37, 0.0) == 0.37);
    CHECK_THAT(fit_electronic_floor(-5.4, -6.3), WithinRel(0.070509250444537805, 1e-12));
    CHECK_THAT(fit_electronic_floor(-5.0, -6.2), WithinRel(0.10043783185073847, 1e-12));
    CHECK_THAT(fit_electronic_floor(-3.5, -3.9), WithinRel(0.066321306690935407, 1e-12));
    const double e = fit_electronic_floor(-5.4, -6.3);
    CHECK_THAT(to_db(subtract_electronic_noise(from_db(-5.4), e)), WithinAbs(-6.3, 1e-12));
    CHECK_THROWS_AS(subtract_electronic_noise(0.3, 0.3), DomainError);
    CHECK_THROWS_AS(subtract_electronic_noise(1.2, 0.1), DomainError);
    CHECK_THROWS_AS(fit_electronic_floor(-6.0, -5.0), DomainError);
}

TEST_CASE("gain model", "[noise]") {
    const FrequencyPlanner planner;
    const GainModelParams params{1e6, 20.0};
    CHECK_FALSE(gain_at(planner, {1921.5030894166667}, 16.0, 1000.0, params).has_value());
    CHECK(*gain_at(planner, {403.63686991666667}, 16.0, 1000.0, params) == Catch::Approx(1.0).margin(1e-12));

    // On the light-shifted two-photon resonance G = 1 + A kappa^2.
    const FrequencyOffset pump{871.0};
    const double kappa = planner.kappa(pump);
    const double ls = planner.light_shift_at(pump, 1000.0);
    CHECK_THAT(*gain_at(planner, pump, ls, 1000.0, params), WithinRel(1.0 + 1e6 * kappa * kappa, 1e-12));

    const auto scan = linear_grid(-3000.0, 3000.0, 7.0);
    std::vector<FrequencyOffset> pumps;
    for (const double x : scan) pumps.push_back({x});
    for (const auto& g : gain_profile(planner, pumps, 16.0, 1000.0, params)) {
        if (g) CHECK(*g >= 1.0);
    }
    CHECK_THROWS_AS((GainModelParams{-1.0, 10.0}.validate()), DomainError);
    CHECK_THROWS_AS((GainModelParams{1.0, 0.0}.validate()), DomainError);
}

TEST_CASE("sweep mechanics", "[noise]") {
    const FrequencyPlanner planner;
    const VaporModel vapor;
    const SweepSetup setup;
    const auto scan = linear_grid(-450.0, 350.0, 2.0);

    SECTION("no gain gives shot noise everywhere") {
        const auto curve = squeezing_sweep(planner, vapor, setup, scan, {0.0, 10.0});
        REQUIRE(curve.samples.size() == scan.size());
        for (const auto& s : curve.samples) {
            CHECK(s.gain == 1.0);
            CHECK(s.squeezing_db >= 0.0);
        }
    }
    SECTION("eta factorises into vapor and optics") {
        const auto curve = squeezing_sweep(planner, vapor, setup, scan, {0.0, 10.0});
        const auto& s = curve.samples[225];  // probe detuning 0
        CHECK(s.probe_detuning_mhz == 0.0);
        CHECK_THAT(s.eta_probe, WithinRel(vapor.transmission({-2179.878479089}, setup.cell) * 0.98 * 0.95, 1e-9));
    }
    SECTION("unsorted scans are rejected") {
        const std::vector<double> bad{0.0, 2.0, 1.0};
        CHECK_THROWS_AS(squeezing_sweep(planner, vapor, setup, bad, {0.0, 10.0}), DomainError);
    }
    SECTION("a scan point with the pump on a Raman line is flagged, not evaluated") {
        // pump = probe + HF + delta lands on 85Rb F=3 -> F'=3
        const double d = -1114.2293495833333 - (-2179.878479089) - 3035.732439 - 16.0;
        const std::vector<double> pts{d - 1.0, d, d + 1.0};
        const auto curve = squeezing_sweep(planner, vapor, setup, pts, {1e6, 10.0});
        CHECK(curve.flagged == 1);
        CHECK(curve.samples.size() == 2);
    }
}

TEST_CASE("squeezing window", "[noise]") {
    SweepCurve c;
    const double db[] = {-0.1, -0.6, -1.0, -2.0, -0.7, -0.4, -0.9, -0.2};
    for (int i = 0; i < 8; ++i) c.samples.push_back({10.0 * i, 2.0, 1.0, 1.0, db[i]});
    const auto w = squeezing_window(c, 0.5);
    REQUIRE(w);
    CHECK(w->lo_mhz == 10.0);
    CHECK(w->hi_mhz == 40.0);
    CHECK(w->best_db == -2.0);
    CHECK(w->best_at_mhz == 30.0);
    CHECK(w->width_mhz() == 30.0);

    const auto all = squeezing_window(c, 0.0);
    REQUIRE(all);
    CHECK(all->width_mhz() == 70.0);
    CHECK_FALSE(squeezing_window(c, 3.0));
}
