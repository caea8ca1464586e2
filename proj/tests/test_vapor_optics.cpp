#include "catch_amalgamated.hpp"

#include <algorithm>
#include <cmath>

#include "fwm/error.hpp"
#include "fwm/vapor_optics.hpp"

using namespace fwm;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

// Reference values from an independent 30-digit evaluation of the same
// correlation, Gaussian lines and opacity normalisation.

TEST_CASE("vapor pressure and number density", "[vapor]") {
    CHECK_THAT(vapor_pressure_pa(25.0), WithinRel(4.0084106668124468e-5, 1e-10));
    CHECK_THAT(vapor_pressure_pa(89.0), WithinRel(0.01141963102889712, 1e-10));
    CHECK_THAT(number_density(25.0), WithinRel(9737648927017430.6, 1e-10));
    CHECK_THAT(number_density(89.0), WithinRel(2.283916908638864e18, 1e-10));
    CHECK_THAT(number_density(91.0), WithinRel(2.6242291968100995e18, 1e-10));
    CHECK_THAT(number_density(150.0), WithinRel(8.4661155299041011e19, 1e-10));

    // Solid and liquid branches meet at the melting point.
    CHECK_THAT(vapor_pressure_pa(312.46 - 273.15 - 1e-9), WithinRel(vapor_pressure_pa(312.46 - 273.15), 1e-3));

    for (double t = 0.0; t < 200.0; t += 5.0) CHECK(number_density(t + 5.0) > number_density(t));
    CHECK_THROWS_AS(number_density(-1.0), DomainError);
    CHECK_THROWS_AS(number_density(201.0), DomainError);
}

TEST_CASE("Doppler widths", "[vapor]") {
    CHECK_THAT(doppler_fwhm(89.0, Isotope::Rb85), WithinRel(557.80114219645666, 1e-10));
    CHECK_THAT(doppler_fwhm(89.0, Isotope::Rb87), WithinRel(551.35416375404223, 1e-10));
    CHECK_THAT(doppler_fwhm(89.0, Isotope::Rb85), WithinAbs(560.0, 10.0));
    CHECK_THROWS_AS(doppler_fwhm(-300.0, Isotope::Rb85), DomainError);
}

TEST_CASE("transmission reference points", "[vapor]") {
    const VaporModel vapor;
    const VaporCell cell;  // 12 mm, 89 C, pure 85Rb
    CHECK_THAT(vapor.optical_depth({-2179.876}, cell), WithinRel(0.24215387970760675, 1e-9));
    CHECK_THAT(vapor.optical_depth({0.0}, cell), WithinRel(0.00031369561380425246, 1e-9));
    CHECK_THAT(vapor.optical_depth({1921.502}, cell), WithinRel(18.741612259418556, 1e-9));
    CHECK_THAT(vapor.optical_depth({-1295.02}, cell), WithinRel(29.892865542425597, 1e-9));
    CHECK_THAT(vapor.transmission({-2179.876}, cell), WithinRel(0.78493538263095486, 1e-9));
    CHECK_THAT(vapor.transmission({3923.586}, cell), WithinAbs(1.0, 1e-14));

    VaporCell hot = cell;
    hot.temperature_c = 91.0;
    CHECK_THAT(vapor.transmission({-2179.876}, hot), WithinRel(0.75252984324585383, 1e-9));
    hot.temperature_c = 120.0;
    CHECK_THAT(vapor.transmission({500.0}, hot), WithinRel(0.99017397302928399, 1e-9));

    VaporCell natural = cell;
    natural.mixture = kNaturalAbundance;
    CHECK_THAT(vapor.optical_depth({-2179.878479089}, natural), WithinRel(4.2064363507265323, 1e-9));
}

TEST_CASE("optical depth scales with length and reference OD", "[vapor]") {
    const VaporModel vapor;
    VaporCell a;
    VaporCell b = a;
    b.length_mm = 24.0;
    CHECK_THAT(vapor.optical_depth({1500.0}, b), WithinRel(2.0 * vapor.optical_depth({1500.0}, a), 1e-12));

    const VaporModel opaque(RbLedger::standard(), {50.0, 89.0, 12.0});
    CHECK_THAT(opaque.optical_depth({1500.0}, a), WithinRel(2.5 * vapor.optical_depth({1500.0}, a), 1e-12));
    // Strongest line alone at its centre: the reference OD minus the tails of the other lines.
    CHECK(opaque.optical_depth({-1114.2293495833333}, a) > 50.0);

    CHECK_THROWS_AS(VaporModel(RbLedger::standard(), {0.0, 89.0, 12.0}), DomainError);
}

TEST_CASE("transmission stays in (0, 1]", "[vapor]") {
    const VaporModel vapor;
    VaporCell scorching;
    scorching.temperature_c = 200.0;
    scorching.length_mm = 100.0;
    const double t = vapor.transmission({-1295.0}, scorching);
    CHECK(t > 0.0);
    CHECK(t <= 1.0);
}

TEST_CASE("spectrum sampling", "[vapor]") {
    const VaporModel vapor;
    const auto s = vapor.transmission_spectrum(-4000.0, 6000.0, 5.0, VaporCell{});
    REQUIRE(s.frequencies.size() == 2001);
    REQUIRE(s.transmission.size() == 2001);
    CHECK(s.frequencies.back().mhz == 6000.0);
    for (std::size_t i = 1; i < s.frequencies.size(); ++i) CHECK(s.frequencies[i - 1] < s.frequencies[i]);
    for (const double t : s.transmission) CHECK((t > 0.0 && t <= 1.0));

    // Deepest absorption sits on a marker (the F=3 crossover between two equal-strength lines).
    const auto imin = std::ranges::min_element(s.transmission) - s.transmission.begin();
    const double fmin = s.frequencies[imin].mhz;
    const auto markers = vapor.satabs_markers(Mixture{});
    const bool near_marker = std::ranges::any_of(markers, [&](const SatAbsMarker& m) {
        return std::abs(m.offset.mhz - fmin) <= 5.0;
    });
    CHECK(near_marker);

    CHECK_THROWS_AS(vapor.transmission_spectrum(10.0, 0.0, 1.0, VaporCell{}), DomainError);
    CHECK_THROWS_AS(vapor.transmission_spectrum(0.0, 10.0, 0.0, VaporCell{}), DomainError);
}

TEST_CASE("saturated-absorption markers", "[vapor]") {
    const VaporModel vapor;
    const auto pure = vapor.satabs_markers(Mixture{});
    REQUIRE(pure.size() == 6);
    CHECK(std::ranges::count_if(pure, [](const SatAbsMarker& m) { return m.crossover; }) == 2);
    for (std::size_t i = 1; i < pure.size(); ++i) CHECK(pure[i - 1].offset <= pure[i].offset);
    CHECK(pure[1].label == "Rb85 F=3 CO F'=2/3");
    CHECK_THAT(pure[1].offset.mhz, WithinAbs(-1295.0203495833333, 1e-9));

    CHECK(vapor.satabs_markers(kNaturalAbundance).size() == 12);
}
