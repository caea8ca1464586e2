#include "catch_amalgamated.hpp"

#include <cmath>
#include <random>

#include "fwm/error.hpp"
#include "fwm/gaussian_oracle.hpp"
#include "fwm/twinbeam_noise.hpp"

using namespace fwm;
using namespace fwm::oracle;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

TEST_CASE("vacuum and coherent states", "[oracle]") {
    const auto v = GaussianState::vacuum();
    CHECK(v.is_physical());
    CHECK_THAT(v.symplectic_spectrum()(0), WithinAbs(1.0, 1e-12));
    CHECK_THAT(v.mean_photon_number(0), WithinAbs(0.0, 1e-15));

    const auto c = GaussianState::coherent(3.0, 2.0);
    CHECK_THAT(c.mean_photon_number(0), WithinAbs(9.0, 1e-12));
    CHECK_THAT(c.mean_photon_number(1), WithinAbs(4.0, 1e-12));
    CHECK_THAT(intensity_diff_ratio(c), WithinAbs(1.0, 1e-15));  // shot noise
    CHECK_THROWS_AS(v.mean_photon_number(2), DomainError);
    CHECK_THROWS_AS(intensity_diff_ratio(v), DomainError);
}

TEST_CASE("squeezer is symplectic", "[oracle]") {
    const Matrix4 omega = symplectic_form();
    for (const double r : {0.0, 0.3, 1.0, 2.5}) {
        const Matrix4 s = two_mode_squeezer(r);
        CHECK((s * omega * s.transpose() - omega).cwiseAbs().maxCoeff() < 1e-12 * std::cosh(r) * std::cosh(r));
        CHECK_THAT(s.determinant(), WithinAbs(1.0, 1e-9));
    }
    CHECK_THROWS_AS(two_mode_squeezer(-0.1), DomainError);
}

TEST_CASE("squeezing vacuum gives G - 1 photons per mode", "[oracle]") {
    for (const double g : {1.5, 2.0, 9.0}) {
        const auto s = two_mode_squeeze(GaussianState::vacuum(), std::acosh(std::sqrt(g)));
        CHECK_THAT(s.mean_photon_number(0), WithinRel(g - 1.0, 1e-12));
        CHECK_THAT(s.mean_photon_number(1), WithinRel(g - 1.0, 1e-12));
        CHECK(s.is_physical());
        // Pure state: both symplectic eigenvalues stay at 1.
        CHECK_THAT(s.symplectic_spectrum()(1), WithinAbs(1.0, 1e-9));
    }
}

TEST_CASE("seeded amplifier gains G and G - 1", "[oracle]") {
    const double g = 3.0;
    const auto s = two_mode_squeeze(GaussianState::coherent(100.0, 0.0), std::acosh(std::sqrt(g)));
    CHECK_THAT(s.mean_photon_number(0), WithinRel(g * 1e4 + (g - 1.0), 1e-12));
    CHECK_THAT(s.mean_photon_number(1), WithinRel((g - 1.0) * 1e4 + (g - 1.0), 1e-12));
}

TEST_CASE("loss composes multiplicatively", "[oracle]") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const auto s = two_mode_squeeze(GaussianState::coherent(uniform(rng, 0.1, 5.0), 0.0), uniform(rng, 0.0, 2.0));
        const double a1 = uniform(rng, 0.05, 1.0), a2 = uniform(rng, 0.05, 1.0);
        const double b1 = uniform(rng, 0.05, 1.0), b2 = uniform(rng, 0.05, 1.0);
        const auto twice = apply_loss(apply_loss(s, a1, a2), b1, b2);
        const auto once = apply_loss(s, a1 * b1, a2 * b2);
        CHECK((twice.cov - once.cov).cwiseAbs().maxCoeff() < 1e-12 * once.cov.cwiseAbs().maxCoeff());
        CHECK((twice.means - once.means).cwiseAbs().maxCoeff() < 1e-12 * (1.0 + once.means.cwiseAbs().maxCoeff()));
    }
    CHECK_THROWS_AS(apply_loss(GaussianState::vacuum(), 0.0, 1.0), DomainError);
}

TEST_CASE("symplectic maps preserve the covariance determinant", "[oracle]") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        auto s = apply_loss(two_mode_squeeze(GaussianState::vacuum(), uniform(rng, 0.0, 1.5)), uniform(rng, 0.05, 1.0),
                            uniform(rng, 0.05, 1.0));
        const double before = s.cov.determinant();
        const auto t = two_mode_squeeze(s, uniform(rng, 0.0, 1.5));
        CHECK_THAT(t.cov.determinant(), WithinRel(before, 1e-8));
    }
}

TEST_CASE("uncertainty relation survives random squeeze/loss chains", "[oracle]") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 300; ++i) {
        GaussianState s = GaussianState::coherent(uniform(rng, 0.0, 3.0), uniform(rng, 0.0, 3.0));
        for (int k = 0; k < 4; ++k) {
            s = two_mode_squeeze(s, uniform(rng, 0.0, 1.2));
            s = apply_loss(s, uniform(rng, 0.05, 1.0), uniform(rng, 0.05, 1.0));
            CHECK(s.is_physical());
        }
    }
    GaussianState bad;
    bad.cov = 0.5 * Matrix4::Identity();
    CHECK_FALSE(bad.is_physical());
    bad.cov = Matrix4::Identity();
    bad.cov(0, 2) = 0.1;  // asymmetric
    CHECK_FALSE(bad.is_physical());
}

TEST_CASE("closed form matches the state-level simulation", "[oracle][property]") {
    std::mt19937_64 rng(1);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double g = uniform(rng, 1.0 + 1e-9, 20.0);
        const double p = uniform(rng, 0.05, 1.0);
        const double c = uniform(rng, 0.05, 1.0);
        const double closed = squeezing_with_loss(g, p, c);
        const double sim = simulate_squeezing(g, p, c);
        worst = std::max(worst, std::abs(closed - sim) / sim);
    }
    CHECK(worst < 1e-9);

    // Independent of the seed amplitude in the linearised treatment.
    CHECK_THAT(simulate_squeezing(2.5, 0.8, 0.9, 1e3), WithinRel(simulate_squeezing(2.5, 0.8, 0.9, 1.0), 1e-12));
    // Ideal amplifier.
    CHECK_THAT(simulate_squeezing(4.0, 1.0, 1.0), WithinRel(1.0 / 7.0, 1e-12));
    CHECK_THROWS_AS(simulate_squeezing(1.0, 1.0, 1.0), DomainError);
}
