#include "fwm/gain_calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "fwm/error.hpp"

namespace fwm {

namespace {

constexpr double kLogAmplitudeLo = 2.0;
constexpr double kLogAmplitudeHi = 18.0;
constexpr double kLogAmplitudeStep = 0.25;

double best_db(const SweepGeometry& geometry, double log_amplitude, double width) {
    const auto curve = evaluate_sweep(geometry, {std::pow(10.0, log_amplitude), width});
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : curve.samples) best = std::min(best, s.squeezing_db);
    return best;
}

// log10 A with best_db == target; the deepest point first falls below the
// target somewhere on the coarse grid, then bisection refines the crossing.
std::optional<double> solve_amplitude(const SweepGeometry& geometry, double width, double target_db) {
    const auto f = [&](double la) { return best_db(geometry, la, width) - target_db; };
    double lo = kLogAmplitudeLo;
    if (f(lo) <= 0.0) return std::nullopt;
    for (double hi = lo + kLogAmplitudeStep; hi <= kLogAmplitudeHi + 1e-12; hi += kLogAmplitudeStep) {
        if (f(hi) <= 0.0) {
            for (int i = 0; i < 60; ++i) {
                const double mid = 0.5 * (lo + hi);
                (f(mid) > 0.0 ? lo : hi) = mid;
            }
            return 0.5 * (lo + hi);
        }
        lo = hi;
    }
    return std::nullopt;
}

}  // namespace

GainCalibration calibrate_gain_model(const SweepGeometry& geometry, const CalibrationTarget& target) {
    if (geometry.points.empty()) throw DomainError("calibration needs a non-empty sweep");
    if (!(target.window_mhz > 0.0) || !(target.best_db < -target.threshold_db)) {
        throw DomainError("calibration target needs a positive window and squeezing beyond the threshold");
    }
    std::optional<GainCalibration> best;
    double best_error = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 60; ++k) {
        const double width = std::pow(10.0, k / 20.0);
        const auto la = solve_amplitude(geometry, width, target.best_db);
        if (!la) continue;
        const GainModelParams params{std::pow(10.0, *la), width};
        const auto window = squeezing_window(evaluate_sweep(geometry, params), target.threshold_db);
        if (!window) continue;
        const double error = std::abs(window->width_mhz() - target.window_mhz);
        if (error < best_error) {
            best_error = error;
            best = GainCalibration{params, window->best_db, window->best_at_mhz, window->width_mhz()};
        }
    }
    if (!best) {
        double floor = 1.0;
        for (const auto& pt : geometry.points) floor = std::min(floor, squeezing_floor(pt.eta_probe, pt.eta_conjugate).min_linear);
        throw UnreachableTargetError("no gain-model parameters reach the calibration target", floor);
    }
    return *best;
}

double amplitude_for_gain(double gain, double kappa, double mismatch_mhz, double width_mhz) {
    if (!(gain >= 1.0)) throw DomainError("gain must be >= 1");
    if (kappa == 0.0) throw DomainError("no amplitude produces gain where kappa vanishes");
    if (!(width_mhz > 0.0)) throw DomainError("gain width must be positive");
    const double x = mismatch_mhz / width_mhz;
    return (gain - 1.0) / (kappa * kappa * std::exp(-0.5 * x * x));
}

}  // namespace fwm
