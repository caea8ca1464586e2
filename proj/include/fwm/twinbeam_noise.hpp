#pragma once

// Linearized noise budget of a seeded phase-insensitive twin-beam amplifier.
//
// Convention: vacuum quadrature variance = 1. Squeezing is the ratio of the
// intensity-difference noise to the quantum noise limit (shot noise of the
// total detected power); dB values are 10 log10 of that ratio.

#include <optional>
#include <span>
#include <vector>

#include "fwm/freq_planner.hpp"
#include "fwm/vapor_optics.hpp"

namespace fwm {

double to_db(double linear);
double from_db(double db);

/// 1 / (2G - 1).
double ideal_squeezing(double gain);

/// Probe gain G with intensity transmissions eta_p (probe) and eta_c (conjugate)
/// applied after the amplifier:
///   S = [(eta_p G - eta_c (G-1))^2 + (eta_p - eta_c)^2 G (G-1)
///        + eta_p G (1 - eta_p) + eta_c (G-1) (1 - eta_c)] / [eta_p G + eta_c (G-1)]
double squeezing_with_loss(double gain, double eta_probe, double eta_conjugate);

struct NoiseBudget {
    double gain = 1.0;
    double eta_probe = 1.0;
    double eta_conjugate = 1.0;
    double squeezing_linear = 1.0;
    double squeezing_db = 0.0;

    static NoiseBudget evaluate(double gain, double eta_probe, double eta_conjugate);
};

struct SqueezingFloor {
    double min_linear;
    double at_gain;  // +inf when the infimum is only approached asymptotically
};

/// Infimum over G >= 1 of squeezing_with_loss at fixed losses.
SqueezingFloor squeezing_floor(double eta_probe, double eta_conjugate);

/// Smallest G >= 1 whose squeezing equals target_db; UnreachableTargetError
/// when the target lies below the loss floor.
double infer_gain(double target_db, double eta_probe, double eta_conjugate);

/// (S_meas - e) / (1 - e), everything relative to the measured QNL.
double subtract_electronic_noise(double measured_linear, double floor_linear);

/// Electronic floor e that maps a raw dB reading onto a corrected one.
double fit_electronic_floor(double raw_db, double corrected_db);

/// Phenomenological FWM gain model (a calibration, not a prediction):
///   G = 1 + A kappa^2 exp(-(delta - delta_LS)^2 / (2 w^2))
/// with kappa = 1/lambda1 + 1/lambda2 and delta_LS the pump light shift.
struct GainModelParams {
    double amplitude_mhz2 = 0.0;  // A
    double width_mhz = 10.0;      // w

    void validate() const;
};

/// Pump closer than this to a Raman-leg line has no defined gain (1 Hz).
inline constexpr double kRamanLineToleranceMhz = 1e-6;

/// Empty optional where the pump sits on a Raman-leg line.
std::optional<double> gain_at(const FrequencyPlanner& planner, FrequencyOffset pump, double delta_mhz,
                              double pump_power_mw, const GainModelParams& params);

std::vector<std::optional<double>> gain_profile(const FrequencyPlanner& planner,
                                                std::span<const FrequencyOffset> pump_scan, double delta_mhz,
                                                double pump_power_mw, const GainModelParams& params);

struct OpticsBudget {
    double eta_optics = 0.98;
    double eta_detector = 0.95;

    double product() const { return eta_optics * eta_detector; }
    void validate() const;
};

/// Everything a squeezing-vs-detuning sweep holds fixed.
struct SweepSetup {
    LineId probe_target{Isotope::Rb87, 2, 2};
    double delta_mhz = 16.0;
    double pump_power_mw = 1000.0;
    VaporCell cell{};
    OpticsBudget optics{};
};

struct SweepSample {
    double probe_detuning_mhz;
    double gain;
    double eta_probe;
    double eta_conjugate;
    double squeezing_db;
};

struct SweepCurve {
    std::vector<SweepSample> samples;  // strictly increasing probe detuning
    std::size_t flagged = 0;           // scan points dropped with the pump on a Raman line

    std::vector<double> detunings() const;
    std::vector<double> squeezing_db() const;
};

/// Per-point quantities of a sweep that do not depend on the gain model.
struct SweepGeometry {
    struct Point {
        double probe_detuning_mhz;
        double eta_probe;
        double eta_conjugate;
        double kappa;
        double light_shift_mhz;
    };
    double delta_mhz = 0.0;
    std::vector<Point> points;
    std::size_t flagged = 0;
};

SweepGeometry prepare_sweep(const FrequencyPlanner& planner, const VaporModel& vapor, const SweepSetup& setup,
                            std::span<const double> probe_detunings);
SweepCurve evaluate_sweep(const SweepGeometry& geometry, const GainModelParams& params);

/// Probe detuned from `setup.probe_target` by each scan value, delta held fixed.
SweepCurve squeezing_sweep(const FrequencyPlanner& planner, const VaporModel& vapor, const SweepSetup& setup,
                           std::span<const double> probe_detunings, const GainModelParams& params);

struct SqueezingWindow {
    double lo_mhz;
    double hi_mhz;
    double best_db;
    double best_at_mhz;

    double width_mhz() const { return hi_mhz - lo_mhz; }
};

/// Contiguous run of samples around the deepest point with squeezing_db
/// strictly below -threshold_db. Empty when the deepest point is not below it.
std::optional<SqueezingWindow> squeezing_window(const SweepCurve& curve, double threshold_db);

/// Squeezing counts as present when at least this far below the QNL.
inline constexpr double kSqueezingResolutionDb = 0.5;

}  // namespace fwm
