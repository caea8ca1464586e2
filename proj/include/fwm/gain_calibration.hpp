#pragma once

// Fits the phenomenological gain model to a target sweep: the amplitude A
// sets the deepest squeezing, the width w sets the squeezing window.

#include <span>

#include "fwm/twinbeam_noise.hpp"

namespace fwm {

struct CalibrationTarget {
    double best_db;     // deepest squeezing over the scan
    double window_mhz;  // contiguous squeezing window
    double threshold_db = kSqueezingResolutionDb;
};

struct GainCalibration {
    GainModelParams params;
    double best_db;
    double best_at_mhz;
    double window_mhz;
};

/// For each w on a log grid (1 MHz .. 1 GHz, 20 points per decade) A is
/// root-found so the deepest point hits target.best_db; the w whose window
/// lies closest to target.window_mhz wins (first on ties).
GainCalibration calibrate_gain_model(const SweepGeometry& geometry, const CalibrationTarget& target);

/// Amplitude that yields `gain` for a given kappa and two-photon mismatch.
double amplitude_for_gain(double gain, double kappa, double mismatch_mhz, double width_mhz);

}  // namespace fwm
