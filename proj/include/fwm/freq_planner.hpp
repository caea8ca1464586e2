#pragma once

// Four-wave-mixing frequency arithmetic in the 85Rb double-lambda scheme.
//
// Sign conventions:
//   probe     = pump - (HF85 + delta)
//   conjugate = pump + (HF85 + delta)
// with HF85 the 85Rb ground splitting and delta the two-photon detuning.
// Pump detunings are quoted against an explicit anchor line (red < 0).

#include <string_view>

#include "fwm/rb_ledger.hpp"

namespace fwm {

struct FwmConfig {
    double pump_detuning_mhz = 0.0;
    LineId anchor{Isotope::Rb85, 2, 2};
    double delta_mhz = 0.0;
    double pump_power_mw = 1000.0;
    double pump_diameter_mm = 1.9;   // metadata
    double probe_diameter_mm = 0.6;  // metadata
    double angle_deg = 0.45;         // metadata
    double cell_temperature_c = 89.0;
    double cell_length_mm = 12.0;
    double detection_efficiency = 0.95;

    void validate() const;
};

/// Pump, probe and conjugate optical frequencies; 2 pump = probe + conjugate.
struct BeamTriple {
    FrequencyOffset pump;
    FrequencyOffset probe;
    FrequencyOffset conjugate;
};

/// One-photon detunings of the pump from the two Raman legs.
struct RamanDetunings {
    double lambda1_mhz;  // from the red-leg line (default 85Rb F=2 -> F'=3)
    double lambda2_mhz;  // from the blue-leg line (default 85Rb F=3 -> F'=3)
};

enum class Beam { Probe, Conjugate };
enum class Feasibility { Ok, AbsorptionDominated, DestructiveInterference };

std::string_view to_string(Feasibility f);

struct FeasibilityThresholds {
    double k_abs = 1.0;        // in Doppler half-widths (HWHM)
    double kappa_min = 0.385;  // fraction of max(|1/lambda1|, |1/lambda2|)
};

struct RamanAnchors {
    LineId red_leg{Isotope::Rb85, 2, 3};
    LineId blue_leg{Isotope::Rb85, 3, 3};
};

/// Light-shift calibration point: (power, detuning) -> shift.
struct LightShiftCalibration {
    double power_mw = 500.0;
    double detuning_mhz = 4000.0;
    double shift_mhz = 4.0;

    double coefficient() const { return shift_mhz * detuning_mhz / power_mw; }
};

struct DoubleResonance {
    double pump_detuning_mhz;
    double delta_mhz;
};

/// Destructive-interference rule on raw Raman detunings: opposite signs and
/// |1/l1 + 1/l2| below kappa_min * max(|1/l1|, |1/l2|).
bool raman_interferes_destructively(const RamanDetunings& raman, double kappa_min);

class FrequencyPlanner {
public:
    explicit FrequencyPlanner(const RbLedger& ledger = RbLedger::standard(), const RamanAnchors& raman = {},
                              const LightShiftCalibration& light_shift = {});

    const RbLedger& ledger() const { return ledger_; }
    double hf85() const { return ledger_.ground_splitting(Isotope::Rb85); }

    FrequencyOffset pump_offset(const FwmConfig& config) const;
    BeamTriple beams_from(const FwmConfig& config) const;
    BeamTriple beams_at(FrequencyOffset pump, double delta_mhz) const;

    /// Probe-conjugate separation, 2 (HF85 + delta).
    double beat_note(double delta_mhz) const;

    /// Pump detuning (vs `anchor`) that puts `beam` exactly on an 87Rb `target`.
    double solve_single_resonance(Beam beam, const LineId& target, double delta_mhz,
                                  const LineId& anchor = {Isotope::Rb85, 2, 2}) const;

    /// Pump at the midpoint of the two targets, delta from their separation.
    DoubleResonance solve_double_resonance(const LineId& probe_target, const LineId& conj_target,
                                           const LineId& anchor = {Isotope::Rb85, 2, 2}) const;

    RamanDetunings raman_detunings(FrequencyOffset pump) const;
    RamanDetunings raman_detunings(const FwmConfig& config) const { return raman_detunings(pump_offset(config)); }

    /// 1/lambda1 + 1/lambda2 in MHz^-1; the interference factor of the two legs.
    double kappa(FrequencyOffset pump) const;

    Feasibility classify_feasibility(const FwmConfig& config, const FeasibilityThresholds& thresholds = {}) const;

    /// c * P / |detuning|, c fixed by the calibration point.
    double light_shift(double power_mw, double detuning_mhz) const;
    double light_shift_at(FrequencyOffset pump, double power_mw) const;

    /// Light shift from the pump on the blue Raman leg.
    double recommended_delta(const FwmConfig& config) const;

    /// Same pump frequency expressed against another anchor line.
    double reanchor(const FwmConfig& config, const LineId& new_anchor) const;

private:
    RbLedger ledger_;
    RamanAnchors raman_;
    LightShiftCalibration light_shift_cal_;
};

}  // namespace fwm
