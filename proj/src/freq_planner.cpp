#include "fwm/freq_planner.hpp"

#include <algorithm>
#include <cmath>

#include "fwm/error.hpp"
#include "fwm/vapor_optics.hpp"

namespace fwm {

namespace {

// Beam offsets live on a 2^-32 MHz grid. Every in-scope offset is below 2^15
// MHz in magnitude, so sums and differences of grid values are exact doubles.
constexpr double kGrid = 0x1p-32;

double snap(double mhz) { return std::nearbyint(mhz / kGrid) * kGrid; }

void require_rb87(const LineId& target) {
    if (target.isotope != Isotope::Rb87) throw DomainError("resonance target must be an 87Rb line");
}

}  // namespace

std::string_view to_string(Feasibility f) {
    switch (f) {
        case Feasibility::Ok: return "ok";
        case Feasibility::AbsorptionDominated: return "absorption_dominated";
        case Feasibility::DestructiveInterference: return "destructive_interference";
    }
    return "unknown";
}

void FwmConfig::validate() const {
    if (!std::isfinite(pump_detuning_mhz) || !std::isfinite(delta_mhz)) {
        throw DomainError("pump detuning and delta must be finite");
    }
    if (!(pump_power_mw > 0.0)) throw DomainError("pump power must be positive");
    if (!(pump_diameter_mm > 0.0) || !(probe_diameter_mm > 0.0)) throw DomainError("beam diameters must be positive");
    if (!(angle_deg >= 0.0)) throw DomainError("angle must be non-negative");
    if (!(cell_length_mm > 0.0)) throw DomainError("cell length must be positive");
    if (!(detection_efficiency > 0.0 && detection_efficiency <= 1.0)) {
        throw DomainError("detection efficiency must lie in (0, 1]");
    }
    if (anchor.isotope != Isotope::Rb85) throw DomainError("pump anchor must be an 85Rb line");
}

bool raman_interferes_destructively(const RamanDetunings& raman, double kappa_min) {
    if (!(raman.lambda1_mhz * raman.lambda2_mhz < 0.0)) return false;
    const double inv1 = 1.0 / raman.lambda1_mhz;
    const double inv2 = 1.0 / raman.lambda2_mhz;
    return std::abs(inv1 + inv2) < kappa_min * std::max(std::abs(inv1), std::abs(inv2));
}

FrequencyPlanner::FrequencyPlanner(const RbLedger& ledger, const RamanAnchors& raman,
                                   const LightShiftCalibration& light_shift)
    : ledger_(ledger), raman_(raman), light_shift_cal_(light_shift) {
    if (raman_.red_leg.isotope != Isotope::Rb85 || raman_.blue_leg.isotope != Isotope::Rb85) {
        throw DomainError("Raman anchors must be 85Rb lines");
    }
    ledger_.transition_frequency(raman_.red_leg);
    ledger_.transition_frequency(raman_.blue_leg);
    if (!(light_shift_cal_.power_mw > 0.0) || light_shift_cal_.detuning_mhz == 0.0) {
        throw DomainError("light-shift calibration needs positive power and nonzero detuning");
    }
}

FrequencyOffset FrequencyPlanner::pump_offset(const FwmConfig& config) const {
    config.validate();
    return ledger_.transition_frequency(config.anchor) + config.pump_detuning_mhz;
}

BeamTriple FrequencyPlanner::beams_at(FrequencyOffset pump, double delta_mhz) const {
    const double p = snap(pump.mhz);
    const double half = snap(hf85() + delta_mhz);
    return {{p}, {p - half}, {p + half}};
}

BeamTriple FrequencyPlanner::beams_from(const FwmConfig& config) const {
    return beams_at(pump_offset(config), config.delta_mhz);
}

double FrequencyPlanner::beat_note(double delta_mhz) const { return 2.0 * snap(hf85() + delta_mhz); }

double FrequencyPlanner::solve_single_resonance(Beam beam, const LineId& target, double delta_mhz,
                                                const LineId& anchor) const {
    require_rb87(target);
    const double half = hf85() + delta_mhz;
    const double target_mhz = ledger_.transition_frequency(target).mhz;
    const double pump = beam == Beam::Probe ? target_mhz + half : target_mhz - half;
    return pump - ledger_.transition_frequency(anchor).mhz;
}

DoubleResonance FrequencyPlanner::solve_double_resonance(const LineId& probe_target, const LineId& conj_target,
                                                         const LineId& anchor) const {
    require_rb87(probe_target);
    require_rb87(conj_target);
    const double lo = ledger_.transition_frequency(probe_target).mhz;
    const double hi = ledger_.transition_frequency(conj_target).mhz;
    if (!(hi > lo)) throw DomainError("conjugate target must lie above the probe target");
    const double pump = 0.5 * (lo + hi);
    return {pump - ledger_.transition_frequency(anchor).mhz, 0.5 * (hi - lo) - hf85()};
}

RamanDetunings FrequencyPlanner::raman_detunings(FrequencyOffset pump) const {
    return {pump - ledger_.transition_frequency(raman_.red_leg), pump - ledger_.transition_frequency(raman_.blue_leg)};
}

double FrequencyPlanner::kappa(FrequencyOffset pump) const {
    const auto r = raman_detunings(pump);
    return 1.0 / r.lambda1_mhz + 1.0 / r.lambda2_mhz;
}

Feasibility FrequencyPlanner::classify_feasibility(const FwmConfig& config,
                                                   const FeasibilityThresholds& thresholds) const {
    const auto beams = beams_from(config);
    const double half_width = 0.5 * doppler_fwhm(config.cell_temperature_c, Isotope::Rb85, ledger_);
    for (const auto& line : ledger_.line_catalog({1.0, 0.0})) {
        for (const FrequencyOffset beam : {beams.probe, beams.conjugate}) {
            if (std::abs(beam - line.offset) < thresholds.k_abs * half_width) {
                return Feasibility::AbsorptionDominated;
            }
        }
    }
    if (raman_interferes_destructively(raman_detunings(beams.pump), thresholds.kappa_min)) {
        return Feasibility::DestructiveInterference;
    }
    return Feasibility::Ok;
}

double FrequencyPlanner::light_shift(double power_mw, double detuning_mhz) const {
    if (!(power_mw > 0.0)) throw DomainError("pump power must be positive");
    if (detuning_mhz == 0.0 || !std::isfinite(detuning_mhz)) {
        throw DomainError("light shift is undefined at zero detuning");
    }
    return light_shift_cal_.coefficient() * power_mw / std::abs(detuning_mhz);
}

double FrequencyPlanner::light_shift_at(FrequencyOffset pump, double power_mw) const {
    return light_shift(power_mw, raman_detunings(pump).lambda2_mhz);
}

double FrequencyPlanner::recommended_delta(const FwmConfig& config) const {
    return light_shift_at(pump_offset(config), config.pump_power_mw);
}

double FrequencyPlanner::reanchor(const FwmConfig& config, const LineId& new_anchor) const {
    if (new_anchor.isotope != Isotope::Rb85) throw DomainError("pump anchor must be an 85Rb line");
    return pump_offset(config) - ledger_.transition_frequency(new_anchor);
}

}  // namespace fwm
