#pragma once

// Run configuration for the command-line front end.
//
// Config text is flat "key = value" (see kv_text.hpp). The `scenario` key
// selects a preset; every other key overrides one preset field. Keys:
//
//   scenario             off_resonance | probe_resonant | conjugate_resonant |
//                        double_resonant | custom   (default: custom)
//   pump.detuning_mhz    pump detuning vs the scenario anchor line
//   pump.power_mw
//   delta_mhz            two-photon detuning
//   cell.temp_c, cell.length_mm, cell.rb85_fraction (rest is 87Rb)
//   sweep.lo_mhz, sweep.hi_mhz, sweep.step_mhz   probe detuning from 87Rb F=2->F'=2
//   sweep.threshold_db   squeezing resolution used for the window summary
//   spectrum.lo_mhz, spectrum.hi_mhz, spectrum.step_mhz   absolute offsets
//   noise.eta_optics, noise.eta_detector
//   gain.A, gain.w_mhz   gain-model amplitude (MHz^2) and width
//   feasibility.k_abs, feasibility.kappa_min
//   vapor.reference_od   peak OD of the strongest 85Rb line, 12 mm cell at 89 C
//
// Unknown keys are errors.

#include <optional>
#include <string_view>

#include "fwm/freq_planner.hpp"
#include "fwm/twinbeam_noise.hpp"
#include "fwm/vapor_optics.hpp"

namespace fwm {

enum class Scenario { OffResonance, ProbeResonant, ConjugateResonant, DoubleResonant, Custom };

std::string_view to_string(Scenario scenario);
std::optional<Scenario> parse_scenario(std::string_view name);

struct ScanRange {
    double lo_mhz;
    double hi_mhz;
    double step_mhz;
};

struct RunConfig {
    Scenario scenario = Scenario::Custom;
    FwmConfig fwm{};
    Mixture mixture{};
    ScanRange sweep{-450.0, 350.0, 2.0};
    ScanRange spectrum{-4000.0, 6000.0, 5.0};
    OpticsBudget optics{};
    GainModelParams gain{};
    FeasibilityThresholds feasibility{};
    OpacityCalibration opacity{};
    double window_threshold_db = kSqueezingResolutionDb;
    LineId sweep_reference{Isotope::Rb87, 2, 2};

    VaporCell cell() const;
    SweepSetup sweep_setup() const;
    void validate() const;
};

/// Gain-model parameters of the resonant presets, frozen from calibrate_gain_model
/// on each preset's own sweep (targets -5.4 dB / 500 MHz and -3.5 dB / 300 MHz).
inline constexpr GainModelParams kSinglyResonantGain{7274385.5659021782, 19.952623149688797};
inline constexpr GainModelParams kDoublyResonantGain{3288870268.2256918, 11.220184543019636};

/// Preset with every field set; resonant detunings are solved with `planner`.
RunConfig scenario_preset(Scenario scenario, const FrequencyPlanner& planner = FrequencyPlanner{});

/// Preset named by `scenario` (if any) with the remaining keys applied on top.
RunConfig parse_run_config(std::string_view text, const FrequencyPlanner& planner = FrequencyPlanner{});

}  // namespace fwm
