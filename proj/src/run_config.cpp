#include "fwm/run_config.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <string>

#include "fwm/error.hpp"
#include "fwm/kv_text.hpp"

namespace fwm {

namespace {

constexpr std::array<std::pair<Scenario, std::string_view>, 5> kScenarioNames{{
    {Scenario::OffResonance, "off_resonance"},
    {Scenario::ProbeResonant, "probe_resonant"},
    {Scenario::ConjugateResonant, "conjugate_resonant"},
    {Scenario::DoubleResonant, "double_resonant"},
    {Scenario::Custom, "custom"},
}};

// Shared by the singly-resonant presets and `custom`.
RunConfig singly_resonant_base() {
    RunConfig rc;
    rc.fwm.anchor = {Isotope::Rb85, 2, 2};
    rc.fwm.delta_mhz = 16.0;
    rc.fwm.pump_power_mw = 1000.0;
    rc.fwm.pump_diameter_mm = 1.9;
    rc.fwm.probe_diameter_mm = 0.6;
    rc.fwm.angle_deg = 0.45;
    rc.fwm.cell_temperature_c = 89.0;
    rc.fwm.cell_length_mm = 12.0;
    rc.fwm.detection_efficiency = 0.95;
    rc.gain = kSinglyResonantGain;
    rc.sweep = {-450.0, 350.0, 2.0};
    return rc;
}

void check_range(const ScanRange& r, const char* name) {
    if (!std::isfinite(r.lo_mhz) || !std::isfinite(r.hi_mhz) || !(r.hi_mhz > r.lo_mhz)) {
        throw ConfigError(std::string(name) + " range needs finite lo < hi");
    }
    if (!(r.step_mhz > 0.0) || (r.hi_mhz - r.lo_mhz) / r.step_mhz > 1e6) {
        throw ConfigError(std::string(name) + " step must be positive and give at most 1e6 points");
    }
}

}  // namespace

std::string_view to_string(Scenario scenario) {
    for (const auto& [s, name] : kScenarioNames) {
        if (s == scenario) return name;
    }
    return "custom";
}

std::optional<Scenario> parse_scenario(std::string_view name) {
    for (const auto& [s, n] : kScenarioNames) {
        if (n == name) return s;
    }
    return std::nullopt;
}

VaporCell RunConfig::cell() const {
    return {fwm.cell_length_mm, fwm.cell_temperature_c, mixture};
}

SweepSetup RunConfig::sweep_setup() const {
    return {sweep_reference, fwm.delta_mhz, fwm.pump_power_mw, cell(), optics};
}

void RunConfig::validate() const {
    fwm.validate();
    mixture.validate();
    cell().validate();
    optics.validate();
    gain.validate();
    check_range(sweep, "sweep");
    check_range(spectrum, "spectrum");
    if (!(feasibility.k_abs >= 0.0) || !(feasibility.kappa_min >= 0.0)) {
        throw ConfigError("feasibility thresholds must be non-negative");
    }
    if (!(opacity.reference_od > 0.0)) throw ConfigError("vapor.reference_od must be positive");
    if (!(window_threshold_db >= 0.0)) throw ConfigError("sweep.threshold_db must be non-negative");
}

RunConfig scenario_preset(Scenario scenario, const FrequencyPlanner& planner) {
    RunConfig rc = singly_resonant_base();
    rc.scenario = scenario;
    switch (scenario) {
        case Scenario::ProbeResonant:
            rc.fwm.pump_detuning_mhz =
                planner.solve_single_resonance(Beam::Probe, {Isotope::Rb87, 2, 2}, rc.fwm.delta_mhz);
            break;
        case Scenario::ConjugateResonant:
            rc.fwm.pump_detuning_mhz =
                planner.solve_single_resonance(Beam::Conjugate, {Isotope::Rb87, 1, 1}, rc.fwm.delta_mhz);
            break;
        case Scenario::DoubleResonant: {
            const auto dr = planner.solve_double_resonance({Isotope::Rb87, 2, 2}, {Isotope::Rb87, 1, 1});
            rc.fwm.pump_detuning_mhz = dr.pump_detuning_mhz;
            rc.fwm.delta_mhz = dr.delta_mhz;
            rc.fwm.angle_deg = 0.5;
            rc.fwm.cell_temperature_c = 91.0;
            rc.gain = kDoublyResonantGain;
            rc.sweep = {-420.0, 320.0, 2.0};
            break;
        }
        case Scenario::OffResonance:
            // Far from every 87Rb line. The planned probe sits about +1862 MHz
            // from the sweep reference, so the default scan is centred there.
            rc.fwm.anchor = {Isotope::Rb85, 2, 3};
            rc.fwm.pump_detuning_mhz = 800.0;
            rc.fwm.delta_mhz = 4.0;
            rc.fwm.pump_power_mw = 400.0;
            rc.fwm.pump_diameter_mm = 1.3;
            rc.fwm.probe_diameter_mm = 0.7;
            rc.fwm.angle_deg = 0.3;
            rc.sweep = {1460.0, 2260.0, 2.0};
            break;
        case Scenario::Custom:
            rc.fwm.pump_detuning_mhz = 0.0;
            rc.fwm.delta_mhz = 0.0;
            break;
    }
    return rc;
}

RunConfig parse_run_config(std::string_view text, const FrequencyPlanner& planner) {
    const auto entries = parse_kv_text(text);

    Scenario scenario = Scenario::Custom;
    for (const auto& e : entries) {
        if (e.key != "scenario") continue;
        const auto s = parse_scenario(e.value);
        if (!s) throw ConfigError("line " + std::to_string(e.line) + ": unknown scenario '" + e.value + "'", e.line);
        scenario = *s;
    }
    RunConfig rc = scenario_preset(scenario, planner);

    using Setter = std::function<void(RunConfig&, double)>;
    const std::map<std::string, Setter, std::less<>> setters{
        {"pump.detuning_mhz", [](RunConfig& c, double v) { c.fwm.pump_detuning_mhz = v; }},
        {"pump.power_mw", [](RunConfig& c, double v) { c.fwm.pump_power_mw = v; }},
        {"delta_mhz", [](RunConfig& c, double v) { c.fwm.delta_mhz = v; }},
        {"cell.temp_c", [](RunConfig& c, double v) { c.fwm.cell_temperature_c = v; }},
        {"cell.length_mm", [](RunConfig& c, double v) { c.fwm.cell_length_mm = v; }},
        {"cell.rb85_fraction", [](RunConfig& c, double v) { c.mixture = {v, 1.0 - v}; }},
        {"sweep.lo_mhz", [](RunConfig& c, double v) { c.sweep.lo_mhz = v; }},
        {"sweep.hi_mhz", [](RunConfig& c, double v) { c.sweep.hi_mhz = v; }},
        {"sweep.step_mhz", [](RunConfig& c, double v) { c.sweep.step_mhz = v; }},
        {"sweep.threshold_db", [](RunConfig& c, double v) { c.window_threshold_db = v; }},
        {"spectrum.lo_mhz", [](RunConfig& c, double v) { c.spectrum.lo_mhz = v; }},
        {"spectrum.hi_mhz", [](RunConfig& c, double v) { c.spectrum.hi_mhz = v; }},
        {"spectrum.step_mhz", [](RunConfig& c, double v) { c.spectrum.step_mhz = v; }},
        {"noise.eta_optics", [](RunConfig& c, double v) { c.optics.eta_optics = v; }},
        {"noise.eta_detector",
         [](RunConfig& c, double v) {
             c.optics.eta_detector = v;
             c.fwm.detection_efficiency = v;
         }},
        {"gain.A", [](RunConfig& c, double v) { c.gain.amplitude_mhz2 = v; }},
        {"gain.w_mhz", [](RunConfig& c, double v) { c.gain.width_mhz = v; }},
        {"feasibility.k_abs", [](RunConfig& c, double v) { c.feasibility.k_abs = v; }},
        {"feasibility.kappa_min", [](RunConfig& c, double v) { c.feasibility.kappa_min = v; }},
        {"vapor.reference_od", [](RunConfig& c, double v) { c.opacity.reference_od = v; }},
    };

    for (const auto& e : entries) {
        if (e.key == "scenario") continue;
        const auto it = setters.find(e.key);
        if (it == setters.end()) {
            throw ConfigError("line " + std::to_string(e.line) + ": unknown key '" + e.key + "'", e.line);
        }
        it->second(rc, parse_real(e));
    }

    try {
        rc.validate();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& ex) {
        throw ConfigError(std::string("invalid config: ") + ex.what());
    }
    return rc;
}

}  // namespace fwm
