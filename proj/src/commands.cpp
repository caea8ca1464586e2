#include "fwm/commands.hpp"

#include <cmath>
#include <optional>
#include <random>
#include <utility>

#include "fwm/error.hpp"
#include "fwm/gaussian_oracle.hpp"
#include "fwm/grid.hpp"
#include "fwm/report_io.hpp"

namespace fwm {

namespace {

using KeyValues = std::vector<std::pair<std::string, std::string>>;

bool wants_svg(OutputFormat f) { return f != OutputFormat::Csv; }

// Reported squeezing of each named configuration; the gain model is fitted to
// these, so comparisons against them are calibration checks.
std::optional<double> squeezing_target_db(Scenario s) {
    switch (s) {
        case Scenario::OffResonance: return -9.0;
        case Scenario::ProbeResonant: return -5.4;
        case Scenario::ConjugateResonant: return -5.0;
        case Scenario::DoubleResonant: return -3.5;
        case Scenario::Custom: return std::nullopt;
    }
    return std::nullopt;
}

std::string window_text(const std::optional<SqueezingWindow>& w) {
    if (!w) return "none";
    return format_number(w->lo_mhz) + " .. " + format_number(w->hi_mhz) + " (" + format_number(w->width_mhz()) +
           " MHz)";
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1), same on every platform
}

}  // namespace

const OutputFile* CommandOutput::file(std::string_view name) const {
    for (const auto& f : files) {
        if (f.name == name) return &f;
    }
    return nullptr;
}

CommandOutput cmd_plan(const RunConfig& config, const RbLedger& ledger) {
    config.validate();
    const FrequencyPlanner planner(ledger);
    const auto beams = planner.beams_from(config.fwm);
    const auto raman = planner.raman_detunings(beams.pump);
    const auto feasibility = planner.classify_feasibility(config.fwm, config.feasibility);
    const double beat = planner.beat_note(config.fwm.delta_mhz);
    const double rec_delta = planner.recommended_delta(config.fwm);

    CsvTable csv({"scenario", "anchor", "pump_detuning_mhz", "delta_mhz", "pump_mhz", "probe_mhz", "conjugate_mhz",
                  "beat_note_mhz", "lambda1_mhz", "lambda2_mhz", "feasibility", "recommended_delta_mhz"});
    csv.row({std::string(to_string(config.scenario)), config.fwm.anchor.label(),
             format_number(config.fwm.pump_detuning_mhz), format_number(config.fwm.delta_mhz),
             format_number(beams.pump.mhz), format_number(beams.probe.mhz), format_number(beams.conjugate.mhz),
             format_number(beat), format_number(raman.lambda1_mhz), format_number(raman.lambda2_mhz),
             std::string(to_string(feasibility)), format_number(rec_delta)});

    const KeyValues rows{
        {"scenario", std::string(to_string(config.scenario))},
        {"anchor", config.fwm.anchor.label()},
        {"pump_detuning_mhz", format_number(config.fwm.pump_detuning_mhz)},
        {"delta_mhz", format_number(config.fwm.delta_mhz)},
        {"pump_mhz", format_number(beams.pump.mhz)},
        {"probe_mhz", format_number(beams.probe.mhz)},
        {"conjugate_mhz", format_number(beams.conjugate.mhz)},
        {"beat_note_mhz", format_number(beat)},
        {"lambda1_mhz", format_number(raman.lambda1_mhz)},
        {"lambda2_mhz", format_number(raman.lambda2_mhz)},
        {"feasibility", std::string(to_string(feasibility))},
        {"recommended_delta_mhz", format_number(rec_delta)},
    };
    CommandOutput out;
    out.text = render_key_values(rows);
    out.files.push_back({"plan.csv", csv.render()});
    out.files.push_back({"plan.txt", out.text});
    return out;
}

CommandOutput cmd_spectrum(const RunConfig& config, OutputFormat format, const RbLedger& ledger) {
    config.validate();
    const VaporModel vapor(ledger, config.opacity);
    const auto cell = config.cell();
    const auto spec = vapor.transmission_spectrum(config.spectrum.lo_mhz, config.spectrum.hi_mhz,
                                                  config.spectrum.step_mhz, cell);
    const auto markers = vapor.satabs_markers(config.mixture);

    CsvTable csv({"offset_mhz", "transmission"});
    std::vector<double> xs, ys;
    std::size_t imin = 0;
    for (std::size_t i = 0; i < spec.frequencies.size(); ++i) {
        csv.row({format_number(spec.frequencies[i].mhz), format_number(spec.transmission[i])});
        xs.push_back(spec.frequencies[i].mhz);
        ys.push_back(spec.transmission[i]);
        if (spec.transmission[i] < spec.transmission[imin]) imin = i;
    }
    CsvTable marker_csv({"label", "offset_mhz"});
    for (const auto& m : markers) marker_csv.row({m.label, format_number(m.offset.mhz)});

    CommandOutput out;
    out.files.push_back({"spectrum.csv", csv.render()});
    out.files.push_back({"markers.csv", marker_csv.render()});
    if (wants_svg(format)) {
        out.files.push_back({"spectrum.svg", render_svg_plot({xs, ys}, {"Vapor transmission at " +
                                                                             format_number(cell.temperature_c) + " C",
                                                                         "offset from 85Rb D1 centroid (MHz)",
                                                                         "transmission"})});
    }
    const KeyValues rows{
        {"points", std::to_string(xs.size())},
        {"markers", std::to_string(markers.size())},
        {"min_transmission", format_number(ys[imin])},
        {"min_at_mhz", format_number(xs[imin])},
    };
    out.text = render_key_values(rows);
    return out;
}

CommandOutput cmd_sweep(const RunConfig& config, OutputFormat format, const RbLedger& ledger) {
    config.validate();
    const FrequencyPlanner planner(ledger);
    const VaporModel vapor(ledger, config.opacity);
    const auto scan = linear_grid(config.sweep.lo_mhz, config.sweep.hi_mhz, config.sweep.step_mhz);
    const auto curve = squeezing_sweep(planner, vapor, config.sweep_setup(), scan, config.gain);

    CsvTable csv({"probe_detuning_mhz", "gain", "eta_probe", "eta_conjugate", "squeezing_db"});
    for (const auto& s : curve.samples) {
        csv.row({format_number(s.probe_detuning_mhz), format_number(s.gain), format_number(s.eta_probe),
                 format_number(s.eta_conjugate), format_number(s.squeezing_db)});
    }

    const auto window = squeezing_window(curve, config.window_threshold_db);
    const auto window0 = squeezing_window(curve, 0.0);
    KeyValues rows{
        {"scenario", std::string(to_string(config.scenario))},
        {"gain_model", "calibration A=" + format_number(config.gain.amplitude_mhz2) +
                           " MHz^2 w=" + format_number(config.gain.width_mhz) + " MHz"},
        {"probe_reference", config.sweep_reference.label()},
        {"points", std::to_string(curve.samples.size())},
        {"flagged_points", std::to_string(curve.flagged)},
    };
    if (!curve.samples.empty()) {
        const auto best = std::ranges::min_element(curve.samples, {}, &SweepSample::squeezing_db);
        rows.emplace_back("best_squeezing_db", format_number(best->squeezing_db));
        rows.emplace_back("best_at_mhz", format_number(best->probe_detuning_mhz));
        rows.emplace_back("best_gain", format_number(best->gain));
    }
    rows.emplace_back("window_threshold_db", format_number(config.window_threshold_db));
    rows.emplace_back("window_mhz", window_text(window));
    rows.emplace_back("window_below_0db_mhz", window_text(window0));

    CommandOutput out;
    out.text = render_key_values(rows);
    out.files.push_back({"sweep.csv", csv.render()});
    out.files.push_back({"sweep_summary.txt", out.text});
    if (wants_svg(format) && !curve.samples.empty()) {
        const auto xs = curve.detunings();
        const auto ys = curve.squeezing_db();
        out.files.push_back({"sweep.svg", render_svg_plot({xs, ys}, {"Intensity-difference noise (calibrated gain model)",
                                                                     "probe detuning from " +
                                                                         config.sweep_reference.label() + " (MHz)",
                                                                     "noise relative to QNL (dB)"})});
    }
    return out;
}

CommandOutput cmd_noise(const RunConfig& config, const RbLedger& ledger) {
    config.validate();
    const FrequencyPlanner planner(ledger);
    const VaporModel vapor(ledger, config.opacity);
    const auto cell = config.cell();
    const auto beams = planner.beams_from(config.fwm);
    const double t_probe = vapor.transmission(beams.probe, cell);
    const double t_conj = vapor.transmission(beams.conjugate, cell);
    const double eta_p = t_probe * config.optics.product();
    const double eta_c = t_conj * config.optics.product();
    const auto gain = gain_at(planner, beams.pump, config.fwm.delta_mhz, config.fwm.pump_power_mw, config.gain);
    const auto floor = squeezing_floor(eta_p, eta_c);

    KeyValues rows{
        {"scenario", std::string(to_string(config.scenario))},
        {"transmission_probe", format_number(t_probe)},
        {"transmission_conjugate", format_number(t_conj)},
        {"eta_optics", format_number(config.optics.eta_optics)},
        {"eta_detector", format_number(config.optics.eta_detector)},
        {"eta_probe", format_number(eta_p)},
        {"eta_conjugate", format_number(eta_c)},
        {"loss_floor_db", format_number(to_db(floor.min_linear))},
        {"loss_floor_gain", format_number(floor.at_gain)},
    };
    if (gain) {
        rows.emplace_back("model_gain", format_number(*gain));
        rows.emplace_back("model_squeezing_db", format_number(to_db(squeezing_with_loss(*gain, eta_p, eta_c))));
        rows.emplace_back("ideal_squeezing_db", format_number(to_db(ideal_squeezing(*gain))));
    } else {
        rows.emplace_back("model_gain", "undefined (pump on a Raman line)");
    }
    if (const auto target = squeezing_target_db(config.scenario)) {
        rows.emplace_back("calibration_target_db", format_number(*target));
        try {
            rows.emplace_back("calibration_gain", format_number(infer_gain(*target, eta_p, eta_c)));
        } catch (const UnreachableTargetError& e) {
            rows.emplace_back("calibration_gain", "unreachable (floor " + format_number(to_db(e.min_achievable())) + " dB)");
        }
    }

    CsvTable csv({"quantity", "value"});
    for (const auto& [k, v] : rows) csv.row({k, v});
    CommandOutput out;
    out.text = render_key_values(rows);
    out.files.push_back({"noise.csv", csv.render()});
    out.files.push_back({"noise.txt", out.text});
    return out;
}

CommandOutput cmd_oracle_check(std::uint64_t trials, std::uint64_t seed) {
    if (trials == 0) throw DomainError("oracle-check needs at least one trial");
    std::mt19937_64 rng(seed);
    CsvTable csv({"trial", "gain", "eta_probe", "eta_conjugate", "closed_form", "oracle", "rel_deviation"});
    double max_dev = 0.0;
    std::uint64_t failures = 0;
    std::uint64_t unphysical = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        const double g = 20.0 - 19.0 * uniform01(rng);  // (1, 20]
        const double eta_p = 1.0 - 0.95 * uniform01(rng);
        const double eta_c = 1.0 - 0.95 * uniform01(rng);
        const double closed = squeezing_with_loss(g, eta_p, eta_c);
        const double sim = oracle::simulate_squeezing(g, eta_p, eta_c);
        const double dev = std::abs(closed - sim) / std::abs(sim);
        const auto state = oracle::apply_loss(
            oracle::two_mode_squeeze(oracle::GaussianState::coherent(1.0, 0.0), std::acosh(std::sqrt(g))), eta_p,
            eta_c);
        const bool physical = state.is_physical();
        if (!physical) ++unphysical;
        if (!(dev <= kOracleTolerance) || !physical) ++failures;
        max_dev = std::max(max_dev, dev);
        csv.row({std::to_string(i), format_number(g), format_number(eta_p), format_number(eta_c),
                 format_number(closed), format_number(sim), format_number(dev)});
    }
    const KeyValues rows{
        {"trials", std::to_string(trials)},
        {"seed", std::to_string(seed)},
        {"tolerance", format_number(kOracleTolerance)},
        {"max_rel_deviation", format_number(max_dev)},
        {"uncertainty_violations", std::to_string(unphysical)},
        {"failures", std::to_string(failures)},
        {"status", failures == 0 ? "PASS" : "FAIL"},
    };
    CommandOutput out;
    out.text = render_key_values(rows);
    out.exit_code = failures == 0 ? 0 : 1;
    out.files.push_back({"oracle_check.csv", csv.render()});
    out.files.push_back({"oracle_check.txt", out.text});
    return out;
}

void write_outputs(const CommandOutput& output, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    for (const auto& f : output.files) write_file_atomic(dir / f.name, f.content);
}

}  // namespace fwm
