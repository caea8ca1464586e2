#include "fwm/rb_ledger.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "fwm/error.hpp"
#include "fwm/kv_text.hpp"

namespace fwm {

std::string_view to_string(Isotope isotope) { return isotope == Isotope::Rb85 ? "Rb85" : "Rb87"; }

std::string LineId::label() const {
    return std::string(to_string(isotope)) + " F=" + std::to_string(fg) + "->F'=" + std::to_string(fe);
}

void Mixture::validate() const {
    const auto ok = [](double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; };
    if (!ok(rb85) || !ok(rb87)) throw DomainError("mixture fractions must lie in [0, 1]");
    if (rb85 + rb87 > 1.0 + 1e-12) throw DomainError("mixture fractions must sum to at most 1");
}

void RbConstants::validate() const {
    const double positives[] = {rb85_ground_splitting_mhz, rb85_excited_splitting_mhz, rb87_ground_splitting_mhz,
                                rb87_excited_splitting_mhz, rb85_d1_frequency_thz,      rb85_mass_amu,
                                rb87_mass_amu};
    for (double v : positives) {
        if (!(std::isfinite(v) && v > 0.0)) throw DomainError("rubidium constants must be positive and finite");
    }
    if (!std::isfinite(isotope_shift_mhz) || std::abs(isotope_shift_mhz) > 10'000.0) {
        throw DomainError("isotope shift out of range");
    }
}

RbConstants RbConstants::parse(std::string_view text) {
    RbConstants c;
    const std::map<std::string, double RbConstants::*, std::less<>> keys = {
        {"rb85.ground_splitting_mhz", &RbConstants::rb85_ground_splitting_mhz},
        {"rb85.excited_splitting_mhz", &RbConstants::rb85_excited_splitting_mhz},
        {"rb87.ground_splitting_mhz", &RbConstants::rb87_ground_splitting_mhz},
        {"rb87.excited_splitting_mhz", &RbConstants::rb87_excited_splitting_mhz},
        {"isotope_shift_mhz", &RbConstants::isotope_shift_mhz},
        {"rb85.d1_frequency_thz", &RbConstants::rb85_d1_frequency_thz},
        {"rb85.mass_amu", &RbConstants::rb85_mass_amu},
        {"rb87.mass_amu", &RbConstants::rb87_mass_amu},
    };
    for (const auto& entry : parse_kv_text(text)) {
        const auto it = keys.find(entry.key);
        if (it == keys.end()) {
            throw ConfigError("line " + std::to_string(entry.line) + ": unknown constant '" + entry.key + "'",
                              entry.line);
        }
        c.*(it->second) = parse_real(entry);
    }
    c.validate();
    return c;
}

RbConstants RbConstants::load(const std::filesystem::path& path) { return parse(read_text_file(path)); }

namespace {

// Two levels F_low < F_high split by `splitting`; offsets chosen so the
// (2F+1)-weighted mean is zero.
std::pair<double, double> centroid_split(int f_low, double splitting) {
    const double w_low = 2.0 * f_low + 1.0;
    const double w_high = 2.0 * (f_low + 1) + 1.0;
    return {-splitting * w_high / (w_low + w_high), splitting * w_low / (w_low + w_high)};
}

}  // namespace

RbLedger::RbLedger(const RbConstants& constants) : constants_(constants) {
    constants_.validate();
    const auto [g85lo, g85hi] = centroid_split(2, constants_.rb85_ground_splitting_mhz);
    const auto [e85lo, e85hi] = centroid_split(2, constants_.rb85_excited_splitting_mhz);
    const auto [g87lo, g87hi] = centroid_split(1, constants_.rb87_ground_splitting_mhz);
    const auto [e87lo, e87hi] = centroid_split(1, constants_.rb87_excited_splitting_mhz);
    rb85_ = {2, g85lo, g85hi, e85lo, e85hi};
    rb87_ = {1, g87lo, g87hi, e87lo, e87hi};
}

const RbLedger& RbLedger::standard() {
    static const RbLedger ledger{};
    return ledger;
}

const RbLedger::Manifolds& RbLedger::manifolds(Isotope isotope) const {
    return isotope == Isotope::Rb85 ? rb85_ : rb87_;
}

FrequencyOffset RbLedger::level_offset(Isotope isotope, Manifold manifold, int f) const {
    const auto& m = manifolds(isotope);
    if (f != m.f_low && f != m.f_low + 1) {
        throw UnknownLevelError(std::string(to_string(isotope)) +
                                (manifold == Manifold::Ground ? " ground" : " excited") + " manifold has no F=" +
                                std::to_string(f));
    }
    const bool high = f == m.f_low + 1;
    if (manifold == Manifold::Ground) return {high ? m.ground_high : m.ground_low};
    return {high ? m.excited_high : m.excited_low};
}

std::vector<HyperfineLevel> RbLedger::levels(Isotope isotope, Manifold manifold) const {
    const int f_low = manifolds(isotope).f_low;
    return {{isotope, manifold, f_low, level_offset(isotope, manifold, f_low)},
            {isotope, manifold, f_low + 1, level_offset(isotope, manifold, f_low + 1)}};
}

FrequencyOffset RbLedger::centroid(Isotope isotope) const {
    return {isotope == Isotope::Rb85 ? 0.0 : constants_.isotope_shift_mhz};
}

double RbLedger::ground_splitting(Isotope isotope) const {
    return isotope == Isotope::Rb85 ? constants_.rb85_ground_splitting_mhz : constants_.rb87_ground_splitting_mhz;
}

double RbLedger::excited_splitting(Isotope isotope) const {
    return isotope == Isotope::Rb85 ? constants_.rb85_excited_splitting_mhz : constants_.rb87_excited_splitting_mhz;
}

void RbLedger::check_line(Isotope isotope, int fg, int fe) const {
    // Validates both F values first so a bad F reports as an unknown level.
    level_offset(isotope, Manifold::Ground, fg);
    level_offset(isotope, Manifold::ExcitedD1, fe);
    if (std::abs(fe - fg) > 1) {
        throw SelectionRuleError(LineId{isotope, fg, fe}.label() + " violates |Fe - Fg| <= 1");
    }
}

FrequencyOffset RbLedger::transition_frequency(Isotope isotope, int fg, int fe) const {
    check_line(isotope, fg, fe);
    return {centroid(isotope).mhz + level_offset(isotope, Manifold::ExcitedD1, fe).mhz -
            level_offset(isotope, Manifold::Ground, fg).mhz};
}

TransitionLine RbLedger::line(const LineId& id, double fraction) const {
    return {id, transition_frequency(id), (2.0 * id.fg + 1.0) * fraction};
}

std::vector<TransitionLine> RbLedger::line_catalog(const Mixture& mixture) const {
    mixture.validate();
    std::vector<TransitionLine> out;
    for (const Isotope iso : {Isotope::Rb85, Isotope::Rb87}) {
        const double fraction = mixture.fraction(iso);
        if (fraction <= 0.0) continue;
        const int f_low = manifolds(iso).f_low;
        for (int fg = f_low; fg <= f_low + 1; ++fg) {
            for (int fe = f_low; fe <= f_low + 1; ++fe) out.push_back(line({iso, fg, fe}, fraction));
        }
    }
    std::ranges::sort(out, {}, [](const TransitionLine& l) { return l.offset.mhz; });
    return out;
}

double RbLedger::d1_frequency_hz(Isotope isotope) const {
    return constants_.rb85_d1_frequency_thz * 1e12 + centroid(isotope).mhz * 1e6;
}

double RbLedger::mass_amu(Isotope isotope) const {
    return isotope == Isotope::Rb85 ? constants_.rb85_mass_amu : constants_.rb87_mass_amu;
}

}  // namespace fwm
