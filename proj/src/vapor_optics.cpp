#include "fwm/vapor_optics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fwm/error.hpp"

namespace fwm {

namespace {

constexpr double kBoltzmann = 1.380649e-23;      // J/K
constexpr double kAtomicMass = 1.66053906660e-27;  // kg
constexpr double kSpeedOfLight = 299792458.0;     // m/s
constexpr double kTorr = 133.322368;              // Pa
constexpr double kZeroCelsius = 273.15;
constexpr double kMeltingPoint = 312.46;          // K
constexpr double kFwhmPerSigma = 2.3548200450309493;  // 2 sqrt(2 ln 2)

void check_cell_temperature(double temperature_c) {
    if (!(temperature_c >= 0.0 && temperature_c <= 200.0)) {
        throw DomainError("cell temperature must lie in [0, 200] C");
    }
}

double gaussian(double x, double sigma) {
    return std::exp(-0.5 * (x / sigma) * (x / sigma)) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

}  // namespace

double vapor_pressure_pa(double temperature_c) {
    check_cell_temperature(temperature_c);
    const double t = temperature_c + kZeroCelsius;
    const double log_torr = t < kMeltingPoint
                                ? -94.04826 - 1961.258 / t - 0.03771687 * t + 42.57526 * std::log10(t)
                                : 15.88253 - 4529.635 / t + 0.00058663 * t - 2.99138 * std::log10(t);
    return std::pow(10.0, log_torr) * kTorr;
}

double number_density(double temperature_c) {
    return vapor_pressure_pa(temperature_c) / (kBoltzmann * (temperature_c + kZeroCelsius));
}

double doppler_fwhm(double temperature_c, Isotope isotope, const RbLedger& ledger) {
    const double t = temperature_c + kZeroCelsius;
    if (!(t > 0.0)) throw DomainError("temperature must be above absolute zero");
    const double mc2 = ledger.mass_amu(isotope) * kAtomicMass * kSpeedOfLight * kSpeedOfLight;
    return ledger.d1_frequency_hz(isotope) * std::sqrt(8.0 * std::numbers::ln2 * kBoltzmann * t / mc2) * 1e-6;
}

void VaporCell::validate() const {
    if (!(length_mm > 0.0 && std::isfinite(length_mm))) throw DomainError("cell length must be positive");
    check_cell_temperature(temperature_c);
    mixture.validate();
}

VaporModel::VaporModel(const RbLedger& ledger, const OpacityCalibration& calibration)
    : ledger_(ledger), calibration_(calibration) {
    if (!(calibration_.reference_od > 0.0) || !(calibration_.reference_length_mm > 0.0)) {
        throw DomainError("opacity calibration needs positive optical depth and length");
    }
    const double sigma = doppler_fwhm(calibration_.reference_temperature_c, Isotope::Rb85, ledger_) / kFwhmPerSigma;
    const double strongest = ledger_.line({Isotope::Rb85, 3, 3}).rel_strength;
    cross_section_ = calibration_.reference_od / (number_density(calibration_.reference_temperature_c) * strongest *
                                                  gaussian(0.0, sigma) * calibration_.reference_length_mm);
}

double VaporModel::optical_depth(FrequencyOffset beam, const VaporCell& cell) const {
    cell.validate();
    const double density = number_density(cell.temperature_c);
    const double sigma85 = doppler_fwhm(cell.temperature_c, Isotope::Rb85, ledger_) / kFwhmPerSigma;
    const double sigma87 = doppler_fwhm(cell.temperature_c, Isotope::Rb87, ledger_) / kFwhmPerSigma;
    double sum = 0.0;
    for (const auto& line : ledger_.line_catalog(cell.mixture)) {
        const double sigma = line.id.isotope == Isotope::Rb85 ? sigma85 : sigma87;
        sum += line.rel_strength * gaussian(beam - line.offset, sigma);
    }
    return cross_section_ * density * sum * cell.length_mm;
}

double VaporModel::transmission(FrequencyOffset beam, const VaporCell& cell) const {
    return std::max(std::exp(-optical_depth(beam, cell)), std::numeric_limits<double>::min());
}

OpticalResponse VaporModel::transmission_spectrum(double lo_mhz, double hi_mhz, double step_mhz,
                                                  const VaporCell& cell) const {
    if (!(lo_mhz < hi_mhz) || !(step_mhz > 0.0) || !std::isfinite(hi_mhz - lo_mhz)) {
        throw DomainError("spectrum range needs lo < hi and step > 0");
    }
    cell.validate();
    const auto count = static_cast<std::size_t>(std::floor((hi_mhz - lo_mhz) / step_mhz + 1e-9)) + 1;
    OpticalResponse out;
    out.frequencies.reserve(count);
    out.transmission.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const FrequencyOffset f{lo_mhz + static_cast<double>(i) * step_mhz};
        out.frequencies.push_back(f);
        out.transmission.push_back(transmission(f, cell));
    }
    return out;
}

std::vector<SatAbsMarker> VaporModel::satabs_markers(const Mixture& mixture) const {
    const auto lines = ledger_.line_catalog(mixture);
    std::vector<SatAbsMarker> out;
    for (const auto& line : lines) out.push_back({line.id.label(), line.offset, false});
    for (std::size_t i = 0; i < lines.size(); ++i) {
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            const auto& a = lines[i].id;
            const auto& b = lines[j].id;
            if (a.isotope != b.isotope || a.fg != b.fg) continue;
            const int lo = std::min(a.fe, b.fe);
            const std::string label = std::string(to_string(a.isotope)) + " F=" + std::to_string(a.fg) + " CO F'=" +
                                      std::to_string(lo) + "/" + std::to_string(lo + 1);
            out.push_back({label, {0.5 * (lines[i].offset.mhz + lines[j].offset.mhz)}, true});
        }
    }
    std::ranges::stable_sort(out, {}, [](const SatAbsMarker& m) { return m.offset.mhz; });
    return out;
}

}  // namespace fwm
