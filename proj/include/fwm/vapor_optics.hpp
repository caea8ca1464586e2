#pragma once

// Doppler-broadened absorption of a rubidium vapor cell.
//
// Lines are pure Gaussians (natural width ~6 MHz is negligible next to the
// ~560 MHz Doppler width near 90 C). Absolute opacity is not modelled from
// first principles: one cross-section constant is calibrated so that the
// strongest 85Rb line, on its own, has a chosen peak optical depth in a
// reference cell. Temperature enters through number density and Doppler width.

#include <string>
#include <vector>

#include "fwm/rb_ledger.hpp"

namespace fwm {

/// Saturated vapor pressure of rubidium in Pa (Nesmeyanov correlation as
/// tabulated by Steck):
///   solid,  T < 312.46 K: log10(P/torr) = -94.04826 - 1961.258/T - 0.03771687 T + 42.57526 log10(T)
///   liquid, T >= 312.46 K: log10(P/torr) = 15.88253 - 4529.635/T + 0.00058663 T - 2.99138 log10(T)
/// Valid for 0..200 C.
double vapor_pressure_pa(double temperature_c);

/// Ideal-gas number density n = P / (k_B T), in m^-3.
double number_density(double temperature_c);

/// Doppler FWHM in MHz: nu0 * sqrt(8 ln2 k_B T / (m c^2)).
double doppler_fwhm(double temperature_c, Isotope isotope, const RbLedger& ledger = RbLedger::standard());

struct VaporCell {
    double length_mm = 12.0;
    double temperature_c = 89.0;
    Mixture mixture{};

    void validate() const;
};

struct OpticalResponse {
    std::vector<FrequencyOffset> frequencies;  // strictly increasing
    std::vector<double> transmission;          // each in (0, 1]
};

struct OpacityCalibration {
    double reference_od = 20.0;
    double reference_temperature_c = 89.0;
    double reference_length_mm = 12.0;
};

struct SatAbsMarker {
    std::string label;
    FrequencyOffset offset;
    bool crossover = false;
};

class VaporModel {
public:
    explicit VaporModel(const RbLedger& ledger = RbLedger::standard(), const OpacityCalibration& calibration = {});

    const RbLedger& ledger() const { return ledger_; }
    const OpacityCalibration& calibration() const { return calibration_; }

    double optical_depth(FrequencyOffset beam, const VaporCell& cell) const;

    /// Beer-Lambert intensity transmission exp(-OD), floored at the smallest
    /// normal double so it stays in (0, 1].
    double transmission(FrequencyOffset beam, const VaporCell& cell) const;

    /// Samples lo, lo + step, ... up to hi (inclusive within rounding).
    OpticalResponse transmission_spectrum(double lo_mhz, double hi_mhz, double step_mhz,
                                          const VaporCell& cell) const;

    /// Line positions plus crossover midpoints of lines sharing a ground level.
    std::vector<SatAbsMarker> satabs_markers(const Mixture& mixture) const;

private:
    RbLedger ledger_;
    OpacityCalibration calibration_;
    double cross_section_ = 0.0;  // MHz m^2 / mm, absorbs the line-shape normalisation
};

}  // namespace fwm
