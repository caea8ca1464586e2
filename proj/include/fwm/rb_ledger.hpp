#pragma once

// Rubidium D1 hyperfine ledger.
//
// Every optical frequency in the toolkit is a MHz offset from one global
// reference: the 85Rb D1 line centroid (offset 0). Level offsets are stored
// relative to their own manifold centroid; a transition is
//     isotope centroid + excited level - ground level
// evaluated in exactly that order everywhere.

#include <compare>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace fwm {

enum class Isotope { Rb85, Rb87 };
enum class Manifold { Ground, ExcitedD1 };

std::string_view to_string(Isotope isotope);

/// Optical frequency as a MHz offset from the global reference.
struct FrequencyOffset {
    double mhz = 0.0;

    friend constexpr auto operator<=>(const FrequencyOffset&, const FrequencyOffset&) = default;
};

constexpr double operator-(FrequencyOffset a, FrequencyOffset b) { return a.mhz - b.mhz; }
constexpr FrequencyOffset operator+(FrequencyOffset a, double mhz) { return {a.mhz + mhz}; }
constexpr FrequencyOffset operator-(FrequencyOffset a, double mhz) { return {a.mhz - mhz}; }

/// Names one D1 hyperfine component, e.g. 87Rb F=2 -> F'=2.
struct LineId {
    Isotope isotope = Isotope::Rb85;
    int fg = 0;
    int fe = 0;

    friend constexpr bool operator==(const LineId&, const LineId&) = default;
    std::string label() const;
};

struct HyperfineLevel {
    Isotope isotope;
    Manifold manifold;
    int f;
    FrequencyOffset offset;  // relative to the manifold centroid
};

struct TransitionLine {
    LineId id;
    FrequencyOffset offset;
    double rel_strength;
};

struct Mixture {
    double rb85 = 1.0;
    double rb87 = 0.0;

    double fraction(Isotope isotope) const { return isotope == Isotope::Rb85 ? rb85 : rb87; }
    void validate() const;
};

inline constexpr Mixture kNaturalAbundance{0.7217, 0.2783};

/// Published D1 data (D. A. Steck, "Rubidium 85 D Line Data" and
/// "Rubidium 87 D Line Data", rev. 2.2). Splittings are F_high - F_low.
struct RbConstants {
    double rb85_ground_splitting_mhz = 3035.732439;   // 5S1/2, 3 * A with A = 1011.910813 MHz
    double rb85_excited_splitting_mhz = 361.582;      // 5P1/2, F'=3 - F'=2
    double rb87_ground_splitting_mhz = 6834.682610904;
    double rb87_excited_splitting_mhz = 814.5;        // 5P1/2, 2 * A with A = 407.25 MHz
    double isotope_shift_mhz = 77.690;                // 87Rb D1 centroid - 85Rb D1 centroid
    double rb85_d1_frequency_thz = 377.107385690;
    double rb85_mass_amu = 84.911789738;
    double rb87_mass_amu = 86.909180527;

    void validate() const;

    /// Reads the documented keys; keys absent from the text keep their defaults.
    static RbConstants parse(std::string_view text);
    static RbConstants load(const std::filesystem::path& path);
};

class RbLedger {
public:
    explicit RbLedger(const RbConstants& constants = {});

    /// Ledger built from the compiled-in constants.
    static const RbLedger& standard();

    const RbConstants& constants() const { return constants_; }

    FrequencyOffset level_offset(Isotope isotope, Manifold manifold, int f) const;
    std::vector<HyperfineLevel> levels(Isotope isotope, Manifold manifold) const;

    /// D1 centroid of the isotope relative to the global reference.
    FrequencyOffset centroid(Isotope isotope) const;
    double ground_splitting(Isotope isotope) const;
    double excited_splitting(Isotope isotope) const;

    FrequencyOffset transition_frequency(Isotope isotope, int fg, int fe) const;
    FrequencyOffset transition_frequency(const LineId& id) const {
        return transition_frequency(id.isotope, id.fg, id.fe);
    }
    TransitionLine line(const LineId& id, double fraction = 1.0) const;

    /// All lines of each isotope present in the mixture, strengths scaled by
    /// abundance, ascending in frequency.
    std::vector<TransitionLine> line_catalog(const Mixture& mixture) const;

    double d1_frequency_hz(Isotope isotope) const;
    double mass_amu(Isotope isotope) const;

private:
    struct Manifolds {
        int f_low;
        double ground_low, ground_high;
        double excited_low, excited_high;
    };

    const Manifolds& manifolds(Isotope isotope) const;
    void check_line(Isotope isotope, int fg, int fe) const;

    RbConstants constants_;
    Manifolds rb85_{};
    Manifolds rb87_{};
};

}  // namespace fwm
