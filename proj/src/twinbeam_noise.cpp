#include "fwm/twinbeam_noise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fwm/error.hpp"

namespace fwm {

namespace {

void check_gain(double gain) {
    if (!(gain >= 1.0) || !std::isfinite(gain)) throw DomainError("gain must be a finite value >= 1");
}

void check_eta(double eta) {
    if (!(eta > 0.0 && eta <= 1.0)) throw DomainError("transmission must lie in (0, 1]");
}

// S(G) = (a G^2 + b G + c) / (d G + e), convex wherever the denominator is positive.
struct Rational {
    double a, b, c, d, e;

    explicit Rational(double p, double q) {
        const double diff = p - q;
        a = 2.0 * diff * diff;
        b = 2.0 * q * diff - diff * diff + p * (1.0 - p) + q * (1.0 - q);
        c = q * q - q * (1.0 - q);
        d = p + q;
        e = -q;
    }

    // Stationary point of S on the branch d G + e > 0; +inf when S is monotone.
    double stationary() const {
        if (a <= 0.0) return std::numeric_limits<double>::infinity();
        const double shift = -e / d;
        const double disc = shift * shift - (b * e - c * d) / (a * d);
        if (disc < 0.0) return std::numeric_limits<double>::infinity();
        return shift + std::sqrt(disc);
    }
};

template <class F>
double bisect(F&& f, double lo, double hi) {
    // f(lo) and f(hi) have opposite signs (or one is zero).
    double flo = f(lo);
    for (int i = 0; i < 400 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double to_db(double linear) {
    if (!(linear > 0.0)) throw DomainError("dB conversion needs a positive ratio");
    return 10.0 * std::log10(linear);
}

double from_db(double db) { return std::pow(10.0, db / 10.0); }

double ideal_squeezing(double gain) {
    check_gain(gain);
    return 1.0 / (2.0 * gain - 1.0);
}

double squeezing_with_loss(double gain, double eta_probe, double eta_conjugate) {
    check_gain(gain);
    check_eta(eta_probe);
    check_eta(eta_conjugate);
    if (gain == 1.0) return 1.0;  // no amplification: the losses alone leave shot noise
    const double g = gain;
    const double p = eta_probe;
    const double q = eta_conjugate;
    const double diff = p * g - q * (g - 1.0);
    const double num = diff * diff + (p - q) * (p - q) * g * (g - 1.0) + p * g * (1.0 - p) + q * (g - 1.0) * (1.0 - q);
    return num / (p * g + q * (g - 1.0));
}

NoiseBudget NoiseBudget::evaluate(double gain, double eta_probe, double eta_conjugate) {
    NoiseBudget b;
    b.gain = gain;
    b.eta_probe = eta_probe;
    b.eta_conjugate = eta_conjugate;
    b.squeezing_linear = squeezing_with_loss(gain, eta_probe, eta_conjugate);
    b.squeezing_db = to_db(b.squeezing_linear);
    return b;
}

SqueezingFloor squeezing_floor(double eta_probe, double eta_conjugate) {
    check_eta(eta_probe);
    check_eta(eta_conjugate);
    const Rational s(eta_probe, eta_conjugate);
    const double g_star = s.stationary();
    if (std::isinf(g_star)) {
        const double limit = s.b / s.d;
        if (limit < 1.0) return {limit, g_star};
        return {1.0, 1.0};
    }
    if (g_star <= 1.0) return {1.0, 1.0};
    return {squeezing_with_loss(g_star, eta_probe, eta_conjugate), g_star};
}

double infer_gain(double target_db, double eta_probe, double eta_conjugate) {
    const double target = from_db(target_db);
    const auto floor = squeezing_floor(eta_probe, eta_conjugate);
    const auto residual = [&](double g) { return squeezing_with_loss(g, eta_probe, eta_conjugate) - target; };
    if (std::abs(target - 1.0) <= 1e-15) return 1.0;

    const auto unreachable = [&] {
        std::ostringstream msg;
        msg << "squeezing target " << target_db << " dB is unreachable; minimum achievable is "
            << to_db(floor.min_linear) << " dB (" << floor.min_linear << " linear)";
        return UnreachableTargetError(msg.str(), floor.min_linear);
    };

    // Expands hi from `lo` until the residual changes sign.
    const auto bracket_up = [&](double lo) {
        double hi = std::max(2.0 * lo, 2.0);
        const bool sign_lo = residual(lo) < 0.0;
        for (int i = 0; i < 1100; ++i, hi *= 2.0) {
            if (!std::isfinite(hi)) break;
            if ((residual(hi) < 0.0) != sign_lo) return bisect(residual, lo, hi);
        }
        throw unreachable();
    };

    if (target < 1.0) {
        if (!(floor.min_linear < target)) throw unreachable();
        if (std::isinf(floor.at_gain)) return bracket_up(1.0);
        return bisect(residual, 1.0, floor.at_gain);
    }
    // target above the QNL
    if (floor.at_gain <= 1.0) return bracket_up(1.0);  // S rises from G = 1
    if (std::isinf(floor.at_gain)) throw unreachable();
    return bracket_up(floor.at_gain);
}

double subtract_electronic_noise(double measured_linear, double floor_linear) {
    if (!(floor_linear >= 0.0)) throw DomainError("electronic floor must be non-negative");
    if (!(measured_linear <= 1.0)) throw DomainError("measured noise must be normalised to the measured QNL (<= 1)");
    if (!(floor_linear < measured_linear)) throw DomainError("electronic floor must lie below the measured noise");
    return (measured_linear - floor_linear) / (1.0 - floor_linear);
}

double fit_electronic_floor(double raw_db, double corrected_db) {
    const double raw = from_db(raw_db);
    const double corrected = from_db(corrected_db);
    if (!(corrected < raw && raw <= 1.0)) {
        throw DomainError("electronic-noise correction needs corrected < raw <= 0 dB");
    }
    return (raw - corrected) / (1.0 - corrected);
}

void GainModelParams::validate() const {
    if (!(amplitude_mhz2 >= 0.0) || !std::isfinite(amplitude_mhz2)) {
        throw DomainError("gain amplitude must be finite and non-negative");
    }
    if (!(width_mhz > 0.0) || !std::isfinite(width_mhz)) throw DomainError("gain width must be positive");
}

namespace {

double model_gain(double kappa, double mismatch_mhz, const GainModelParams& params) {
    const double x = mismatch_mhz / params.width_mhz;
    return 1.0 + params.amplitude_mhz2 * kappa * kappa * std::exp(-0.5 * x * x);
}

bool on_raman_line(const RamanDetunings& r) {
    return std::abs(r.lambda1_mhz) < kRamanLineToleranceMhz || std::abs(r.lambda2_mhz) < kRamanLineToleranceMhz;
}

}  // namespace

std::optional<double> gain_at(const FrequencyPlanner& planner, FrequencyOffset pump, double delta_mhz,
                              double pump_power_mw, const GainModelParams& params) {
    params.validate();
    const auto raman = planner.raman_detunings(pump);
    if (on_raman_line(raman)) return std::nullopt;
    const double kappa = 1.0 / raman.lambda1_mhz + 1.0 / raman.lambda2_mhz;
    const double shift = planner.light_shift(pump_power_mw, raman.lambda2_mhz);
    return model_gain(kappa, delta_mhz - shift, params);
}

std::vector<std::optional<double>> gain_profile(const FrequencyPlanner& planner,
                                                std::span<const FrequencyOffset> pump_scan, double delta_mhz,
                                                double pump_power_mw, const GainModelParams& params) {
    std::vector<std::optional<double>> out;
    out.reserve(pump_scan.size());
    for (const auto pump : pump_scan) out.push_back(gain_at(planner, pump, delta_mhz, pump_power_mw, params));
    return out;
}

void OpticsBudget::validate() const {
    check_eta(eta_optics);
    check_eta(eta_detector);
}

std::vector<double> SweepCurve::detunings() const {
    std::vector<double> out;
    out.reserve(samples.size());
    for (const auto& s : samples) out.push_back(s.probe_detuning_mhz);
    return out;
}

std::vector<double> SweepCurve::squeezing_db() const {
    std::vector<double> out;
    out.reserve(samples.size());
    for (const auto& s : samples) out.push_back(s.squeezing_db);
    return out;
}

SweepGeometry prepare_sweep(const FrequencyPlanner& planner, const VaporModel& vapor, const SweepSetup& setup,
                            std::span<const double> probe_detunings) {
    setup.cell.validate();
    setup.optics.validate();
    if (setup.probe_target.isotope != Isotope::Rb87) throw DomainError("sweep target must be an 87Rb line");
    if (!(setup.pump_power_mw > 0.0)) throw DomainError("pump power must be positive");
    for (std::size_t i = 1; i < probe_detunings.size(); ++i) {
        if (!(probe_detunings[i] > probe_detunings[i - 1])) {
            throw DomainError("sweep detunings must be strictly increasing");
        }
    }

    const FrequencyOffset target = planner.ledger().transition_frequency(setup.probe_target);
    const double half = planner.hf85() + setup.delta_mhz;
    SweepGeometry geometry;
    geometry.delta_mhz = setup.delta_mhz;
    geometry.points.reserve(probe_detunings.size());
    for (const double d : probe_detunings) {
        const auto beams = planner.beams_at(target + (d + half), setup.delta_mhz);
        const auto raman = planner.raman_detunings(beams.pump);
        if (on_raman_line(raman)) {
            ++geometry.flagged;
            continue;
        }
        geometry.points.push_back({d, vapor.transmission(beams.probe, setup.cell) * setup.optics.product(),
                                   vapor.transmission(beams.conjugate, setup.cell) * setup.optics.product(),
                                   1.0 / raman.lambda1_mhz + 1.0 / raman.lambda2_mhz,
                                   planner.light_shift(setup.pump_power_mw, raman.lambda2_mhz)});
    }
    return geometry;
}

SweepCurve evaluate_sweep(const SweepGeometry& geometry, const GainModelParams& params) {
    params.validate();
    SweepCurve curve;
    curve.flagged = geometry.flagged;
    curve.samples.reserve(geometry.points.size());
    for (const auto& pt : geometry.points) {
        const double gain = model_gain(pt.kappa, geometry.delta_mhz - pt.light_shift_mhz, params);
        curve.samples.push_back({pt.probe_detuning_mhz, gain, pt.eta_probe, pt.eta_conjugate,
                                 to_db(squeezing_with_loss(gain, pt.eta_probe, pt.eta_conjugate))});
    }
    return curve;
}

SweepCurve squeezing_sweep(const FrequencyPlanner& planner, const VaporModel& vapor, const SweepSetup& setup,
                           std::span<const double> probe_detunings, const GainModelParams& params) {
    return evaluate_sweep(prepare_sweep(planner, vapor, setup, probe_detunings), params);
}

std::optional<SqueezingWindow> squeezing_window(const SweepCurve& curve, double threshold_db) {
    const auto& s = curve.samples;
    if (s.empty()) return std::nullopt;
    const auto best = std::ranges::min_element(s, {}, &SweepSample::squeezing_db);
    if (!(best->squeezing_db < -threshold_db)) return std::nullopt;
    auto lo = best;
    while (lo != s.begin() && std::prev(lo)->squeezing_db < -threshold_db) --lo;
    auto hi = best;
    while (std::next(hi) != s.end() && std::next(hi)->squeezing_db < -threshold_db) ++hi;
    return SqueezingWindow{lo->probe_detuning_mhz, hi->probe_detuning_mhz, best->squeezing_db,
                           best->probe_detuning_mhz};
}

}  // namespace fwm
