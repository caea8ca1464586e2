#include "fwm/gaussian_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "fwm/error.hpp"

namespace fwm::oracle {

GaussianState GaussianState::coherent(double alpha1, double alpha2) {
    GaussianState s;
    s.means << 2.0 * alpha1, 0.0, 2.0 * alpha2, 0.0;
    return s;
}

Matrix4 symplectic_form() {
    Matrix4 omega = Matrix4::Zero();
    omega(0, 1) = 1.0;
    omega(1, 0) = -1.0;
    omega(2, 3) = 1.0;
    omega(3, 2) = -1.0;
    return omega;
}

Eigen::Vector2d GaussianState::symplectic_spectrum() const {
    // Eigenvalues of Omega * cov come in pairs +-i nu.
    const Eigen::EigenSolver<Matrix4> solver(symplectic_form() * cov, false);
    std::array<double, 4> nu{};
    for (int i = 0; i < 4; ++i) nu[i] = std::abs(solver.eigenvalues()[i].imag());
    std::ranges::sort(nu);
    return {0.5 * (nu[0] + nu[1]), 0.5 * (nu[2] + nu[3])};
}

bool GaussianState::is_physical(double tol) const {
    const double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
    if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) return false;
    return symplectic_spectrum().minCoeff() >= 1.0 - tol;
}

double GaussianState::mean_photon_number(int mode) const {
    if (mode != 0 && mode != 1) throw DomainError("mode index must be 0 or 1");
    const int i = 2 * mode;
    return (means(i) * means(i) + means(i + 1) * means(i + 1) + cov(i, i) + cov(i + 1, i + 1) - 2.0) / 4.0;
}

Matrix4 two_mode_squeezer(double r) {
    if (!(r >= 0.0)) throw DomainError("squeeze parameter must be non-negative");
    const double c = std::cosh(r);
    const double s = std::sinh(r);
    Matrix4 m;
    // clang-format off
    m << c,  0,  s,  0,
         0,  c,  0, -s,
         s,  0,  c,  0,
         0, -s,  0,  c;
    // clang-format on
    return m;
}

GaussianState two_mode_squeeze(const GaussianState& state, double r) {
    const Matrix4 s = two_mode_squeezer(r);
    return {s * state.means, s * state.cov * s.transpose()};
}

GaussianState apply_loss(const GaussianState& state, double eta1, double eta2) {
    for (double eta : {eta1, eta2}) {
        if (!(eta > 0.0 && eta <= 1.0)) throw DomainError("loss transmission must lie in (0, 1]");
    }
    const Vector4 x{std::sqrt(eta1), std::sqrt(eta1), std::sqrt(eta2), std::sqrt(eta2)};
    const Vector4 noise{1.0 - eta1, 1.0 - eta1, 1.0 - eta2, 1.0 - eta2};
    GaussianState out;
    out.means = x.cwiseProduct(state.means);
    out.cov = x.asDiagonal() * state.cov * x.asDiagonal();
    out.cov.diagonal() += noise;
    return out;
}

double intensity_diff_ratio(const GaussianState& state) {
    const double a1 = 0.5 * state.means(0);
    const double a2 = 0.5 * state.means(2);
    if (a1 == 0.0 || a2 == 0.0) throw DomainError("intensity difference needs nonzero mean fields in both modes");
    const Vector4 a{a1, 0.0, -a2, 0.0};
    return a.dot(state.cov * a) / (a1 * a1 + a2 * a2);
}

double simulate_squeezing(double gain, double eta_probe, double eta_conjugate, double seed_alpha) {
    if (!(gain > 1.0)) throw DomainError("oracle needs gain > 1 so the conjugate carries a mean field");
    const double r = std::acosh(std::sqrt(gain));
    const auto amplified = two_mode_squeeze(GaussianState::coherent(seed_alpha, 0.0), r);
    return intensity_diff_ratio(apply_loss(amplified, eta_probe, eta_conjugate));
}

}  // namespace fwm::oracle
