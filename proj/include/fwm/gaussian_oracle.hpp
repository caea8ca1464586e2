#pragma once

// Two-mode Gaussian-state simulator used as an independent check on the
// closed-form noise budget.
//
// Quadratures are ordered (x1, p1, x2, p2) with x = a + a^dagger, so the
// vacuum covariance is the identity and a coherent amplitude alpha has
// <x> = 2 alpha. Mean fields are kept real.

#include <Eigen/Dense>

namespace fwm::oracle {

using Vector4 = Eigen::Matrix<double, 4, 1>;
using Matrix4 = Eigen::Matrix<double, 4, 4>;

struct GaussianState {
    Vector4 means = Vector4::Zero();
    Matrix4 cov = Matrix4::Identity();

    static GaussianState vacuum() { return {}; }
    /// Coherent amplitudes alpha1, alpha2 (real).
    static GaussianState coherent(double alpha1, double alpha2);

    /// Symplectic eigenvalues, ascending.
    Eigen::Vector2d symplectic_spectrum() const;
    /// cov symmetric and every symplectic eigenvalue >= 1 - tol.
    bool is_physical(double tol = 1e-9) const;
    double mean_photon_number(int mode) const;
};

/// Symplectic form diag(J, J), J = [[0, 1], [-1, 0]].
Matrix4 symplectic_form();

/// Two-mode squeezer with G = cosh^2 r: x-x correlated, p-p anticorrelated.
Matrix4 two_mode_squeezer(double r);

GaussianState two_mode_squeeze(const GaussianState& state, double r);

/// Independent beamsplitter losses with transmissions eta1, eta2.
GaussianState apply_loss(const GaussianState& state, double eta1, double eta2);

/// Linearized photon-number-difference variance over the shot-noise level.
double intensity_diff_ratio(const GaussianState& state);

/// Seeded amplifier followed by losses, evaluated on the state level.
double simulate_squeezing(double gain, double eta_probe, double eta_conjugate, double seed_alpha = 1.0);

}  // namespace fwm::oracle
