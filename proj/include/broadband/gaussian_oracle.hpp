#pragma once

// Single-mode Gaussian-state entropies built from the correlation-matrix
// eigenvalues rather than from the closed-form kernels.  Used to cross-check
// gaussian_core and to show that squeezing never helps the mutual
// information at fixed photon number.
//
// Conventions: hbar = 1, so lam_plus/lam_minus are eigenvalues of the
// (dimensionless) input correlation matrix and a vacuum has lam = 1/2.

#include <vector>

#include "broadband/gaussian_core.hpp"

namespace broadband::oracle {

/// Correlation matrix alpha = (1/2) [[n0 e^r, c], [c, n0 e^-r]] plus the
/// displacement offset m.
struct GaussianModeState {
    double n0 = 1.0;
    double r = 0.0;
    double c = 0.0;
    double m = 0.0;

    double mean_photons() const;
};

struct SpectralPair {
    double lam_plus = 0.5;
    double lam_minus = 0.5;
    double lamp_plus = 0.5;   ///< after the channel
    double lamp_minus = 0.5;  ///< after the channel
};

struct ExchangeEigenvalues {
    double l0 = 0.0;
    double l1 = 0.0;
    /// Moduli of the four eigenvalues; they come in +/- pairs, so
    /// lam[0] == lam[1] and lam[2] == lam[3].
    double lam[4] = {0.5, 0.5, 0.5, 0.5};
};

/// Throws DomainError naming the violated bound when n0 < sqrt(c^2+1)
/// (uncertainty) or m < 0.
GaussianModeState make_state(double n0, double r, double c, double m);

/// Unsqueezed, undisplaced state with mean photon number N.
GaussianModeState thermal_state(double N);

SpectralPair spectrum(const GaussianModeState& s, const ModeParams& ch);
ExchangeEigenvalues exchange_eigenvalues(const GaussianModeState& s, const ModeParams& ch);

double input_entropy(const GaussianModeState& s);
double output_entropy(const GaussianModeState& s, const ModeParams& ch);
double exchange_entropy(const GaussianModeState& s, const ModeParams& ch);
double mutual_information(const GaussianModeState& s, const ModeParams& ch);
double coherent_information(const GaussianModeState& s, const ModeParams& ch);

struct SqueezingScan {
    std::vector<double> lambda_diff;
    std::vector<double> mutual_info_bits;
    std::size_t argmax = 0;
    double argmax_diff = 0.0;
    bool maximum_at_zero = false;  ///< argmax within one grid step of 0
};

/// Scans lam_plus - lam_minus over [-2N, 2N] at fixed lam_plus + lam_minus =
/// 2N + 1 (m = 0) and records the mutual information along the way.
SqueezingScan verify_no_squeezing(double N, const ModeParams& ch, int grid_size);

}  // namespace broadband::oracle
