#pragma once

// Per-mode constrained maximization.  With Lagrange multiplier 1/(Omega ln2)
// each mode at scaled frequency x = omega/Omega independently maximizes
//
//     phi(N) = w(N, Nbar(x), eta) - x N / ln2,     N >= 0,
//
// where w is c_E, k or q (or their dephasing forms).  The maximizer is the
// occupation profile F(x) whose frequency integrals give the capacities.

#include "broadband/gaussian_core.hpp"
#include "broadband/noise_models.hpp"

namespace broadband {

struct ModeSolveRequest {
    Quantity quantity = Quantity::CE;
    ChannelSpec spec;
    double x = 1.0;   ///< omega / Omega, > 0
    double y0 = 0.0;  ///< omegabar / Omega, > 0 iff thermal
};

struct OccupationPoint {
    double x = 0.0;
    double n = 0.0;
    bool clamped = false;  ///< no photons sent: phi has no positive interior maximum
};

/// Kernel value for the request's quantity at occupation n, with the
/// reservoir occupation the channel imposes at that frequency.
double mode_kernel(const ModeSolveRequest& req, double n);

/// phi(n) in bits.
double mode_objective(const ModeSolveRequest& req, double n);

/// dphi/dn in bits per photon.
double mode_objective_derivative(const ModeSolveRequest& req, double n);

/// Relative residual of the stationarity equation at n > 0, written in the
/// log form ln(lhs) - ln(rhs) of the tabulated Lagrange equations and scaled
/// by the largest term.
double stationarity_residual(const ModeSolveRequest& req, double n);

/// Numerical argmax of phi over n >= 0.  Throws ConvergenceError if the
/// maximum cannot be bracketed.
OccupationPoint mode_occupation(const ModeSolveRequest& req);

/// Closed-form occupation for the classical lower bound (Loss, WhiteNoise,
/// Thermal), clamped at zero where the stationary point is negative.
OccupationPoint analytic_occupation_k(const ChannelSpec& spec, double x, double y0);

/// Joint solution of the cutoff condition and the energy constraint for the
/// high-temperature thermal classical bound.  The cutoff sits at
/// x_max = eta ln(xi); xi itself overflows near the transition, so ln(xi) is
/// carried alongside it.
struct HighTemperatureParams {
    double eta = 0.0;
    double xi = 0.0;      ///< > 1, may be +inf when rho_t is within rounding of 1
    double log_xi = 0.0;
    double y0 = 0.0;      ///< y0 of the classical bound, in (eta, eta/(1-eta))
    double cutoff_residual = 0.0;  ///< relative residual of xi^(eta/y0) - (1-eta) xi - eta = 0
    double energy_residual = 0.0;  ///< relative residual of the energy equation

    double x_max() const { return eta * log_xi; }
};

/// Requires rho_t > 1 and 0 < eta < 1; throws DomainError otherwise.
HighTemperatureParams thermal_highT_params(double rho_t, double eta);

struct HighTemperatureResiduals {
    double cutoff = 0.0;
    double energy = 0.0;
};

/// Relative residuals of both equations at an arbitrary (ln xi, y0).
HighTemperatureResiduals thermal_highT_residuals(double rho_t, double eta, double log_xi, double y0);

}  // namespace broadband
