#pragma once

// Frequency-integrated capacities.  With F(x) the per-mode occupation profile
// and x = omega/Omega,
//
//     f  = integral_0^inf x F(x) dx
//     W  = (ln2/pi) sqrt(3 / (2 f)) integral_0^inf w(F(x), Nbar(x), eta) dx
//
// and the capacity (or bound) is T * R_C * W.  Thermal channels also carry
// y0 = omegabar/Omega, fixed by y0^2 = (6/pi^2) rho_t^2 f(y0).

#include <string>
#include <utility>
#include <vector>

#include "broadband/lagrange_solver.hpp"
#include "broadband/noise_models.hpp"
#include "broadband/special_functions.hpp"

namespace broadband {

/// An interval of x on which photons are sent.
struct Support {
    double lo = 0.0;
    double hi = 0.0;
};

struct ProfileIntegrals {
    double f_value = 0.0;        ///< integral of x F(x)
    double rate_integral = 0.0;  ///< integral of w(F(x), Nbar(x), eta)
    double x_end = 0.0;          ///< integrals are truncated here
    std::vector<Support> support;
};

struct SpectrumSolution {
    Quantity quantity = Quantity::CE;
    ChannelSpec spec;
    double y0 = 0.0;
    double f_value = 0.0;
    double rate_integral = 0.0;
    double factor = 0.0;
    std::vector<Support> support;
    std::vector<OccupationPoint> profile;
};

/// Thermal with rho_t = 0 is the lossy channel.
ChannelSpec effective_spec(const ChannelSpec& spec);

/// Solves the profile at fixed y0 and integrates it.
ProfileIntegrals integrate_profile(Quantity q, const ChannelSpec& spec, double y0);

double f_integral(Quantity q, const ChannelSpec& spec, double y0);

/// y0 of the given quantity; 0 for channels without a characteristic frequency.
double solve_y0(Quantity q, const ChannelSpec& spec);

/// (ln2/pi) sqrt(3/(2f)) * rate_integral, or 0 when nothing is sent.
double factor_from_integrals(double f_value, double rate_integral);

SpectrumSolution capacity_factor(Quantity q, const ChannelSpec& spec, int profile_points = 64);

/// Evenly spaced samples of the occupation profile on (0, x_max].
std::vector<OccupationPoint> sample_profile(Quantity q, const ChannelSpec& spec, double y0, double x_max,
                                            int points);

/// Closed-form classical lower-bound factor for Loss, WhiteNoise and Thermal.
double analytic_K(const ChannelSpec& spec);

/// Closed-form energy integral of the white-noise classical profile.
double analytic_f_white(double eta, double nbar);

/// Closed-form classical y0 below the critical temperature (rho_t <= 1).
double thermal_y0_lowT(double rho_t, double eta);

double analytic_K_thermal_lowT(double rho_t, double eta);
double analytic_K_thermal_highT(double rho_t, double eta);

/// Alternative quantum bound max(C_E - 1, 0) in units of T R_C.
double q_alt_bound(double ce_factor);

/// Lagrange frequency scale Omega = sqrt(2 pi P / (hbar f)), rad/s.
double omega_scale(double f_value, const PhysicalInputs& p);
double omega_scale(Quantity q, const ChannelSpec& spec, const PhysicalInputs& p);

struct CapacityReport {
    ChannelSpec spec;
    double ce_factor = 0.0;
    double c_lower_factor = 0.0;
    double c_upper_factor = 0.0;  ///< min(1, ce_factor)
    double q_lower_factor = 0.0;
    double q_alt_factor = 0.0;
    double qe_factor = 0.0;       ///< ce_factor / 2
    double y0_ce = 0.0;
    double y0_c = 0.0;
    double y0_q = 0.0;
    double rc_bits_per_sec = 0.0;
    double transmission_time = 0.0;

    /// factor * T * R_C, in bits.
    double absolute(double factor) const { return factor * transmission_time * rc_bits_per_sec; }
};

CapacityReport capacity_report(const ChannelSpec& spec, const PhysicalInputs& p);

}  // namespace broadband
