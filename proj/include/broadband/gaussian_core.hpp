#pragma once

// Closed-form single-mode entropy kernels for a beam-splitter channel that
// mixes a signal mode (mean photon number N) with a thermal reservoir mode
// (mean photon number Nbar) at transmissivity eta.
//
// All kernels are in bits per mode.  Everything here is a pure function.

#include <cmath>

namespace broadband {

/// Which capacity a kernel or solver refers to.  For the dephasing kernels
/// CLower selects the Holevo kernel k.
enum class Quantity { CE, CLower, QLower };

const char* to_string(Quantity q);

struct ModeParams {
    double N = 0.0;     ///< signal photons
    double Nbar = 0.0;  ///< reservoir photons
    double eta = 1.0;   ///< quantum efficiency
};

/// Throws DomainError when N < 0, Nbar < 0 or eta outside [0, 1].
void validate(const ModeParams& p);

/// Per-mode derived quantities together with a kernel value.
struct KernelEval {
    double nprime = 0.0;  ///< output photon number eta*N + (1-eta)*Nbar
    double dfac = 1.0;    ///< D factor, always >= 1
    double afac = 0.0;    ///< dD/dN, the A factor of the stationarity equations
    double value = 0.0;   ///< kernel value in bits
};

/// g(x) = (x+1) log2(x+1) - x log2 x, the entropy of a thermal state with mean
/// occupation x.  Tiny negative rounding noise (>= -1e-12) is clamped to 0.
double g_entropy(double x);

/// dg/dx = log2(1 + 1/x); +inf at 0.
double g_entropy_derivative(double x);

double output_photons(const ModeParams& p);
double d_factor(const ModeParams& p);
double a_factor(const ModeParams& p);

/// The two arguments (D + N - N' - 1)/2 and (D - N + N' - 1)/2 that enter the
/// exchange entropy.  Evaluated without cancellation, so both are exactly >= 0.
struct ExchangeArgs {
    double plus = 0.0;
    double minus = 0.0;
};
ExchangeArgs exchange_args(const ModeParams& p);

double kernel_ce(const ModeParams& p);
double kernel_k(const ModeParams& p);
double kernel_q(const ModeParams& p);

/// Dispatches on quantity: CE -> c_E, CLower -> k, QLower -> q.
double kernel(Quantity q, const ModeParams& p);

/// Kernel with every derived quantity filled in.
KernelEval evaluate(Quantity q, const ModeParams& p);

/// Kernels with the reservoir occupation tied to the signal (Nbar = N).
double dephasing_d_factor(double N, double eta);
double kernel_dephasing(Quantity kind, double N, double eta);

/// d(kernel)/dN in bits per photon, holding Nbar fixed.
double kernel_derivative(Quantity q, const ModeParams& p);

/// d(kernel_dephasing)/dN in bits per photon (Nbar follows N).
double kernel_dephasing_derivative(Quantity kind, double N, double eta);

}  // namespace broadband
