#include "broadband/gaussian_core.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <string>

#include "broadband/errors.hpp"

namespace broadband {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kRoundingTolerance = 1e-12;
constexpr double kSeriesThreshold = 1e-8;

// c * ln(1 + 1/u), with the convention that a vanishing argument carries a
// vanishing coefficient (the corresponding eigenvalue is pinned at 1/2).
double weighted_log_term(double coefficient, double u) {
    if (u <= 0.0) return 0.0;
    return coefficient * std::log1p(1.0 / u);
}

}  // namespace

const char* to_string(Quantity q) {
    switch (q) {
        case Quantity::CE: return "ce";
        case Quantity::CLower: return "c_lower";
        case Quantity::QLower: return "q_lower";
    }
    return "?";
}

void validate(const ModeParams& p) {
    if (!(p.N >= 0.0)) throw DomainError("signal photon number must be >= 0, got " + std::to_string(p.N));
    if (!(p.Nbar >= 0.0)) throw DomainError("reservoir photon number must be >= 0, got " + std::to_string(p.Nbar));
    if (!(p.eta >= 0.0 && p.eta <= 1.0))
        throw DomainError("quantum efficiency must lie in [0, 1], got " + std::to_string(p.eta));
}

double g_entropy(double x) {
    if (!(x >= -kRoundingTolerance)) throw DomainError("g_entropy: negative argument " + std::to_string(x));
    if (x <= 0.0) return 0.0;
    if (x < kSeriesThreshold) return x * (std::log(1.0 / x) + 1.0) / kLn2;
    // log2(1+x) + x log2(1+1/x): no cancellation for large x.
    return (std::log1p(x) + x * std::log1p(1.0 / x)) / kLn2;
}

double g_entropy_derivative(double x) {
    if (!(x >= -kRoundingTolerance)) throw DomainError("g_entropy_derivative: negative argument");
    if (x <= 0.0) return std::numeric_limits<double>::infinity();
    return std::log1p(1.0 / x) / kLn2;
}

double output_photons(const ModeParams& p) { return p.eta * p.N + (1.0 - p.eta) * p.Nbar; }

// D^2 = (N+N'+1)^2 - 4 eta N (N+1) rewritten as a sum of non-negative terms:
//   D^2 = (N - N' + 1)^2 + 4 (N+1)(1-eta) Nbar,   N - N' = (1-eta)(N - Nbar).
double d_factor(const ModeParams& p) {
    const double diff = (1.0 - p.eta) * (p.N - p.Nbar);
    const double radicand = (diff + 1.0) * (diff + 1.0) + 4.0 * (p.N + 1.0) * (1.0 - p.eta) * p.Nbar;
    if (radicand < -kRoundingTolerance) throw NumericError("d_factor: negative radicand");
    return std::sqrt(std::max(radicand, 0.0));
}

double a_factor(const ModeParams& p) {
    const double nprime = output_photons(p);
    return ((1.0 - 3.0 * p.eta) * p.N + (1.0 - p.eta) + (1.0 + p.eta) * nprime) / d_factor(p);
}

// (D + diff - 1)/2 = 2(1-eta) N (Nbar+1) / (D + 1 - diff)
// (D - diff - 1)/2 = 2(1-eta)(N+1) Nbar  / (D + 1 + diff)
// The ratio forms are used whenever their denominators are free of
// cancellation; otherwise the direct forms are.
ExchangeArgs exchange_args(const ModeParams& p) {
    const double D = d_factor(p);
    const double diff = (1.0 - p.eta) * (p.N - p.Nbar);
    ExchangeArgs out;
    if (1.0 - diff >= 0.0) {
        out.plus = 2.0 * (1.0 - p.eta) * p.N * (p.Nbar + 1.0) / (D + 1.0 - diff);
    } else {
        out.plus = 0.5 * (D + diff - 1.0);
    }
    if (1.0 + diff >= 0.0) {
        out.minus = 2.0 * (1.0 - p.eta) * (p.N + 1.0) * p.Nbar / (D + 1.0 + diff);
    } else {
        out.minus = 0.5 * (D - diff - 1.0);
    }
    out.plus = std::max(out.plus, 0.0);
    out.minus = std::max(out.minus, 0.0);
    return out;
}

double kernel_ce(const ModeParams& p) {
    validate(p);
    const auto u = exchange_args(p);
    return g_entropy(p.N) + g_entropy(output_photons(p)) - g_entropy(u.plus) - g_entropy(u.minus);
}

double kernel_k(const ModeParams& p) {
    validate(p);
    return g_entropy(output_photons(p)) - g_entropy((1.0 - p.eta) * p.Nbar);
}

double kernel_q(const ModeParams& p) {
    validate(p);
    const auto u = exchange_args(p);
    return g_entropy(output_photons(p)) - g_entropy(u.plus) - g_entropy(u.minus);
}

double kernel(Quantity q, const ModeParams& p) {
    switch (q) {
        case Quantity::CE: return kernel_ce(p);
        case Quantity::CLower: return kernel_k(p);
        case Quantity::QLower: return kernel_q(p);
    }
    return 0.0;
}

KernelEval evaluate(Quantity q, const ModeParams& p) {
    validate(p);
    KernelEval e;
    e.nprime = output_photons(p);
    e.dfac = d_factor(p);
    e.afac = a_factor(p);
    e.value = kernel(q, p);
    return e;
}

double dephasing_d_factor(double N, double eta) {
    return std::sqrt(1.0 + 4.0 * N * (N + 1.0) * (1.0 - eta));
}

namespace {

// (D~ - 1)/2 without cancellation.
double dephasing_arg(double N, double eta, double dtilde) {
    return 2.0 * N * (N + 1.0) * (1.0 - eta) / (dtilde + 1.0);
}

}  // namespace

double kernel_dephasing(Quantity kind, double N, double eta) {
    validate({N, N, eta});
    const double dt = dephasing_d_factor(N, eta);
    const double u = dephasing_arg(N, eta, dt);
    switch (kind) {
        case Quantity::CE: return 2.0 * (g_entropy(N) - g_entropy(u));
        case Quantity::CLower: return g_entropy(N) - g_entropy((1.0 - eta) * N);
        case Quantity::QLower: return g_entropy(N) - 2.0 * g_entropy(u);
    }
    return 0.0;
}

double kernel_derivative(Quantity q, const ModeParams& p) {
    if (!(p.N > 0.0)) return std::numeric_limits<double>::infinity();
    const double nprime = output_photons(p);
    const double out_term = weighted_log_term(p.eta, nprime);
    if (q == Quantity::CLower) return out_term / kLn2;

    const double A = a_factor(p);
    const auto u = exchange_args(p);
    double value = out_term - weighted_log_term(0.5 * (A + 1.0 - p.eta), u.plus) -
                   weighted_log_term(0.5 * (A - 1.0 + p.eta), u.minus);
    if (q == Quantity::CE) value += std::log1p(1.0 / p.N);
    return value / kLn2;
}

double kernel_dephasing_derivative(Quantity kind, double N, double eta) {
    if (!(N > 0.0)) return std::numeric_limits<double>::infinity();
    const double input_term = std::log1p(1.0 / N);
    if (kind == Quantity::CLower) {
        const double lost = (1.0 - eta) * N;
        return (input_term - weighted_log_term(1.0 - eta, lost)) / kLn2;
    }
    const double dt = dephasing_d_factor(N, eta);
    const double u = dephasing_arg(N, eta, dt);
    const double exchange = weighted_log_term((1.0 - eta) * (2.0 * N + 1.0) / dt, u);
    if (kind == Quantity::CE) return 2.0 * (input_term - exchange) / kLn2;
    return (input_term - 2.0 * exchange) / kLn2;
}

}  // namespace broadband
