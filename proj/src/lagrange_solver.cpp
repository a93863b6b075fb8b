#include "broadband/lagrange_solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "broadband/errors.hpp"
#include "broadband/special_functions.hpp"

namespace broadband {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kPi2Over6 = std::numbers::pi * std::numbers::pi / 6.0;

constexpr int kScanPoints = 64;
constexpr double kScanLow = 1e-9;
constexpr int kMaxExtensions = 40;
constexpr std::uintmax_t kMaxIterations = 200;

// Ratio form of ln(1 + 1/u) weighted by a coefficient, zero when u vanishes.
double log_term(double coefficient, double u) {
    if (u <= 0.0) return 0.0;
    return coefficient * std::log1p(1.0 / u);
}

void check_request(const ModeSolveRequest& req) {
    if (!(req.x > 0.0) || !std::isfinite(req.x))
        throw DomainError("mode solve: scaled frequency x must be finite and > 0");
    validate(req.spec);
}

std::string bracket_state(const ModeSolveRequest& req, double lo, double hi) {
    std::ostringstream os;
    os << "quantity=" << to_string(req.quantity) << " model=" << to_string(req.spec.model)
       << " eta=" << req.spec.eta << " x=" << req.x << " bracket=[" << lo << ", " << hi << "]";
    return os.str();
}

}  // namespace

double mode_kernel(const ModeSolveRequest& req, double n) {
    if (req.spec.model == NoiseModel::Dephasing) return kernel_dephasing(req.quantity, n, req.spec.eta);
    return kernel(req.quantity, {n, nbar_at(req.spec, req.x, req.y0), req.spec.eta});
}

double mode_objective(const ModeSolveRequest& req, double n) {
    return mode_kernel(req, n) - req.x * n / kLn2;
}

double mode_objective_derivative(const ModeSolveRequest& req, double n) {
    const double dw = req.spec.model == NoiseModel::Dephasing
                          ? kernel_dephasing_derivative(req.quantity, n, req.spec.eta)
                          : kernel_derivative(req.quantity, {n, nbar_at(req.spec, req.x, req.y0), req.spec.eta});
    return dw - req.x / kLn2;
}

double stationarity_residual(const ModeSolveRequest& req, double n) {
    if (!(n > 0.0)) throw DomainError("stationarity_residual: n must be > 0");
    const double eta = req.spec.eta;
    double lhs = 0.0;
    double rhs = req.x;

    if (req.spec.model == NoiseModel::Dephasing) {
        const double dt = dephasing_d_factor(n, eta);
        // 1 + 2/(D~ - 1) = 1 + 1/u with u = (D~ - 1)/2.
        const double u = 2.0 * n * (n + 1.0) * (1.0 - eta) / (dt + 1.0);
        const double exponent = 2.0 * (1.0 - eta) * (2.0 * n + 1.0) / dt;
        switch (req.quantity) {
            case Quantity::CE:
                lhs = 2.0 * std::log1p(1.0 / n);
                rhs += log_term(exponent, u);
                break;
            case Quantity::CLower:
                lhs = std::log1p(1.0 / n);
                rhs += log_term(1.0 - eta, (1.0 - eta) * n);
                break;
            case Quantity::QLower:
                lhs = std::log1p(1.0 / n);
                rhs += log_term(exponent, u);
                break;
        }
    } else {
        const ModeParams p{n, nbar_at(req.spec, req.x, req.y0), eta};
        const double nprime = output_photons(p);
        lhs = log_term(eta, nprime);
        if (req.quantity != Quantity::CLower) {
            const double A = a_factor(p);
            const auto u = exchange_args(p);
            rhs += log_term(0.5 * (A + 1.0 - eta), u.plus) + log_term(0.5 * (A - 1.0 + eta), u.minus);
            if (req.quantity == Quantity::CE) lhs += std::log1p(1.0 / n);
        }
    }
    const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    return std::abs(lhs - rhs) / scale;
}

OccupationPoint mode_occupation(const ModeSolveRequest& req) {
    check_request(req);
    const double x = req.x;
    auto phi = [&](double n) { return mode_objective(req, n); };
    auto dphi = [&](double n) { return mode_objective_derivative(req, n); };

    // Log-spaced scan; the grid is extended upward while the best point sits
    // on its upper edge.
    double n_hi = std::max(10.0, 10.0 / x);
    std::array<double, kScanPoints> grid{};
    std::array<double, kScanPoints> values{};
    const double ratio = std::pow(n_hi / kScanLow, 1.0 / (kScanPoints - 1));
    double n = kScanLow;
    for (int i = 0; i < kScanPoints; ++i, n *= ratio) {
        grid[i] = n;
        values[i] = phi(n);
    }
    const auto best_it = std::max_element(values.begin(), values.end());
    int best = static_cast<int>(best_it - values.begin());

    double lo = 0.0;
    double hi = 0.0;
    if (values[best] <= 0.0) {
        // Nothing on the grid beats sending no photons; only (0, kScanLow) is left.
        hi = grid[0];
    } else if (best == kScanPoints - 1) {
        lo = grid[best - 1];
        double prev = values[best];
        double cur = grid[best];
        int ext = 0;
        for (; ext < kMaxExtensions; ++ext) {
            const double next = cur * 10.0;
            const double v = phi(next);
            if (v < prev) {
                hi = next;
                break;
            }
            lo = cur;
            cur = next;
            prev = v;
        }
        if (ext == kMaxExtensions)
            throw ConvergenceError("mode solve: objective still increasing, " + bracket_state(req, lo, cur));
    } else {
        lo = best > 0 ? grid[best - 1] : 0.0;
        hi = grid[best + 1];
    }

    const double lo_eval = lo > 0.0 ? lo : hi * 1e-12;
    const double d_lo = dphi(lo_eval);
    const double d_hi = dphi(hi);
    double n_star = 0.0;
    if (d_lo > 0.0 && d_hi < 0.0) {
        std::uintmax_t iters = kMaxIterations;
        const auto root = boost::math::tools::toms748_solve(
            dphi, lo_eval, hi, d_lo, d_hi, boost::math::tools::eps_tolerance<double>(50), iters);
        if (iters >= kMaxIterations)
            throw ConvergenceError("mode solve: stationarity root did not converge, " + bracket_state(req, lo, hi));
        n_star = 0.5 * (root.first + root.second);
    } else if (d_lo <= 0.0) {
        n_star = lo;
    } else {
        // No sign change of the derivative: fall back to a direct search.
        std::uintmax_t iters = kMaxIterations;
        const auto res = boost::math::tools::brent_find_minima([&](double v) { return -phi(v); }, lo, hi, 52, iters);
        n_star = res.first;
    }

    if (!(n_star > 0.0) || !(phi(n_star) > 0.0)) return {x, 0.0, true};
    return {x, n_star, false};
}

OccupationPoint analytic_occupation_k(const ChannelSpec& spec, double x, double y0) {
    validate(spec);
    if (!(x > 0.0)) throw DomainError("analytic_occupation_k: x must be > 0");
    const double eta = spec.eta;
    if (spec.model == NoiseModel::Dephasing)
        throw DomainError("analytic_occupation_k: no closed form for the dephasing channel");
    if (eta <= 0.0) return {x, 0.0, true};

    const double signal = 1.0 / (eta * std::expm1(x / eta));
    double noise = 0.0;
    switch (spec.model) {
        case NoiseModel::Loss: break;
        case NoiseModel::WhiteNoise: noise = (1.0 - eta) / eta * spec.nbar; break;
        case NoiseModel::Thermal:
            if (y0 > 0.0) noise = (1.0 - eta) / eta / std::expm1(x / y0);
            break;
        case NoiseModel::Dephasing: break;
    }
    const double n = signal - noise;
    if (!(n > 0.0)) return {x, 0.0, true};
    return {x, n, false};
}

namespace {

// H(L) = (eta/y - 1) L - ln(1 - eta + eta e^-L): zero exactly where
// xi = e^L solves xi^(eta/y) = (1-eta) xi + eta.
double cutoff_function(double eta, double y, double L) {
    return (eta / y - 1.0) * L - std::log1p(eta * std::expm1(-L));
}

double solve_log_xi(double eta, double y) {
    const double a = 1.0 - eta / y;  // in (0, eta) on the admissible y range
    // H rises from H(0) = 0 to a maximum at L_peak, then decreases without bound.
    const double L_peak = std::log(eta * (1.0 - a) / (a * (1.0 - eta)));
    double lo = std::max(L_peak, 0.0);
    double hi = std::max(2.0 * lo, 1.0);
    double h_lo = cutoff_function(eta, y, lo);
    if (!(h_lo > 0.0)) {
        // L_peak underflowed to the trivial root; step off it.
        lo = std::max(lo, 1e-300);
        h_lo = cutoff_function(eta, y, lo);
    }
    double h_hi = cutoff_function(eta, y, hi);
    int grow = 0;
    while (h_hi > 0.0) {
        lo = hi;
        h_lo = h_hi;
        hi *= 2.0;
        h_hi = cutoff_function(eta, y, hi);
        if (++grow > 2000) throw ConvergenceError("thermal cutoff: no sign change for ln(xi)");
    }
    if (!(h_lo > 0.0)) return lo;
    std::uintmax_t iters = kMaxIterations;
    const auto root = boost::math::tools::toms748_solve([&](double L) { return cutoff_function(eta, y, L); }, lo,
                                                        hi, h_lo, h_hi,
                                                        boost::math::tools::eps_tolerance<double>(52), iters);
    return 0.5 * (root.first + root.second);
}

// Energy equation eta Gamma(L) - [((1-eta)/eta) Gamma(eta L / y) + (pi^2/6)/rho^2] y^2.
double energy_function(double rho_t, double eta, double y, double L) {
    return eta * gamma_fn(L) - ((1.0 - eta) / eta * gamma_fn(eta * L / y) + kPi2Over6 / (rho_t * rho_t)) * y * y;
}

}  // namespace

HighTemperatureResiduals thermal_highT_residuals(double rho_t, double eta, double log_xi, double y0) {
    HighTemperatureResiduals r;
    r.cutoff = std::abs(std::expm1(cutoff_function(eta, y0, log_xi)));
    r.energy = std::abs(energy_function(rho_t, eta, y0, log_xi)) / (eta * gamma_fn(log_xi));
    return r;
}

HighTemperatureParams thermal_highT_params(double rho_t, double eta) {
    if (!(rho_t > 1.0)) throw DomainError("thermal_highT_params: requires rho_t > 1 (T above T_c)");
    if (!(eta > 0.0 && eta < 1.0)) throw DomainError("thermal_highT_params: requires 0 < eta < 1");

    // A cutoff xi > 1 exists only for eta < y0 < eta/(1-eta).
    auto energy_at = [&](double y) { return energy_function(rho_t, eta, y, solve_log_xi(eta, y)); };
    const double y_lo = eta * (1.0 + 1e-12);
    const double y_hi = eta / (1.0 - eta) * (1.0 - 1e-12);
    const double e_lo = energy_at(y_lo);
    const double e_hi = energy_at(y_hi);
    if (!(e_lo > 0.0 && e_hi < 0.0)) {
        std::ostringstream os;
        os << "thermal_highT_params: energy equation not bracketed on (" << y_lo << ", " << y_hi
           << "), values " << e_lo << ", " << e_hi;
        throw ConvergenceError(os.str());
    }
    std::uintmax_t iters = kMaxIterations;
    const auto root = boost::math::tools::toms748_solve(energy_at, y_lo, y_hi, e_lo, e_hi,
                                                        boost::math::tools::eps_tolerance<double>(50), iters);
    if (iters >= kMaxIterations) throw ConvergenceError("thermal_highT_params: y0 root did not converge");

    HighTemperatureParams out;
    out.eta = eta;
    out.y0 = 0.5 * (root.first + root.second);
    out.log_xi = solve_log_xi(eta, out.y0);
    out.xi = std::exp(out.log_xi);
    const auto res = thermal_highT_residuals(rho_t, eta, out.log_xi, out.y0);
    out.cutoff_residual = res.cutoff;
    out.energy_residual = res.energy;
    return out;
}

}  // namespace broadband
