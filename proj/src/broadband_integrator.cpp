#include "broadband/broadband_integrator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include <boost/math/tools/toms748_solve.hpp>

#include "broadband/errors.hpp"
#include "quadrature.hpp"

namespace broadband {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kPi = std::numbers::pi;
constexpr double kPi2Over6 = kPi * kPi / 6.0;

// Occupations below this are treated as the end of the spectrum.
constexpr double kTailOccupation = 1e-16;
// Below this the maximizer cannot resolve phi against rounding and flips
// between clamped and unclamped; such modes carry nothing measurable.
constexpr double kNegligibleOccupation = 1e-14;
constexpr int kUniformSamples = 256;
constexpr int kLogSamples = 48;
constexpr int kBoundaryBisections = 64;
constexpr std::uintmax_t kMaxIterations = 200;

struct ProfileSolver {
    Quantity quantity;
    ChannelSpec spec;
    double y0;

    OccupationPoint operator()(double x) const { return mode_occupation({quantity, spec, x, y0}); }
    double kernel_at(const OccupationPoint& pt) const {
        if (pt.clamped || pt.n <= kNegligibleOccupation) return 0.0;
        return mode_kernel({quantity, spec, pt.x, y0}, pt.n);
    }
};

bool sends(const OccupationPoint& pt) { return !pt.clamped && pt.n > kNegligibleOccupation; }

// Largest x worth integrating to: twice the last probe frequency that still
// carries a non-negligible occupation.  Zero when nothing is ever sent.
double find_spectrum_end(const ProfileSolver& solve) {
    double last = 0.0;
    for (int k = -8; k <= 17; ++k) {
        const double x = 0.25 * std::ldexp(1.0, k);
        const auto pt = solve(x);
        if (!pt.clamped && pt.n > kTailOccupation) last = std::max(last, x);
    }
    for (int i = 1; i <= 200; ++i) {
        const double x = 0.05 * i;
        const auto pt = solve(x);
        if (!pt.clamped && pt.n > kTailOccupation) last = std::max(last, x);
    }
    return 2.0 * last;
}

// Locates the switch between sending and not sending inside (a, b).
double locate_boundary(const ProfileSolver& solve, double a, double b, bool sends_at_a) {
    for (int i = 0; i < kBoundaryBisections && b - a > 1e-15 * b; ++i) {
        const double mid = 0.5 * (a + b);
        if (sends(solve(mid)) == sends_at_a) {
            a = mid;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

std::vector<Support> find_support(const ProfileSolver& solve, double x_end) {
    std::vector<double> xs;
    xs.reserve(kUniformSamples + kLogSamples);
    for (int i = 1; i <= kUniformSamples; ++i) xs.push_back(x_end * i / kUniformSamples);
    for (int i = 0; i < kLogSamples; ++i)
        xs.push_back(x_end * std::pow(10.0, -10.0 + 10.0 * i / kLogSamples));
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    std::vector<Support> support;
    bool prev_sends = sends(solve(xs.front()));
    double start = 0.0;  // the first interval is taken to reach down to 0
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const bool cur = sends(solve(xs[i]));
        if (cur == prev_sends) continue;
        const double edge = locate_boundary(solve, xs[i - 1], xs[i], prev_sends);
        if (prev_sends) {
            support.push_back({start, edge});
        } else {
            start = edge;
        }
        prev_sends = cur;
    }
    if (prev_sends) support.push_back({start, x_end});
    return support;
}

template <class F>
detail::Estimate integrate_support(F&& f, const Support& s) {
    if (s.lo == 0.0) return detail::integrate_from_zero(f, s.hi);
    return detail::integrate_estimate(f, s.lo, s.hi);
}

}  // namespace

ChannelSpec effective_spec(const ChannelSpec& spec) {
    if (spec.model == NoiseModel::Thermal && spec.rho_t == 0.0) return ChannelSpec::loss(spec.eta);
    return spec;
}

ProfileIntegrals integrate_profile(Quantity q, const ChannelSpec& spec, double y0) {
    validate(spec);
    const ChannelSpec eff = (spec.model == NoiseModel::Thermal && !(y0 > 0.0)) ? ChannelSpec::loss(spec.eta) : spec;
    const ProfileSolver solve{q, eff, y0};

    ProfileIntegrals out;
    out.x_end = find_spectrum_end(solve);
    if (out.x_end <= 0.0) return out;
    out.support = find_support(solve, out.x_end);

    auto energy = [&](double x) {
        const auto pt = solve(x);
        return sends(pt) ? x * pt.n : 0.0;
    };
    auto rate = [&](double x) { return solve.kernel_at(solve(x)); };
    // Accuracy is judged on the totals: a sliver of support may carry only
    // rounding noise without harming either integral.
    detail::Estimate f_total, rate_total;
    for (const auto& s : out.support) {
        f_total += integrate_support(energy, s);
        rate_total += integrate_support(rate, s);
    }
    out.f_value = detail::checked(f_total);
    out.rate_integral = detail::checked(rate_total);
    return out;
}

double f_integral(Quantity q, const ChannelSpec& spec, double y0) { return integrate_profile(q, spec, y0).f_value; }

double solve_y0(Quantity q, const ChannelSpec& spec) {
    validate(spec);
    if (!spec.has_char_freq() || spec.rho_t == 0.0) return 0.0;
    const double coupling = 6.0 / (kPi * kPi) * spec.rho_t * spec.rho_t;
    auto residual = [&](double y) {
        const double f = y > 0.0 ? f_integral(q, spec, y) : f_integral(q, ChannelSpec::loss(spec.eta), 0.0);
        return y * y - coupling * f;
    };

    const double r_lo = residual(0.0);
    if (!(r_lo < 0.0)) return 0.0;  // nothing is ever sent

    // Noise only grows with y, so f(y) <= f(0) and the root lies below
    // sqrt(coupling f(0)) = sqrt(-r_lo).
    double lo = 0.0;
    double hi = std::sqrt(-r_lo) * (1.0 + 1e-9);
    double r_hi = residual(hi);
    for (int i = 0; r_hi <= 0.0; ++i) {
        if (i > 60) throw ConvergenceError("solve_y0: could not bracket the fixed point");
        lo = hi;
        hi *= 2.0;
        r_hi = residual(hi);
    }
    const double r_lo_b = lo > 0.0 ? residual(lo) : r_lo;
    std::uintmax_t iters = kMaxIterations;
    const auto root = boost::math::tools::toms748_solve(residual, lo, hi, r_lo_b, r_hi,
                                                        boost::math::tools::eps_tolerance<double>(40), iters);
    if (iters >= kMaxIterations) throw ConvergenceError("solve_y0: fixed point did not converge");
    return 0.5 * (root.first + root.second);
}

double factor_from_integrals(double f_value, double rate_integral) {
    if (!(f_value > 0.0)) return 0.0;
    return kLn2 / kPi * std::sqrt(3.0 / (2.0 * f_value)) * rate_integral;
}

std::vector<OccupationPoint> sample_profile(Quantity q, const ChannelSpec& spec, double y0, double x_max,
                                            int points) {
    if (points < 2) throw ConfigError("profile needs at least 2 points");
    if (!(x_max > 0.0)) throw ConfigError("profile x range must be > 0");
    const ChannelSpec eff = (spec.model == NoiseModel::Thermal && !(y0 > 0.0)) ? ChannelSpec::loss(spec.eta) : spec;
    std::vector<OccupationPoint> out;
    out.reserve(points);
    for (int i = 1; i <= points; ++i) out.push_back(mode_occupation({q, eff, x_max * i / points, y0}));
    return out;
}

SpectrumSolution capacity_factor(Quantity q, const ChannelSpec& spec, int profile_points) {
    validate(spec);
    SpectrumSolution sol;
    sol.quantity = q;
    sol.spec = spec;
    const ChannelSpec eff = effective_spec(spec);
    sol.y0 = solve_y0(q, eff);
    const auto integrals = integrate_profile(q, eff, sol.y0);
    sol.f_value = integrals.f_value;
    sol.rate_integral = integrals.rate_integral;
    sol.factor = factor_from_integrals(integrals.f_value, integrals.rate_integral);
    sol.support = integrals.support;
    if (profile_points >= 2 && integrals.x_end > 0.0)
        sol.profile = sample_profile(q, eff, sol.y0, integrals.x_end, profile_points);
    return sol;
}

double analytic_f_white(double eta, double nbar) {
    const double noise = (1.0 - eta) * nbar;
    if (noise == 0.0) return eta * kPi2Over6;
    const double s = std::log1p(1.0 / noise);
    return eta * (gamma_fn(s) - (1.0 - eta) * s * s * nbar / 2.0);
}

double thermal_y0_lowT(double rho_t, double eta) { return eta * rho_t / std::sqrt(eta + (1.0 - eta) * rho_t * rho_t); }

double analytic_K_thermal_lowT(double rho_t, double eta) {
    return std::sqrt(eta + (1.0 - eta) * rho_t * rho_t) - lambda_fn(1.0 - eta) / lambda_fn(1.0) * rho_t;
}

double analytic_K_thermal_highT(double rho_t, double eta) {
    const auto params = thermal_highT_params(rho_t, eta);
    const double y = params.y0;
    const double L = params.log_xi;
    // integral_0^L g((1-eta)/(e^{x eta/y} - 1)) dx in the variable t = x eta / y.
    const double integral =
        bose_entropy_integral(1.0, L) - (y / eta) * bose_entropy_integral(1.0 - eta, eta * L / y);
    return 3.0 * eta * kLn2 / (kPi * kPi * y) * rho_t * integral;
}

double analytic_K(const ChannelSpec& spec) {
    validate(spec);
    const double eta = spec.eta;
    switch (spec.model) {
        case NoiseModel::Loss: return std::sqrt(eta);
        case NoiseModel::WhiteNoise: {
            const double noise = (1.0 - eta) * spec.nbar;
            if (eta == 0.0) return 0.0;
            if (noise == 0.0) return std::sqrt(eta);
            const double s = std::log1p(1.0 / noise);
            const double f = analytic_f_white(eta, spec.nbar);
            const double rate = eta * (bose_entropy_integral(1.0, s) - s * g_entropy(noise));
            return factor_from_integrals(f, rate);
        }
        case NoiseModel::Thermal:
            if (eta == 0.0) return 0.0;
            if (spec.rho_t <= 1.0 || eta == 1.0) return analytic_K_thermal_lowT(spec.rho_t, eta);
            return analytic_K_thermal_highT(spec.rho_t, eta);
        case NoiseModel::Dephasing: break;
    }
    throw DomainError("analytic_K: no closed form for the dephasing channel");
}

double q_alt_bound(double ce_factor) {
    if (!(ce_factor >= 0.0)) throw DomainError("q_alt_bound: ce_factor must be >= 0");
    return std::max(ce_factor - 1.0, 0.0);
}

double omega_scale(double f_value, const PhysicalInputs& p) {
    validate(p);
    if (!(f_value > 0.0)) throw DomainError("omega_scale: f must be > 0");
    return std::sqrt(2.0 * kPi * p.power / (constants::hbar * f_value));
}

double omega_scale(Quantity q, const ChannelSpec& spec, const PhysicalInputs& p) {
    const ChannelSpec eff = effective_spec(spec);
    return omega_scale(f_integral(q, eff, solve_y0(q, eff)), p);
}

namespace {

template <class E>
[[noreturn]] void rethrow_named(const char* name, const E& e) {
    throw E(std::string(name) + ": " + e.what());
}

SpectrumSolution named_factor(Quantity q, const ChannelSpec& spec) {
    const char* name = to_string(q);
    try {
        return capacity_factor(q, spec, 0);
    } catch (const ConvergenceError& e) {
        rethrow_named(name, e);
    } catch (const DomainError& e) {
        rethrow_named(name, e);
    } catch (const NumericError& e) {
        rethrow_named(name, e);
    }
}

}  // namespace

CapacityReport capacity_report(const ChannelSpec& spec, const PhysicalInputs& p) {
    validate(spec);
    validate(p);
    CapacityReport r;
    r.spec = spec;
    const auto ce = named_factor(Quantity::CE, spec);
    const auto c = named_factor(Quantity::CLower, spec);
    const auto q = named_factor(Quantity::QLower, spec);
    r.ce_factor = ce.factor;
    r.c_lower_factor = c.factor;
    r.q_lower_factor = q.factor;
    r.y0_ce = ce.y0;
    r.y0_c = c.y0;
    r.y0_q = q.y0;
    r.c_upper_factor = std::min(1.0, r.ce_factor);
    r.q_alt_factor = q_alt_bound(r.ce_factor);
    r.qe_factor = r.ce_factor / 2.0;
    r.rc_bits_per_sec = rate_rc(p);
    r.transmission_time = p.transmission_time;
    return r;
}

}  // namespace broadband
