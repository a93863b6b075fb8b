// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

#include "broadband/broadband_integrator.hpp"
#include "broadband/gaussian_oracle.hpp"
#include "oracles.hpp"

using namespace broadband;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::string detail;
};

void require(Outcome& o, bool ok, const std::string& what) {
    if (!ok) {
        o.pass = false;
        if (!o.detail.empty()) o.detail += "; ";
        o.detail += what;
    }
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

double factor(Quantity q, const ChannelSpec& s) { return capacity_factor(q, s, 0).factor; }

Outcome lossy_classical() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (int i = 1; i <= 10; ++i) {
        const double eta = 0.1 * i;
        worst = std::max(worst, std::abs(factor(Quantity::CLower, ChannelSpec::loss(eta)) - std::sqrt(eta)));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    require(o, worst < 1e-5, fmt("max |K - sqrt(eta)| = %.3g", worst));
    require(o, secs < 30.0, fmt("runtime %.3g s", secs));
    o.detail = fmt("max error %.3g, %.3g s", worst, secs) + (o.detail.empty() ? "" : "; " + o.detail);
    return o;
}

Outcome lossy_ce_endpoints() {
    Outcome o;
    const double c1 = factor(Quantity::CE, ChannelSpec::loss(1.0));
    const double c05 = factor(Quantity::CE, ChannelSpec::loss(0.5));
    require(o, std::abs(c1 - 2.0) < 1e-3, fmt("C(1) = %.10g", c1));
    require(o, std::abs(c05 - 1.0) < 1e-3, fmt("C(0.5) = %.10g", c05));
    if (o.pass) o.detail = fmt("C(1) = %.10g, C(0.5) = %.10g", c1, c05);
    return o;
}

Outcome no_cloning() {
    Outcome o;
    for (double eta : {0.3, 0.4, 0.5}) {
        for (auto spec : {ChannelSpec::loss(eta), ChannelSpec::dephasing(eta)}) {
            const double q = factor(Quantity::QLower, spec);
            require(o, q < 1e-6, std::string(to_string(spec.model)) + fmt(" Q(%.2g) = %.3g", eta, q));
        }
    }
    for (double eta : {0.6, 0.8, 1.0}) {
        for (auto spec : {ChannelSpec::loss(eta), ChannelSpec::dephasing(eta)}) {
            const double q = factor(Quantity::QLower, spec);
            require(o, q > 0.01, std::string(to_string(spec.model)) + fmt(" Q(%.2g) = %.3g", eta, q));
        }
    }
    return o;
}

Outcome white_noise() {
    Outcome o;
    double worst = 0.0;
    for (int i = 2; i <= 10; ++i) {
        for (double nbar : {0.1, 1.0, 10.0}) {
            const auto spec = ChannelSpec::white(0.1 * i, nbar);
            worst = std::max(worst, std::abs(factor(Quantity::CLower, spec) - analytic_K(spec)));
        }
    }
    require(o, worst < 1e-5, fmt("max |K_num - K_closed| = %.3g", worst));
    double worst_limit = 0.0;
    for (auto q : {Quantity::CE, Quantity::CLower, Quantity::QLower}) {
        worst_limit = std::max(worst_limit, std::abs(factor(q, ChannelSpec::white(0.7, 1e-6)) -
                                                     factor(q, ChannelSpec::loss(0.7))));
    }
    require(o, worst_limit < 1e-3, fmt("max |white(1e-6) - loss| = %.3g", worst_limit));
    o.detail = fmt("closed form error %.3g, small-noise limit error %.3g", worst, worst_limit) +
               (o.pass ? "" : "; " + o.detail);
    return o;
}

Outcome thermal() {
    Outcome o;
    double worst_y0 = 0.0;
    double worst_k = 0.0;
    for (double eta : {0.3, 0.6, 0.9}) {
        for (double rho : {0.1, 0.25, 0.5, 0.75, 1.0}) {
            const auto sol = capacity_factor(Quantity::CLower, ChannelSpec::thermal(eta, rho), 0);
            worst_y0 = std::max(worst_y0, std::abs(sol.y0 - eta * rho / std::sqrt(eta + (1.0 - eta) * rho * rho)));
            worst_k = std::max(worst_k, std::abs(sol.factor - analytic_K_thermal_lowT(rho, eta)));
        }
    }
    require(o, worst_y0 < 1e-6, fmt("y0 error %.3g", worst_y0));
    require(o, worst_k < 1e-4, fmt("low-T K error %.3g", worst_k));

    double worst_jump = 0.0;
    double worst_residual = 0.0;
    for (double eta : {0.3, 0.6, 0.9}) {
        worst_jump = std::max(worst_jump,
                              std::abs(analytic_K_thermal_lowT(1.0, eta) - analytic_K_thermal_highT(1.0 + 1e-4, eta)));
        for (double rho : {1.0 + 1e-4, 1.5, 2.0, 5.0}) {
            const auto p = thermal_highT_params(rho, eta);
            const auto r = thermal_highT_residuals(rho, eta, p.log_xi, p.y0);
            worst_residual = std::max({worst_residual, r.cutoff, r.energy});
        }
    }
    require(o, worst_jump < 1e-3, fmt("branch jump %.3g", worst_jump));
    require(o, worst_residual < 1e-8, fmt("high-T residual %.3g", worst_residual));
    o.detail = fmt("y0 err %.3g, K err %.3g, ", worst_y0, worst_k) +
               fmt("jump %.3g, residual %.3g", worst_jump, worst_residual) + (o.pass ? "" : "; " + o.detail);
    return o;
}

Outcome special_functions() {
    Outcome o;
    const double g_inf = gamma_fn(std::numeric_limits<double>::infinity());
    const double l1 = lambda_fn(1.0);
    require(o, std::abs(g_inf - kPi * kPi / 6.0) < 1e-8, fmt("Gamma(inf) = %.15g", g_inf));
    require(o, std::abs(l1 - kPi * kPi / 3.0) < 1e-6, fmt("Lambda(1) = %.15g", l1));
    for (double eta : {0.25, 0.5, 1.0}) {
        const double f = capacity_factor(Quantity::CLower, ChannelSpec::loss(eta), 0).f_value;
        require(o, std::abs(f - eta * kPi * kPi / 6.0) < 1e-6, fmt("f(%.2g) = %.12g", eta, f));
    }
    if (o.pass) o.detail = fmt("Gamma(inf) - pi^2/6 = %.3g, Lambda(1) - pi^2/3 = %.3g", g_inf - kPi * kPi / 6.0,
                               l1 - kPi * kPi / 3.0);
    return o;
}

Outcome oracle_equivalence() {
    Outcome o;
    const double ns[] = {0.01, 0.3, 1.0, 7.0, 60.0};
    const double nbars[] = {0.0, 0.02, 0.4, 3.0, 25.0};
    const double etas[] = {0.0, 0.2, 0.5, 0.85, 1.0};
    double worst_i = 0.0;
    double worst_j = 0.0;
    double worst_ex = 0.0;
    for (double n : ns) {
        for (double nb : nbars) {
            for (double eta : etas) {
                const ModeParams p{n, nb, eta};
                const auto ref = oracle_ref::beam_splitter_entropies(oracle_ref::thermal_cov(n), nb, eta);
                worst_i = std::max(worst_i, std::abs(ref.mutual_info() - kernel_ce(p)));
                worst_j = std::max(worst_j, std::abs(ref.coherent_info() - kernel_q(p)));
                const auto state = oracle::make_state(2.0 * n + 1.0, 0.0, 0.0, 0.0);
                worst_ex = std::max(worst_ex, std::abs(oracle::exchange_entropy(state, p) - ref.exchange));
            }
        }
    }
    require(o, worst_i < 1e-9, fmt("mutual information error %.3g", worst_i));
    require(o, worst_j < 1e-9, fmt("coherent information error %.3g", worst_j));
    require(o, worst_ex < 1e-9, fmt("exchange entropy error %.3g", worst_ex));
    o.detail = fmt("I err %.3g, J err %.3g, S_ex err %.3g", worst_i, worst_j, worst_ex);
    return o;
}

Outcome no_squeezing() {
    Outcome o;
    const ModeParams ch{0.0, 0.1, 0.8};
    for (double sum : {1.5, 2.0, 3.0, 5.0, 9.0}) {
        const auto scan = oracle::verify_no_squeezing((sum - 1.0) / 2.0, ch, 101);
        require(o, scan.maximum_at_zero, fmt("sum %.3g: argmax at %.3g", sum, scan.argmax_diff));
    }
    return o;
}

Outcome discrete_oracle() {
    Outcome o;
    const double eta = 0.8;
    const double energy = 2.0;
    std::vector<double> w;
    for (int j = 1; j <= 16; ++j) w.push_back(0.25 * j);

    const auto spec = ChannelSpec::loss(eta);
    auto allocation = [&](double omega) {
        std::vector<double> n;
        for (double wj : w) n.push_back(mode_occupation({Quantity::CE, spec, wj / omega, 0.0}).n);
        return n;
    };
    auto spent = [&](double omega) {
        const auto n = allocation(omega);
        double e = 0.0;
        for (std::size_t j = 0; j < w.size(); ++j) e += w[j] * n[j];
        return e - energy;
    };
    std::uintmax_t iters = 200;
    const auto root = boost::math::tools::toms748_solve(spent, 1e-3, 1e3, boost::math::tools::eps_tolerance<double>(50),
                                                        iters);
    const auto n = allocation(0.5 * (root.first + root.second));
    double lagrange = 0.0;
    for (double nj : n) lagrange += kernel_ce({nj, 0.0, eta});

    const double brute = oracle_ref::brute_force_ce(w, eta, energy);
    const double rel = std::abs(lagrange - brute) / brute;
    require(o, rel < 1e-3, "relative gap too large");
    o.detail = fmt("Lagrange %.10g, brute force %.10g, relative gap %.3g", lagrange, brute, rel);
    return o;
}

Outcome report_invariants() {
    Outcome o;
    const ChannelSpec specs[] = {ChannelSpec::loss(0.3),         ChannelSpec::loss(0.9),
                                 ChannelSpec::white(0.6, 0.5),   ChannelSpec::white(0.95, 2.0),
                                 ChannelSpec::thermal(0.7, 0.41), ChannelSpec::thermal(0.9, 2.0),
                                 ChannelSpec::dephasing(0.4),    ChannelSpec::dephasing(0.8)};
    const PhysicalInputs base{1e-3, 0.0, 1.0};
    const PhysicalInputs quad{4e-3, 0.0, 1.0};
    for (const auto& spec : specs) {
        const std::string tag = std::string(to_string(spec.model)) + fmt(" eta=%.2g: ", spec.eta);
        const auto r = capacity_report(spec, base);
        require(o, r.q_alt_factor == std::max(r.ce_factor - 1.0, 0.0), tag + "q_alt");
        require(o, r.qe_factor == r.ce_factor / 2.0, tag + "qe");
        require(o, r.c_lower_factor <= std::min(r.ce_factor, 1.0) + 1e-9, tag + "c_lower above min(ce, 1)");
        require(o, std::max(r.q_lower_factor, r.q_alt_factor) <= r.qe_factor + 1e-9, tag + "q bound above ce/2");
        if (spec.model != NoiseModel::Thermal) {
            const auto r4 = capacity_report(spec, quad);
            require(o, std::abs(r4.absolute(r4.ce_factor) / r.absolute(r.ce_factor) - 2.0) < 1e-9,
                    tag + "power scaling");
        }
    }
    // Thermal at fixed rho_t: four times the power with twice the temperature.
    const PhysicalInputs warm{1e-9, 3.0, 1.0};
    const PhysicalInputs warm4{4e-9, 6.0, 1.0};
    const double rho = thermal_ratio(warm);
    const double rho4 = thermal_ratio(warm4);
    require(o, std::abs(rho4 / rho - 1.0) < 1e-12, "rho_t not held fixed");
    const auto r = capacity_report(ChannelSpec::thermal(0.8, rho), warm);
    const auto r4 = capacity_report(ChannelSpec::thermal(0.8, rho4), warm4);
    for (auto pick : {&CapacityReport::ce_factor, &CapacityReport::c_lower_factor, &CapacityReport::q_lower_factor}) {
        require(o, std::abs(r4.absolute(r4.*pick) / r.absolute(r.*pick) - 2.0) < 1e-6, "thermal power scaling");
    }
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const Criterion criteria[] = {
        {1, "lossy classical factor equals sqrt(eta)", lossy_classical},
        {2, "lossy CE endpoints", lossy_ce_endpoints},
        {3, "no-cloning threshold for Q", no_cloning},
        {4, "white-noise closed form and small-noise limit", white_noise},
        {5, "thermal closed forms, branch continuity, high-T residuals", thermal},
        {6, "special functions and lossy energy integral", special_functions},
        {7, "oracle equivalence of kernels and exchange entropy", oracle_equivalence},
        {8, "no-squeezing scan peaks at zero", no_squeezing},
        {9, "discrete brute-force oracle", discrete_oracle},
        {10, "report invariants and power scaling", report_invariants},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        if (!o.pass) ++failures;
        std::printf("%s criterion %2d: %s%s%s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.empty() ? "" : " | ",
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", int(std::size(criteria)) - failures, std::size(criteria));
    return failures == 0 ? 0 : 1;
}
