#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "broadband/broadband_integrator.hpp"
#include "broadband/errors.hpp"

using namespace broadband;

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

double factor(Quantity q, const ChannelSpec& s) { return capacity_factor(q, s, 0).factor; }

std::vector<double> eta_grid() {
    std::vector<double> out;
    for (int i = 1; i <= 10; ++i) out.push_back(0.1 * i);
    return out;
}

}  // namespace

TEST_CASE("lossy classical pipeline end to end") {
    for (double eta : {0.2, 0.5, 1.0}) {
        const auto sol = capacity_factor(Quantity::CLower, ChannelSpec::loss(eta), 16);
        CHECK(sol.f_value == doctest::Approx(eta * kPi2 / 6.0).epsilon(1e-9));
        CHECK(sol.rate_integral == doctest::Approx(kPi2 * eta / (3.0 * std::numbers::ln2)).epsilon(1e-9));
        CHECK(sol.factor == doctest::Approx(std::sqrt(eta)).epsilon(1e-9));
        CHECK(sol.profile.size() == 16);
        REQUIRE(sol.support.size() == 1);
        CHECK(sol.support[0].lo == 0.0);
    }
}

TEST_CASE("numeric classical factor matches the closed forms") {
    for (double eta : eta_grid()) {
        CHECK(std::abs(factor(Quantity::CLower, ChannelSpec::loss(eta)) - analytic_K(ChannelSpec::loss(eta))) < 1e-5);
        for (double nbar : {0.1, 1.0, 10.0}) {
            const auto spec = ChannelSpec::white(eta, nbar);
            CHECK(std::abs(factor(Quantity::CLower, spec) - analytic_K(spec)) < 1e-5);
        }
        for (double rho : {0.25, 0.5, 1.0, 2.0}) {
            const auto spec = ChannelSpec::thermal(eta, rho);
            INFO("thermal eta=" << eta << " rho=" << rho);
            CHECK(std::abs(factor(Quantity::CLower, spec) - analytic_K(spec)) < 1e-5);
        }
    }
}

TEST_CASE("white-noise energy integral has a closed form") {
    for (double nbar : {0.1, 2.0}) {
        const auto sol = capacity_factor(Quantity::CLower, ChannelSpec::white(0.7, nbar), 0);
        CHECK(sol.f_value == doctest::Approx(analytic_f_white(0.7, nbar)).epsilon(1e-8));
        // The spectrum ends at the cutoff x = eta s.  Just below it phi ~ n^2
        // drops under the rounding of k, which resolves n only to ~1e-8.
        const double s = std::log1p(1.0 / (0.3 * nbar));
        REQUIRE(sol.support.size() == 1);
        CHECK(sol.support[0].hi == doctest::Approx(0.7 * s).epsilon(1e-7));
    }
}

TEST_CASE("thermal fixed point reproduces the low-temperature y0") {
    for (double eta : {0.25, 0.8}) {
        for (double rho : {0.1, 0.6, 1.0}) {
            CHECK(solve_y0(Quantity::CLower, ChannelSpec::thermal(eta, rho)) ==
                  doctest::Approx(thermal_y0_lowT(rho, eta)).epsilon(1e-9));
        }
    }
    // Above the critical temperature the fixed point moves to the high-T branch.
    const auto p = thermal_highT_params(2.0, 0.6);
    CHECK(solve_y0(Quantity::CLower, ChannelSpec::thermal(0.6, 2.0)) == doctest::Approx(p.y0).epsilon(1e-8));
}

TEST_CASE("thermal with zero ratio is the lossy channel") {
    const auto eff = effective_spec(ChannelSpec::thermal(0.6, 0.0));
    CHECK(eff.model == NoiseModel::Loss);
    for (auto q : {Quantity::CE, Quantity::CLower, Quantity::QLower})
        CHECK(factor(q, ChannelSpec::thermal(0.6, 0.0)) == doctest::Approx(factor(q, ChannelSpec::loss(0.6))));
}

TEST_CASE("factors are non-decreasing in eta") {
    auto make = [](int family, double eta) {
        switch (family) {
            case 0: return ChannelSpec::loss(eta);
            case 1: return ChannelSpec::white(eta, 1.0);
            case 2: return ChannelSpec::thermal(eta, 0.41);
            default: return ChannelSpec::dephasing(eta);
        }
    };
    for (int family = 0; family < 4; ++family) {
        for (auto q : {Quantity::CE, Quantity::CLower, Quantity::QLower}) {
            double prev = 0.0;
            for (double eta : {0.2, 0.4, 0.6, 0.8, 1.0}) {
                const double v = factor(q, make(family, eta));
                INFO("family " << family << " " << to_string(q) << " eta=" << eta);
                CHECK(v >= prev - 1e-9);
                prev = v;
            }
        }
    }
}

TEST_CASE("factors are non-increasing in noise") {
    for (auto q : {Quantity::CE, Quantity::CLower, Quantity::QLower}) {
        double prev = factor(q, ChannelSpec::loss(0.8));
        for (double nbar : {0.05, 0.5, 2.0, 8.0}) {
            const double v = factor(q, ChannelSpec::white(0.8, nbar));
            CHECK(v <= prev + 1e-9);
            prev = v;
        }
        prev = factor(q, ChannelSpec::loss(0.8));
        for (double rho : {0.2, 0.5, 1.0, 2.0}) {
            const double v = factor(q, ChannelSpec::thermal(0.8, rho));
            CHECK(v <= prev + 1e-9);
            prev = v;
        }
    }
}

TEST_CASE("quantum bound threshold at eta = 1/2") {
    for (auto make : {&ChannelSpec::loss, &ChannelSpec::dephasing}) {
        for (double eta : {0.1, 0.3, 0.5}) CHECK(factor(Quantity::QLower, make(eta)) == 0.0);
        for (double eta : {0.55, 0.7, 0.9}) CHECK(factor(Quantity::QLower, make(eta)) > 0.0);
    }
}

TEST_CASE("capacity report for the noiseless channel") {
    const auto r = capacity_report(ChannelSpec::loss(1.0), PhysicalInputs{2e-3, 0.0, 3.0});
    CHECK(r.ce_factor == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(r.qe_factor == doctest::Approx(1.0).epsilon(1e-9));
    for (double f : {r.c_lower_factor, r.c_upper_factor, r.q_lower_factor, r.q_alt_factor})
        CHECK(f == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.absolute(r.c_lower_factor) == doctest::Approx(3.0 * rate_rc({2e-3, 0.0, 3.0})).epsilon(1e-9));
}

TEST_CASE("capacity report below the no-cloning threshold") {
    const auto r = capacity_report(ChannelSpec::loss(0.4), PhysicalInputs{});
    CHECK(r.q_lower_factor == 0.0);
    CHECK(r.q_alt_factor == 0.0);
}

TEST_CASE("small white noise degenerates to the lossy channel") {
    for (auto q : {Quantity::CE, Quantity::CLower, Quantity::QLower})
        CHECK(std::abs(factor(q, ChannelSpec::white(0.7, 1e-6)) - factor(q, ChannelSpec::loss(0.7))) < 1e-3);
}

TEST_CASE("zero efficiency carries nothing") {
    for (auto q : {Quantity::CE, Quantity::CLower, Quantity::QLower}) {
        CHECK(factor(q, ChannelSpec::loss(0.0)) == 0.0);
        CHECK(factor(q, ChannelSpec::white(0.0, 1.0)) == 0.0);
    }
}

TEST_CASE("Lagrange frequency scale") {
    const PhysicalInputs p{1e-3, 0.0, 1.0};
    const double f = kPi2 / 6.0;
    CHECK(omega_scale(f, p) == doctest::Approx(std::sqrt(2.0 * std::numbers::pi * 1e-3 / (constants::hbar * f))));
    CHECK(omega_scale(Quantity::CLower, ChannelSpec::loss(1.0), p) == doctest::Approx(omega_scale(f, p)).epsilon(1e-9));
    CHECK_THROWS_AS(omega_scale(0.0, p), DomainError);
}

TEST_CASE("bad arguments") {
    CHECK_THROWS_AS(q_alt_bound(-0.5), DomainError);
    CHECK_THROWS_AS(sample_profile(Quantity::CE, ChannelSpec::loss(0.5), 0.0, 1.0, 1), ConfigError);
    CHECK_THROWS_AS(capacity_factor(Quantity::CE, ChannelSpec::loss(1.5)), ConfigError);
    CHECK_THROWS_AS(analytic_K(ChannelSpec::dephasing(0.5)), DomainError);
}

TEST_CASE("weak transmission through strong noise") {
    // The occupation jumps between two branches of the objective and then
    // fades through rounding noise; the integrals must still settle.
    const auto spec = ChannelSpec::white(1.0 / 21.0, 10.0);
    const auto ce = capacity_factor(Quantity::CE, spec, 0);
    CHECK(ce.f_value > 0.0);
    CHECK(ce.factor >= factor(Quantity::CLower, spec));
    CHECK(std::abs(factor(Quantity::CLower, spec) - analytic_K(spec)) < 1e-5);

    for (double rho : {0.41, 2.0}) {
        const auto thermal = ChannelSpec::thermal(0.016, rho);
        INFO("rho=" << rho);
        CHECK(factor(Quantity::CLower, thermal) == doctest::Approx(analytic_K(thermal)).epsilon(1e-6));
        CHECK(factor(Quantity::CE, thermal) >= factor(Quantity::CLower, thermal));
    }
}
