#include "broadband/gaussian_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "broadband/errors.hpp"

namespace broadband::oracle {

namespace {

constexpr double kBoundTolerance = 1e-12;
constexpr double kEigenTolerance = 1e-9;

double symplectic_entropy(double nu) {
    // Rounding can push a pure-state eigenvalue a hair below 1/2.
    return g_entropy(std::max(nu - 0.5, 0.0));
}

}  // namespace

double GaussianModeState::mean_photons() const { return 0.5 * (n0 * std::cosh(r) - 1.0 + m); }

GaussianModeState make_state(double n0, double r, double c, double m) {
    const double bound = std::sqrt(c * c + 1.0);
    if (!(n0 >= bound - kBoundTolerance))
        throw DomainError("make_state: uncertainty bound violated, n0=" + std::to_string(n0) +
                          " < sqrt(c^2+1)=" + std::to_string(bound));
    if (!(m >= 0.0)) throw DomainError("make_state: displacement offset m must be >= 0, got " + std::to_string(m));
    if (!std::isfinite(r)) throw DomainError("make_state: squeezing parameter must be finite");
    return {n0, r, c, m};
}

GaussianModeState thermal_state(double N) {
    if (!(N >= 0.0)) throw DomainError("thermal_state: N must be >= 0");
    return make_state(2.0 * N + 1.0, 0.0, 0.0, 0.0);
}

SpectralPair spectrum(const GaussianModeState& s, const ModeParams& ch) {
    SpectralPair sp;
    const double centre = s.n0 * std::cosh(s.r);
    const double spread = std::hypot(s.n0 * std::sinh(s.r), s.c);
    sp.lam_plus = 0.5 * (centre + spread);
    // lam_minus = (lam_plus lam_minus) / lam_plus with lam_plus lam_minus = (n0^2 - c^2)/4.
    sp.lam_minus = 0.25 * (s.n0 * s.n0 - s.c * s.c) / sp.lam_plus;
    const double shift = (1.0 - ch.eta) * (ch.Nbar + 0.5);
    sp.lamp_plus = ch.eta * sp.lam_plus + shift;
    sp.lamp_minus = ch.eta * sp.lam_minus + shift;
    return sp;
}

ExchangeEigenvalues exchange_eigenvalues(const GaussianModeState& s, const ModeParams& ch) {
    validate(ch);
    const auto sp = spectrum(s, ch);
    const double eta = ch.eta;
    const double nb = ch.Nbar;
    const double sum = sp.lam_plus + sp.lam_minus;
    const double prod = sp.lam_plus * sp.lam_minus;
    const double loss = 1.0 - eta;

    ExchangeEigenvalues ev;
    ev.l0 = -(1.0 + eta * eta) - 4.0 * loss * loss * nb * nb - 4.0 * loss * (loss + eta * sum) * nb -
            2.0 * eta * loss * sum - 4.0 * loss * loss * prod;
    ev.l1 = -8.0 * loss * (1.0 + 2.0 * nb) * (2.0 * loss * (1.0 + 2.0 * nb) * prod + eta * sum) -
            4.0 * eta * eta;

    const double disc = ev.l1 + ev.l0 * ev.l0;
    if (disc < -kEigenTolerance) throw NumericError("exchange_eigenvalues: L1 + L0^2 is negative");
    const double root = std::sqrt(std::max(disc, 0.0));
    // Both roots of z^2 - (L0/4) z - L1/64 = 0 are negative; take the large
    // one directly and the small one from the product to avoid cancellation.
    const double z_big = (ev.l0 - root) / 8.0;
    const double z_small = (-ev.l1 / 64.0) / z_big;
    const double nu_big = std::sqrt(std::abs(z_big));
    const double nu_small = std::sqrt(std::abs(z_small));
    if (nu_small < 0.5 - kEigenTolerance) throw NumericError("exchange_eigenvalues: eigenvalue below 1/2");
    ev.lam[0] = ev.lam[1] = nu_big;
    ev.lam[2] = ev.lam[3] = nu_small;
    return ev;
}

double input_entropy(const GaussianModeState& s) {
    const auto sp = spectrum(s, {0.0, 0.0, 1.0});
    return symplectic_entropy(std::sqrt(sp.lam_plus * sp.lam_minus));
}

double output_entropy(const GaussianModeState& s, const ModeParams& ch) {
    validate(ch);
    const auto sp = spectrum(s, ch);
    return symplectic_entropy(std::sqrt(sp.lamp_plus * sp.lamp_minus));
}

double exchange_entropy(const GaussianModeState& s, const ModeParams& ch) {
    const auto ev = exchange_eigenvalues(s, ch);
    double total = 0.0;
    for (double lam : ev.lam) total += symplectic_entropy(lam);
    return 0.5 * total;
}

double mutual_information(const GaussianModeState& s, const ModeParams& ch) {
    return input_entropy(s) + output_entropy(s, ch) - exchange_entropy(s, ch);
}

double coherent_information(const GaussianModeState& s, const ModeParams& ch) {
    return output_entropy(s, ch) - exchange_entropy(s, ch);
}

SqueezingScan verify_no_squeezing(double N, const ModeParams& ch, int grid_size) {
    if (!(N > 0.0)) throw DomainError("verify_no_squeezing: N must be > 0");
    if (grid_size < 2) throw DomainError("verify_no_squeezing: grid_size must be >= 2");
    validate(ch);

    // lam_plus + lam_minus = n0 cosh r and lam_plus - lam_minus = n0 sinh r at c = 0.
    const double sum = 2.0 * N + 1.0;
    const double max_diff = 2.0 * N;
    SqueezingScan scan;
    scan.lambda_diff.reserve(grid_size);
    scan.mutual_info_bits.reserve(grid_size);
    for (int i = 0; i < grid_size; ++i) {
        const double diff = max_diff * (2.0 * i / (grid_size - 1) - 1.0);
        const double n0 = std::sqrt(sum * sum - diff * diff);
        const double r = std::atanh(diff / sum);
        const auto state = make_state(n0, r, 0.0, 0.0);
        scan.lambda_diff.push_back(diff);
        scan.mutual_info_bits.push_back(mutual_information(state, ch));
    }
    for (std::size_t i = 1; i < scan.mutual_info_bits.size(); ++i) {
        if (scan.mutual_info_bits[i] > scan.mutual_info_bits[scan.argmax]) scan.argmax = i;
    }
    scan.argmax_diff = scan.lambda_diff[scan.argmax];
    const double step = 2.0 * max_diff / (grid_size - 1);
    scan.maximum_at_zero = std::abs(scan.argmax_diff) <= step * (1.0 + 1e-12);
    return scan;
}

}  // namespace broadband::oracle
