#include "broadband/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "broadband/errors.hpp"
#include "broadband/gaussian_core.hpp"
#include "quadrature.hpp"

namespace broadband {

namespace {

constexpr double kSpecialTolerance = 1e-13;
// Past this point y/(e^y-1) < 1e-24 and contributes nothing at double precision.
constexpr double kBoseTail = 60.0;

double bose_weight(double y) {
    if (y < 1e-8) return 1.0 - 0.5 * y;
    return y / std::expm1(y);
}

}  // namespace

double gamma_fn(double x) {
    if (std::isnan(x) || x < 0.0) throw DomainError("gamma_fn: argument must be >= 0");
    if (x == 0.0) return 0.0;
    const double upper = std::min(x, kBoseTail);
    double total = detail::integrate(bose_weight, 0.0, std::min(upper, 1.0), kSpecialTolerance);
    if (upper > 1.0) total += detail::integrate(bose_weight, 1.0, upper, kSpecialTolerance);
    return total;
}

double bose_entropy_integral(double a, double upper) {
    if (std::isnan(a) || a < 0.0) throw DomainError("bose_entropy_integral: scale must be >= 0");
    if (std::isnan(upper) || upper < 0.0) throw DomainError("bose_entropy_integral: upper limit must be >= 0");
    if (a == 0.0 || upper == 0.0) return 0.0;
    auto integrand = [a](double y) { return g_entropy(a / std::expm1(y)); };
    const double head = std::min(upper, 1.0);
    double total = detail::checked(detail::integrate_from_zero(integrand, head, kSpecialTolerance), kSpecialTolerance);
    if (upper > 1.0) {
        // g(a e^-y) ~ a e^-y (y + 1 - ln a) / ln2: negligible well before y = 60 + ln a.
        const double tail = std::min(upper, kBoseTail + std::max(std::log(a), 0.0));
        total += detail::integrate(integrand, 1.0, tail, kSpecialTolerance);
    }
    return total;
}

double lambda_fn(double x) {
    return std::numbers::ln2 * bose_entropy_integral(x, std::numeric_limits<double>::infinity());
}

}  // namespace broadband
