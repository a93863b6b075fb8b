#include "broadband/noise_models.hpp"

#include <cmath>
#include <numbers>

#include "broadband/errors.hpp"

namespace broadband {

const char* to_string(NoiseModel m) {
    switch (m) {
        case NoiseModel::Loss: return "loss";
        case NoiseModel::WhiteNoise: return "white";
        case NoiseModel::Thermal: return "thermal";
        case NoiseModel::Dephasing: return "dephasing";
    }
    return "?";
}

NoiseModel parse_noise_model(std::string_view name) {
    if (name == "loss") return NoiseModel::Loss;
    if (name == "white") return NoiseModel::WhiteNoise;
    if (name == "thermal") return NoiseModel::Thermal;
    if (name == "dephasing") return NoiseModel::Dephasing;
    throw ConfigError("unknown noise model '" + std::string(name) + "'");
}

void validate(const ChannelSpec& spec) {
    if (!(spec.eta >= 0.0 && spec.eta <= 1.0))
        throw ConfigError("eta must lie in [0, 1], got " + std::to_string(spec.eta));
    if (!(spec.nbar >= 0.0) || !std::isfinite(spec.nbar))
        throw ConfigError("nbar must be finite and >= 0, got " + std::to_string(spec.nbar));
    if (!(spec.rho_t >= 0.0) || !std::isfinite(spec.rho_t))
        throw ConfigError("rho_t must be finite and >= 0, got " + std::to_string(spec.rho_t));
}

void validate(const PhysicalInputs& p) {
    if (!(p.power > 0.0)) throw ConfigError("power must be > 0");
    if (!(p.temperature >= 0.0)) throw ConfigError("temperature must be >= 0");
    if (!(p.transmission_time > 0.0)) throw ConfigError("transmission time must be > 0");
}

double nbar_at(const ChannelSpec& spec, double x, double y0, double signal_n) {
    switch (spec.model) {
        case NoiseModel::Loss: return 0.0;
        case NoiseModel::WhiteNoise: return spec.nbar;
        case NoiseModel::Thermal:
            if (!(y0 > 0.0)) throw ConfigError("thermal noise requires a characteristic frequency y0 > 0");
            return 1.0 / std::expm1(x / y0);
        case NoiseModel::Dephasing: return signal_n;
    }
    return 0.0;
}

double rate_rc(const PhysicalInputs& p) {
    if (!(p.power > 0.0)) throw ConfigError("power must be > 0");
    return std::sqrt(std::numbers::pi * p.power / (3.0 * constants::hbar)) / std::numbers::ln2;
}

double rate_rt(const PhysicalInputs& p) {
    return std::numbers::pi * std::numbers::pi / (3.0 * std::numbers::ln2) * constants::boltzmann *
           p.temperature / constants::planck;
}

double thermal_ratio(const PhysicalInputs& p) { return rate_rt(p) / rate_rc(p); }

// rho_t^2 = pi (K T)^2 / (12 hbar P), so rho_t = 1 at K T = sqrt(12 hbar P / pi).
double critical_temperature(double power) {
    if (!(power > 0.0)) throw ConfigError("power must be > 0");
    return std::sqrt(12.0 * constants::hbar * power / std::numbers::pi) / constants::boltzmann;
}

}  // namespace broadband
