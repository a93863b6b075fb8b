#pragma once

#include <string>
#include <string_view>

namespace broadband {

enum class NoiseModel { Loss, WhiteNoise, Thermal, Dephasing };

const char* to_string(NoiseModel m);
/// Accepts the CLI spellings: loss, white, thermal, dephasing.
NoiseModel parse_noise_model(std::string_view name);

namespace constants {
inline constexpr double hbar = 1.0545718e-34;     // J s
inline constexpr double boltzmann = 1.380649e-23;  // J / K
inline constexpr double planck = 2.0 * 3.14159265358979323846 * hbar;
}  // namespace constants

/// A broadband channel with uniform quantum efficiency.  Thermal channels are
/// parametrized by rho_t = R_T / R_C, the ratio of the thermal rate scale to
/// the noiseless classical rate.
struct ChannelSpec {
    NoiseModel model = NoiseModel::Loss;
    double eta = 1.0;
    double nbar = 0.0;   ///< WhiteNoise only
    double rho_t = 0.0;  ///< Thermal only

    bool has_char_freq() const { return model == NoiseModel::Thermal; }

    static ChannelSpec loss(double eta) { return {NoiseModel::Loss, eta, 0.0, 0.0}; }
    static ChannelSpec white(double eta, double nbar) { return {NoiseModel::WhiteNoise, eta, nbar, 0.0}; }
    static ChannelSpec thermal(double eta, double rho_t) { return {NoiseModel::Thermal, eta, 0.0, rho_t}; }
    static ChannelSpec dephasing(double eta) { return {NoiseModel::Dephasing, eta, 0.0, 0.0}; }
};

/// Throws ConfigError for eta outside [0,1], negative nbar or rho_t.
void validate(const ChannelSpec& spec);

struct PhysicalInputs {
    double power = 1e-3;             ///< watts
    double temperature = 0.0;        ///< kelvin
    double transmission_time = 1.0;  ///< seconds
};

void validate(const PhysicalInputs& p);

/// Reservoir occupation seen by the mode at scaled frequency x = omega/Omega.
/// y0 = omegabar/Omega is required (> 0) for Thermal; signal_n is returned
/// verbatim for Dephasing.
double nbar_at(const ChannelSpec& spec, double x, double y0, double signal_n = 0.0);

/// Noiseless classical rate R_C = (1/ln2) sqrt(pi P / (3 hbar)), bits/s.
double rate_rc(const PhysicalInputs& p);

/// Thermal rate scale R_T = (pi^2 / (3 ln2)) K T / h, bits/s.
double rate_rt(const PhysicalInputs& p);

/// rho_t = R_T / R_C.
double thermal_ratio(const PhysicalInputs& p);

/// Temperature at which R_T = R_C for the given power.
double critical_temperature(double power);

}  // namespace broadband
