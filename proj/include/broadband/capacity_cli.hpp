#pragma once

// Command implementations behind the broadband_capacity executable.  Each
// run_* writes CSV or text to a stream so tests can capture it; the
// executable only parses flags and maps exceptions to exit codes.

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "broadband/broadband_integrator.hpp"

namespace broadband::cli {

/// start:stop:step, inclusive of stop up to rounding; a bare number is a
/// single point.
struct Range {
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;

    std::vector<double> values() const;
};

Range parse_range(const std::string& text);

enum class Command { Sweep, Profile, Report, Figure, Verify };

Command parse_command(const std::string& name);

/// What a sweep row reports.  QAlt, CUpper and QE are derived from the CE
/// solution; the last two only appear in figure data.
enum class Selection { CE, CLower, QLower, QAlt, CUpper, QE };

const char* to_string(Selection s);
/// ce, c_lower, q_lower, q_alt or all.
std::vector<Selection> parse_selection(const std::string& name);

struct SweepConfig {
    Command command = Command::Sweep;
    std::string figure;  ///< fig1 .. fig7, Figure only
    NoiseModel model = NoiseModel::Loss;
    std::string quantity = "all";
    Range eta{1.0, 1.0, 1.0};
    double nbar = 0.0;
    std::optional<Range> rho;           ///< overrides temperature/power
    std::optional<double> temperature;  ///< kelvin
    double power = 1e-3;                ///< watts
    double transmission_time = 1.0;     ///< seconds
    int points = 64;
    std::optional<double> x_max;  ///< profile range; defaults to the integration range
    std::string out;              ///< empty = stdout (a directory for Figure)
    int jobs = 1;
    std::string suite = "all";
};

/// key = value pairs, '#' comments.  Keys match the long flag names.
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Applies key=value settings onto cfg.  Unknown keys are a ConfigError.
void apply_settings(SweepConfig& cfg, const std::map<std::string, std::string>& settings);

/// Throws ConfigError for anything out of range.
void validate(const SweepConfig& cfg);

/// rho_t values the config asks for (a single 0 for non-thermal models).
std::vector<double> rho_values(const SweepConfig& cfg);

inline constexpr const char* kSweepHeader = "model,quantity,eta,nbar,rho_t,y0,f,factor,error";
inline constexpr const char* kProfileHeader = "x,n,clamped";
inline constexpr const char* kScanHeader = "lambda_diff,mutual_info_bits";

struct SweepRow {
    NoiseModel model = NoiseModel::Loss;
    Selection selection = Selection::CE;
    double eta = 0.0;
    double nbar = 0.0;
    double rho_t = 0.0;
    double y0 = 0.0;
    double f = 0.0;
    double factor = 0.0;
    std::string error;  ///< empty when the point solved
};

/// Rows in (eta, rho_t, selection) order regardless of cfg.jobs.
std::vector<SweepRow> compute_sweep(const SweepConfig& cfg, const std::vector<Selection>& selections);
std::vector<SweepRow> compute_sweep(const SweepConfig& cfg);

/// %.10g formatting.
std::string format_number(double v);
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

void run_sweep(const SweepConfig& cfg, std::ostream& os);
void run_profile(const SweepConfig& cfg, std::ostream& os);
void run_report(const SweepConfig& cfg, std::ostream& os);

/// Writes the CSV files for one figure into the directory cfg.out and
/// lists them on os.
void run_figure(const SweepConfig& cfg, std::ostream& os);

/// Runs the verification suites; returns the number of failed checks.
int run_verify(const SweepConfig& cfg, std::ostream& os);

/// Short machine-readable code for an exception type (config, domain, ...).
std::string error_code(const std::exception& e);

/// Parses argv, dispatches, and maps failures to "error: <code>: <msg>" on
/// err.  Returns the process exit status.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace broadband::cli
