#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

#include "broadband/capacity_cli.hpp"
#include "broadband/errors.hpp"

namespace broadband::cli {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_number(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || res.ec != std::errc{} || res.ptr != t.data() + t.size() || !std::isfinite(v))
        throw ConfigError(key + ": not a finite number: '" + text + "'");
    return v;
}

int parse_int(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    int v = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || res.ec != std::errc{} || res.ptr != t.data() + t.size())
        throw ConfigError(key + ": not an integer: '" + text + "'");
    return v;
}

}  // namespace

std::vector<double> Range::values() const {
    // The 1e-9 slack keeps 0:1:0.1 from losing its last point to rounding.
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) out.push_back(std::min(start + static_cast<double>(i) * step, stop));
    return out;
}

Range parse_range(const std::string& text) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
        const auto next = text.find(':', pos);
        parts.push_back(text.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    if (parts.size() == 1) {
        const double v = parse_number("range", parts[0]);
        return {v, v, 1.0};
    }
    if (parts.size() != 3) throw ConfigError("range must be 'value' or 'start:stop:step', got '" + text + "'");
    Range r{parse_number("range", parts[0]), parse_number("range", parts[1]), parse_number("range", parts[2])};
    if (!(r.step > 0.0)) throw ConfigError("range step must be > 0 in '" + text + "'");
    if (r.stop < r.start) throw ConfigError("range stop is below start in '" + text + "'");
    if ((r.stop - r.start) / r.step > 1e6) throw ConfigError("range has more than 1e6 points: '" + text + "'");
    return r;
}

Command parse_command(const std::string& name) {
    if (name == "sweep") return Command::Sweep;
    if (name == "profile") return Command::Profile;
    if (name == "report") return Command::Report;
    if (name == "figure") return Command::Figure;
    if (name == "verify") return Command::Verify;
    throw ConfigError("unknown command '" + name + "'");
}

const char* to_string(Selection s) {
    switch (s) {
        case Selection::CE: return "ce";
        case Selection::CLower: return "c_lower";
        case Selection::QLower: return "q_lower";
        case Selection::QAlt: return "q_alt";
        case Selection::CUpper: return "c_upper";
        case Selection::QE: return "qe";
    }
    return "?";
}

std::vector<Selection> parse_selection(const std::string& name) {
    if (name == "ce") return {Selection::CE};
    if (name == "c_lower") return {Selection::CLower};
    if (name == "q_lower") return {Selection::QLower};
    if (name == "q_alt") return {Selection::QAlt};
    if (name == "all") return {Selection::CE, Selection::CLower, Selection::QLower, Selection::QAlt};
    throw ConfigError("unknown quantity '" + name + "' (expected ce, c_lower, q_lower, q_alt or all)");
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::map<std::string, std::string> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

void apply_settings(SweepConfig& cfg, const std::map<std::string, std::string>& settings) {
    for (const auto& [key, value] : settings) {
        if (key == "command") {
            cfg.command = parse_command(value);
        } else if (key == "figure") {
            cfg.figure = value;
        } else if (key == "model") {
            cfg.model = parse_noise_model(value);
        } else if (key == "quantity") {
            parse_selection(value);
            cfg.quantity = value;
        } else if (key == "eta") {
            cfg.eta = parse_range(value);
        } else if (key == "nbar") {
            cfg.nbar = parse_number(key, value);
        } else if (key == "rho") {
            cfg.rho = parse_range(value);
        } else if (key == "temp") {
            cfg.temperature = parse_number(key, value);
        } else if (key == "power") {
            cfg.power = parse_number(key, value);
        } else if (key == "time") {
            cfg.transmission_time = parse_number(key, value);
        } else if (key == "points") {
            cfg.points = parse_int(key, value);
        } else if (key == "xmax") {
            cfg.x_max = parse_number(key, value);
        } else if (key == "out") {
            cfg.out = value;
        } else if (key == "jobs") {
            cfg.jobs = parse_int(key, value);
        } else if (key == "suite") {
            cfg.suite = value;
        } else {
            throw ConfigError("unknown setting '" + key + "'");
        }
    }
}

void validate(const SweepConfig& cfg) {
    if (cfg.eta.start < 0.0 || cfg.eta.stop > 1.0)
        throw ConfigError("eta must lie in [0,1], got " +
                          (cfg.eta.start == cfg.eta.stop
                               ? format_number(cfg.eta.start)
                               : format_number(cfg.eta.start) + ":" + format_number(cfg.eta.stop)));
    if (!(cfg.eta.step > 0.0)) throw ConfigError("eta step must be > 0");
    if (cfg.nbar < 0.0) throw ConfigError("nbar must be >= 0");
    if (cfg.rho && cfg.rho->start < 0.0) throw ConfigError("rho must be >= 0");
    if (cfg.temperature && *cfg.temperature < 0.0) throw ConfigError("temperature must be >= 0");
    if (!(cfg.power > 0.0)) throw ConfigError("power must be > 0");
    if (!(cfg.transmission_time > 0.0)) throw ConfigError("transmission time must be > 0");
    if (cfg.points < 2) throw ConfigError("points must be >= 2");
    if (cfg.x_max && !(*cfg.x_max > 0.0)) throw ConfigError("xmax must be > 0");
    if (cfg.jobs < 1) throw ConfigError("jobs must be >= 1");
    parse_selection(cfg.quantity);
    if (cfg.command == Command::Figure) {
        static const std::set<std::string> figures{"fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7"};
        if (!figures.count(cfg.figure)) throw ConfigError("unknown figure '" + cfg.figure + "' (expected fig1..fig7)");
    }
    if (cfg.command == Command::Verify) {
        static const std::set<std::string> suites{"all", "analytic", "oracle", "ordering", "limits", "no-squeezing"};
        if (!suites.count(cfg.suite)) throw ConfigError("unknown suite '" + cfg.suite + "'");
    }
}

std::vector<double> rho_values(const SweepConfig& cfg) {
    if (cfg.model != NoiseModel::Thermal) return {0.0};
    if (cfg.rho) return cfg.rho->values();
    if (cfg.temperature) return {thermal_ratio({cfg.power, *cfg.temperature, cfg.transmission_time})};
    return {0.0};
}

}  // namespace broadband::cli
