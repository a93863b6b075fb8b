#include "broadband/capacity_cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <thread>

#include <CLI11.hpp>

#include "broadband/errors.hpp"
#include "broadband/gaussian_oracle.hpp"

namespace broadband::cli {

namespace {

ChannelSpec make_spec(NoiseModel model, double eta, double nbar, double rho) {
    switch (model) {
        case NoiseModel::Loss: return ChannelSpec::loss(eta);
        case NoiseModel::WhiteNoise: return ChannelSpec::white(eta, nbar);
        case NoiseModel::Thermal: return ChannelSpec::thermal(eta, rho);
        case NoiseModel::Dephasing: return ChannelSpec::dephasing(eta);
    }
    return ChannelSpec::loss(eta);
}

Quantity kernel_of(Selection s) {
    switch (s) {
        case Selection::CLower: return Quantity::CLower;
        case Selection::QLower: return Quantity::QLower;
        default: return Quantity::CE;
    }
}

// Keeps an error message inside one CSV cell and one stderr line.
std::string one_line(std::string msg, bool csv) {
    for (auto& ch : msg) {
        if (ch == '\n' || ch == '\r') ch = ' ';
        if (csv && (ch == ',' || ch == '"')) ch = ';';
    }
    return msg;
}

std::vector<SweepRow> solve_point(NoiseModel model, double eta, double nbar, double rho,
                                  const std::vector<Selection>& selections) {
    const ChannelSpec spec = make_spec(model, eta, nbar, rho);
    std::map<Quantity, SpectrumSolution> solved;
    std::map<Quantity, std::string> failed;
    auto solution = [&](Quantity q) -> const SpectrumSolution* {
        if (!solved.count(q) && !failed.count(q)) {
            try {
                solved[q] = capacity_factor(q, spec, 0);
            } catch (const std::exception& e) {
                failed[q] = error_code(e) + ": " + one_line(e.what(), true);
            }
        }
        return solved.count(q) ? &solved[q] : nullptr;
    };

    std::vector<SweepRow> rows;
    for (auto sel : selections) {
        SweepRow row;
        row.model = model;
        row.selection = sel;
        row.eta = eta;
        row.nbar = spec.nbar;
        row.rho_t = spec.rho_t;
        const Quantity q = kernel_of(sel);
        const auto* s = solution(q);
        if (!s) {
            row.factor = std::nan("");
            row.y0 = std::nan("");
            row.f = std::nan("");
            row.error = failed[q];
            rows.push_back(row);
            continue;
        }
        row.y0 = s->y0;
        row.f = s->f_value;
        switch (sel) {
            case Selection::QAlt: row.factor = q_alt_bound(s->factor); break;
            case Selection::CUpper: row.factor = std::min(1.0, s->factor); break;
            case Selection::QE: row.factor = s->factor / 2.0; break;
            default: row.factor = s->factor; break;
        }
        rows.push_back(row);
    }
    return rows;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream f(path, std::ios::out | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    return f;
}

void write_or_stream(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& w) {
    if (path.empty()) {
        w(fallback);
        return;
    }
    auto f = open_output(path);
    w(f);
    f.flush();
    if (!f) throw IoError("failed while writing '" + path + "'");
}

struct ProfileData {
    double y0 = 0.0;
    double x_end = 0.0;
};

ProfileData profile_extent(Quantity q, const ChannelSpec& spec) {
    const ChannelSpec eff = effective_spec(spec);
    ProfileData d;
    d.y0 = solve_y0(q, eff);
    d.x_end = integrate_profile(q, eff, d.y0).x_end;
    return d;
}

void write_profile(std::ostream& os, Quantity q, const ChannelSpec& spec, double y0, double x_max, int points) {
    os << kProfileHeader << '\n';
    for (const auto& pt : sample_profile(q, effective_spec(spec), y0, x_max, points))
        os << format_number(pt.x) << ',' << format_number(pt.n) << ',' << (pt.clamped ? 1 : 0) << '\n';
}

Quantity single_kernel(const SweepConfig& cfg) {
    const auto sel = parse_selection(cfg.quantity);
    if (sel.size() != 1 || sel[0] == Selection::QAlt)
        throw ConfigError("profile needs one of --quantity ce, c_lower or q_lower");
    return kernel_of(sel[0]);
}

// -- verification ----------------------------------------------------------

class CheckLog {
public:
    explicit CheckLog(std::ostream& os) : os_(os) {}

    void check(const std::string& suite, const std::string& what, bool ok, const std::string& detail) {
        ++count_;
        if (!ok) ++failures_;
        os_ << (ok ? "PASS " : "FAIL ") << suite << ": " << what << " (" << detail << ")\n";
    }

    void close_to(const std::string& suite, const std::string& what, double observed, double expected, double tol) {
        const double err = std::abs(observed - expected);
        check(suite, what, err < tol,
              "observed " + format_number(observed) + ", expected " + format_number(expected) + ", tol " +
                  format_number(tol));
    }

    int failures() const { return failures_; }
    int count() const { return count_; }

private:
    std::ostream& os_;
    int count_ = 0;
    int failures_ = 0;
};

void suite_analytic(CheckLog& log) {
    double worst = 0.0;
    for (int i = 1; i <= 10; ++i) {
        const double eta = 0.1 * i;
        worst = std::max(worst, std::abs(capacity_factor(Quantity::CLower, ChannelSpec::loss(eta), 0).factor -
                                         std::sqrt(eta)));
    }
    log.close_to("analytic", "loss K = sqrt(eta), max error over eta 0.1..1", worst, 0.0, 1e-5);
    log.close_to("analytic", "loss CE at eta=1", capacity_factor(Quantity::CE, ChannelSpec::loss(1.0), 0).factor,
                 2.0, 1e-3);
    log.close_to("analytic", "loss CE at eta=0.5",
                 capacity_factor(Quantity::CE, ChannelSpec::loss(0.5), 0).factor, 1.0, 1e-3);

    worst = 0.0;
    for (double nbar : {0.1, 1.0, 10.0}) {
        for (double eta : {0.2, 0.6, 1.0}) {
            const auto spec = ChannelSpec::white(eta, nbar);
            worst = std::max(worst, std::abs(capacity_factor(Quantity::CLower, spec, 0).factor - analytic_K(spec)));
        }
    }
    log.close_to("analytic", "white K numeric vs closed form, max error", worst, 0.0, 1e-5);

    worst = 0.0;
    for (double rho : {0.25, 0.5, 1.0, 2.0}) {
        for (double eta : {0.3, 0.7}) {
            const auto spec = ChannelSpec::thermal(eta, rho);
            worst = std::max(worst, std::abs(capacity_factor(Quantity::CLower, spec, 0).factor - analytic_K(spec)));
        }
    }
    log.close_to("analytic", "thermal K numeric vs closed form, max error", worst, 0.0, 1e-4);
    log.close_to("analytic", "thermal K continuous across rho = 1", analytic_K_thermal_highT(1.0 + 1e-4, 0.7),
                 analytic_K_thermal_lowT(1.0, 0.7), 1e-3);
}

void suite_oracle(CheckLog& log) {
    const double ns[] = {0.01, 0.1, 1.0, 10.0, 100.0};
    const double nbars[] = {0.0, 0.05, 0.5, 5.0, 50.0};
    const double etas[] = {0.0, 0.25, 0.5, 0.75, 1.0};
    double worst_ce = 0.0;
    double worst_q = 0.0;
    for (double n : ns) {
        for (double nb : nbars) {
            for (double eta : etas) {
                const ModeParams p{n, nb, eta};
                const auto state = oracle::thermal_state(n);
                worst_ce = std::max(worst_ce, std::abs(oracle::mutual_information(state, p) - kernel_ce(p)));
                worst_q = std::max(worst_q, std::abs(oracle::coherent_information(state, p) - kernel_q(p)));
            }
        }
    }
    log.close_to("oracle", "mutual information vs kernel_ce, max error on 5x5x5 grid", worst_ce, 0.0, 1e-9);
    log.close_to("oracle", "coherent information vs kernel_q, max error on 5x5x5 grid", worst_q, 0.0, 1e-9);
}

void suite_ordering(CheckLog& log) {
    const ChannelSpec specs[] = {ChannelSpec::loss(0.3),        ChannelSpec::loss(0.8),
                                 ChannelSpec::white(0.7, 1.0),  ChannelSpec::thermal(0.7, 0.41),
                                 ChannelSpec::thermal(0.7, 2.0), ChannelSpec::dephasing(0.7)};
    for (const auto& spec : specs) {
        const auto r = capacity_report(spec, PhysicalInputs{});
        const std::string tag = std::string(to_string(spec.model)) + " eta=" + format_number(spec.eta);
        const double slack = 1e-9;
        log.check("ordering", tag + ": c_lower <= min(ce, 1)", r.c_lower_factor <= r.c_upper_factor + slack,
                  "c_lower " + format_number(r.c_lower_factor) + ", ce " + format_number(r.ce_factor));
        log.check("ordering", tag + ": max(q_lower, q_alt) <= ce/2",
                  std::max(r.q_lower_factor, r.q_alt_factor) <= r.qe_factor + slack,
                  "q_lower " + format_number(r.q_lower_factor) + ", q_alt " + format_number(r.q_alt_factor) +
                      ", ce/2 " + format_number(r.qe_factor));
    }
}

void suite_limits(CheckLog& log) {
    for (auto q : {Quantity::CE, Quantity::CLower, Quantity::QLower}) {
        const double white = capacity_factor(q, ChannelSpec::white(0.7, 1e-6), 0).factor;
        const double loss = capacity_factor(q, ChannelSpec::loss(0.7), 0).factor;
        log.close_to("limits", std::string("white nbar=1e-6 matches loss, ") + to_string(q), white, loss, 1e-3);
    }
    for (double eta : {0.3, 0.4, 0.5}) {
        log.check("limits", "loss q_lower vanishes at eta=" + format_number(eta),
                  capacity_factor(Quantity::QLower, ChannelSpec::loss(eta), 0).factor < 1e-6, "threshold 1e-6");
    }
    log.close_to("limits", "thermal rho=0 matches loss K",
                 capacity_factor(Quantity::CLower, ChannelSpec::thermal(0.6, 0.0), 0).factor, std::sqrt(0.6), 1e-6);
}

void suite_no_squeezing(CheckLog& log) {
    const ModeParams ch{0.0, 0.1, 0.8};
    for (double sum : {1.5, 2.0, 3.0, 5.0}) {
        const auto scan = oracle::verify_no_squeezing((sum - 1.0) / 2.0, ch, 101);
        log.check("no-squeezing", "lambda sum " + format_number(sum) + ": maximum at lambda_diff = 0",
                  scan.maximum_at_zero, "argmax at " + format_number(scan.argmax_diff));
    }
}

// -- figures -----------------------------------------------------------------

const std::vector<Selection> kFigureSelections = {Selection::CE,   Selection::CLower, Selection::QLower,
                                                  Selection::QAlt, Selection::CUpper, Selection::QE};

std::vector<SweepRow> figure_sweep(const SweepConfig& base, NoiseModel model, const std::vector<double>& nbars,
                                   const std::vector<double>& rhos) {
    std::vector<SweepRow> rows;
    for (double nbar : nbars) {
        SweepConfig cfg = base;
        cfg.model = model;
        cfg.nbar = nbar;
        cfg.eta = Range{0.0, 1.0, 1.0 / (base.points - 1)};
        cfg.rho = rhos.empty() ? std::nullopt : std::optional<Range>();
        if (rhos.empty()) {
            auto part = compute_sweep(cfg, kFigureSelections);
            rows.insert(rows.end(), part.begin(), part.end());
            continue;
        }
        for (double rho : rhos) {
            cfg.rho = Range{rho, rho, 1.0};
            auto part = compute_sweep(cfg, kFigureSelections);
            rows.insert(rows.end(), part.begin(), part.end());
        }
    }
    return rows;
}

void figure_profiles(const std::filesystem::path& dir, const std::string& name, const ChannelSpec& spec, int points,
                     std::vector<std::string>& written) {
    const Quantity qs[] = {Quantity::CE, Quantity::CLower, Quantity::QLower};
    ProfileData extents[3];
    double x_max = 0.0;
    for (int i = 0; i < 3; ++i) {
        extents[i] = profile_extent(qs[i], spec);
        x_max = std::max(x_max, extents[i].x_end);
    }
    if (!(x_max > 0.0)) x_max = 1.0;
    for (int i = 0; i < 3; ++i) {
        const auto path = dir / (name + "_" + to_string(qs[i]) + ".csv");
        auto f = open_output(path.string());
        write_profile(f, qs[i], spec, extents[i].y0, x_max, points);
        written.push_back(path.string());
    }
}

}  // namespace

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::vector<SweepRow> compute_sweep(const SweepConfig& cfg, const std::vector<Selection>& selections) {
    validate(cfg);
    struct Task {
        double eta;
        double rho;
    };
    std::vector<Task> tasks;
    for (double eta : cfg.eta.values())
        for (double rho : rho_values(cfg)) tasks.push_back({eta, rho});

    std::vector<std::vector<SweepRow>> results(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++)
            results[i] = solve_point(cfg.model, tasks[i].eta, cfg.nbar, tasks[i].rho, selections);
    };
    const auto n_threads = std::min<std::size_t>(static_cast<std::size_t>(cfg.jobs), tasks.size());
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::vector<SweepRow> rows;
    for (auto& r : results) rows.insert(rows.end(), r.begin(), r.end());
    return rows;
}

std::vector<SweepRow> compute_sweep(const SweepConfig& cfg) { return compute_sweep(cfg, parse_selection(cfg.quantity)); }

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << kSweepHeader << '\n';
    for (const auto& r : rows) {
        os << to_string(r.model) << ',' << to_string(r.selection) << ',' << format_number(r.eta) << ','
           << format_number(r.nbar) << ',' << format_number(r.rho_t) << ',' << format_number(r.y0) << ','
           << format_number(r.f) << ',' << format_number(r.factor) << ',' << r.error << '\n';
    }
}

void run_sweep(const SweepConfig& cfg, std::ostream& os) {
    const auto rows = compute_sweep(cfg);
    write_or_stream(cfg.out, os, [&](std::ostream& o) { write_sweep_csv(o, rows); });
}

void run_profile(const SweepConfig& cfg, std::ostream& os) {
    validate(cfg);
    const Quantity q = single_kernel(cfg);
    const ChannelSpec spec = make_spec(cfg.model, cfg.eta.start, cfg.nbar, rho_values(cfg).front());
    validate(spec);
    const auto extent = profile_extent(q, spec);
    double x_max = cfg.x_max.value_or(extent.x_end);
    if (!(x_max > 0.0)) x_max = 1.0;
    write_or_stream(cfg.out, os, [&](std::ostream& o) { write_profile(o, q, spec, extent.y0, x_max, cfg.points); });
}

void run_report(const SweepConfig& cfg, std::ostream& os) {
    validate(cfg);
    const PhysicalInputs phys{cfg.power, cfg.temperature.value_or(0.0), cfg.transmission_time};
    validate(phys);
    const ChannelSpec spec = make_spec(cfg.model, cfg.eta.start, cfg.nbar, rho_values(cfg).front());
    const auto r = capacity_report(spec, phys);

    auto line = [&](const char* key, const std::string& value) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%-26s %s\n", key, value.c_str());
        os << buf;
    };
    line("model", to_string(spec.model));
    line("eta", format_number(spec.eta));
    if (spec.model == NoiseModel::WhiteNoise) line("nbar", format_number(spec.nbar));
    if (spec.model == NoiseModel::Thermal) {
        line("rho_t", format_number(spec.rho_t));
        line("critical_temperature_K", format_number(critical_temperature(phys.power)));
    }
    line("power_W", format_number(phys.power));
    line("transmission_time_s", format_number(phys.transmission_time));
    line("R_C_bits_per_s", format_number(r.rc_bits_per_sec));
    os << '\n';

    char buf[160];
    std::snprintf(buf, sizeof buf, "%-10s %-18s %-18s %s\n", "quantity", "factor", "rate_bits_per_s", "bits");
    os << buf;
    const std::pair<const char*, double> factors[] = {
        {"ce", r.ce_factor},           {"c_lower", r.c_lower_factor}, {"c_upper", r.c_upper_factor},
        {"q_lower", r.q_lower_factor}, {"q_alt", r.q_alt_factor},     {"qe", r.qe_factor}};
    for (const auto& [name, factor] : factors) {
        std::snprintf(buf, sizeof buf, "%-10s %-18s %-18s %s\n", name, format_number(factor).c_str(),
                      format_number(factor * r.rc_bits_per_sec).c_str(), format_number(r.absolute(factor)).c_str());
        os << buf;
    }
}

void run_figure(const SweepConfig& cfg, std::ostream& os) {
    validate(cfg);
    const std::filesystem::path dir = cfg.out.empty() ? std::filesystem::path(".") : std::filesystem::path(cfg.out);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());

    std::vector<std::string> written;
    auto sweep_file = [&](const std::vector<SweepRow>& rows) {
        const auto path = dir / (cfg.figure + ".csv");
        auto f = open_output(path.string());
        write_sweep_csv(f, rows);
        written.push_back(path.string());
    };

    if (cfg.figure == "fig1") {
        sweep_file(figure_sweep(cfg, NoiseModel::Loss, {0.0}, {}));
    } else if (cfg.figure == "fig2") {
        sweep_file(figure_sweep(cfg, NoiseModel::WhiteNoise, {0.1, 1.0, 10.0}, {}));
    } else if (cfg.figure == "fig3") {
        figure_profiles(dir, "fig3", ChannelSpec::white(0.8, 1.0), cfg.points, written);
    } else if (cfg.figure == "fig4") {
        sweep_file(figure_sweep(cfg, NoiseModel::Thermal, {0.0}, {0.25, 0.41, 1.0, 2.0}));
    } else if (cfg.figure == "fig5") {
        figure_profiles(dir, "fig5", ChannelSpec::thermal(0.8, 0.41), cfg.points, written);
    } else if (cfg.figure == "fig6") {
        sweep_file(figure_sweep(cfg, NoiseModel::Dephasing, {0.0}, {}));
    } else if (cfg.figure == "fig7") {
        const ModeParams ch{0.0, 0.1, 0.8};
        for (double sum : {1.5, 2.0, 3.0, 5.0}) {
            const auto scan = oracle::verify_no_squeezing((sum - 1.0) / 2.0, ch, 101);
            const auto path = dir / ("fig7_sum" + format_number(sum) + ".csv");
            auto f = open_output(path.string());
            f << kScanHeader << '\n';
            for (std::size_t i = 0; i < scan.lambda_diff.size(); ++i)
                f << format_number(scan.lambda_diff[i]) << ',' << format_number(scan.mutual_info_bits[i]) << '\n';
            written.push_back(path.string());
        }
    }
    for (const auto& w : written) os << w << '\n';
}

int run_verify(const SweepConfig& cfg, std::ostream& os) {
    validate(cfg);
    CheckLog log(os);
    const std::pair<const char*, void (*)(CheckLog&)> suites[] = {{"analytic", suite_analytic},
                                                                   {"oracle", suite_oracle},
                                                                   {"ordering", suite_ordering},
                                                                   {"limits", suite_limits},
                                                                   {"no-squeezing", suite_no_squeezing}};
    for (const auto& [name, fn] : suites) {
        if (cfg.suite != "all" && cfg.suite != name) continue;
        try {
            fn(log);
        } catch (const std::exception& e) {
            log.check(name, "suite raised", false, error_code(e) + ": " + one_line(e.what(), false));
        }
    }
    os << "verify: " << log.count() << " checks, " << log.failures() << " failed\n";
    return log.failures();
}

std::string error_code(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e)) return "config";
    if (dynamic_cast<const DomainError*>(&e)) return "domain";
    if (dynamic_cast<const ConvergenceError*>(&e)) return "convergence";
    if (dynamic_cast<const NumericError*>(&e)) return "numeric";
    if (dynamic_cast<const IoError*>(&e)) return "io";
    return "internal";
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Broadband bosonic channel capacities", "broadband_capacity"};
    std::string command;
    std::string figure;
    app.add_option("command", command, "sweep | profile | report | figure | verify")->required();
    app.add_option("figure", figure, "fig1 .. fig7 (figure command only)");

    // Flag values are kept as text so they merge with the config file before
    // a single validation pass.
    const std::pair<const char*, const char*> options[] = {
        {"model", "loss | white | thermal | dephasing"},
        {"quantity", "ce | c_lower | q_lower | q_alt | all"},
        {"eta", "quantum efficiency, value or start:stop:step"},
        {"nbar", "white-noise reservoir occupation"},
        {"rho", "thermal ratio R_T/R_C, value or start:stop:step"},
        {"temp", "reservoir temperature in K (with --power)"},
        {"power", "input power in W"},
        {"time", "transmission time in s"},
        {"points", "grid resolution"},
        {"xmax", "upper end of the profile x range"},
        {"out", "output file (directory for figure)"},
        {"jobs", "sweep worker threads"},
        {"suite", "verify suite: all | analytic | oracle | ordering | limits | no-squeezing"},
    };
    std::map<std::string, std::string> flag_values;
    std::map<std::string, CLI::Option*> flag_opts;
    for (const auto& [name, help] : options)
        flag_opts[name] = app.add_option(std::string("--") + name, flag_values[name], help);
    std::string config_path;
    app.add_option("--config", config_path, "key = value settings file; flags take precedence");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: usage: " << one_line(e.what(), false) << '\n';
        return 2;
    }

    try {
        SweepConfig cfg;
        cfg.command = parse_command(command);
        cfg.figure = figure;
        if (!figure.empty() && cfg.command != Command::Figure)
            throw ConfigError("unexpected argument '" + figure + "'");
        std::map<std::string, std::string> settings;
        if (!config_path.empty()) settings = read_config_file(config_path);
        for (const auto& [name, opt] : flag_opts)
            if (opt->count() > 0) settings[name] = flag_values[name];
        apply_settings(cfg, settings);
        validate(cfg);

        switch (cfg.command) {
            case Command::Sweep: run_sweep(cfg, out); break;
            case Command::Profile: run_profile(cfg, out); break;
            case Command::Report: run_report(cfg, out); break;
            case Command::Figure: run_figure(cfg, out); break;
            case Command::Verify: return run_verify(cfg, out) == 0 ? 0 : 1;
        }
    } catch (const std::exception& e) {
        err << "error: " << error_code(e) << ": " << one_line(e.what(), false) << '\n';
        return 1;
    }
    return 0;
}

}  // namespace broadband::cli
