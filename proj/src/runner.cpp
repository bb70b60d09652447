#include "qotto/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <thread>

#include <CLI11.hpp>

#include "qotto/cd/work.hpp"
#include "qotto/errors.hpp"
#include "qotto/sta.hpp"
#include "qotto/table.hpp"

namespace qotto {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Field access with error messages naming the offending field.

const json& require_field(const json& j, const std::string& name) {
    if (!j.is_object() || !j.contains(name))
        throw ConfigError("missing field '" + name + "'", name);
    return j.at(name);
}

double require_double(const json& j, const std::string& name) {
    const json& v = require_field(j, name);
    if (!v.is_number()) throw ConfigError("field '" + name + "' must be a number", name);
    return v.get<double>();
}

double optional_double(const json& j, const std::string& name, double fallback) {
    if (!j.is_object() || !j.contains(name)) return fallback;
    const json& v = j.at(name);
    if (!v.is_number()) throw ConfigError("field '" + name + "' must be a number", name);
    return v.get<double>();
}

int optional_int(const json& j, const std::string& name, int fallback) {
    if (!j.is_object() || !j.contains(name)) return fallback;
    const json& v = j.at(name);
    if (!v.is_number_integer()) throw ConfigError("field '" + name + "' must be an integer", name);
    return v.get<int>();
}

std::string require_string(const json& j, const std::string& name) {
    const json& v = require_field(j, name);
    if (!v.is_string()) throw ConfigError("field '" + name + "' must be a string", name);
    return v.get<std::string>();
}

std::string optional_string(const json& j, const std::string& name, const std::string& fb) {
    if (!j.is_object() || !j.contains(name)) return fb;
    const json& v = j.at(name);
    if (!v.is_string()) throw ConfigError("field '" + name + "' must be a string", name);
    return v.get<std::string>();
}

// ---------------------------------------------------------------------------
// Output handling.

struct OutputSpec {
    std::string format = "csv";
    std::string path;
};

OutputSpec parse_output(const json& j, const std::string& field) {
    const json& block = require_field(j, field);
    OutputSpec out;
    out.format = optional_string(block, "format", "csv");
    if (out.format != "csv" && out.format != "json")
        throw ConfigError("field 'format' must be 'csv' or 'json'", "format");
    out.path = require_string(block, "path");
    return out;
}

std::optional<OutputSpec> parse_optional_output(const json& j, const std::string& field) {
    if (!j.contains(field)) return std::nullopt;
    return parse_output(j, field);
}

void emit(const ResultTable& table, const OutputSpec& spec) {
    write_file_atomic(spec.path, table.render(spec.format));
}

Cell num(double v) { return Cell{v}; }
Cell text(std::string s) { return Cell{std::move(s)}; }
Cell flag(bool b) { return Cell{b}; }
Cell none() { return Cell{std::monostate{}}; }

// ---------------------------------------------------------------------------
// Domain blocks.

MediumSpec medium_from_json(const json& j) {
    if (!j.contains("medium")) return MediumSpec::single_oscillator();
    const json& m = j.at("medium");
    const std::string kind = optional_string(m, "kind", "single_oscillator");
    const double mass = optional_double(m, "mass", 1.0);
    const double hbar = optional_double(m, "hbar", 1.0);
    if (kind == "single_oscillator") return MediumSpec::single_oscillator(mass, hbar);
    if (kind == "calogero_sutherland") {
        const int n = optional_int(m, "n", 1);
        const double lambda = optional_double(m, "lambda", 0.0);
        return MediumSpec::calogero_sutherland(n, lambda, mass, hbar);
    }
    throw ConfigError("field 'medium.kind' must be 'single_oscillator' or 'calogero_sutherland'",
                      "medium.kind");
}

}  // namespace

SolverOptions solver_from_json(const json& config) {
    SolverOptions opts;
    if (!config.contains("solver")) return opts;
    const json& s = config.at("solver");
    if (s.contains("step")) opts.step = require_double(s, "step");
    if (s.contains("tolerance")) opts.tolerance = require_double(s, "tolerance");
    return opts;
}

FrequencyProtocol protocol_from_json(const json& block, std::optional<double> omega_start,
                                     std::optional<double> omega_end) {
    const std::string kind = require_string(block, "kind");

    auto w_start = [&]() -> double {
        return omega_start ? *omega_start : require_double(block, "omega0");
    };
    auto w_end = [&]() -> double {
        return omega_end ? *omega_end : require_double(block, "omega_f");
    };
    auto tau = [&]() -> double { return require_double(block, "tau"); };

    if (kind == "constant") {
        const double w0 = w_start();
        if (omega_end && std::abs(*omega_end - w0) > 1e-9 * w0)
            throw ConfigError("constant protocol cannot change frequency", "kind");
        return FrequencyProtocol::constant(w0, tau());
    }
    if (kind == "linear_ramp") return FrequencyProtocol::linear_ramp(w_start(), w_end(), tau());
    if (kind == "smooth_ramp") return FrequencyProtocol::smooth_ramp(w_start(), w_end(), tau());
    if (kind == "sta_poly") {
        const double w0 = w_start();
        double b_tau;
        if (!omega_end && block.contains("b_tau"))
            b_tau = require_double(block, "b_tau");
        else
            b_tau = std::sqrt(w0 / w_end());
        return FrequencyProtocol::polynomial_sta(w0, b_tau, tau());
    }
    if (kind == "local_cd_smooth")
        return FrequencyProtocol::local_cd(
            FrequencyProtocol::smooth_ramp(w_start(), w_end(), tau()));
    if (kind == "sudden")
        return FrequencyProtocol::sudden_quench(w_start(), w_end(),
                                                optional_double(block, "tau", 0.0));
    if (kind == "sampled") {
        const json& vals = require_field(block, "values");
        if (!vals.is_array() || vals.size() < 2)
            throw ConfigError("field 'values' must be an array of at least 2 numbers", "values");
        std::vector<double> v;
        v.reserve(vals.size());
        for (const auto& x : vals) {
            if (!x.is_number()) throw ConfigError("field 'values' must be numeric", "values");
            v.push_back(x.get<double>());
        }
        FrequencyProtocol p = FrequencyProtocol::sampled(std::move(v), tau());
        if (omega_start && std::abs(p.omega_initial() - *omega_start) > 1e-9 * *omega_start)
            throw ConfigError("sampled protocol does not start at the required frequency",
                              "values");
        if (omega_end && std::abs(p.omega_final() - *omega_end) > 1e-9 * *omega_end)
            throw ConfigError("sampled protocol does not end at the required frequency",
                              "values");
        return p;
    }
    throw ConfigError("unknown protocol kind '" + kind + "'", "kind");
}

namespace {

CycleSpec cycle_from_json(const json& j) {
    const double omega1 = require_double(j, "omega1");
    const double omega2 = require_double(j, "omega2");
    CycleSpec spec{
        omega1,
        omega2,
        require_double(j, "beta_c"),
        require_double(j, "beta_h"),
        protocol_from_json(require_field(j, "compression"), omega1, omega2),
        protocol_from_json(require_field(j, "expansion"), omega2, omega1),
        optional_double(j, "tau_bc", 0.0),
        optional_double(j, "tau_da", 0.0),
        medium_from_json(j),
        solver_from_json(j),
    };
    spec.validate();
    return spec;
}

// Shared column schema for cycle rows.
std::vector<std::string> cycle_columns(bool with_ratios) {
    std::vector<std::string> cols = {
        "H_A",   "H_B",   "H_C",    "H_D",   "W1",     "W3",
        "Q2",    "Q4",    "Qstar_AB", "Qstar_CD", "eta", "power",
        "tau_cycle", "eta_O", "eta_C", "eta_CA", "eta_sq", "eta_nonad_bound",
        "Qstar_sq", "engine_condition", "diagnostic"};
    if (with_ratios) {
        cols.push_back("power_ratio");
        cols.push_back("efficiency_ratio");
    }
    return cols;
}

std::vector<Cell> cycle_row(const CycleReport& r) {
    return {num(r.energy_a), num(r.energy_b),  num(r.energy_c),      num(r.energy_d),
            num(r.w1),       num(r.w3),        num(r.q2),            num(r.q4),
            num(r.qstar_ab), num(r.qstar_cd),  num(r.eta),           num(r.power),
            num(r.tau_cycle), num(r.eta_otto), num(r.eta_carnot),    num(r.eta_ca),
            num(r.eta_sudden), num(r.eta_nonad_bound), num(r.qstar_sudden),
            flag(r.engine_condition), text(r.diagnostic)};
}

// ---------------------------------------------------------------------------
// Scenarios.

void run_stroke(const json& config) {
    const FrequencyProtocol protocol = protocol_from_json(require_field(config, "protocol"));
    const int samples = optional_int(config, "samples", 1001);
    if (samples < 2) throw ConfigError("field 'samples' must be >= 2", "samples");
    const ScalingSolution sol = solve_ermakov(protocol, solver_from_json(config));

    ResultTable table({"t", "omega_sq", "b", "bdot", "bddot", "Qstar"});
    for (int i = 0; i < samples; ++i) {
        const double t = protocol.duration() * static_cast<double>(i) / (samples - 1);
        const auto q = q_star(sol, t);
        table.add_row({num(t), num(protocol.omega_sq(t)), num(sol.b_at(t)),
                       num(sol.bdot_at(t)), num(sol.bddot_at(t)),
                       q ? num(*q) : none()});
    }
    emit(table, parse_output(config, "output"));
}

void run_sta_design(const json& config) {
    const std::string method = optional_string(config, "method", "polynomial");
    const double omega0 = require_double(config, "omega0");
    const double tau = require_double(config, "tau");
    const double threshold = optional_double(config, "threshold", 1e-6);
    const int samples = optional_int(config, "samples", 1001);

    FrequencyProtocol protocol = [&] {
        if (method == "polynomial") {
            const double b_tau = config.contains("b_tau")
                                     ? require_double(config, "b_tau")
                                     : std::sqrt(omega0 / require_double(config, "omega_f"));
            return inverse_engineer_frequency(
                polynomial_scaling(StaBoundaryConditions{b_tau, tau}), omega0);
        }
        if (method == "local_cd")
            return local_cd_frequency(FrequencyProtocol::smooth_ramp(
                omega0, require_double(config, "omega_f"), tau));
        throw ConfigError("field 'method' must be 'polynomial' or 'local_cd'", "method");
    }();

    ResultTable table({"t", "omega_sq"});
    for (int i = 0; i < samples; ++i) {
        const double t = tau * static_cast<double>(i) / (samples - 1);
        table.add_row({num(t), num(protocol.omega_sq(t))});
    }
    emit(table, parse_output(config, "output"));

    const StaVerification v = verify_sta(protocol, solver_from_json(config), threshold);
    ResultTable vt({"q_star_end", "friction", "b_end", "bdot_end", "pass", "threshold"});
    vt.add_row({num(v.q_star_end), num(v.friction), num(v.b_end), num(v.bdot_end),
                flag(v.pass), num(v.threshold)});
    if (auto out = parse_optional_output(config, "verification_output")) emit(vt, *out);
    std::cout << "sta-design " << method << ": |Q*(tau)-1| = " << format_double(v.friction)
              << (v.pass ? " (pass)" : " (fail)") << "\n";
}

void run_cycle_scenario(const json& config) {
    const CycleReport report = run_cycle(cycle_from_json(config));
    ResultTable table(cycle_columns(false));
    table.add_row(cycle_row(report));
    emit(table, parse_output(config, "output"));
}

// ---------------------------------------------------------------------------
// Sweep.

struct Axis {
    std::string name;
    std::vector<double> values;
};

const std::vector<std::string> kAxisNames = {"tau",    "tau_ab", "tau_cd", "tau_bc",
                                             "tau_da", "beta_c", "beta_h", "omega1",
                                             "omega2", "lambda", "n"};

std::vector<Axis> axes_from_json(const json& config) {
    const json& axes_json = require_field(config, "axes");
    if (!axes_json.is_array() || axes_json.empty())
        throw ConfigError("field 'axes' must be a nonempty array", "axes");
    std::vector<Axis> axes;
    for (const json& a : axes_json) {
        Axis axis;
        axis.name = require_string(a, "name");
        if (std::find(kAxisNames.begin(), kAxisNames.end(), axis.name) == kAxisNames.end())
            throw ConfigError("unknown sweep axis '" + axis.name + "'", "axes");
        if (a.contains("values")) {
            for (const auto& v : a.at("values")) {
                if (!v.is_number())
                    throw ConfigError("axis 'values' must be numeric", "axes");
                axis.values.push_back(v.get<double>());
            }
        } else {
            const double from = require_double(a, "from");
            const double to = require_double(a, "to");
            const int count = optional_int(a, "count", 1);
            if (count < 1) throw ConfigError("axis 'count' must be >= 1", "axes");
            for (int i = 0; i < count; ++i)
                axis.values.push_back(count == 1 ? from
                                                 : from + (to - from) * i / (count - 1));
        }
        if (axis.values.empty())
            throw ConfigError("axis '" + axis.name + "' has no values", "axes");
        axes.push_back(std::move(axis));
    }
    return axes;
}

json apply_point(const json& base, const std::vector<Axis>& axes,
                 const std::vector<std::size_t>& index) {
    json j = base;
    for (std::size_t k = 0; k < axes.size(); ++k) {
        const std::string& name = axes[k].name;
        const double v = axes[k].values[index[k]];
        if (name == "tau") {
            j["compression"]["tau"] = v;
            j["expansion"]["tau"] = v;
        } else if (name == "tau_ab") {
            j["compression"]["tau"] = v;
        } else if (name == "tau_cd") {
            j["expansion"]["tau"] = v;
        } else if (name == "lambda" || name == "n") {
            if (name == "n") {
                const auto n = static_cast<int>(std::llround(v));
                if (std::abs(v - n) > 1e-9)
                    throw ConfigError("axis 'n' must take integer values", "axes");
                j["medium"]["n"] = n;
            } else {
                j["medium"]["lambda"] = v;
            }
            if (!j["medium"].contains("kind")) j["medium"]["kind"] = "calogero_sutherland";
        } else {
            j[name] = v;
        }
    }
    return j;
}

void run_sweep(const json& config, const RunOptions& opts) {
    const json& base = require_field(config, "base");
    const std::vector<Axis> axes = axes_from_json(config);
    const bool with_ratios = config.value("include_supremacy", false);

    std::size_t total = 1;
    for (const Axis& a : axes) total *= a.values.size();

    std::vector<std::string> columns;
    for (const Axis& a : axes) columns.push_back(a.name);
    columns.push_back("status");
    for (const std::string& c : cycle_columns(with_ratios)) columns.push_back(c);

    std::vector<std::vector<Cell>> rows(total);
    std::atomic<std::size_t> cursor{0};

    auto evaluate = [&](std::size_t flat) {
        // Decompose in row-major order: first axis slowest.
        std::vector<std::size_t> index(axes.size());
        std::size_t rem = flat;
        for (std::size_t k = axes.size(); k-- > 0;) {
            index[k] = rem % axes[k].values.size();
            rem /= axes[k].values.size();
        }
        std::vector<Cell> row;
        for (std::size_t k = 0; k < axes.size(); ++k) row.push_back(num(axes[k].values[index[k]]));
        try {
            const json point = apply_point(base, axes, index);
            const CycleSpec spec = cycle_from_json(point);
            if (with_ratios) {
                const SupremacyRatios sr = supremacy_ratios(spec);
                row.push_back(text("ok"));
                for (Cell& c : cycle_row(sr.many)) row.push_back(std::move(c));
                row.push_back(num(sr.power_ratio));
                row.push_back(num(sr.efficiency_ratio));
            } else {
                const CycleReport r = run_cycle(spec);
                row.push_back(text("ok"));
                for (Cell& c : cycle_row(r)) row.push_back(std::move(c));
            }
        } catch (const std::exception& e) {
            // Per-point failures are recorded in-row and never abort the sweep.
            row.resize(axes.size());
            row.push_back(text(std::string("error: ") + e.what()));
            while (row.size() < columns.size()) row.push_back(none());
        }
        rows[flat] = std::move(row);
    };

    const int jobs = std::max(1, opts.jobs);
    if (jobs == 1) {
        for (std::size_t i = 0; i < total; ++i) evaluate(i);
    } else {
        auto worker = [&] {
            for (;;) {
                const std::size_t i = cursor.fetch_add(1);
                if (i >= total) break;
                evaluate(i);
            }
        };
        std::vector<std::thread> pool;
        for (int k = 1; k < jobs; ++k) pool.emplace_back(worker);
        worker();
        for (std::thread& th : pool) th.join();
    }

    ResultTable table(columns);
    for (std::vector<Cell>& row : rows) table.add_row(std::move(row));
    emit(table, parse_output(config, "output"));
}

// ---------------------------------------------------------------------------
// Counterdiabatic scenario.

cd::HamiltonianPath path_from_json(const json& config) {
    const json& p = require_field(config, "path");
    const std::string kind = require_string(p, "kind");
    const double tau = require_double(p, "tau");
    if (kind == "qubit")
        return cd::qubit_sweep_path(require_double(p, "delta"),
                                    require_double(p, "lambda_from"),
                                    require_double(p, "lambda_to"), tau,
                                    optional_double(p, "hbar", 1.0));
    if (kind == "three_level")
        return cd::three_level_smooth_path(
            tau, static_cast<std::uint64_t>(optional_int(p, "seed", 20240)),
            optional_double(p, "hbar", 1.0));
    throw ConfigError("field 'path.kind' must be 'qubit' or 'three_level'", "path.kind");
}

Eigen::VectorXd occupations_from_json(const json& config, int dim) {
    if (!config.contains("p0")) {
        Eigen::VectorXd p0 = Eigen::VectorXd::Zero(dim);
        p0[0] = 1.0;
        return p0;
    }
    const json& v = config.at("p0");
    if (v.is_string() && v.get<std::string>() == "ground") {
        Eigen::VectorXd p0 = Eigen::VectorXd::Zero(dim);
        p0[0] = 1.0;
        return p0;
    }
    if (v.is_array() && static_cast<int>(v.size()) == dim) {
        Eigen::VectorXd p0(dim);
        for (int i = 0; i < dim; ++i) {
            if (!v.at(i).is_number()) throw ConfigError("field 'p0' must be numeric", "p0");
            p0[i] = v.at(i).get<double>();
        }
        return p0;
    }
    throw ConfigError("field 'p0' must be 'ground' or an array matching the dimension", "p0");
}

void run_cd(const json& config) {
    const cd::HamiltonianPath path = path_from_json(config);
    const Eigen::VectorXd p0 = occupations_from_json(config, path.dim);
    const int steps = optional_int(config, "steps", 4000);
    const double t_meas = optional_double(config, "time", path.tau);
    const int metric_samples = optional_int(config, "metrics_samples", 201);

    const auto work_out = parse_optional_output(config, "work_output");
    const auto metrics_out = parse_optional_output(config, "metrics_output");
    const auto summary_out = parse_optional_output(config, "summary_output");
    if (!work_out && !metrics_out && !summary_out)
        throw ConfigError("cd scenario needs work_output, metrics_output or summary_output",
                          "work_output");

    const cd::WorkDistribution dist_cd =
        cd::work_distribution(path, p0, t_meas, cd::WorkMode::CounterDiabatic, steps);
    const cd::WorkDistribution dist_ad =
        cd::work_distribution(path, p0, t_meas, cd::WorkMode::Adiabatic);

    if (work_out) {
        ResultTable table({"W", "p"});
        for (std::size_t i = 0; i < dist_cd.w.size(); ++i)
            table.add_row({num(dist_cd.w[i]), num(dist_cd.p[i])});
        emit(table, *work_out);
    }
    if (metrics_out) {
        const cd::CostMetrics metrics = cd::cd_cost_metrics(path, p0, metric_samples);
        ResultTable table({"t", "hs_norm_sq", "variance"});
        for (std::size_t i = 0; i < metrics.times.size(); ++i)
            table.add_row({num(metrics.times[i]), num(metrics.hs_norm_sq[i]),
                           num(metrics.energy_variance[i])});
        emit(table, *metrics_out);
    }
    if (summary_out) {
        const auto generator = [&](double s) { return cd::h_cd(path, s); };
        const cd::StateTrajectory traj = cd::evolve_tdse(
            generator, cd::spectral_frame(path.h_at(0.0), 0.0).eigenvectors.col(0), path.tau,
            steps, path.hbar);
        const cd::Vector target = cd::adiabatic_state(path, 0, path.tau);
        ResultTable table({"fidelity_ground", "mean_work_cd", "mean_work_ad", "var_cd",
                           "var_ad", "predicted_excess", "time"});
        table.add_row({num(cd::fidelity(traj.final_state(), target)), num(dist_cd.mean()),
                       num(dist_ad.mean()), num(dist_cd.variance()), num(dist_ad.variance()),
                       num(cd::predicted_variance_excess(path, t_meas, p0)), num(t_meas)});
        emit(table, *summary_out);
    }
}

}  // namespace

void run_scenario(const json& config, const RunOptions& opts) {
    json cfg = config;
    if (!opts.out_override.empty()) {
        const std::string primary =
            cfg.contains("output") ? "output" : (cfg.contains("work_output") ? "work_output"
                                                                             : "output");
        cfg[primary]["path"] = opts.out_override;
        if (!cfg[primary].contains("format")) cfg[primary]["format"] = "csv";
    }
    const std::string scenario = require_string(cfg, "scenario");
    if (scenario == "stroke") return run_stroke(cfg);
    if (scenario == "sta-design") return run_sta_design(cfg);
    if (scenario == "cycle") return run_cycle_scenario(cfg);
    if (scenario == "sweep") return run_sweep(cfg, opts);
    if (scenario == "cd") return run_cd(cfg);
    throw ConfigError("unknown scenario '" + scenario + "'", "scenario");
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Finite-time quantum Otto engines with shortcuts to adiabaticity"};
    app.require_subcommand(1);

    struct SubOptions {
        std::string config_path;
        std::string out;
        int jobs = 1;
    };
    std::map<std::string, SubOptions> sub_options;
    for (const std::string name : {"stroke", "sta-design", "cycle", "sweep", "cd"}) {
        CLI::App* sub = app.add_subcommand(name, name + " scenario");
        SubOptions& so = sub_options[name];
        sub->add_option("--config", so.config_path, "JSON configuration file")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--out", so.out, "override the primary output path");
        sub->add_option("--jobs", so.jobs, "sweep parallelism degree")
            ->check(CLI::PositiveNumber);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    const std::string scenario = app.get_subcommands().front()->get_name();
    const SubOptions& so = sub_options[scenario];
    try {
        std::ifstream in(so.config_path);
        if (!in) throw ConfigError("cannot open config file: " + so.config_path);
        json config;
        try {
            config = json::parse(in);
        } catch (const json::parse_error& e) {
            throw ConfigError(std::string("config parse error: ") + e.what());
        }
        if (config.contains("scenario")) {
            if (config.at("scenario") != scenario)
                throw ConfigError("config scenario does not match the subcommand", "scenario");
        } else {
            config["scenario"] = scenario;
        }
        run_scenario(config, RunOptions{so.out, so.jobs});
    } catch (const ConfigError& e) {
        std::cerr << "qotto " << scenario << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "qotto " << scenario << ": " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace qotto
