#include "ecbs/experiment.hpp"

#include "ecbs/errors.hpp"

#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <sstream>
#include <thread>

namespace ecbs {
namespace {

using Clock = std::chrono::steady_clock;

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        const auto first = cell.find_first_not_of(" \t\r");
        const auto last = cell.find_last_not_of(" \t\r");
        out.push_back(first == std::string::npos ? "" : cell.substr(first, last - first + 1));
    }
    return out;
}

// Columns u and v (x optional, ignored) with a header row.
void load_tabulated(const std::filesystem::path& path, std::size_t n_nodes, NodalField& u,
                    NodalField& v) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("initial_data", "cannot open " + path.string());
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw ConfigError("initial_data", "empty file " + path.string());
    }
    const auto header = split_csv(line);
    std::ptrdiff_t iu = -1;
    std::ptrdiff_t iv = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "u") {
            iu = static_cast<std::ptrdiff_t>(i);
        } else if (header[i] == "v") {
            iv = static_cast<std::ptrdiff_t>(i);
        }
    }
    if (iu < 0 || iv < 0) {
        throw ConfigError("initial_data", "header must name columns u and v");
    }
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        const auto cells = split_csv(line);
        const auto need = static_cast<std::size_t>(std::max(iu, iv));
        if (cells.size() <= need) {
            throw ConfigError("initial_data", "short row in " + path.string());
        }
        try {
            u.values.push_back(std::stod(cells[static_cast<std::size_t>(iu)]));
            v.values.push_back(std::stod(cells[static_cast<std::size_t>(iv)]));
        } catch (const std::exception&) {
            throw ConfigError("initial_data", "non-numeric entry in " + path.string());
        }
        if (!std::isfinite(u.values.back()) || !std::isfinite(v.values.back())) {
            throw ConfigError("initial_data", "non-finite entry in " + path.string());
        }
    }
    if (u.values.size() != n_nodes) {
        throw ConfigError("initial_data", "expected " + std::to_string(n_nodes) + " rows (N + 1), got " +
                                              std::to_string(u.values.size()));
    }
}

// The published tables cut, rather than round, to six decimals.
std::string truncated6(double v) {
    return format_fixed(std::trunc(v * 1e6) / 1e6, 6);
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

} // namespace

PulsePreset PulsePreset::regularized() noexcept { return {1.0, std::sqrt(6.0) / 2.0, 1.0 / 3.0}; }

PulsePreset PulsePreset::classical() noexcept { return {1.0, std::sqrt(3.0) / 2.0, 1.0 / 3.0}; }

WaveValues PulsePreset::operator()(double x, double t) const noexcept {
    return {amplitude * sech_squared(wavenumber * (x - speed * t)), -1.0};
}

double PulsePreset::slope(double x, double t) const noexcept {
    const double arg = wavenumber * (x - speed * t);
    return -2.0 * wavenumber * amplitude * sech_squared(arg) * std::tanh(arg);
}

Problem build_problem(const ExperimentConfig& cfg) {
    validate(cfg);
    Grid grid(cfg.a, cfg.b, cfg.n_cells);
    const NodalWeights weights = nodal_weights(SplineShape(cfg.zeta, grid.h()), cfg.weights);

    NodalField u0;
    NodalField v0;
    ExactSolution exact;
    if (cfg.initial_condition == InitialPreset::Tabulated) {
        load_tabulated(cfg.initial_data, grid.n_nodes(), u0, v0);
    } else {
        const PulsePreset pulse = cfg.initial_condition == InitialPreset::RegularizedPulse
                                      ? PulsePreset::regularized()
                                      : PulsePreset::classical();
        for (const double x : grid.nodes()) {
            const WaveValues w = pulse(x, 0.0);
            u0.values.push_back(w.u);
            v0.values.push_back(w.v);
        }
        if (cfg.oracle) {
            u0.slope_left = pulse.slope(grid.a(), 0.0);
            u0.slope_right = pulse.slope(grid.b(), 0.0);
            if (cfg.system == SystemPreset::Regularized) {
                // Identical to the pulse; kept on the closed-form path so the two stay cross-checked.
                const TravelingWave wave{SystemVariant::Regularized, 6.0, 1.0 / 3.0, 0.0};
                exact = [wave](double x, double t) { return wave(x, t); };
            } else {
                exact = [pulse](double x, double t) { return pulse(x, t); };
            }
        }
    }

    return Problem{
        grid,
        cfg.coefficients(),
        weights,
        cfg.dt,
        cfg.t_end,
        std::move(u0),
        std::move(v0),
        cfg.resolved_snapshot_times(),
        std::move(exact),
    };
}

SnapshotSummary summarize(const Grid& grid, const Snapshot& snap) {
    const PeakLocation peak = peak_location(grid, snap.u);
    SnapshotSummary s{snap.time, snap.step, peak.x, peak.node_x, peak.value};
    if (snap.has_exact()) {
        const ErrorReport report = error_report(grid, snap);
        s.has_error = true;
        s.linf_u = report.linf_u;
        s.linf_v = report.linf_v;
        s.argmax_u = report.argmax_u;
        s.argmax_v = report.argmax_v;
    }
    return s;
}

SimulationResult simulate(const ExperimentConfig& cfg) {
    const auto start = Clock::now();
    Problem problem = build_problem(cfg);
    SimulationResult result{problem.grid, problem.weights, run(problem), {}, 0.0};
    for (const auto& snap : result.snapshots) {
        result.summary.push_back(summarize(result.grid, snap));
    }
    result.runtime_seconds = seconds_since(start);
    return result;
}

void write_snapshot_csv(std::ostream& out, const Grid& grid, const Snapshot& snap) {
    const bool exact = snap.has_exact();
    out << (exact ? "x,u,v,u_exact,v_exact,err_u,err_v\n" : "x,u,v\n");
    for (std::size_t i = 0; i < snap.u.size(); ++i) {
        out << format_double(grid.node(static_cast<int>(i))) << ',' << format_double(snap.u[i]) << ','
            << format_double(snap.v[i]);
        if (exact) {
            out << ',' << format_double(snap.u_exact[i]) << ',' << format_double(snap.v_exact[i])
                << ',' << format_double(snap.err_u[i]) << ',' << format_double(snap.err_v[i]);
        }
        out << '\n';
    }
}

std::string summary_json(const ExperimentConfig& cfg, const SimulationResult& result) {
    using nlohmann::ordered_json;
    const SystemCoefficients s = cfg.coefficients();
    ordered_json doc;
    doc["system"] = to_string(cfg.system);
    doc["coefficients"] = {{"s1", s.s1}, {"s2", s.s2}, {"s3", s.s3}, {"s4", s.s4}};
    doc["grid"] = {{"a", cfg.a}, {"b", cfg.b}, {"n_cells", cfg.n_cells}, {"h", result.grid.h()}};
    doc["dt"] = cfg.dt;
    doc["zeta"] = cfg.zeta;
    doc["t_end"] = cfg.t_end;
    doc["weights"] = to_string(cfg.weights);
    doc["nodal_weights"] = {{"alpha1", result.weights.alpha1},
                            {"beta1", result.weights.beta1},
                            {"gamma1", result.weights.gamma1},
                            {"gamma2", result.weights.gamma2}};
    doc["initial_condition"] = to_string(cfg.initial_condition);

    ordered_json notes = ordered_json::array();
    if (cfg.oracle && cfg.system == SystemPreset::Regularized) {
        doc["exact_solution"] = "U = (1 - rho/6) cs + (cs rho/2) sech^2((sqrt(rho)/2)(x - cs t)), "
                                "rho = 6, cs = 1/3; V = -1";
    } else if (cfg.oracle && cfg.system == SystemPreset::Classical) {
        doc["exact_solution"] = "U = sech^2((sqrt(3)/2)(x - t/3)), V = -1 (initial pulse translated "
                                "at speed 1/3)";
        notes.push_back("the closed form (1 - rho/3) cs + (cs rho/2) sech^2(...) with rho = 3, "
                        "cs = 1/3 has amplitude 1/2, not the unit amplitude of the initial "
                        "condition; errors are measured against the translated unit pulse");
    } else {
        doc["exact_solution"] = nullptr;
    }
    if (cfg.system == SystemPreset::Classical && cfg.a == -20.0 && cfg.b == 30.0) {
        notes.push_back("the interval [-20, 30] is reused from the regularized system experiment");
    }
    doc["notes"] = notes;

    ordered_json snaps = ordered_json::array();
    for (std::size_t i = 0; i < result.summary.size(); ++i) {
        const SnapshotSummary& s_i = result.summary[i];
        ordered_json entry;
        entry["time"] = s_i.time;
        entry["step"] = s_i.step;
        entry["file"] = "snapshot_" + std::string(4 - std::min<std::size_t>(4, std::to_string(i).size()), '0') +
                        std::to_string(i) + ".csv";
        if (s_i.has_error) {
            entry["linf_u"] = s_i.linf_u;
            entry["linf_v"] = s_i.linf_v;
            entry["argmax_u"] = s_i.argmax_u;
            entry["argmax_v"] = s_i.argmax_v;
        } else {
            entry["linf_u"] = nullptr;
            entry["linf_v"] = nullptr;
        }
        entry["peak_x"] = s_i.peak_x;
        entry["peak_node_x"] = s_i.peak_node_x;
        entry["peak_value"] = s_i.peak_value;
        snaps.push_back(std::move(entry));
    }
    doc["snapshots"] = std::move(snaps);
    return doc.dump(2) + "\n";
}

std::vector<std::filesystem::path> write_outputs(const ExperimentConfig& cfg,
                                                 const SimulationResult& result) {
    std::filesystem::create_directories(cfg.output);
    std::vector<std::filesystem::path> written;
    for (std::size_t i = 0; i < result.snapshots.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "snapshot_%04zu.csv", i);
        const auto path = cfg.output / name;
        std::ofstream out(path);
        write_snapshot_csv(out, result.grid, result.snapshots[i]);
        if (!out) {
            throw std::runtime_error("failed to write " + path.string());
        }
        written.push_back(path);
    }
    const auto summary_path = cfg.output / "summary.json";
    std::ofstream out(summary_path);
    out << summary_json(cfg, result);
    if (!out) {
        throw std::runtime_error("failed to write " + summary_path.string());
    }
    written.push_back(summary_path);
    return written;
}

TableSpec table_spec(int which) {
    switch (which) {
    case 1:
        return {1, SystemPreset::Regularized, ErrorField::V, 1e5,
                {{{0.5, 0.0, 0.0000018762, 0.0},
                  {0.05, 0.0, 0.0000060571, 0.0},
                  {0.005, 0.0, 0.0000058339, 0.0}}}};
    case 2:
        return {2, SystemPreset::Regularized, ErrorField::U, 1e3,
                {{{0.5, 23.890978, 0.0000018762, 2.994220},
                  {0.05, 1.554225, 0.0000060571, 0.186862},
                  {0.005, 1.351017, 0.0000058339, 0.189722}}}};
    case 3:
        return {3, SystemPreset::Classical, ErrorField::V, 1e5,
                {{{0.5, 0.0, 0.0000027881, 0.0},
                  {0.05, 0.0, 0.0000080030, 0.0},
                  {0.005, 0.000006, 0.0000086530, 0.0}}}};
    case 4:
        return {4, SystemPreset::Classical, ErrorField::U, 1e3,
                {{{0.5, 8.574594, 0.0000027881, 0.199469},
                  {0.05, 0.715209, 0.0000080030, 0.097838},
                  {0.005, 0.643377, 0.0000086530, 0.100474}}}};
    default:
        break;
    }
    throw InvalidParameter("table must be 1, 2, 3 or 4, got " + std::to_string(which));
}

ExperimentConfig table_config(SystemPreset system, double dt, double zeta, WeightEvaluation weights) {
    ExperimentConfig cfg;
    cfg.system = system;
    cfg.initial_condition = system == SystemPreset::Regularized ? InitialPreset::RegularizedPulse
                                                                : InitialPreset::ClassicalPulse;
    cfg.a = -20.0;
    cfg.b = 30.0;
    cfg.n_cells = 1000;
    cfg.dt = dt;
    cfg.zeta = zeta;
    cfg.t_end = 5.0;
    cfg.snapshot_times = {5.0};
    cfg.oracle = true;
    cfg.weights = weights;
    return cfg;
}

TableResult run_table(int which, WeightEvaluation weights) {
    const TableSpec spec = table_spec(which);
    auto cell = [&](double dt, double zeta, double reference) {
        const SimulationResult r = simulate(table_config(spec.system, dt, zeta, weights));
        const SnapshotSummary& last = r.summary.back();
        const double linf = spec.field == ErrorField::U ? last.linf_u : last.linf_v;
        return TableCell{dt, zeta, linf, linf * spec.scale, reference};
    };

    std::vector<std::future<TableCell>> unit;
    std::vector<std::future<TableCell>> tuned;
    for (const TableRow& row : spec.rows) {
        unit.push_back(std::async(std::launch::async, cell, row.dt, 1.0, row.reference_unit_zeta));
        tuned.push_back(std::async(std::launch::async, cell, row.dt, row.tuned_zeta, row.reference_tuned));
    }
    TableResult result{spec, weights, {}, {}};
    for (std::size_t i = 0; i < spec.rows.size(); ++i) {
        result.unit_zeta[i] = unit[i].get();
        result.tuned[i] = tuned[i].get();
    }
    return result;
}

std::string format_table(const TableResult& r) {
    const bool is_u = r.spec.field == ErrorField::U;
    const bool rbs = r.spec.system == SystemPreset::Regularized;
    std::ostringstream out;
    out << "# Table " << r.spec.which << ": L_inf(" << (is_u ? "U" : "V") << ") x "
        << (is_u ? "1e3" : "1e5") << " at t = 5, " << (rbs ? "RBS" : "CBS")
        << " on [-20, 30], N = 1000\n";
    out << "# weights: " << to_string(r.weights) << "\n";
    if (rbs) {
        out << "# exact solution: U = sech^2((sqrt(6)/2)(x - t/3)), V = -1\n";
    } else {
        out << "# interval [-20, 30] assumed for CBS (same as RBS)\n";
        out << "# exact solution: U = sech^2((sqrt(3)/2)(x - t/3)), V = -1 (translated initial pulse;\n"
               "#   the closed form with rho = 3, cs = 1/3 would have amplitude 1/2)\n";
    }
    out << "# scaled values are truncated to 6 decimals as in the published tables;\n"
           "# linf columns hold the unscaled maxima, reference columns the published values\n";
    out << "dt\tzeta=1\treference\tlinf\tzeta\ttuned\treference\tlinf\n";
    for (std::size_t i = 0; i < r.unit_zeta.size(); ++i) {
        const TableCell& u = r.unit_zeta[i];
        const TableCell& t = r.tuned[i];
        char linf_u[32];
        char linf_t[32];
        std::snprintf(linf_u, sizeof linf_u, "%.9e", u.linf);
        std::snprintf(linf_t, sizeof linf_t, "%.9e", t.linf);
        out << format_fixed(u.dt, 3) << '\t' << truncated6(u.scaled) << '\t' << format_fixed(u.reference, 6)
            << '\t' << linf_u << '\t' << format_fixed(t.zeta, 10) << '\t' << truncated6(t.scaled) << '\t'
            << format_fixed(t.reference, 6) << '\t' << linf_t << '\n';
    }
    return out.str();
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& base, const std::vector<double>& zetas,
                                const std::vector<double>& dts, unsigned threads) {
    if (zetas.empty() || dts.empty()) {
        throw ConfigError(zetas.empty() ? "zeta" : "dt", "sweep list must not be empty");
    }
    std::vector<SweepRow> rows;
    for (const double z : zetas) {
        for (const double dt : dts) {
            rows.push_back({z, dt, 0.0, 0.0, 0.0, {}});
        }
    }
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = std::min<unsigned>(threads, static_cast<unsigned>(rows.size()));

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < rows.size(); i = next++) {
            SweepRow& row = rows[i];
            ExperimentConfig cfg = base;
            cfg.zeta = row.zeta;
            cfg.dt = row.dt;
            const auto start = Clock::now();
            try {
                const SimulationResult r = simulate(cfg);
                const SnapshotSummary& last = r.summary.back();
                row.linf_u = last.has_error ? last.linf_u : std::nan("");
                row.linf_v = last.has_error ? last.linf_v : std::nan("");
            } catch (const std::exception& e) {
                row.error = e.what();
            }
            row.runtime_seconds = seconds_since(start);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    for (auto& t : pool) {
        t.join();
    }
    return rows;
}

std::string format_sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "zeta,dt,linf_u,linf_v,runtime,status\n";
    for (const SweepRow& r : rows) {
        out << format_double(r.zeta) << ',' << format_double(r.dt) << ',';
        if (r.error.empty()) {
            out << format_double(r.linf_u) << ',' << format_double(r.linf_v) << ','
                << format_fixed(r.runtime_seconds, 3) << ",ok\n";
        } else {
            std::string msg = r.error;
            for (char& c : msg) {
                if (c == ',' || c == '\n' || c == '"') {
                    c = ' ';
                }
            }
            out << ",," << format_fixed(r.runtime_seconds, 3) << ",error: " << msg << '\n';
        }
    }
    return out.str();
}

} // namespace ecbs
