#pragma once

// Experiment drivers behind the command-line tool: single simulations with CSV
// and JSON output, the fixed (dt, zeta) error tables, and parameter sweeps.

#include "ecbs/config.hpp"
#include "ecbs/diagnostics.hpp"
#include "ecbs/solver.hpp"

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace ecbs {

/// Traveling sech^2 pulse A sech^2(k (x - c t)) riding on V = -1.
struct PulsePreset {
    double amplitude;
    double wavenumber;
    double speed;

    static PulsePreset regularized() noexcept; ///< k = sqrt(6)/2, c = 1/3
    static PulsePreset classical() noexcept;   ///< k = sqrt(3)/2, c = 1/3

    WaveValues operator()(double x, double t) const noexcept;
    double slope(double x, double t) const noexcept;
};

/// Grid, weights, initial data and (optionally) exact solution for a validated config.
Problem build_problem(const ExperimentConfig& config);

struct SnapshotSummary {
    double time;
    long step;
    double peak_x;
    double peak_node_x;
    double peak_value;
    bool has_error = false;
    double linf_u = 0.0;
    double linf_v = 0.0;
    double argmax_u = 0.0;
    double argmax_v = 0.0;
};

struct SimulationResult {
    Grid grid;
    NodalWeights weights;
    std::vector<Snapshot> snapshots;
    std::vector<SnapshotSummary> summary;
    double runtime_seconds = 0.0;
};

SnapshotSummary summarize(const Grid& grid, const Snapshot& snapshot);

/// Validates, builds and runs a configuration; no files are written.
SimulationResult simulate(const ExperimentConfig& config);

/// Header x,u,v[,u_exact,v_exact,err_u,err_v]; 17 significant digits.
void write_snapshot_csv(std::ostream& out, const Grid& grid, const Snapshot& snapshot);

std::string summary_json(const ExperimentConfig& config, const SimulationResult& result);

/// snapshot_NNNN.csv per snapshot plus summary.json under config.output.
std::vector<std::filesystem::path> write_outputs(const ExperimentConfig& config,
                                                 const SimulationResult& result);

enum class ErrorField { U, V };

struct TableRow {
    double dt;
    double reference_unit_zeta; ///< scaled reference value at zeta = 1
    double tuned_zeta;
    double reference_tuned; ///< scaled reference value at tuned_zeta
};

struct TableSpec {
    int which;
    SystemPreset system;
    ErrorField field;
    double scale; ///< 1e5 for V tables, 1e3 for U tables
    std::array<TableRow, 3> rows;
};

/// Tables 1..4: RBS V, RBS U, CBS V, CBS U. Throws InvalidParameter otherwise.
TableSpec table_spec(int which);

/// Setup shared by every table cell: [-20, 30], N = 1000, t = 5, oracle on.
ExperimentConfig table_config(SystemPreset system, double dt, double zeta, WeightEvaluation weights);

struct TableCell {
    double dt;
    double zeta;
    double linf;   ///< unscaled maximum error of the table's field
    double scaled; ///< linf * scale
    double reference;
};

struct TableResult {
    TableSpec spec;
    WeightEvaluation weights;
    std::array<TableCell, 3> unit_zeta;
    std::array<TableCell, 3> tuned;
};

/// Runs the six cells concurrently.
TableResult run_table(int which, WeightEvaluation weights = WeightEvaluation::ClosedForm);

std::string format_table(const TableResult& result);

struct SweepRow {
    double zeta;
    double dt;
    double linf_u = 0.0;
    double linf_v = 0.0;
    double runtime_seconds = 0.0;
    std::string error; ///< empty on success
};

/// One independent simulation per (zeta, dt), zeta-major, run concurrently; rows in input order.
std::vector<SweepRow> run_sweep(const ExperimentConfig& base, const std::vector<double>& zetas,
                                const std::vector<double>& dts, unsigned threads = 0);

std::string format_sweep_csv(const std::vector<SweepRow>& rows);

} // namespace ecbs
