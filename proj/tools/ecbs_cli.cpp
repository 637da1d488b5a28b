#include "ecbs/errors.hpp"
#include "ecbs/experiment.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

const std::map<std::string, ecbs::WeightEvaluation> kWeightNames{
    {"auto", ecbs::WeightEvaluation::Auto},
    {"closed-form", ecbs::WeightEvaluation::ClosedForm},
    {"series", ecbs::WeightEvaluation::Series},
};

int run_simulate(const std::string& config_path, const std::string& output) {
    ecbs::ExperimentConfig cfg = ecbs::load_config(config_path);
    if (!output.empty()) {
        cfg.output = output;
    }
    const ecbs::SimulationResult result = ecbs::simulate(cfg);
    const auto files = ecbs::write_outputs(cfg, result);
    for (const auto& s : result.summary) {
        std::printf("t = %-8g step = %-6ld peak x = %.6f  peak U = %.8f", s.time, s.step, s.peak_x,
                    s.peak_value);
        if (s.has_error) {
            std::printf("  Linf(U) = %.6e  Linf(V) = %.6e", s.linf_u, s.linf_v);
        }
        std::printf("\n");
    }
    std::printf("wrote %zu files to %s (%.2f s)\n", files.size(), cfg.output.string().c_str(),
                result.runtime_seconds);
    return kExitOk;
}

int run_table(int which, const std::string& out_dir, ecbs::WeightEvaluation weights) {
    const ecbs::TableResult result = ecbs::run_table(which, weights);
    const std::string text = ecbs::format_table(result);
    std::cout << text;
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        const auto path = std::filesystem::path(out_dir) / ("table" + std::to_string(which) + ".txt");
        std::ofstream out(path);
        out << text;
        if (!out) {
            throw std::runtime_error("failed to write " + path.string());
        }
    }
    return kExitOk;
}

int run_sweep(const std::string& config_path, const std::string& zetas, const std::string& dts,
              const std::string& out_file, unsigned threads) {
    const ecbs::ExperimentConfig cfg = ecbs::load_config(config_path);
    const auto rows = ecbs::run_sweep(cfg, ecbs::parse_number_list(zetas, "zeta"),
                                      ecbs::parse_number_list(dts, "dt"), threads);
    const std::string csv = ecbs::format_sweep_csv(rows);
    if (out_file.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(out_file);
        out << csv;
        if (!out) {
            throw std::runtime_error("failed to write " + out_file);
        }
    }
    for (const auto& r : rows) {
        if (!r.error.empty()) {
            return kExitNumerical;
        }
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exponential cubic B-spline collocation for Boussinesq systems", "ecbs"};
    app.set_version_flag("--version", std::string(ECBS_VERSION));
    app.require_subcommand(1);

    std::string config_path;
    std::string output;
    auto* simulate = app.add_subcommand("simulate", "Run one configuration and write snapshots");
    simulate->add_option("--config,-c", config_path, "configuration file")->required()->check(CLI::ExistingFile);
    simulate->add_option("--output,-o", output, "output directory (overrides the config)");

    int which = 0;
    std::string table_out;
    ecbs::WeightEvaluation table_weights = ecbs::WeightEvaluation::ClosedForm;
    auto* table = app.add_subcommand("table", "Reproduce one of the four error tables");
    table->add_option("--which,-w", which, "table number")->required()->check(CLI::Range(1, 4));
    table->add_option("--out", table_out, "directory for tableN.txt");
    table->add_option("--weights", table_weights, "nodal weight evaluation")
        ->transform(CLI::CheckedTransformer(kWeightNames, CLI::ignore_case))
        ->default_str("closed-form");

    std::string sweep_config;
    std::string zetas;
    std::string dts;
    std::string sweep_out;
    unsigned threads = 0;
    auto* sweep = app.add_subcommand("sweep", "Run a (zeta, dt) grid of simulations");
    sweep->add_option("--config,-c", sweep_config, "base configuration file")->required()->check(CLI::ExistingFile);
    sweep->add_option("--zeta", zetas, "comma-separated zeta values")->required();
    sweep->add_option("--dt", dts, "comma-separated time steps")->required();
    sweep->add_option("--out", sweep_out, "CSV file (default stdout)");
    sweep->add_option("--threads", threads, "worker threads (0 = hardware)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*simulate) {
            return run_simulate(config_path, output);
        }
        if (*table) {
            return run_table(which, table_out, table_weights);
        }
        if (*sweep) {
            return run_sweep(sweep_config, zetas, dts, sweep_out, threads);
        }
    } catch (const ecbs::ConfigError& e) {
        std::cerr << "configuration error";
        if (!e.field().empty()) {
            std::cerr << " [" << e.field() << "]";
        }
        std::cerr << ": " << e.what() << '\n';
        return kExitConfig;
    } catch (const ecbs::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const ecbs::InvalidParameter& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kExitOk;
}
