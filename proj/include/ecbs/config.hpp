#pragma once

// Flat "key = value" experiment configuration. '#' starts a comment, unknown
// keys are rejected, and every solver precondition is checked by validate().
//
//   system           rbs | cbs | custom
//   s1, s2, s3, s4   custom system coefficients (s1 = s3 = 0 required)
//   a, b, n_cells    spatial grid
//   dt, zeta, t_end  time step, spline parameter, terminating time
//   snapshot_times   comma-separated list, or
//   snapshot_every   uniform spacing from 0 to t_end
//   initial_condition  rbs-pulse | cbs-pulse | tabulated
//   initial_data     CSV with columns u,v (optionally x) when tabulated
//   oracle           on | off
//   weights          auto | closed-form | series
//   output           output directory

#include "ecbs/expspline.hpp"
#include "ecbs/model.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ecbs {

enum class SystemPreset { Regularized, Classical, Custom };

enum class InitialPreset { RegularizedPulse, ClassicalPulse, Tabulated };

struct ExperimentConfig {
    SystemPreset system = SystemPreset::Regularized;
    SystemCoefficients custom;
    double a = -20.0;
    double b = 30.0;
    int n_cells = 1000;
    double dt = 0.005;
    double zeta = 0.0000058339;
    double t_end = 5.0;
    std::vector<double> snapshot_times;
    std::optional<double> snapshot_every;
    InitialPreset initial_condition = InitialPreset::RegularizedPulse;
    std::filesystem::path initial_data;
    bool oracle = true;
    WeightEvaluation weights = WeightEvaluation::Auto;
    std::filesystem::path output = "out";

    SystemCoefficients coefficients() const;

    /// snapshot_times, or the uniform grid implied by snapshot_every; {t_end} when neither is set.
    std::vector<double> resolved_snapshot_times() const;
};

/// Parses configuration text. Throws ConfigError naming the offending key.
ExperimentConfig parse_config(std::string_view text);

/// A relative initial_data path is taken relative to the file's directory.
ExperimentConfig load_config(const std::filesystem::path& path);

/// Checks every precondition of the solver. Throws ConfigError.
void validate(const ExperimentConfig& config);

std::string to_string(SystemPreset preset);
std::string to_string(InitialPreset preset);
std::string to_string(WeightEvaluation mode);

std::vector<double> parse_number_list(std::string_view text, const std::string& field);

} // namespace ecbs
