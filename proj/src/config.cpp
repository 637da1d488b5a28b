#include "ecbs/config.hpp"

#include "ecbs/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace ecbs {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(std::string_view text, const std::string& field) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() ||
        !std::isfinite(value)) {
        throw ConfigError(field, "expected a finite number, got '" + std::string(text) + "'");
    }
    return value;
}

int parse_int(std::string_view text, const std::string& field) {
    text = trim(text);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError(field, "expected an integer, got '" + std::string(text) + "'");
    }
    return value;
}

bool parse_switch(std::string_view text, const std::string& field) {
    if (text == "on" || text == "true" || text == "yes") {
        return true;
    }
    if (text == "off" || text == "false" || text == "no") {
        return false;
    }
    throw ConfigError(field, "expected on or off, got '" + std::string(text) + "'");
}

} // namespace

std::vector<double> parse_number_list(std::string_view text, const std::string& field) {
    std::vector<double> out;
    text = trim(text);
    if (text.empty()) {
        return out;
    }
    while (true) {
        const auto comma = text.find(',');
        out.push_back(parse_number(text.substr(0, comma), field));
        if (comma == std::string_view::npos) {
            break;
        }
        text.remove_prefix(comma + 1);
    }
    return out;
}

SystemCoefficients ExperimentConfig::coefficients() const {
    switch (system) {
    case SystemPreset::Regularized:
        return SystemCoefficients::regularized();
    case SystemPreset::Classical:
        return SystemCoefficients::classical();
    case SystemPreset::Custom:
        break;
    }
    return custom;
}

std::vector<double> ExperimentConfig::resolved_snapshot_times() const {
    if (!snapshot_times.empty()) {
        return snapshot_times;
    }
    if (snapshot_every) {
        std::vector<double> times;
        const long count = std::lround(std::floor(t_end / *snapshot_every + 1e-9));
        for (long k = 0; k <= count; ++k) {
            times.push_back(static_cast<double>(k) * *snapshot_every);
        }
        return times;
    }
    return {t_end};
}

ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig cfg;
    std::set<std::string> seen;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("", "line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key{trim(line.substr(0, eq))};
        const std::string_view value = trim(line.substr(eq + 1));
        if (!seen.insert(key).second) {
            throw ConfigError(key, "duplicate key");
        }

        if (key == "system") {
            if (value == "rbs") {
                cfg.system = SystemPreset::Regularized;
            } else if (value == "cbs") {
                cfg.system = SystemPreset::Classical;
            } else if (value == "custom") {
                cfg.system = SystemPreset::Custom;
            } else {
                throw ConfigError(key, "expected rbs, cbs or custom, got '" + std::string(value) + "'");
            }
        } else if (key == "s1") {
            cfg.custom.s1 = parse_number(value, key);
        } else if (key == "s2") {
            cfg.custom.s2 = parse_number(value, key);
        } else if (key == "s3") {
            cfg.custom.s3 = parse_number(value, key);
        } else if (key == "s4") {
            cfg.custom.s4 = parse_number(value, key);
        } else if (key == "a") {
            cfg.a = parse_number(value, key);
        } else if (key == "b") {
            cfg.b = parse_number(value, key);
        } else if (key == "n_cells") {
            cfg.n_cells = parse_int(value, key);
        } else if (key == "dt") {
            cfg.dt = parse_number(value, key);
        } else if (key == "zeta") {
            cfg.zeta = parse_number(value, key);
        } else if (key == "t_end") {
            cfg.t_end = parse_number(value, key);
        } else if (key == "snapshot_times") {
            cfg.snapshot_times = parse_number_list(value, key);
        } else if (key == "snapshot_every") {
            cfg.snapshot_every = parse_number(value, key);
        } else if (key == "initial_condition") {
            if (value == "rbs-pulse") {
                cfg.initial_condition = InitialPreset::RegularizedPulse;
            } else if (value == "cbs-pulse") {
                cfg.initial_condition = InitialPreset::ClassicalPulse;
            } else if (value == "tabulated") {
                cfg.initial_condition = InitialPreset::Tabulated;
            } else {
                throw ConfigError(key, "expected rbs-pulse, cbs-pulse or tabulated, got '" +
                                           std::string(value) + "'");
            }
        } else if (key == "initial_data") {
            cfg.initial_data = std::string(value);
        } else if (key == "oracle") {
            cfg.oracle = parse_switch(value, key);
        } else if (key == "weights") {
            if (value == "auto") {
                cfg.weights = WeightEvaluation::Auto;
            } else if (value == "closed-form") {
                cfg.weights = WeightEvaluation::ClosedForm;
            } else if (value == "series") {
                cfg.weights = WeightEvaluation::Series;
            } else {
                throw ConfigError(key, "expected auto, closed-form or series, got '" +
                                           std::string(value) + "'");
            }
        } else if (key == "output") {
            cfg.output = std::string(value);
        } else {
            throw ConfigError(key, "unknown configuration key");
        }
    }

    if (cfg.system != SystemPreset::Custom) {
        for (const char* k : {"s1", "s2", "s3", "s4"}) {
            if (seen.count(k) != 0) {
                throw ConfigError(k, "system coefficients are only accepted with system = custom");
            }
        }
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("", "cannot open configuration file " + path.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    ExperimentConfig cfg = parse_config(text.str());
    if (!cfg.initial_data.empty() && cfg.initial_data.is_relative()) {
        cfg.initial_data = path.parent_path() / cfg.initial_data;
    }
    return cfg;
}

void validate(const ExperimentConfig& cfg) {
    const SystemCoefficients s = cfg.coefficients();
    if (s.s1 != 0.0) {
        throw ConfigError("s1", "the collocation scheme assumes s1 = s3 = 0 (no U_xxx term); got s1 = " +
                                    std::to_string(s.s1));
    }
    if (s.s3 != 0.0) {
        throw ConfigError("s3", "the collocation scheme assumes s1 = s3 = 0 (no V_xxx term); got s3 = " +
                                    std::to_string(s.s3));
    }
    if (!(cfg.b > cfg.a)) {
        throw ConfigError("b", "interval end b must exceed a");
    }
    if (cfg.n_cells < 4) {
        throw ConfigError("n_cells", "at least 4 cells are required");
    }
    if (!(cfg.dt > 0.0)) {
        throw ConfigError("dt", "time step must be positive");
    }
    if (!(cfg.zeta > 0.0)) {
        throw ConfigError("zeta", "spline parameter must be positive");
    }
    try {
        SplineShape(cfg.zeta, (cfg.b - cfg.a) / cfg.n_cells);
    } catch (const InvalidParameter& e) {
        throw ConfigError("zeta", e.what());
    }
    if (!(cfg.t_end >= 0.0)) {
        throw ConfigError("t_end", "terminating time must be non-negative");
    }
    if (!cfg.snapshot_times.empty() && cfg.snapshot_every) {
        throw ConfigError("snapshot_every", "give either snapshot_times or snapshot_every, not both");
    }
    if (cfg.snapshot_every && !(*cfg.snapshot_every > 0.0)) {
        throw ConfigError("snapshot_every", "spacing must be positive");
    }
    const double slack = 1e-9 * std::max(1.0, cfg.t_end);
    double previous = -slack;
    for (const double t : cfg.snapshot_times) {
        if (t < previous) {
            throw ConfigError("snapshot_times", "times must be sorted ascending");
        }
        if (t < -slack || t > cfg.t_end + slack) {
            throw ConfigError("snapshot_times", "time " + std::to_string(t) + " lies outside [0, t_end]");
        }
        previous = t;
    }
    if (cfg.initial_condition == InitialPreset::Tabulated) {
        if (cfg.initial_data.empty()) {
            throw ConfigError("initial_data", "tabulated initial condition needs a data file");
        }
        if (!std::filesystem::exists(cfg.initial_data)) {
            throw ConfigError("initial_data", "file not found: " + cfg.initial_data.string());
        }
    } else if (!cfg.initial_data.empty()) {
        throw ConfigError("initial_data", "only used with initial_condition = tabulated");
    }
    if (cfg.oracle) {
        const bool rbs_pair = cfg.system == SystemPreset::Regularized &&
                              cfg.initial_condition == InitialPreset::RegularizedPulse;
        const bool cbs_pair = cfg.system == SystemPreset::Classical &&
                              cfg.initial_condition == InitialPreset::ClassicalPulse;
        if (!rbs_pair && !cbs_pair) {
            throw ConfigError("oracle", "an exact solution is known only for rbs with rbs-pulse and "
                                        "cbs with cbs-pulse; set oracle = off");
        }
    }
}

std::string to_string(SystemPreset preset) {
    switch (preset) {
    case SystemPreset::Regularized:
        return "rbs";
    case SystemPreset::Classical:
        return "cbs";
    case SystemPreset::Custom:
        break;
    }
    return "custom";
}

std::string to_string(InitialPreset preset) {
    switch (preset) {
    case InitialPreset::RegularizedPulse:
        return "rbs-pulse";
    case InitialPreset::ClassicalPulse:
        return "cbs-pulse";
    case InitialPreset::Tabulated:
        break;
    }
    return "tabulated";
}

std::string to_string(WeightEvaluation mode) {
    switch (mode) {
    case WeightEvaluation::Auto:
        return "auto";
    case WeightEvaluation::ClosedForm:
        return "closed-form";
    case WeightEvaluation::Series:
        break;
    }
    return "series";
}

} // namespace ecbs
