#ifndef GAMOW_SCENARIO_HPP
#define GAMOW_SCENARIO_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gamow/core.hpp"

namespace gamow {

enum class Task { FindPole, Echo, Overlaps, Decoherence, Compare };

struct TimeGridSpec {
    double t_start = 0.0;
    double t_end = 0.0;
    int samples = 0;
};

struct LadderDirective {
    ResonancePole base;
    std::optional<int> n_max;  // defaults to the initial state's mode count
};

struct GamowStateSpec {
    std::vector<Complex> coefficients;
};

struct QuasiCoherentSpec {
    Complex alpha;
    int n_max = 1;
};

struct SuperpositionSpec {
    Complex a, b;
    Complex alpha1, alpha2;
    int n_max = 1;
    bool normalize = true;
};

using InitialStateSpec = std::variant<GamowStateSpec, QuasiCoherentSpec, SuperpositionSpec>;

struct PoleSolveOptions {
    std::vector<double> lambda_sweep;  // empty: use model.lambda only
    double tolerance = 1e-12;
    int max_iterations = 60;
};

struct ScenarioConfig {
    std::optional<FriedrichsModelSpec> model;
    std::optional<LadderDirective> ladder;
    std::optional<std::vector<ResonancePole>> explicit_poles;
    std::optional<InitialStateSpec> initial_state;
    std::optional<TimeGridSpec> time_grid;
    double hbar = 1.0;
    std::vector<Task> tasks;
    PoleSolveOptions pole_options;
};

struct ValidationResult {
    std::optional<ScenarioConfig> config;
    std::vector<std::string> errors;  // all failures, not first-only

    bool ok() const noexcept { return errors.empty(); }
};

/// Structural + semantic validation of a raw JSON document.  Never throws on
/// bad input; every problem is reported as one entry.
ValidationResult validate_config(const std::string& json_text);
ValidationResult validate_config_file(const std::filesystem::path& path);

struct RunResult {
    int exit_code = 0;  // 0 ok, 1 config error, 2 numerical failure
    std::vector<std::string> files_written;
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
};

/// Execute the requested tasks, writing poles.json / echo.csv / overlaps.csv
/// / decoherence.csv / compare.json plus schema.json into out_dir.  Outputs
/// are deterministic for a fixed config; files are written atomically.
RunResult run_scenario(const ScenarioConfig& config, const std::filesystem::path& out_dir);

/// Materialize the shipped example configs; returns the file names written.
std::vector<std::string> seed_example_configs(const std::filesystem::path& dir);

}  // namespace gamow

#endif
