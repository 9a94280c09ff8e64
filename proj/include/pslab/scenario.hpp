#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pslab/extremal.hpp"
#include "pslab/young.hpp"

namespace pslab {

// One scenario per JSON document. Unknown fields are rejected so typos
// surface as diagnostics instead of silently falling back to defaults.
struct ScenarioConfig {
    std::string kind; // rearrange-grid | verify-bounds | sweep | oracle-suite
    std::string family;
    int n = 2;

    // cone-frustrum parameters; `offsets` is the swept top offset |e|.
    double a = 0.5;
    double rho = 0.5;
    double rho_prime = 0.3;
    std::vector<double> offsets{0.2};

    // staircase parameters.
    std::vector<std::pair<double, double>> levels;
    std::vector<Point> level_centers;

    // devils-staircase parameters.
    int cantor_depth = 6;
    double center_scale = 0.7;

    std::vector<double> p_values{2.0};
    std::vector<double> q_values{1.0};
    double morrey_p = 4.0;
    double morrey_constant = 1.0;
    YoungFunction phi = YoungFunction::power(2.0);
    YoungFunction psi = YoungFunction::power(1.0);

    std::string bound = "theorem-finite"; // sweep target
    int grid_cells = 128;
    int threshold_count = 48;
    double tolerance = 1e-9;
    bool tolerance_set = false; // overrides oracle check tolerances

    std::string out_dir = ".";
    std::uint64_t seed = 0;
    int jobs = 1;

    std::vector<std::string> suite; // oracle-suite selection
    bool suite_set = false;
};

// Throws std::invalid_argument naming the offending field.
ScenarioConfig parse_scenario(const nlohmann::json& doc);
// Adds JSON parse diagnostics (byte offset) for malformed files.
ScenarioConfig load_scenario(const std::string& path);

struct ScenarioResult {
    int exit_code = 0; // 0 all holds, 1 violation or failed check
    std::vector<std::string> files;
    std::string summary;
};

// Executes the scenario and writes its artifacts under config.out_dir.
// Identical config and seed produce byte-identical outputs.
ScenarioResult run_scenario(const ScenarioConfig& config);

} // namespace pslab
