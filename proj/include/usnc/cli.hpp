#pragma once

// Command dispatch shared by the usnc binary and the test suites. Reports
// embed the full input configuration and the tool version; a fixed seed and
// config produce byte-identical JSON output.

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace usnc::cli {

struct RunConfig {
    std::string command;  // plan | audit | search | count-classes | verify-hash | bounds
    std::string preset_name;

    std::string scenario_path;
    std::string dist_path;
    std::string precoder_path;
    std::string out_path;          // empty prints to the stream given to run()
    std::string format = "json";   // json | text

    std::optional<nlohmann::ordered_json> scenario_inline;
    std::optional<nlohmann::ordered_json> dist_inline;

    double rho = 0.5;
    double eps_leak = 1e-6;
    double eps_fail = 1e-12;
    double leak_tol = 1e-9;
    double delta = 0.0;
    int mu = -1;
    int max_mu = -1;
    uint64_t budget = 500;
    uint64_t seed = 0;
    bool rho_grid = false;
    std::optional<std::string> eta_target;  // rational string, e.g. "1" or "1/2"

    // count-classes
    int q = 0;
    int n = 0;

    // verify-hash
    std::string field_text;
    int mn = 0;
    std::string family = "full-gl";  // full-gl | frobenius
    int b_rank = -1;                 // canonical [I_r | 0] outer matrix
    std::string b_json_path;         // explicit outer matrix instead
};

// Known presets: "paper-3.4" (planner with the worked parameter set) and
// "tiny-audit" (smallest nondegenerate audit). Throws UsageError otherwise.
RunConfig preset(const std::string& name);

// Exit status: 0 pass/success, 1 audit fail / infeasible / not found,
// 2 usage error. Writes the report to cfg.out_path or to fallback.
int run(const RunConfig& cfg, std::ostream& fallback);

}  // namespace usnc::cli
