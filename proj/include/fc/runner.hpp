#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fc/contraction.hpp"
#include "fc/transfer.hpp"

namespace fc {

struct RunConfig {
    std::vector<std::string> scene_paths;
    int max_sig = 3;       // cap on m+n for the contraction battery
    int k_max = 2;         // scalar-class cap (clamped per scene)
    int rand_count = 100;  // random elements per identity battery
    std::uint64_t seed = 7;
    std::string only;      // substring filter on check names
    std::string format = "json";  // json | markdown
    bool timings = false;  // include per-check millis (breaks byte determinism)
    int max_higher_arity = 6;
};

struct SceneReport {
    std::string scene;
    bool loaded = false;
    bool valid = false;
    std::string load_error;
    std::vector<std::string> diagnostics;
    std::vector<CheckResult> checks;
    std::vector<BracketTableEntry> lambda2_table;
    std::vector<BracketTableEntry> lambda3_table;
    std::map<std::string, std::string> rendered;
};

struct Report {
    std::uint64_t seed = 0;
    std::vector<SceneReport> scenes;

    bool all_pass() const;
    int failed_count() const;
};

// Orchestration entry points; "suite" runs everything.
Report run_validate(const RunConfig& cfg);
Report run_suite(const RunConfig& cfg);
Report run_transfer(const RunConfig& cfg);
Report run_classes(const RunConfig& cfg);
Report run_homotopy(const RunConfig& cfg);

std::string report_to_json(const Report& r, bool timings = false);
std::string report_to_markdown(const Report& r);

// Exit-code contract: 0 pass, 1 check failure, 2 parse error, 3 invalid scene.
int report_exit_code(const Report& r);

}  // namespace fc
