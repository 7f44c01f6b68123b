#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "fc/runner.hpp"

namespace {

void add_common(CLI::App* cmd, fc::RunConfig& cfg, std::string& out_path) {
    cmd->add_option("scenes", cfg.scene_paths, "scene files")->required()->expected(-1);
    cmd->add_option("--max-sig", cfg.max_sig, "cap on dual+vector slot count");
    cmd->add_option("--k-max", cfg.k_max, "scalar class cap");
    cmd->add_option("--seed", cfg.seed, "randomized-check seed");
    cmd->add_option("--rand-count", cfg.rand_count, "random elements per battery");
    cmd->add_option("--only", cfg.only, "substring filter on check names");
    cmd->add_option("--out", out_path, "output file (default stdout)");
    cmd->add_option("--format", cfg.format, "json | markdown");
    cmd->add_flag("--timings", cfg.timings, "include per-check runtimes in json reports");
}

int emit(const fc::Report& rep, const fc::RunConfig& cfg, const std::string& out_path) {
    std::string text =
        cfg.format == "markdown" ? fc::report_to_markdown(rep) : fc::report_to_json(rep, cfg.timings);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        out << text;
    }
    return fc::report_exit_code(rep);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact contraction / characteristic-cocycle engine"};
    app.require_subcommand(1);

    fc::RunConfig cfg;
    std::string out_path;
    if (const char* env = std::getenv("FC_MAX_DEGREE")) fc::set_poly_degree_cap(std::atoi(env));

    CLI::App* validate = app.add_subcommand("validate", "check scene files");
    CLI::App* suite = app.add_subcommand("suite", "full identity suite");
    CLI::App* transfer = app.add_subcommand("transfer", "transferred bracket tables");
    CLI::App* classes = app.add_subcommand("classes", "characteristic cocycles + certificates");
    CLI::App* homotopy = app.add_subcommand("homotopy", "splitting comparison homotopies");
    for (CLI::App* cmd : {validate, suite, transfer, classes, homotopy})
        add_common(cmd, cfg, out_path);

    CLI11_PARSE(app, argc, argv);

    try {
        fc::Report rep;
        if (app.got_subcommand(validate))
            rep = fc::run_validate(cfg);
        else if (app.got_subcommand(suite))
            rep = fc::run_suite(cfg);
        else if (app.got_subcommand(transfer))
            rep = fc::run_transfer(cfg);
        else if (app.got_subcommand(classes))
            rep = fc::run_classes(cfg);
        else
            rep = fc::run_homotopy(cfg);
        return emit(rep, cfg, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
