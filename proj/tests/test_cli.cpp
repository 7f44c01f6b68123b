#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fc/scene_io.hpp"

#include "helpers.hpp"

using namespace fc;
using namespace fc::testing;

namespace {

std::string scene_dir() {
    const char* d = std::getenv("FC_SCENE_DIR");
    REQUIRE(d != nullptr);
    return d;
}

std::string fc_bin() {
    const char* b = std::getenv("FC_BIN");
    REQUIRE(b != nullptr);
    return b;
}

int run_cmd(const std::string& cmd) {
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("scene json round trip is byte exact") {
    for (const auto& spec : bundled_scenes()) {
        std::string rendered = render_scene_json(spec);
        SceneSpec back = parse_scene_json(rendered);
        CHECK(render_scene_json(back) == rendered);
    }
}

TEST_CASE("bundled scene files match the reference definitions") {
    for (const auto& spec : bundled_scenes()) {
        std::string path = scene_dir() + "/" + spec.name + ".json";
        SceneSpec loaded = load_scene_file(path);
        INFO(path);
        CHECK(render_scene_json(loaded) == render_scene_json(spec));
    }
}

TEST_CASE("validate exit codes") {
    std::string dir = scene_dir();
    CHECK(run_cmd(fc_bin() + " validate " + dir + "/flat2.json " + dir + "/tilt3.json" +
                  " > /dev/null") == 0);
    CHECK(run_cmd(fc_bin() + " validate " + dir + "/neg_notintegrable.json > /dev/null 2>&1") ==
          3);
    CHECK(run_cmd(fc_bin() + " validate " + dir + "/neg_badframe.json > /dev/null 2>&1") == 3);
    CHECK(run_cmd(fc_bin() + " validate " + dir + "/neg_malformed.json > /dev/null 2>&1") == 2);
}

TEST_CASE("invalid scene diagnostics name the offending generators") {
    std::string out = "/tmp/fc_cli_diag.json";
    run_cmd(fc_bin() + " validate " + scene_dir() + "/neg_notintegrable.json --out " + out +
            " 2>/dev/null");
    std::string text = slurp(out);
    CHECK(text.find("V1") != std::string::npos);
    CHECK(text.find("V2") != std::string::npos);
    std::remove(out.c_str());
}

TEST_CASE("determinism: identical seeds give byte-identical reports") {
    std::string dir = scene_dir();
    std::string o1 = "/tmp/fc_cli_rep1.json", o2 = "/tmp/fc_cli_rep2.json";
    std::string cmd = fc_bin() + " transfer " + dir + "/flat2.json " + dir +
                      "/shear2.json --seed 11 --rand-count 16 --out ";
    CHECK(run_cmd(cmd + o1 + " > /dev/null") == 0);
    CHECK(run_cmd(cmd + o2 + " > /dev/null") == 0);
    std::string r1 = slurp(o1), r2 = slurp(o2);
    CHECK(r1 == r2);
    CHECK_FALSE(r1.empty());
    std::remove(o1.c_str());
    std::remove(o2.c_str());
}

TEST_CASE("check-name filtering") {
    std::string out = "/tmp/fc_cli_only.json";
    CHECK(run_cmd(fc_bin() + " classes " + scene_dir() +
                  "/flat2.json --only \"phi(alpha)\" --out " + out + " > /dev/null") == 0);
    std::string text = slurp(out);
    CHECK(text.find("phi(alpha) = R") != std::string::npos);
    CHECK(text.find("berezinian") == std::string::npos);
    std::remove(out.c_str());
}

TEST_CASE("classes report carries the pinned curvature components") {
    std::string out = "/tmp/fc_cli_tilt3.json";
    CHECK(run_cmd(fc_bin() + " classes " + scene_dir() + "/tilt3.json --out " + out +
                  " > /dev/null") == 0);
    std::string text = slurp(out);
    CHECK(text.find("atiyah_pair") != std::string::npos);
    CHECK(text.find("(x)*xi[1]") != std::string::npos);
    CHECK(text.find("(-z)*xi[1]") != std::string::npos);
    CHECK(text.find("todd_pair_w1") != std::string::npos);
    CHECK(text.find("(1/2*x)*xi[1]*zeta[1]") != std::string::npos);
    std::remove(out.c_str());
}

TEST_CASE("markdown format renders") {
    std::string out = "/tmp/fc_cli_md.md";
    CHECK(run_cmd(fc_bin() + " validate " + scene_dir() + "/flat2.json --format markdown --out " +
                  out + " > /dev/null") == 0);
    std::string text = slurp(out);
    CHECK(text.find("# Check report") != std::string::npos);
    std::remove(out.c_str());
}
