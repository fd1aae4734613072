#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "act/config.hpp"
#include "cli.hpp"
#include "helpers.hpp"

using namespace act;
using act::testing::TempDir;
using act::testing::write_text;

namespace {

// Redirects stdout into a file for the duration of one run_cli call.
std::string capture_stdout(const std::vector<std::string>& args, int& code) {
    TempDir tmp("capture");
    const std::string path = tmp.file("out.txt");
    std::fflush(stdout);
    const int saved = dup(fileno(stdout));
    REQUIRE(saved >= 0);
    FILE* redirected = std::freopen(path.c_str(), "w", stdout);
    REQUIRE(redirected != nullptr);
    code = run_cli(args);
    std::fflush(stdout);
    dup2(saved, fileno(stdout));
    close(saved);
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Small scene so the whole pipeline stays fast.
const char* kSceneSpec =
    "canvas_w = 160\n"
    "canvas_h = 120\n"
    "target_w = 24\n"
    "target_h = 24\n"
    "start_x = 40\n"
    "start_y = 48\n"
    "frames = 6\n"
    "vel_x = 2\n"
    "noise_sigma = 0\n";

const char* kFastTracker =
    "bag_count = 30\n"
    "templates_per_bag = 10\n"
    "selected_per_bag = 3\n"
    "search_radius = 6\n";

}  // namespace

TEST_CASE("synth, track, and eval chain into a full pipeline") {
    TempDir tmp("pipeline");
    write_text(tmp.file("scene.spec"), kSceneSpec);
    write_text(tmp.file("fast.cfg"), kFastTracker);

    CHECK(run_cli({"synth", "--spec", tmp.file("scene.spec"), "--out", tmp.file("seq")}) == 0);
    CHECK(std::filesystem::exists(tmp.path / "seq" / "img" / "0001.pgm"));
    CHECK(std::filesystem::exists(tmp.path / "seq" / "groundtruth_rect.txt"));

    CHECK(run_cli({"track", "--seq", tmp.file("seq"), "--out", tmp.file("out"), "--config",
                   tmp.file("fast.cfg"), "--verbose"}) == 0);
    const std::string traj = (tmp.path / "out" / "seq_trajectory.txt").string();
    REQUIRE(std::filesystem::exists(traj));
    CHECK(std::filesystem::exists(tmp.path / "out" / "seq_diag.jsonl"));

    CHECK(run_cli({"eval", "--trajectory", traj, "--gt",
                   (tmp.path / "seq" / "groundtruth_rect.txt").string(), "--out",
                   tmp.file("report")}) == 0);
    std::ifstream jf(tmp.file("report.json"));
    REQUIRE(jf.good());
    nlohmann::json doc = nlohmann::json::parse(jf);
    CHECK(doc["precision_20"].get<double>() == 1.0);
    CHECK(doc["auc"].get<double>() > 0.9);
}

TEST_CASE("track runs are byte-identical across repeats") {
    TempDir tmp("repeat");
    write_text(tmp.file("scene.spec"), kSceneSpec);
    write_text(tmp.file("fast.cfg"), kFastTracker);
    REQUIRE(run_cli({"synth", "--spec", tmp.file("scene.spec"), "--out", tmp.file("seq")}) == 0);
    REQUIRE(run_cli({"track", "--seq", tmp.file("seq"), "--out", tmp.file("a"), "--config",
                     tmp.file("fast.cfg")}) == 0);
    REQUIRE(run_cli({"track", "--seq", tmp.file("seq"), "--out", tmp.file("b"), "--config",
                     tmp.file("fast.cfg")}) == 0);
    CHECK(read_file((tmp.path / "a" / "seq_trajectory.txt").string()) ==
          read_file((tmp.path / "b" / "seq_trajectory.txt").string()));
}

TEST_CASE("the ct tracker is selectable and saves a resumable snapshot") {
    TempDir tmp("ct");
    write_text(tmp.file("scene.spec"), kSceneSpec);
    REQUIRE(run_cli({"synth", "--spec", tmp.file("scene.spec"), "--out", tmp.file("seq")}) == 0);
    CHECK(run_cli({"track", "--seq", tmp.file("seq"), "--out", tmp.file("out"), "--tracker", "ct",
                   "--save-state", tmp.file("ct.snap")}) == 0);
    CHECK(std::filesystem::exists(tmp.file("ct.snap")));
}

TEST_CASE("dump-config prints the effective layered configuration") {
    TempDir tmp("dump");
    write_text(tmp.file("base.cfg"), "bag_count = 77\n");
    int code = -1;
    std::string out = capture_stdout(
        {"track", "--dump-config", "--config", tmp.file("base.cfg"), "--learning-rate", "0.25"},
        code);
    CHECK(code == 0);
    CHECK(out.find("bag_count=77") != std::string::npos);
    CHECK(out.find("learning_rate=0.25") != std::string::npos);

    // The dump itself parses back to the same config.
    std::istringstream in(out);
    Config cfg = parse_config(in);
    CHECK(cfg.act.bag_count == 77);
    CHECK(cfg.act.learning_rate == 0.25);
}

TEST_CASE("the seed flag steers both trackers") {
    int code = -1;
    std::string out = capture_stdout({"track", "--dump-config", "--seed", "42"}, code);
    CHECK(code == 0);
    CHECK(out.find("seed=42") != std::string::npos);
    CHECK(out.find("ct_seed=42") != std::string::npos);
}

TEST_CASE("ACT_CONFIG supplies a default config file") {
    TempDir tmp("env");
    write_text(tmp.file("env.cfg"), "bag_count = 33\n");
    setenv("ACT_CONFIG", tmp.file("env.cfg").c_str(), 1);
    int code = -1;
    std::string out = capture_stdout({"track", "--dump-config"}, code);
    unsetenv("ACT_CONFIG");
    CHECK(code == 0);
    CHECK(out.find("bag_count=33") != std::string::npos);
}

TEST_CASE("usage problems exit with code 1") {
    CHECK(run_cli({}) == 1);
    CHECK(run_cli({"track", "--no-such-flag"}) == 1);
    CHECK(run_cli({"eval"}) == 1);  // missing required options
    CHECK(run_cli({"track"}) == 1);  // --seq missing
    CHECK(run_cli({"track", "--seq", "x", "--tracker", "nope"}) == 1);

    TempDir tmp("badcfg");
    write_text(tmp.file("bad.cfg"), "wat = 1\n");
    CHECK(run_cli({"track", "--seq", "x", "--config", tmp.file("bad.cfg")}) == 1);
    // Config values that fail validation are usage errors too.
    write_text(tmp.file("inconsistent.cfg"), "negative_inner = 20\nnegative_outer = 10\n");
    CHECK(run_cli({"track", "--seq", "x", "--config", tmp.file("inconsistent.cfg")}) == 1);
}

TEST_CASE("data problems exit with code 2") {
    TempDir tmp("data2");
    CHECK(run_cli({"track", "--seq", tmp.file("nowhere")}) == 2);
    CHECK(run_cli({"eval", "--trajectory", tmp.file("a.txt"), "--gt", tmp.file("b.txt")}) == 2);

    write_text(tmp.file("short.txt"), "0,0,4,4\n");
    write_text(tmp.file("long.txt"), "0,0,4,4\n1,0,4,4\n");
    CHECK(run_cli({"eval", "--trajectory", tmp.file("short.txt"), "--gt", tmp.file("long.txt"),
                   "--out", tmp.file("e")}) == 2);
}

TEST_CASE("help exits cleanly") {
    int code = -1;
    std::string out = capture_stdout({"--help"}, code);
    CHECK(code == 0);
    CHECK(out.find("track") != std::string::npos);
    CHECK(out.find("bench") != std::string::npos);
}

TEST_CASE("bench writes per-sequence reports and a summary table") {
    TempDir tmp("bench");
    write_text(tmp.file("scene.spec"), kSceneSpec);
    REQUIRE(run_cli({"synth", "--spec", tmp.file("scene.spec"), "--out",
                     (tmp.path / "data" / "walk").string()}) == 0);

    int code = -1;
    std::string out = capture_stdout(
        {"bench", "--data", tmp.file("data"), "--out", tmp.file("runs"), "--tracker", "ct",
         "--jobs", "2"},
        code);
    CHECK(code == 0);
    CHECK(out.find("walk") != std::string::npos);
    CHECK(out.find("mean") != std::string::npos);
    CHECK(std::filesystem::exists(tmp.path / "runs" / "walk_ct.json"));
    CHECK(std::filesystem::exists(tmp.path / "runs" / "walk_ct_trajectory.txt"));
    CHECK(std::filesystem::exists(tmp.path / "runs" / "walk_ct_success.csv"));

    // An empty data directory is a data error.
    std::filesystem::create_directories(tmp.path / "nothing");
    CHECK(run_cli({"bench", "--data", tmp.file("nothing"), "--out", tmp.file("runs2")}) == 2);
}

TEST_CASE("synth rejects an invalid spec file with a usage exit") {
    TempDir tmp("synthbad");
    write_text(tmp.file("bad.spec"), "frames = 0\n");
    CHECK(run_cli({"synth", "--spec", tmp.file("bad.spec"), "--out", tmp.file("seq")}) == 1);
    write_text(tmp.file("unknown.spec"), "no_such = 3\n");
    CHECK(run_cli({"synth", "--spec", tmp.file("unknown.spec"), "--out", tmp.file("seq2")}) == 1);
}
