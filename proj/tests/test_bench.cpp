#include <doctest.h>

#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "act/bench.hpp"
#include "act/error.hpp"
#include "act/image_io.hpp"
#include "helpers.hpp"

using namespace act;
using act::testing::TempDir;
using act::testing::write_text;

TEST_CASE("overlap on identical, disjoint, and partial boxes") {
    CHECK(overlap({2, 3, 10, 10}, {2, 3, 10, 10}) == 1.0);
    CHECK(overlap({0, 0, 10, 10}, {30, 30, 10, 10}) == 0.0);
    CHECK(overlap({0, 0, 10, 10}, {10, 0, 10, 10}) == 0.0);  // touching edges
    CHECK(overlap({0, 0, 10, 10}, {5, 0, 10, 10}) == 50.0 / 150.0);
    CHECK(overlap({0, 0, 10, 10}, {0, 2, 10, 10}) == 80.0 / 120.0);
    CHECK(overlap({0, 0, 4, 4}, {2, 2, 4, 4}) == 4.0 / 28.0);
}

TEST_CASE("center_error is the euclidean center distance") {
    CHECK(center_error({5, 5, 10, 10}, {5, 5, 10, 10}) == 0.0);
    CHECK(center_error({0, 0, 10, 10}, {3, 4, 10, 10}) == 5.0);
    CHECK(center_error({0, 0, 2, 2}, {12, 16, 2, 2}) == 20.0);
    // Different sizes still compare centers: (5,5) vs (6,6).
    CHECK(center_error({0, 0, 10, 10}, {2, 2, 8, 8}) == std::sqrt(2.0));
}

TEST_CASE("a perfect trajectory scores 1.0 precision and 20/21 auc") {
    std::vector<Rect> gt{{10, 10, 30, 40}, {12, 10, 30, 40}, {14, 11, 30, 40}};
    EvalResult r = evaluate(gt, gt);
    REQUIRE(r.precision_curve.size() == 51);
    REQUIRE(r.success_curve.size() == 21);
    for (double p : r.precision_curve) CHECK(p == 1.0);
    CHECK(r.precision_20 == 1.0);
    for (int i = 0; i < 20; ++i) CHECK(r.success_curve[i] == 1.0);
    CHECK(r.success_curve[20] == 0.0);  // overlap 1 is not > 1
    CHECK(r.auc == 20.0 / 21.0);
}

TEST_CASE("precision counts frames within each error threshold") {
    // Center errors 0, 25, and 10 px.
    std::vector<Rect> gt{{0, 0, 10, 10}, {100, 0, 10, 10}, {50, 0, 10, 10}};
    std::vector<Rect> traj{{0, 0, 10, 10}, {115, 20, 10, 10}, {56, 8, 10, 10}};
    EvalResult r = evaluate(traj, gt);
    CHECK(r.center_errors[0] == 0.0);
    CHECK(r.center_errors[1] == 25.0);
    CHECK(r.center_errors[2] == 10.0);
    CHECK(r.precision_20 == 2.0 / 3.0);
    CHECK(r.precision_curve[0] == 1.0 / 3.0);
    CHECK(r.precision_curve[9] == 1.0 / 3.0);
    CHECK(r.precision_curve[10] == 2.0 / 3.0);  // error <= t is inclusive
    CHECK(r.precision_curve[25] == 1.0);
    CHECK(r.precision_curve[50] == 1.0);
}

TEST_CASE("success curve uses strict thresholds on the overlap") {
    // Overlaps exactly 1, 2/3, 1/3.
    std::vector<Rect> gt{{0, 0, 10, 10}, {20, 0, 10, 10}, {40, 0, 10, 10}};
    std::vector<Rect> traj{{0, 0, 10, 10}, {20, 2, 10, 10}, {45, 0, 10, 10}};
    EvalResult r = evaluate(traj, gt);
    CHECK(r.overlaps[0] == 1.0);
    CHECK(r.overlaps[1] == 80.0 / 120.0);
    CHECK(r.overlaps[2] == 50.0 / 150.0);

    std::vector<double> want;
    for (int i = 0; i <= 6; ++i) want.push_back(1.0);            // t up to 0.30
    for (int i = 7; i <= 13; ++i) want.push_back(2.0 / 3.0);     // 1/3 drops out
    for (int i = 14; i <= 19; ++i) want.push_back(1.0 / 3.0);    // 2/3 drops out
    want.push_back(0.0);                                         // nothing beats t = 1
    REQUIRE(want.size() == 21);
    CHECK(r.success_curve == want);

    double sum = 0.0;
    for (double s : want) sum += s;
    CHECK(r.auc == sum / 21.0);
}

TEST_CASE("curves are monotone in the threshold") {
    std::vector<Rect> gt, traj;
    for (int i = 0; i < 9; ++i) {
        gt.push_back({10 * i, 0, 10, 10});
        traj.push_back({10 * i + i * i, i, 10, 10});
    }
    EvalResult r = evaluate(traj, gt);
    for (int t = 1; t < 51; ++t) CHECK(r.precision_curve[t] >= r.precision_curve[t - 1]);
    for (int i = 1; i < 21; ++i) CHECK(r.success_curve[i] <= r.success_curve[i - 1]);
}

TEST_CASE("evaluate rejects mismatched lengths") {
    std::vector<Rect> two{{0, 0, 5, 5}, {1, 0, 5, 5}};
    std::vector<Rect> three{{0, 0, 5, 5}, {1, 0, 5, 5}, {2, 0, 5, 5}};
    try {
        evaluate(two, three);
    } catch (const DataError& e) {
        const std::string msg = e.what();
        CHECK(msg.find('2') != std::string::npos);
        CHECK(msg.find('3') != std::string::npos);
    }
    CHECK_THROWS_AS(evaluate({}, {}), DataError);
}

TEST_CASE("rect files accept comma, space, tab, and semicolon separators") {
    TempDir tmp("rects");
    const std::string path = tmp.file("boxes.txt");
    write_text(path, "1,2,3,4\n5 6 7 8\n9\t10\t11\t12\n13;14;15;16\n\n17, 18, 19, 20\n");
    std::vector<Rect> rects = load_rect_file(path);
    REQUIRE(rects.size() == 5);
    CHECK(rects[0] == Rect{1, 2, 3, 4});
    CHECK(rects[1] == Rect{5, 6, 7, 8});
    CHECK(rects[2] == Rect{9, 10, 11, 12});
    CHECK(rects[3] == Rect{13, 14, 15, 16});
    CHECK(rects[4] == Rect{17, 18, 19, 20});
}

TEST_CASE("rect files reject malformed lines with their line number") {
    TempDir tmp("badrects");
    const std::string path = tmp.file("boxes.txt");
    write_text(path, "1,2,3,4\n5,6,7\n");
    try {
        load_rect_file(path);
        FAIL("expected DataError");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find(":2") != std::string::npos);
    }
    write_text(path, "1,2,3,4,5\n");
    CHECK_THROWS_AS(load_rect_file(path), DataError);
    write_text(path, "a,b,c,d\n");
    CHECK_THROWS_AS(load_rect_file(path), DataError);
}

TEST_CASE("rect files round-trip through save") {
    TempDir tmp("rt");
    std::vector<Rect> rects{{1, 2, 3, 4}, {40, 50, 60, 70}};
    const std::string path = tmp.file("out.txt");
    save_rect_file(rects, path);
    CHECK(load_rect_file(path) == rects);
    std::ifstream in(path);
    std::string first;
    std::getline(in, first);
    CHECK(first == "1,2,3,4");
}

namespace {

void write_sequence_dir(const TempDir& tmp, const std::vector<std::string>& names, int gt_lines,
                        bool attributes = false) {
    namespace fs = std::filesystem;
    fs::create_directories(tmp.path / "img");
    for (std::size_t i = 0; i < names.size(); ++i) {
        GrayFrame f = act::testing::textured_frame(8, 6, static_cast<std::uint32_t>(i));
        save_pgm(f, (tmp.path / "img" / names[i]).string());
    }
    std::string gt;
    for (int i = 0; i < gt_lines; ++i) gt += std::to_string(i) + ",0,4,4\n";
    write_text(tmp.file("groundtruth_rect.txt"), gt);
    if (attributes) write_text(tmp.file("attributes.txt"), "occlusion\nscale \n");
}

}  // namespace

TEST_CASE("load_sequence sorts frames numerically") {
    TempDir tmp("seq");
    write_sequence_dir(tmp, {"f10.pgm", "f2.pgm", "f1.pgm"}, 3);
    Sequence seq = load_sequence(tmp.str());
    REQUIRE(seq.size() == 3);
    CHECK(seq.name == tmp.path.filename().string());
    // f1 < f2 < f10 numerically even though "f10" sorts first lexically.
    GrayFrame first = seq.frame(0);
    GrayFrame want = act::testing::textured_frame(8, 6, 2);  // f1.pgm was written third
    CHECK(first.pixels == want.pixels);
}

TEST_CASE("load_sequence reports frame and ground-truth count mismatches") {
    TempDir tmp("mismatch");
    write_sequence_dir(tmp, {"0001.pgm", "0002.pgm"}, 3);
    try {
        load_sequence(tmp.str());
        FAIL("expected DataError");
    } catch (const DataError& e) {
        const std::string msg = e.what();
        CHECK(msg.find('2') != std::string::npos);
        CHECK(msg.find('3') != std::string::npos);
    }
}

TEST_CASE("load_sequence picks up attribute tags") {
    TempDir tmp("attrs");
    write_sequence_dir(tmp, {"0001.pgm"}, 1, true);
    Sequence seq = load_sequence(tmp.str());
    REQUIRE(seq.attributes.size() == 2);
    CHECK(seq.attributes[0] == "occlusion");
    CHECK(seq.attributes[1] == "scale");
}

TEST_CASE("load_sequence fails without an img directory or frames") {
    TempDir tmp("empty");
    write_text(tmp.file("groundtruth_rect.txt"), "0,0,4,4\n");
    CHECK_THROWS_AS(load_sequence(tmp.str()), DataError);
}

TEST_CASE("write_eval_result emits json and csv reports") {
    TempDir tmp("report");
    std::vector<Rect> gt{{0, 0, 10, 10}, {5, 0, 10, 10}};
    EvalResult r = evaluate(gt, gt);
    r.fps = 42.5;
    const std::string base = tmp.file("run");
    write_eval_result(r, base);

    std::ifstream jf(base + ".json");
    REQUIRE(jf.good());
    nlohmann::json doc = nlohmann::json::parse(jf);
    CHECK(doc["precision_20"].get<double>() == 1.0);
    CHECK(doc["auc"].get<double>() == 20.0 / 21.0);
    CHECK(doc["fps"].get<double>() == 42.5);
    CHECK(doc["precision_curve"].size() == 51);
    CHECK(doc["success_curve"].size() == 21);
    CHECK(doc["center_errors"].size() == 2);

    std::ifstream pf(base + "_precision.csv");
    REQUIRE(pf.good());
    std::string header;
    std::getline(pf, header);
    CHECK(header.find("threshold") != std::string::npos);
    int lines = 0;
    for (std::string line; std::getline(pf, line);) ++lines;
    CHECK(lines == 51);

    std::ifstream sf(base + "_success.csv");
    REQUIRE(sf.good());
    std::getline(sf, header);
    lines = 0;
    for (std::string line; std::getline(sf, line);) ++lines;
    CHECK(lines == 21);
}
