#include "act/bench.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "act/error.hpp"
#include "act/image_io.hpp"

namespace fs = std::filesystem;

namespace act {
namespace {

bool is_image_file(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext == ".pgm" || ext == ".ppm" || ext == ".pnm" || ext == ".png" || ext == ".jpg" ||
           ext == ".jpeg" || ext == ".bmp";
}

// Value of the last digit run in the stem, or -1 when there is none.
long long numeric_key(const std::string& stem) {
    int end = -1;
    for (int i = static_cast<int>(stem.size()) - 1; i >= 0; --i) {
        if (std::isdigit(static_cast<unsigned char>(stem[i]))) {
            end = i;
            break;
        }
    }
    if (end < 0) return -1;
    int begin = end;
    while (begin > 0 && std::isdigit(static_cast<unsigned char>(stem[begin - 1]))) --begin;
    // Zero-padded names can exceed long long only with absurd padding; cap the run.
    const std::string run = stem.substr(begin, std::min(end - begin + 1, 18));
    return std::stoll(run);
}

Rect parse_rect_line(const std::string& line, const std::string& path, int lineno) {
    std::string text = line;
    for (char& ch : text) {
        if (ch == ',' || ch == '\t' || ch == ';') ch = ' ';
    }
    std::istringstream in(text);
    double vals[4];
    for (double& v : vals) {
        if (!(in >> v)) {
            throw DataError(path + ":" + std::to_string(lineno) + ": cannot parse box from '" +
                            line + "'");
        }
    }
    std::string rest;
    if (in >> rest) {
        throw DataError(path + ":" + std::to_string(lineno) + ": trailing text '" + rest + "'");
    }
    return {static_cast<int>(std::lround(vals[0])), static_cast<int>(std::lround(vals[1])),
            static_cast<int>(std::lround(vals[2])), static_cast<int>(std::lround(vals[3]))};
}

}  // namespace

GrayFrame Sequence::frame(std::size_t i) const {
    if (!frames.empty()) return frames[i];
    return load_gray(frame_paths[i]);
}

std::vector<Rect> load_rect_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open box file: " + path);
    std::vector<Rect> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        out.push_back(parse_rect_line(line, path, lineno));
    }
    return out;
}

void save_rect_file(const std::vector<Rect>& rects, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write box file: " + path);
    for (const Rect& r : rects) {
        out << r.x << ',' << r.y << ',' << r.w << ',' << r.h << '\n';
    }
}

Sequence load_sequence(const std::string& dir) {
    const fs::path root(dir);
    if (!fs::is_directory(root)) throw DataError("sequence directory not found: " + dir);

    Sequence seq;
    fs::path name_part = root.filename();
    if (name_part.empty()) name_part = root.parent_path().filename();
    seq.name = name_part.string();

    const fs::path img = root / "img";
    if (!fs::is_directory(img)) throw DataError("sequence " + dir + ": missing img directory");
    std::vector<std::pair<long long, fs::path>> keyed;
    for (const auto& entry : fs::directory_iterator(img)) {
        if (entry.is_regular_file() && is_image_file(entry.path())) {
            keyed.push_back({numeric_key(entry.path().stem().string()), entry.path()});
        }
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second.filename().string() < b.second.filename().string();
    });
    for (const auto& [key, path] : keyed) seq.frame_paths.push_back(path.string());

    const fs::path gt = root / "groundtruth_rect.txt";
    if (!fs::is_regular_file(gt)) {
        throw DataError("sequence " + dir + ": missing groundtruth_rect.txt");
    }
    seq.ground_truth = load_rect_file(gt.string());

    if (seq.frame_paths.size() != seq.ground_truth.size()) {
        throw DataError("sequence " + seq.name + ": " + std::to_string(seq.frame_paths.size()) +
                        " frames but " + std::to_string(seq.ground_truth.size()) +
                        " ground-truth boxes");
    }
    if (seq.ground_truth.empty()) throw DataError("sequence " + seq.name + ": empty");

    const fs::path attrs = root / "attributes.txt";
    if (fs::is_regular_file(attrs)) {
        std::ifstream in(attrs);
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        for (char& ch : text) {
            if (ch == ',' || ch == '\n' || ch == '\r' || ch == '\t') ch = ' ';
        }
        std::istringstream tokens(text);
        std::string tag;
        while (tokens >> tag) seq.attributes.push_back(tag);
    }
    return seq;
}

double overlap(const Rect& a, const Rect& b) {
    const int ix = std::max(a.x, b.x);
    const int iy = std::max(a.y, b.y);
    const int ix2 = std::min(a.x + a.w, b.x + b.w);
    const int iy2 = std::min(a.y + a.h, b.y + b.h);
    const std::int64_t iw = std::max(0, ix2 - ix);
    const std::int64_t ih = std::max(0, iy2 - iy);
    const std::int64_t inter = iw * ih;
    const std::int64_t uni = a.area() + b.area() - inter;
    if (uni <= 0) return 0.0;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

double center_error(const Rect& a, const Rect& b) {
    const double dx = a.center_x() - b.center_x();
    const double dy = a.center_y() - b.center_y();
    return std::sqrt(dx * dx + dy * dy);
}

EvalResult evaluate(const std::vector<Rect>& trajectory, const std::vector<Rect>& ground_truth) {
    if (trajectory.size() != ground_truth.size()) {
        throw DataError("evaluate: " + std::to_string(trajectory.size()) + " trajectory boxes vs " +
                        std::to_string(ground_truth.size()) + " ground-truth boxes");
    }
    if (trajectory.empty()) throw DataError("evaluate: empty trajectory");

    EvalResult r;
    const std::size_t n = trajectory.size();
    r.center_errors.reserve(n);
    r.overlaps.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        r.center_errors.push_back(center_error(trajectory[i], ground_truth[i]));
        r.overlaps.push_back(overlap(trajectory[i], ground_truth[i]));
    }

    r.precision_curve.resize(kPrecisionPoints);
    for (int t = 0; t < kPrecisionPoints; ++t) {
        int hits = 0;
        for (double e : r.center_errors) {
            if (e <= static_cast<double>(t)) ++hits;
        }
        r.precision_curve[t] = static_cast<double>(hits) / static_cast<double>(n);
    }
    r.precision_20 = r.precision_curve[20];

    r.success_curve.resize(kSuccessPoints);
    for (int i = 0; i < kSuccessPoints; ++i) {
        const double t = i * 0.05;
        int hits = 0;
        for (double ov : r.overlaps) {
            if (ov > t) ++hits;
        }
        r.success_curve[i] = static_cast<double>(hits) / static_cast<double>(n);
    }
    double sum = 0.0;
    for (double s : r.success_curve) sum += s;
    r.auc = sum / static_cast<double>(kSuccessPoints);
    return r;
}

void write_eval_result(const EvalResult& result, const std::string& base_path) {
    nlohmann::json doc;
    doc["precision_20"] = result.precision_20;
    doc["auc"] = result.auc;
    doc["fps"] = result.fps;
    doc["precision_curve"] = result.precision_curve;
    doc["success_curve"] = result.success_curve;
    doc["center_errors"] = result.center_errors;
    doc["overlaps"] = result.overlaps;
    {
        std::ofstream out(base_path + ".json");
        if (!out) throw DataError("cannot write " + base_path + ".json");
        out << doc.dump(2) << '\n';
    }
    {
        std::ofstream out(base_path + "_precision.csv");
        if (!out) throw DataError("cannot write " + base_path + "_precision.csv");
        out << "threshold,precision\n";
        for (int t = 0; t < kPrecisionPoints; ++t) {
            char buf[48];
            std::snprintf(buf, sizeof buf, "%d,%.17g\n", t, result.precision_curve[t]);
            out << buf;
        }
    }
    {
        std::ofstream out(base_path + "_success.csv");
        if (!out) throw DataError("cannot write " + base_path + "_success.csv");
        out << "threshold,success\n";
        for (int i = 0; i < kSuccessPoints; ++i) {
            char buf[48];
            std::snprintf(buf, sizeof buf, "%g,%.17g\n", i * 0.05, result.success_curve[i]);
            out << buf;
        }
    }
}

}  // namespace act
