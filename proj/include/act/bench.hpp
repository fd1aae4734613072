#pragma once

#include <string>
#include <vector>

#include "act/geometry.hpp"
#include "act/image.hpp"

namespace act {

// One evaluation sequence. Either file-backed (frame_paths) or fully
// in-memory (frames); exactly one of the two is populated.
struct Sequence {
    std::string name;
    std::vector<std::string> frame_paths;
    std::vector<GrayFrame> frames;
    std::vector<Rect> ground_truth;
    std::vector<std::string> attributes;

    std::size_t size() const { return ground_truth.size(); }
    GrayFrame frame(std::size_t i) const;
};

// Directory layout: <dir>/img/<numbered frames>, <dir>/groundtruth_rect.txt,
// optional <dir>/attributes.txt. Frames sort by the numeric part of their
// file name.
Sequence load_sequence(const std::string& dir);

// One "x,y,w,h" box per line; comma, tab, and space separators all work.
std::vector<Rect> load_rect_file(const std::string& path);
void save_rect_file(const std::vector<Rect>& rects, const std::string& path);

// Intersection over union.
double overlap(const Rect& a, const Rect& b);

// Euclidean distance between box centers, px.
double center_error(const Rect& a, const Rect& b);

inline constexpr int kPrecisionPoints = 51;  // error thresholds 0..50 px, step 1
inline constexpr int kSuccessPoints = 21;    // overlap thresholds 0..1, step 0.05

struct EvalResult {
    std::vector<double> center_errors;
    std::vector<double> overlaps;
    std::vector<double> precision_curve;  // fraction of frames with error <= t
    std::vector<double> success_curve;    // fraction of frames with overlap > t (strict)
    double precision_20 = 0.0;
    double auc = 0.0;  // mean of success_curve over its grid; 20/21 for a perfect run,
                       // since overlap > 1 never holds at the t = 1 gridpoint
    double fps = 0.0;  // filled in by the harness that timed the run
};

EvalResult evaluate(const std::vector<Rect>& trajectory, const std::vector<Rect>& ground_truth);

// <base>.json with curves and scalars, plus <base>_precision.csv and
// <base>_success.csv for plotting.
void write_eval_result(const EvalResult& result, const std::string& base_path);

}  // namespace act
