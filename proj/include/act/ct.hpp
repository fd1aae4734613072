#pragma once

#include <cstdint>
#include <vector>

#include "act/config.hpp"
#include "act/geometry.hpp"
#include "act/image.hpp"
#include "act/model.hpp"
#include "act/rng.hpp"
#include "act/tracker.hpp"

namespace act {

// One nonzero entry of the sparse projection: a rectangle template placed at
// (dx, dy) inside the sample box, weighted +-(w*h)/2.
struct CtEntry {
    int dx = 0;
    int dy = 0;
    int tpl_w = 1;
    int tpl_h = 1;
    double weight = 0.0;

    bool operator==(const CtEntry&) const = default;
};

// Sparse random projection over the conceptual multiscale representation of a
// w x h box: (w*h)^2 columns, one rectangle filter response per column.
// Entries are i.i.d. with P(+sqrt(rho)) = P(-sqrt(rho)) = 1/(2 rho) and
// P(0) = 1 - 1/rho, rho = (w*h)^2 / 4, so a row carries 4 nonzeros on
// average. Each nonzero column maps to a concrete in-box rectangle.
struct CtMatrix {
    int feature_count = 0;
    int target_w = 0;
    int target_h = 0;
    std::vector<std::vector<CtEntry>> rows;

    std::uint64_t conceptual_cols() const {
        const std::uint64_t area = static_cast<std::uint64_t>(target_w) * target_h;
        return area * area;
    }
    bool operator==(const CtMatrix&) const = default;
};

CtMatrix ct_random_matrix(int feature_count, int target_w, int target_h, std::uint64_t seed);

// v_i = sum over row i's entries of weight * rect_sum(entry placed in sample).
std::vector<double> ct_feature(const IntegralImage& ii, const Rect& sample, const CtMatrix& m);

struct CtTrackerState {
    CtConfig config;
    int frame_w = 0;
    int frame_h = 0;
    Rect box;
    CtMatrix matrix;
    ClassifierParams params;
    std::int64_t frames_tracked = 0;
    RngState rng;

    bool operator==(const CtTrackerState&) const = default;
};

// The original fixed-template tracker: dense scan, naive Bayes score, model
// update on every frame, no confidence gate and no rectification.
class CtTracker {
public:
    CtTracker(const GrayFrame& first, const Rect& init_box, const CtConfig& config);
    explicit CtTracker(CtTrackerState state);

    FrameResult track(const GrayFrame& frame);

    CtTrackerState export_state() const;

    const CtConfig& config() const { return config_; }
    const Rect& box() const { return box_; }
    const CtMatrix& matrix() const { return matrix_; }
    const ClassifierParams& params() const { return params_; }
    std::int64_t frames_tracked() const { return frames_tracked_; }

private:
    void update_model(const IntegralImage& ii);

    CtConfig config_;
    int frame_w_ = 0;
    int frame_h_ = 0;
    Rect box_;
    CtMatrix matrix_;
    ClassifierParams params_;
    std::int64_t frames_tracked_ = 0;
    Rng rng_;
};

}  // namespace act
