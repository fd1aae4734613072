#pragma once

#include <span>
#include <vector>

#include "act/config.hpp"
#include "act/features.hpp"
#include "act/geometry.hpp"
#include "act/image.hpp"
#include "act/model.hpp"
#include "act/ovb.hpp"
#include "act/rng.hpp"

namespace act {

// Integer box placements whose center lies in the open ring
// r_min < d < r_max around the center of `around` (disc d < r_max when
// r_min <= 0; the center itself then qualifies). Placements that would leave
// the frame are dropped. When more positions exist than `count`, a uniform
// subset without replacement is drawn; otherwise every position is returned
// once, in row-major enumeration order.
std::vector<Rect> sample_rects(const Rect& around, double r_min, double r_max, int count,
                               int frame_w, int frame_h, Rng& rng);

// Constant-velocity extrapolation from the location history: with at least
// four entries the velocity is (l[t-1] - l[t-4]) / 3 and the prediction is
// l[t-1] + velocity; shorter histories predict the last location unchanged.
Vec2 rectify(std::span<const Vec2> history);

struct FrameResult {
    Rect box;
    double confidence = 0.0;
    bool rectified = false;
    int selection_churn = 0;  // selected indices not kept from the previous frame
};

// Full tracker state in plain data form, for snapshots and state equality in
// tests. Restoring it resumes a run bit for bit.
struct ActState {
    TrackerConfig config;
    int frame_w = 0;
    int frame_h = 0;
    Rect box;
    std::vector<Vec2> history;
    std::vector<TemplateBag> bags;
    std::vector<ProjectionRow> projection;
    TemplateCenters centers;
    std::vector<std::vector<int>> selected;
    ClassifierParams params;
    double last_confidence = 0.0;
    std::int64_t frames_tracked = 0;
    std::int64_t updates_done = 0;
    RngState rng;

    bool operator==(const ActState&) const = default;
};

class ActTracker {
public:
    // Builds bags and the projection from the seed, samples the first
    // positive/negative sets around init_box, computes centers, runs the
    // greedy selection, and initializes the classifier from the first frame.
    ActTracker(const GrayFrame& first, const Rect& init_box, const TrackerConfig& config);

    explicit ActTracker(ActState state);

    // One frame step: dense scan of every placement within search_radius of
    // the previous center, then either commit to the argmax and update the
    // model, or (confidence below the threshold) rectify from the history and
    // leave every piece of model state untouched.
    FrameResult track(const GrayFrame& frame);

    ActState export_state() const;

    const TrackerConfig& config() const { return config_; }
    const Rect& box() const { return box_; }
    const std::vector<Vec2>& history() const { return history_; }
    const ClassifierParams& params() const { return params_; }
    const TemplateCenters& centers() const { return centers_; }
    const std::vector<std::vector<int>>& selected() const { return selected_; }
    double last_confidence() const { return last_confidence_; }
    std::int64_t frames_tracked() const { return frames_tracked_; }

private:
    int update_model(const GrayFrame& frame, const IntegralImage& ii);  // returns churn

    TrackerConfig config_;
    int frame_w_ = 0;
    int frame_h_ = 0;
    Rect box_;
    std::vector<Vec2> history_;
    std::vector<TemplateBag> bags_;
    std::vector<ProjectionRow> projection_;
    TemplateCenters centers_;
    std::vector<std::vector<int>> selected_;
    ClassifierParams params_;
    double last_confidence_ = 0.0;
    std::int64_t frames_tracked_ = 0;
    std::int64_t updates_done_ = 0;
    Rng rng_;
};

}  // namespace act
