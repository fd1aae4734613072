#include "act/ct.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "act/error.hpp"

namespace act {
namespace {

// Column decode tables along one axis: every (side, offset) placement of a
// template side inside the box, in ascending side then offset order.
std::vector<std::pair<int, int>> axis_pairs(int side) {
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(side) * (side + 1) / 2);
    for (int t = 1; t <= side; ++t) {
        for (int off = 0; off + t <= side; ++off) pairs.push_back({t, off});
    }
    return pairs;
}

}  // namespace

CtMatrix ct_random_matrix(int feature_count, int target_w, int target_h, std::uint64_t seed) {
    if (feature_count < 1) throw std::invalid_argument("ct_random_matrix: feature_count < 1");
    if (target_w < 1 || target_h < 1) throw std::invalid_argument("ct_random_matrix: empty box");

    CtMatrix m;
    m.feature_count = feature_count;
    m.target_w = target_w;
    m.target_h = target_h;
    m.rows.resize(feature_count);

    const double area = static_cast<double>(target_w) * target_h;
    const double p = 4.0 / (area * area);  // 1/rho
    const double magnitude = area / 2.0;   // sqrt(rho), exact
    const std::uint64_t cols = m.conceptual_cols();

    // A conceptual column is nonzero with probability 1/rho; nonzero columns
    // are reached by geometric skips so the law stays exactly i.i.d. without
    // touching all (w*h)^2 of them. Columns fold onto valid placements.
    const auto x_pairs = axis_pairs(target_w);
    const auto y_pairs = axis_pairs(target_h);
    const std::uint64_t valid = static_cast<std::uint64_t>(x_pairs.size()) * y_pairs.size();

    Rng rng(seed);
    for (auto& row : m.rows) {
        std::uint64_t j = rng.geometric(p);
        while (j < cols) {
            const std::uint64_t folded = j % valid;
            const auto& [tw, dx] = x_pairs[folded % x_pairs.size()];
            const auto& [th, dy] = y_pairs[folded / x_pairs.size()];
            row.push_back({dx, dy, tw, th, rng.sign() * magnitude});
            j += 1 + rng.geometric(p);
        }
    }
    return m;
}

std::vector<double> ct_feature(const IntegralImage& ii, const Rect& sample, const CtMatrix& m) {
    if (sample.w != m.target_w || sample.h != m.target_h) {
        throw std::invalid_argument("ct_feature: sample size differs from matrix target size");
    }
    std::vector<double> v(m.rows.size(), 0.0);
    for (std::size_t i = 0; i < m.rows.size(); ++i) {
        double acc = 0.0;
        for (const CtEntry& e : m.rows[i]) {
            const Rect r{sample.x + e.dx, sample.y + e.dy, e.tpl_w, e.tpl_h};
            acc += e.weight * static_cast<double>(rect_sum(ii, r));
        }
        v[i] = acc;
    }
    return v;
}

CtTracker::CtTracker(const GrayFrame& first, const Rect& init_box, const CtConfig& config)
    : config_(config),
      frame_w_(first.width),
      frame_h_(first.height),
      box_(init_box),
      rng_(mix_seed(config.seed, 2)) {
    config_.validate();
    if (!first.contains(init_box)) {
        throw DataError("init box outside frame");
    }
    matrix_ = ct_random_matrix(config_.feature_count, init_box.w, init_box.h,
                               mix_seed(config_.seed, 1));
    const IntegralImage ii = build_integral(first);
    const std::vector<Rect> positives =
        sample_rects(box_, 0.0, config_.positive_radius, -1, frame_w_, frame_h_, rng_);
    const std::vector<Rect> negatives =
        sample_rects(box_, config_.negative_inner, config_.negative_outer, config_.negative_count,
                     frame_w_, frame_h_, rng_);
    std::vector<std::vector<double>> pos_feats, neg_feats;
    for (const Rect& r : positives) pos_feats.push_back(ct_feature(ii, r, matrix_));
    for (const Rect& r : negatives) neg_feats.push_back(ct_feature(ii, r, matrix_));
    params_ = init_params(pos_feats, neg_feats);
    frames_tracked_ = 1;
}

CtTracker::CtTracker(CtTrackerState state)
    : config_(state.config),
      frame_w_(state.frame_w),
      frame_h_(state.frame_h),
      box_(state.box),
      matrix_(std::move(state.matrix)),
      params_(std::move(state.params)),
      frames_tracked_(state.frames_tracked),
      rng_(state.rng) {
    config_.validate();
}

CtTrackerState CtTracker::export_state() const {
    return {config_, frame_w_, frame_h_, box_, matrix_, params_, frames_tracked_, rng_.state()};
}

FrameResult CtTracker::track(const GrayFrame& frame) {
    if (frame.width != frame_w_ || frame.height != frame_h_) {
        throw DataError("frame size differs from first frame");
    }
    const IntegralImage ii = build_integral(frame);

    const int radius = config_.search_radius;
    const double radius2 = static_cast<double>(radius) * radius;
    const int bx = box_.x;
    const int by = box_.y;
    double best_score = -std::numeric_limits<double>::infinity();
    int best_x = bx;
    int best_y = by;
    bool found = false;
    for (int oy = -radius; oy <= radius; ++oy) {
        const int y = by + oy;
        if (y < 0 || y + box_.h > frame_h_) continue;
        for (int ox = -radius; ox <= radius; ++ox) {
            const int x = bx + ox;
            if (x < 0 || x + box_.w > frame_w_) continue;
            const double d2 = static_cast<double>(ox) * ox + static_cast<double>(oy) * oy;
            if (d2 >= radius2) continue;
            const Rect cand{x, y, box_.w, box_.h};
            const double score = classify(ct_feature(ii, cand, matrix_), params_);
            if (!found || score > best_score) {
                found = true;
                best_score = score;
                best_x = x;
                best_y = y;
            }
        }
    }
    if (!found) throw std::logic_error("track: no candidate placement inside the frame");

    box_.x = best_x;
    box_.y = best_y;
    update_model(ii);
    ++frames_tracked_;

    FrameResult result;
    result.box = box_;
    result.confidence = best_score;
    return result;
}

void CtTracker::update_model(const IntegralImage& ii) {
    const std::vector<Rect> positives =
        sample_rects(box_, 0.0, config_.positive_radius, -1, frame_w_, frame_h_, rng_);
    const std::vector<Rect> negatives =
        sample_rects(box_, config_.negative_inner, config_.negative_outer, config_.negative_count,
                     frame_w_, frame_h_, rng_);
    std::vector<std::vector<double>> pos_feats, neg_feats;
    for (const Rect& r : positives) pos_feats.push_back(ct_feature(ii, r, matrix_));
    for (const Rect& r : negatives) neg_feats.push_back(ct_feature(ii, r, matrix_));
    update_params(params_, pos_feats, neg_feats, config_.learning_rate);
}

}  // namespace act
