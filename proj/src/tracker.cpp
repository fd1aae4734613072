#include "act/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "act/error.hpp"

namespace act {
namespace {

int clamp_corner(long v, int hi) {
    if (v < 0) return 0;
    if (v > hi) return hi;
    return static_cast<int>(v);
}

// Selection flattened for the dense scan: one entry per (bag, slot).
struct FlatSelection {
    std::vector<int> dx, dy;      // bag-major, k per bag
    std::vector<double> sign;
    std::vector<int> tpl_w, tpl_h;  // per bag
    std::vector<double> scale;      // per bag
};

FlatSelection flatten(const std::vector<TemplateBag>& bags,
                      const std::vector<std::vector<int>>& selected,
                      const std::vector<ProjectionRow>& rows) {
    FlatSelection f;
    const std::size_t c = bags.size();
    f.tpl_w.resize(c);
    f.tpl_h.resize(c);
    f.scale.resize(c);
    for (std::size_t i = 0; i < c; ++i) {
        f.tpl_w[i] = bags[i].tpl_w;
        f.tpl_h[i] = bags[i].tpl_h;
        f.scale[i] = rows[i].scale;
        for (std::size_t j = 0; j < selected[i].size(); ++j) {
            const int t = selected[i][j];
            f.dx.push_back(bags[i].dx[t]);
            f.dy.push_back(bags[i].dy[t]);
            f.sign.push_back(rows[i].signs[j]);
        }
    }
    return f;
}

}  // namespace

std::vector<Rect> sample_rects(const Rect& around, double r_min, double r_max, int count,
                               int frame_w, int frame_h, Rng& rng) {
    std::vector<Rect> out;
    const int radius = static_cast<int>(std::ceil(r_max));
    const int x_lo = std::max(0, around.x - radius);
    const int x_hi = std::min(frame_w - around.w, around.x + radius);
    const int y_lo = std::max(0, around.y - radius);
    const int y_hi = std::min(frame_h - around.h, around.y + radius);
    const double min2 = r_min * r_min;
    const double max2 = r_max * r_max;
    for (int y = y_lo; y <= y_hi; ++y) {
        for (int x = x_lo; x <= x_hi; ++x) {
            const double d2 = static_cast<double>(x - around.x) * (x - around.x) +
                              static_cast<double>(y - around.y) * (y - around.y);
            if (d2 >= max2) continue;
            if (r_min > 0.0 && d2 <= min2) continue;
            out.push_back({x, y, around.w, around.h});
        }
    }
    if (count >= 0 && out.size() > static_cast<std::size_t>(count)) {
        rng.partial_shuffle(out, static_cast<std::size_t>(count));
        out.resize(static_cast<std::size_t>(count));
    }
    return out;
}

Vec2 rectify(std::span<const Vec2> history) {
    if (history.empty()) throw std::invalid_argument("rectify: empty history");
    const std::size_t m = history.size();
    const Vec2 last = history[m - 1];
    if (m < 4) return last;
    const Vec2 anchor = history[m - 4];
    return {last.x + (last.x - anchor.x) / 3.0, last.y + (last.y - anchor.y) / 3.0};
}

ActTracker::ActTracker(const GrayFrame& first, const Rect& init_box, const TrackerConfig& config)
    : config_(config),
      frame_w_(first.width),
      frame_h_(first.height),
      box_(init_box),
      rng_(mix_seed(config.seed, 3)) {
    config_.validate();
    if (!first.contains(init_box)) {
        throw DataError("init box " + std::to_string(init_box.x) + "," +
                        std::to_string(init_box.y) + "," + std::to_string(init_box.w) + "," +
                        std::to_string(init_box.h) + " outside frame");
    }
    bags_ = generate_bags(init_box.w, init_box.h, config_.bag_count, config_.templates_per_bag,
                          mix_seed(config_.seed, 1));
    projection_ = generate_projection(bags_, config_.selected_per_bag, mix_seed(config_.seed, 2));

    const IntegralImage ii = build_integral(first);
    const std::vector<Rect> positives = sample_rects(box_, 0.0, config_.positive_radius,
                                                     config_.positive_count, frame_w_, frame_h_,
                                                     rng_);
    const std::vector<Rect> negatives = sample_rects(box_, config_.negative_inner,
                                                     config_.negative_outer,
                                                     config_.negative_count, frame_w_, frame_h_,
                                                     rng_);
    centers_ = class_centers(first, bags_, positives, negatives);

    selected_.resize(bags_.size());
    for (std::size_t i = 0; i < bags_.size(); ++i) {
        selected_[i] = select_templates(centers_[i], config_.selected_per_bag).indices;
    }

    std::vector<std::vector<double>> pos_feats, neg_feats;
    pos_feats.reserve(positives.size());
    neg_feats.reserve(negatives.size());
    for (const Rect& r : positives) {
        pos_feats.push_back(compressed_feature(ii, r, bags_, selected_, projection_));
    }
    for (const Rect& r : negatives) {
        neg_feats.push_back(compressed_feature(ii, r, bags_, selected_, projection_));
    }
    params_ = init_params(pos_feats, neg_feats);

    history_.push_back({box_.center_x(), box_.center_y()});
    frames_tracked_ = 1;
    updates_done_ = 1;
}

ActTracker::ActTracker(ActState state)
    : config_(state.config),
      frame_w_(state.frame_w),
      frame_h_(state.frame_h),
      box_(state.box),
      history_(std::move(state.history)),
      bags_(std::move(state.bags)),
      projection_(std::move(state.projection)),
      centers_(std::move(state.centers)),
      selected_(std::move(state.selected)),
      params_(std::move(state.params)),
      last_confidence_(state.last_confidence),
      frames_tracked_(state.frames_tracked),
      updates_done_(state.updates_done),
      rng_(state.rng) {
    config_.validate();
}

ActState ActTracker::export_state() const {
    return {config_,  frame_w_,         frame_h_,        box_,          history_,
            bags_,    projection_,      centers_,        selected_,     params_,
            last_confidence_, frames_tracked_, updates_done_, rng_.state()};
}

FrameResult ActTracker::track(const GrayFrame& frame) {
    if (frame.width != frame_w_ || frame.height != frame_h_) {
        throw DataError("frame size " + std::to_string(frame.width) + "x" +
                        std::to_string(frame.height) + " differs from first frame " +
                        std::to_string(frame_w_) + "x" + std::to_string(frame_h_));
    }
    const IntegralImage ii = build_integral(frame);

    // Per-frame classifier constants; scores below come out bit-identical to
    // classify(compressed_feature(...)).
    const int c = params_.size();
    std::vector<double> log_ratio(c);
    for (int i = 0; i < c; ++i) {
        log_ratio[i] = std::log(params_.sigma_neg[i]) - std::log(params_.sigma_pos[i]);
    }
    const FlatSelection flat = flatten(bags_, selected_, projection_);
    const int k = config_.selected_per_bag;

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
            double score = 0.0;
            const int* dx = flat.dx.data();
            const int* dy = flat.dy.data();
            const double* sign = flat.sign.data();
            for (int i = 0; i < c; ++i) {
                const int tw = flat.tpl_w[i];
                const int th = flat.tpl_h[i];
                double acc = 0.0;
                for (int j = 0; j < k; ++j) {
                    acc += sign[j] *
                           static_cast<double>(rect_sum_unchecked(ii, x + dx[j], y + dy[j], tw, th));
                }
                dx += k;
                dy += k;
                sign += k;
                const double v = flat.scale[i] * acc;
                const double dp = (v - params_.mu_pos[i]) / params_.sigma_pos[i];
                const double dn = (v - params_.mu_neg[i]) / params_.sigma_neg[i];
                score += log_ratio[i] + 0.5 * (dn * dn - dp * dp);
            }
            if (!found || score > best_score) {
                found = true;
                best_score = score;
                best_x = x;
                best_y = y;
            }
        }
    }
    if (!found) throw std::logic_error("track: no candidate placement inside the frame");

    FrameResult result;
    result.confidence = best_score;
    if (best_score >= config_.confidence_threshold) {
        box_.x = best_x;
        box_.y = best_y;
        history_.push_back({box_.center_x(), box_.center_y()});
        result.selection_churn = update_model(frame, ii);
    } else {
        const Vec2 pred = rectify(history_);
        box_.x = clamp_corner(std::lround(pred.x - box_.w / 2.0), frame_w_ - box_.w);
        box_.y = clamp_corner(std::lround(pred.y - box_.h / 2.0), frame_h_ - box_.h);
        history_.push_back({box_.center_x(), box_.center_y()});
        result.rectified = true;
    }
    result.box = box_;
    last_confidence_ = best_score;
    ++frames_tracked_;
    return result;
}

int ActTracker::update_model(const GrayFrame& frame, const IntegralImage& ii) {
    const std::vector<Rect> positives = sample_rects(box_, 0.0, config_.positive_radius,
                                                     config_.positive_count, frame_w_, frame_h_,
                                                     rng_);
    const std::vector<Rect> negatives = sample_rects(box_, config_.negative_inner,
                                                     config_.negative_outer,
                                                     config_.negative_count, frame_w_, frame_h_,
                                                     rng_);
    const TemplateCenters fresh = class_centers(frame, bags_, positives, negatives);
    update_templates(centers_, fresh, config_.template_threshold, config_.template_ratio);

    ++updates_done_;
    int churn = 0;
    if (updates_done_ % config_.selection_period == 0) {
        for (std::size_t i = 0; i < bags_.size(); ++i) {
            std::vector<int> fresh_sel =
                select_templates(centers_[i], config_.selected_per_bag).indices;
            for (int idx : fresh_sel) {
                if (std::find(selected_[i].begin(), selected_[i].end(), idx) ==
                    selected_[i].end()) {
                    ++churn;
                }
            }
            selected_[i] = std::move(fresh_sel);
        }
    }

    std::vector<std::vector<double>> pos_feats, neg_feats;
    pos_feats.reserve(positives.size());
    neg_feats.reserve(negatives.size());
    for (const Rect& r : positives) {
        pos_feats.push_back(compressed_feature(ii, r, bags_, selected_, projection_));
    }
    for (const Rect& r : negatives) {
        neg_feats.push_back(compressed_feature(ii, r, bags_, selected_, projection_));
    }
    update_params(params_, pos_feats, neg_feats, config_.learning_rate);
    return churn;
}

}  // namespace act
