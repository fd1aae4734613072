#include "act/features.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "act/error.hpp"

namespace act {
namespace {

// Open interval (2, round(side/2)) of admissible template sides.
std::pair<int, int> side_range(int side) {
    const int half = static_cast<int>(std::lround(side / 2.0));
    return {3, half - 1};
}

// Elementwise mean of the full-box patches over the sample list. Cropping a
// template from the mean box equals averaging per-template patches directly,
// summed in the same order, so centers come out bit-identical to the naive
// per-template route.
std::vector<double> mean_box(const GrayFrame& frame, const std::vector<Rect>& samples, int w,
                             int h) {
    if (samples.empty()) throw std::invalid_argument("class_centers: empty sample list");
    std::vector<double> acc(static_cast<std::size_t>(w) * h, 0.0);
    for (const Rect& s : samples) {
        if (s.w != w || s.h != h) {
            throw std::invalid_argument("class_centers: sample size differs from target size");
        }
        if (!frame.contains(s)) {
            throw std::invalid_argument("class_centers: sample outside frame");
        }
        for (int y = 0; y < h; ++y) {
            const std::uint8_t* src =
                frame.pixels.data() + static_cast<std::size_t>(s.y + y) * frame.width + s.x;
            double* dst = acc.data() + static_cast<std::size_t>(y) * w;
            for (int x = 0; x < w; ++x) dst[x] += src[x];
        }
    }
    const double inv = 1.0 / static_cast<double>(samples.size());
    for (double& v : acc) v *= inv;
    return acc;
}

void crop_into(std::span<double> dst, const std::vector<double>& box, int box_w, int dx, int dy,
               int tw, int th) {
    for (int y = 0; y < th; ++y) {
        const double* src = box.data() + static_cast<std::size_t>(dy + y) * box_w + dx;
        double* out = dst.data() + static_cast<std::size_t>(y) * tw;
        for (int x = 0; x < tw; ++x) out[x] = src[x];
    }
}

void normalize_into(std::span<double> dst, std::span<const double> src) {
    double norm2 = 0.0;
    for (double v : src) norm2 += v * v;
    if (norm2 == 0.0) {
        for (double& v : dst) v = 0.0;
        return;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] * inv;
}

}  // namespace

std::vector<TemplateBag> generate_bags(int target_w, int target_h, int bag_count,
                                       int templates_per_bag, std::uint64_t seed) {
    if (bag_count < 1 || templates_per_bag < 1) {
        throw std::invalid_argument("generate_bags: counts must be >= 1");
    }
    const auto [wmin, wmax] = side_range(target_w);
    const auto [hmin, hmax] = side_range(target_h);
    if (wmax < wmin || hmax < hmin) {
        throw SizingError("target " + std::to_string(target_w) + "x" + std::to_string(target_h) +
                          " too small: no template side fits in (2, round(side/2))");
    }
    Rng rng(seed);
    std::vector<TemplateBag> bags(bag_count);
    for (TemplateBag& bag : bags) {
        bag.tpl_w = static_cast<int>(rng.uniform_int(wmin, wmax));
        bag.tpl_h = static_cast<int>(rng.uniform_int(hmin, hmax));
        bag.dx.resize(templates_per_bag);
        bag.dy.resize(templates_per_bag);
        for (int j = 0; j < templates_per_bag; ++j) {
            bag.dx[j] = static_cast<int>(rng.uniform_int(0, target_w - bag.tpl_w));
            bag.dy[j] = static_cast<int>(rng.uniform_int(0, target_h - bag.tpl_h));
        }
    }
    return bags;
}

TemplateCenters class_centers(const GrayFrame& frame, const std::vector<TemplateBag>& bags,
                              const std::vector<Rect>& positives,
                              const std::vector<Rect>& negatives) {
    if (positives.empty() || negatives.empty()) {
        throw std::invalid_argument("class_centers: empty sample list");
    }
    const int w = positives.front().w;
    const int h = positives.front().h;
    const std::vector<double> pos_box = mean_box(frame, positives, w, h);
    const std::vector<double> neg_box = mean_box(frame, negatives, w, h);

    TemplateCenters centers(bags.size());
    for (std::size_t i = 0; i < bags.size(); ++i) {
        const TemplateBag& bag = bags[i];
        BagCenters& c = centers[i];
        const int n = bag.count();
        const int dim = bag.tpl_w * bag.tpl_h;
        c.tpl_w = bag.tpl_w;
        c.tpl_h = bag.tpl_h;
        c.pos_raw = RowMatrix(n, dim);
        c.neg_raw = RowMatrix(n, dim);
        c.pos_unit = RowMatrix(n, dim);
        c.neg_unit = RowMatrix(n, dim);
        for (int j = 0; j < n; ++j) {
            crop_into(c.pos_raw.row(j), pos_box, w, bag.dx[j], bag.dy[j], bag.tpl_w, bag.tpl_h);
            crop_into(c.neg_raw.row(j), neg_box, w, bag.dx[j], bag.dy[j], bag.tpl_w, bag.tpl_h);
            normalize_into(c.pos_unit.row(j), c.pos_raw.row(j));
            normalize_into(c.neg_unit.row(j), c.neg_raw.row(j));
        }
    }
    return centers;
}

std::vector<ProjectionRow> generate_projection(const std::vector<TemplateBag>& bags, int k,
                                               std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("generate_projection: k must be >= 1");
    Rng rng(seed);
    std::vector<ProjectionRow> rows(bags.size());
    for (std::size_t i = 0; i < bags.size(); ++i) {
        rows[i].scale =
            1.0 / std::sqrt(static_cast<double>(k) * bags[i].tpl_w * bags[i].tpl_h);
        rows[i].signs.resize(k);
        for (int j = 0; j < k; ++j) rows[i].signs[j] = static_cast<std::int8_t>(rng.sign());
    }
    return rows;
}

std::vector<double> compressed_feature(const IntegralImage& ii, const Rect& sample,
                                       const std::vector<TemplateBag>& bags,
                                       const std::vector<std::vector<int>>& selected,
                                       const std::vector<ProjectionRow>& rows) {
    if (selected.size() != bags.size() || rows.size() != bags.size()) {
        throw std::invalid_argument("compressed_feature: bag/selection/projection size mismatch");
    }
    std::vector<double> v(bags.size(), 0.0);
    for (std::size_t i = 0; i < bags.size(); ++i) {
        const TemplateBag& bag = bags[i];
        const ProjectionRow& row = rows[i];
        const std::vector<int>& sel = selected[i];
        if (sel.size() != row.signs.size()) {
            throw std::invalid_argument("compressed_feature: selection size differs from k");
        }
        double acc = 0.0;
        for (std::size_t j = 0; j < sel.size(); ++j) {
            const int t = sel[j];
            const Rect r{sample.x + bag.dx[t], sample.y + bag.dy[t], bag.tpl_w, bag.tpl_h};
            acc += row.signs[j] * static_cast<double>(rect_sum(ii, r));
        }
        v[i] = row.scale * acc;
    }
    return v;
}

}  // namespace act
