#pragma once

#include <cstdint>
#include <vector>

#include "act/image.hpp"
#include "act/rng.hpp"
#include "act/util.hpp"

namespace act {

// One group of same-sized rectangle templates at fixed offsets inside the
// target box. Different bags carry different template sizes, which is where
// the multiscale character of the representation comes from.
struct TemplateBag {
    int tpl_w = 0;
    int tpl_h = 0;
    std::vector<int> dx;  // per template, offset of the template inside the box
    std::vector<int> dy;

    int count() const { return static_cast<int>(dx.size()); }
    bool operator==(const TemplateBag&) const = default;
};

// Per-class template centers for one bag: the elementwise mean patch over the
// class samples (raw intensities) plus its unit-L2 copy. A zero raw center
// normalizes to the zero vector. Row j of each matrix belongs to template j.
struct BagCenters {
    int tpl_w = 0;
    int tpl_h = 0;
    RowMatrix pos_raw;
    RowMatrix neg_raw;
    RowMatrix pos_unit;
    RowMatrix neg_unit;

    int count() const { return pos_raw.rows; }
    int dim() const { return pos_raw.cols; }
    bool operator==(const BagCenters&) const = default;
};

using TemplateCenters = std::vector<BagCenters>;

// Frozen signed projection for one bag: slot j's sign multiplies the rectangle
// sum of the j-th selected template; all of a row's mass stays inside its own
// bag's block, so the full matrix is block diagonal by construction.
struct ProjectionRow {
    double scale = 0.0;  // 1 / sqrt(k * tpl_w * tpl_h)
    std::vector<std::int8_t> signs;

    bool operator==(const ProjectionRow&) const = default;
};

// Draws c bags for a target of the given size. Template sides are sampled
// uniformly from the open interval (2, round(side/2)); offsets uniformly over
// placements that keep the template inside the box. Throws SizingError when
// the interval is empty.
std::vector<TemplateBag> generate_bags(int target_w, int target_h, int bag_count,
                                       int templates_per_bag, std::uint64_t seed);

// Mean patch per (bag, template) over each sample list, with unit-L2 copies.
// Every sample box must match the target size the bags were generated for.
TemplateCenters class_centers(const GrayFrame& frame, const std::vector<TemplateBag>& bags,
                              const std::vector<Rect>& positives,
                              const std::vector<Rect>& negatives);

std::vector<ProjectionRow> generate_projection(const std::vector<TemplateBag>& bags, int k,
                                               std::uint64_t seed);

// Compressed feature vector of `sample`: entry i is
//   scale_i * sum_j sign_ij * rect_sum(selected template j of bag i).
std::vector<double> compressed_feature(const IntegralImage& ii, const Rect& sample,
                                       const std::vector<TemplateBag>& bags,
                                       const std::vector<std::vector<int>>& selected,
                                       const std::vector<ProjectionRow>& rows);

}  // namespace act
