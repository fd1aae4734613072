#pragma once

#include <cstdint>
#include <vector>

#include "act/geometry.hpp"

namespace act {

// Single-channel 8-bit frame, row-major.
struct GrayFrame {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    GrayFrame() = default;
    GrayFrame(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {}

    std::uint8_t at(int x, int y) const {
        return pixels[static_cast<std::size_t>(y) * width + x];
    }
    std::uint8_t& at(int x, int y) {
        return pixels[static_cast<std::size_t>(y) * width + x];
    }
    bool contains(const Rect& r) const {
        return r.x >= 0 && r.y >= 0 && r.w >= 1 && r.h >= 1 && r.x + r.w <= width &&
               r.y + r.h <= height;
    }
};

// Summed-area table. Entry (x, y) holds the sum of pixels in [0,x) x [0,y),
// so the table is (width+1) x (height+1) and its first row/column are zero.
// 64-bit accumulation keeps rectangle sums exact for any sane frame size.
class IntegralImage {
public:
    explicit IntegralImage(const GrayFrame& frame);

    int width() const { return width_; }
    int height() const { return height_; }

    std::int64_t at(int x, int y) const {
        return table_[static_cast<std::size_t>(y) * (width_ + 1) + x];
    }

private:
    int width_;
    int height_;
    std::vector<std::int64_t> table_;
};

inline IntegralImage build_integral(const GrayFrame& frame) { return IntegralImage(frame); }

// Sum of pixels covered by r. Throws std::out_of_range when r leaves the frame.
std::int64_t rect_sum(const IntegralImage& ii, const Rect& r);

// Unchecked variant for the hot scan loops; r must be inside the frame.
inline std::int64_t rect_sum_unchecked(const IntegralImage& ii, int x, int y, int w, int h) {
    return ii.at(x + w, y + h) - ii.at(x, y + h) - ii.at(x + w, y) + ii.at(x, y);
}

// Raw intensities of the tw x th template placed at (dx, dy) inside `sample`,
// row-major. The placement must stay inside both the sample box and the frame.
std::vector<double> extract_patch(const GrayFrame& frame, const Rect& sample, int dx, int dy,
                                  int tw, int th);

}  // namespace act
