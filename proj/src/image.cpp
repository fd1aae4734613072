#include "act/image.hpp"

#include <cstdio>
#include <stdexcept>

namespace act {

IntegralImage::IntegralImage(const GrayFrame& frame)
    : width_(frame.width), height_(frame.height) {
    if (frame.width < 1 || frame.height < 1 ||
        frame.pixels.size() != static_cast<std::size_t>(frame.width) * frame.height) {
        throw std::invalid_argument("integral image: malformed frame");
    }
    const int w = width_;
    const int h = height_;
    table_.assign(static_cast<std::size_t>(w + 1) * (h + 1), 0);
    for (int y = 0; y < h; ++y) {
        std::int64_t row_sum = 0;
        const std::uint8_t* src = frame.pixels.data() + static_cast<std::size_t>(y) * w;
        const std::int64_t* above = table_.data() + static_cast<std::size_t>(y) * (w + 1) + 1;
        std::int64_t* dst = table_.data() + static_cast<std::size_t>(y + 1) * (w + 1) + 1;
        for (int x = 0; x < w; ++x) {
            row_sum += src[x];
            dst[x] = above[x] + row_sum;
        }
    }
}

std::int64_t rect_sum(const IntegralImage& ii, const Rect& r) {
    if (r.w < 1 || r.h < 1 || r.x < 0 || r.y < 0 || r.x + r.w > ii.width() ||
        r.y + r.h > ii.height()) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "rect_sum: rect (%d,%d,%d,%d) outside %dx%d frame",
                      r.x, r.y, r.w, r.h, ii.width(), ii.height());
        throw std::out_of_range(buf);
    }
    return rect_sum_unchecked(ii, r.x, r.y, r.w, r.h);
}

std::vector<double> extract_patch(const GrayFrame& frame, const Rect& sample, int dx, int dy,
                                  int tw, int th) {
    if (tw < 1 || th < 1 || dx < 0 || dy < 0 || dx + tw > sample.w || dy + th > sample.h) {
        throw std::invalid_argument("extract_patch: template escapes the sample box");
    }
    const int x0 = sample.x + dx;
    const int y0 = sample.y + dy;
    if (!frame.contains({x0, y0, tw, th})) {
        throw std::invalid_argument("extract_patch: template escapes the frame");
    }
    std::vector<double> patch(static_cast<std::size_t>(tw) * th);
    for (int y = 0; y < th; ++y) {
        const std::uint8_t* src =
            frame.pixels.data() + static_cast<std::size_t>(y0 + y) * frame.width + x0;
        double* dst = patch.data() + static_cast<std::size_t>(y) * tw;
        for (int x = 0; x < tw; ++x) dst[x] = src[x];
    }
    return patch;
}

}  // namespace act
