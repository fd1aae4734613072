#pragma once

#include <cstdint>

namespace act {

// Axis-aligned box, integer pixel coordinates, top-left origin.
struct Rect {
    int x = 0;
    int y = 0;
    int w = 1;
    int h = 1;

    bool operator==(const Rect&) const = default;

    std::int64_t area() const { return static_cast<std::int64_t>(w) * h; }
    double center_x() const { return x + w / 2.0; }
    double center_y() const { return y + h / 2.0; }
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Vec2&) const = default;
};

}  // namespace act
