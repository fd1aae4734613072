#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace act {

// Dense row-major matrix of doubles; rows are handed out as spans.
struct RowMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    RowMatrix() = default;
    RowMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}

    std::span<double> row(int r) {
        return {data.data() + static_cast<std::size_t>(r) * cols, static_cast<std::size_t>(cols)};
    }
    std::span<const double> row(int r) const {
        return {data.data() + static_cast<std::size_t>(r) * cols, static_cast<std::size_t>(cols)};
    }

    bool operator==(const RowMatrix&) const = default;
};

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace act
