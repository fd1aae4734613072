#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "act/image.hpp"

namespace act::testing {

// Unique scratch directory, removed on scope exit.
struct TempDir {
    std::filesystem::path path;

    explicit TempDir(const std::string& tag) {
        static std::mt19937_64 gen{std::random_device{}()};
        path = std::filesystem::temp_directory_path() /
               ("act_test_" + tag + "_" + std::to_string(gen()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string str() const { return path.string(); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

// Deterministic pseudo-texture, independent of the library rng.
inline GrayFrame textured_frame(int w, int h, std::uint32_t salt = 0) {
    GrayFrame f(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::uint32_t v = static_cast<std::uint32_t>(x) * 2654435761u +
                              static_cast<std::uint32_t>(y) * 2246822519u + salt * 3266489917u;
            v ^= v >> 15;
            f.at(x, y) = static_cast<std::uint8_t>(v & 0xff);
        }
    }
    return f;
}

}  // namespace act::testing
