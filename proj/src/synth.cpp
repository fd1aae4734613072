#include "act/synth.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "act/error.hpp"
#include "act/image_io.hpp"
#include "act/rng.hpp"

namespace fs = std::filesystem;

namespace act {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& what) {
    throw ConfigError("synth spec line " + std::to_string(line) + ": " + what);
}

long long to_ll(const std::string& v, int line) {
    errno = 0;
    char* end = nullptr;
    const long long x = std::strtoll(v.c_str(), &end, 10);
    if (errno != 0 || end == v.c_str() || *end != '\0') fail(line, "bad integer '" + v + "'");
    return x;
}

GrayFrame random_texture(int w, int h, std::uint64_t seed) {
    GrayFrame tex(w, h);
    Rng rng(seed);
    for (auto& px : tex.pixels) px = static_cast<std::uint8_t>(rng.uniform_int(0, 255));
    return tex;
}

void paste(GrayFrame& canvas, const GrayFrame& patch, int x, int y) {
    for (int row = 0; row < patch.height; ++row) {
        std::uint8_t* dst = canvas.pixels.data() +
                            static_cast<std::size_t>(y + row) * canvas.width + x;
        const std::uint8_t* src = patch.pixels.data() + static_cast<std::size_t>(row) * patch.width;
        for (int col = 0; col < patch.width; ++col) dst[col] = src[col];
    }
}

// Reflects v into [0, hi] and flips the velocity when a wall is crossed.
void reflect(int& v, int& vel, int hi) {
    if (hi <= 0) {  // no room to move along this axis
        v = 0;
        vel = 0;
        return;
    }
    while (v < 0 || v > hi) {
        if (v < 0) {
            v = -v;
            vel = -vel;
        }
        if (v > hi) {
            v = 2 * hi - v;
            vel = -vel;
        }
    }
}

}  // namespace

SynthSpec parse_synth_spec(std::istream& in) {
    SynthSpec spec;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string text = trim(line);
        if (text.empty() || text[0] == '#') continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) fail(lineno, "expected key=value, got '" + text + "'");
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        const auto iv = [&] { return static_cast<int>(to_ll(value, lineno)); };

        if (key == "canvas_w") spec.canvas_w = iv();
        else if (key == "canvas_h") spec.canvas_h = iv();
        else if (key == "target_w") spec.target_w = iv();
        else if (key == "target_h") spec.target_h = iv();
        else if (key == "start_x") spec.start_x = iv();
        else if (key == "start_y") spec.start_y = iv();
        else if (key == "frames") spec.frames = iv();
        else if (key == "vel_x") spec.vel_x = iv();
        else if (key == "vel_y") spec.vel_y = iv();
        else if (key == "bounce") {
            if (value == "1" || value == "true") spec.bounce = true;
            else if (value == "0" || value == "false") spec.bounce = false;
            else fail(lineno, "bounce must be 0/1/true/false, got '" + value + "'");
        } else if (key == "noise_sigma") {
            errno = 0;
            char* end = nullptr;
            spec.noise_sigma = std::strtod(value.c_str(), &end);
            if (errno != 0 || end == value.c_str() || *end != '\0') {
                fail(lineno, "bad number '" + value + "'");
            }
        } else if (key == "seed") {
            spec.seed = static_cast<std::uint64_t>(to_ll(value, lineno));
        } else if (key == "retexture_frame") {
            spec.retexture_frame = iv();
        } else {
            fail(lineno, "unknown key '" + key + "'");
        }
    }
    return spec;
}

SynthSpec load_synth_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open synth spec: " + path);
    return parse_synth_spec(in);
}

Sequence synth_sequence(const SynthSpec& spec) {
    if (spec.canvas_w < 1 || spec.canvas_h < 1) throw ConfigError("synth: empty canvas");
    if (spec.target_w < 1 || spec.target_h < 1) throw ConfigError("synth: empty target");
    if (spec.target_w > spec.canvas_w || spec.target_h > spec.canvas_h) {
        throw ConfigError("synth: target larger than canvas");
    }
    if (spec.frames < 1) throw ConfigError("synth: frames must be >= 1");
    if (spec.noise_sigma < 0.0) throw ConfigError("synth: noise_sigma must be >= 0");
    const int max_x = spec.canvas_w - spec.target_w;
    const int max_y = spec.canvas_h - spec.target_h;
    if (spec.start_x < 0 || spec.start_x > max_x || spec.start_y < 0 || spec.start_y > max_y) {
        throw ConfigError("synth: start position puts the target outside the canvas");
    }

    const GrayFrame background = random_texture(spec.canvas_w, spec.canvas_h,
                                                mix_seed(spec.seed, 1));
    const GrayFrame base_tex = random_texture(spec.target_w, spec.target_h,
                                              mix_seed(spec.seed, 2));
    const GrayFrame retex = random_texture(spec.target_w, spec.target_h, mix_seed(spec.seed, 3));
    Rng noise(mix_seed(spec.seed, 4));

    Sequence seq;
    seq.name = "synth";
    seq.frames.reserve(spec.frames);
    seq.ground_truth.reserve(spec.frames);

    int x = spec.start_x;
    int y = spec.start_y;
    int vx = spec.vel_x;
    int vy = spec.vel_y;
    for (int f = 0; f < spec.frames; ++f) {
        GrayFrame frame = background;
        const bool retextured = spec.retexture_frame >= 0 && f >= spec.retexture_frame;
        paste(frame, retextured ? retex : base_tex, x, y);
        if (spec.noise_sigma > 0.0) {
            for (auto& px : frame.pixels) {
                const long v = std::lround(px + noise.normal(0.0, spec.noise_sigma));
                px = static_cast<std::uint8_t>(v < 0 ? 0 : (v > 255 ? 255 : v));
            }
        }
        seq.frames.push_back(std::move(frame));
        seq.ground_truth.push_back({x, y, spec.target_w, spec.target_h});

        if (f + 1 < spec.frames) {
            x += vx;
            y += vy;
            if (spec.bounce) {
                reflect(x, vx, max_x);
                reflect(y, vy, max_y);
            } else if (x < 0 || x > max_x || y < 0 || y > max_y) {
                throw ConfigError("synth: motion leaves the canvas at frame " +
                                  std::to_string(f + 1) + " (enable bounce or shorten the run)");
            }
        }
    }
    return seq;
}

void write_sequence(const Sequence& seq, const std::string& dir) {
    const fs::path root(dir);
    fs::create_directories(root / "img");
    for (std::size_t i = 0; i < seq.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "%04zu.pgm", i + 1);
        save_pgm(seq.frame(i), (root / "img" / name).string());
    }
    save_rect_file(seq.ground_truth, (root / "groundtruth_rect.txt").string());
}

}  // namespace act
