#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "act/bench.hpp"

namespace act {

// Script for a generated sequence: a seeded textured target translating over
// a seeded textured background, with optional per-frame pixel noise, wall
// bouncing, and a one-time target retexture mid-sequence.
struct SynthSpec {
    int canvas_w = 320;
    int canvas_h = 240;
    int target_w = 40;
    int target_h = 40;
    int start_x = 120;
    int start_y = 100;
    int frames = 200;
    int vel_x = 2;
    int vel_y = 0;
    bool bounce = true;       // reflect at the canvas edges instead of erroring
    double noise_sigma = 2.0;
    std::uint64_t seed = 1;
    int retexture_frame = -1;  // frame index from which the target wears a new texture

    bool operator==(const SynthSpec&) const = default;
};

SynthSpec parse_synth_spec(std::istream& in);
SynthSpec load_synth_spec(const std::string& path);

// Deterministic in-memory sequence with exact ground truth. Throws
// ConfigError when the spec is inconsistent or the motion leaves the canvas
// with bouncing disabled.
Sequence synth_sequence(const SynthSpec& spec);

// Writes <dir>/img/0001.pgm ... plus <dir>/groundtruth_rect.txt, the layout
// load_sequence reads back.
void write_sequence(const Sequence& seq, const std::string& dir);

}  // namespace act
