#pragma once

#include <string>

#include "act/image.hpp"

namespace act {

// Luminance conversion used for every color input (0.299 R + 0.587 G + 0.114 B,
// rounded to the nearest integer).
std::uint8_t luminance(std::uint8_t r, std::uint8_t g, std::uint8_t b);

// Decodes a still image to grayscale. PGM/PPM (binary and ascii) are handled
// natively; png/jpg/bmp need the OpenCV-backed build.
GrayFrame load_gray(const std::string& path);

void save_pgm(const GrayFrame& frame, const std::string& path);

}  // namespace act
