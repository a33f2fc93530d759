#pragma once

#include <string>

#include "dod/tensor.hpp"

namespace dod {

// Reads an 8-bit PNG into a [3,H,W] tensor scaled to [0,1].
// Grayscale/palette/alpha inputs are expanded to RGB.
Tensor read_png(const std::string& path);

// Writes a [3,H,W] or [1,H,W] tensor in [0,1] as an 8-bit PNG.
// Values are clamped and rounded to the nearest 8-bit level.
void write_png(const std::string& path, const Tensor& img);

}  // namespace dod
