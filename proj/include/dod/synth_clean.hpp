#pragma once

#include <cstdint>
#include <string>

#include "dod/tensor.hpp"

namespace dod {

// Procedural clean image: smooth gradient background plus a few soft-edged
// shapes and a low-frequency wave. Enough structure for blur and noise to be
// visibly destructive while staying reconstructable by a small autoencoder.
Tensor make_clean_image(uint64_t seed, int size);

// Writes `count` clean PNGs named clean_000.png .. into dir. Returns the dir.
std::string synth_clean_dir(const std::string& dir, int count, int size, uint64_t seed);

}  // namespace dod
