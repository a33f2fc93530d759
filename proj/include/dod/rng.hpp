#pragma once

#include <cstdint>

#include "dod/tensor.hpp"

namespace dod {

// Philox4x32-10 counter-based generator. Explicitly seeded, platform independent,
// cheap to fork into independent streams: (seed, stream) fully determine the output
// sequence, so every sampling site in the repo derives its randomness from a seed
// plus a context-specific stream id (e.g. the training step).
class Philox {
public:
    explicit Philox(uint64_t seed, uint64_t stream = 0);

    uint32_t next_u32();
    uint64_t next_u64();

    // Uniform on [0,1) with 53 random bits.
    double uniform();
    // Uniform integer on [0, n), n > 0.
    int64_t uniform_int(int64_t n);
    // Standard normal via Box-Muller.
    double gaussian();

    void fill_uniform(Tensor& t, double lo = 0.0, double hi = 1.0);
    void fill_gaussian(Tensor& t, double mean = 0.0, double stddev = 1.0);

    Tensor gaussian_tensor(std::vector<int64_t> shape, double mean = 0.0, double stddev = 1.0);
    Tensor uniform_tensor(std::vector<int64_t> shape, double lo = 0.0, double hi = 1.0);

private:
    void next_block();

    uint32_t key_[2];
    uint32_t counter_[4];
    uint32_t out_[4];
    int out_pos_;  // 4 = block exhausted
    bool have_cached_gaussian_;
    double cached_gaussian_;
};

}  // namespace dod
