#include "dod/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace dod {

namespace {

constexpr uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr uint32_t kWeyl0 = 0x9E3779B9u;
constexpr uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(uint32_t a, uint32_t b, uint32_t& hi, uint32_t& lo) {
    uint64_t p = static_cast<uint64_t>(a) * static_cast<uint64_t>(b);
    hi = static_cast<uint32_t>(p >> 32);
    lo = static_cast<uint32_t>(p);
}

}  // namespace

Philox::Philox(uint64_t seed, uint64_t stream)
    : out_pos_(4), have_cached_gaussian_(false), cached_gaussian_(0.0) {
    key_[0] = static_cast<uint32_t>(seed);
    key_[1] = static_cast<uint32_t>(seed >> 32);
    counter_[0] = 0;
    counter_[1] = 0;
    counter_[2] = static_cast<uint32_t>(stream);
    counter_[3] = static_cast<uint32_t>(stream >> 32);
}

void Philox::next_block() {
    uint32_t c0 = counter_[0], c1 = counter_[1], c2 = counter_[2], c3 = counter_[3];
    uint32_t k0 = key_[0], k1 = key_[1];
    for (int round = 0; round < 10; ++round) {
        uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, c0, hi0, lo0);
        mulhilo(kPhiloxM1, c2, hi1, lo1);
        uint32_t n0 = hi1 ^ c1 ^ k0;
        uint32_t n1 = lo1;
        uint32_t n2 = hi0 ^ c3 ^ k1;
        uint32_t n3 = lo0;
        c0 = n0;
        c1 = n1;
        c2 = n2;
        c3 = n3;
        k0 += kWeyl0;
        k1 += kWeyl1;
    }
    out_[0] = c0;
    out_[1] = c1;
    out_[2] = c2;
    out_[3] = c3;
    // 128-bit counter increment
    if (++counter_[0] == 0)
        if (++counter_[1] == 0)
            if (++counter_[2] == 0) ++counter_[3];
    out_pos_ = 0;
}

uint32_t Philox::next_u32() {
    if (out_pos_ >= 4) next_block();
    return out_[out_pos_++];
}

uint64_t Philox::next_u64() {
    uint64_t lo = next_u32();
    uint64_t hi = next_u32();
    return (hi << 32) | lo;
}

double Philox::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

int64_t Philox::uniform_int(int64_t n) {
    if (n <= 0) throw std::invalid_argument("rng: uniform_int needs n > 0");
    // rejection sampling to avoid modulo bias
    uint64_t un = static_cast<uint64_t>(n);
    uint64_t limit = UINT64_MAX - UINT64_MAX % un;
    uint64_t v;
    do {
        v = next_u64();
    } while (v >= limit);
    return static_cast<int64_t>(v % un);
}

double Philox::gaussian() {
    if (have_cached_gaussian_) {
        have_cached_gaussian_ = false;
        return cached_gaussian_;
    }
    double u1 = 1.0 - uniform();  // (0,1]
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * M_PI * u2;
    cached_gaussian_ = r * std::sin(theta);
    have_cached_gaussian_ = true;
    return r * std::cos(theta);
}

void Philox::fill_uniform(Tensor& t, double lo, double hi) {
    double* d = t.data();
    const int64_t n = t.numel();
    for (int64_t i = 0; i < n; ++i) d[i] = lo + (hi - lo) * uniform();
}

void Philox::fill_gaussian(Tensor& t, double mean, double stddev) {
    double* d = t.data();
    const int64_t n = t.numel();
    for (int64_t i = 0; i < n; ++i) d[i] = mean + stddev * gaussian();
}

Tensor Philox::gaussian_tensor(std::vector<int64_t> shape, double mean, double stddev) {
    Tensor t(std::move(shape));
    fill_gaussian(t, mean, stddev);
    return t;
}

Tensor Philox::uniform_tensor(std::vector<int64_t> shape, double lo, double hi) {
    Tensor t(std::move(shape));
    fill_uniform(t, lo, hi);
    return t;
}

}  // namespace dod
