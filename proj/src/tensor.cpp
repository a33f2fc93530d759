#include "dod/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>

namespace dod {

double Tensor::min() const {
    if (empty()) throw std::runtime_error("tensor: min of empty tensor");
    return *std::min_element(data_.begin(), data_.end());
}

double Tensor::max() const {
    if (empty()) throw std::runtime_error("tensor: max of empty tensor");
    return *std::max_element(data_.begin(), data_.end());
}

double Tensor::sum() const {
    double s = 0.0;
    for (double v : data_) s += v;
    return s;
}

double Tensor::mean() const {
    if (empty()) throw std::runtime_error("tensor: mean of empty tensor");
    return sum() / static_cast<double>(numel());
}

double Tensor::abs_mean() const {
    if (empty()) throw std::runtime_error("tensor: abs_mean of empty tensor");
    double s = 0.0;
    for (double v : data_) s += std::fabs(v);
    return s / static_cast<double>(numel());
}

void Tensor::axpy(double alpha, const Tensor& other) {
    check_same_shape(*this, other, "axpy");
    const double* o = other.data();
    double* d = data();
    const int64_t n = numel();
    for (int64_t i = 0; i < n; ++i) d[i] += alpha * o[i];
}

void Tensor::scale(double alpha) {
    for (double& v : data_) v *= alpha;
}

void Tensor::clamp_(double lo, double hi) {
    for (double& v : data_) v = std::min(hi, std::max(lo, v));
}

std::string shape_str(const std::vector<int64_t>& s) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
    os << "]";
    return os.str();
}

uint64_t fnv1a64(const void* data, size_t nbytes, uint64_t seed) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    uint64_t h = seed;
    for (size_t i = 0; i < nbytes; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

uint64_t tensor_hash(const Tensor& t, uint64_t seed) {
    return fnv1a64(t.data(), sizeof(double) * static_cast<size_t>(t.numel()), seed);
}

std::string hash_hex(uint64_t h) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[static_cast<size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return s;
}

}  // namespace dod
