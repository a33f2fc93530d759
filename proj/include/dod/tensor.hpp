#pragma once

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace dod {

// Dense row-major double tensor. Image batches use NCHW layout.
class Tensor {
public:
    Tensor() = default;
    explicit Tensor(std::vector<int64_t> shape)
        : shape_(std::move(shape)), data_(count(shape_), 0.0) {}
    Tensor(std::vector<int64_t> shape, double fill)
        : shape_(std::move(shape)), data_(count(shape_), fill) {}
    Tensor(std::vector<int64_t> shape, std::vector<double> data)
        : shape_(std::move(shape)), data_(std::move(data)) {
        if (static_cast<int64_t>(data_.size()) != count(shape_))
            throw std::invalid_argument("tensor: data size does not match shape");
    }

    static Tensor zeros_like(const Tensor& t) { return Tensor(t.shape_); }
    static Tensor full_like(const Tensor& t, double v) { return Tensor(t.shape_, v); }
    static Tensor scalar(double v) { return Tensor({1}, v); }

    const std::vector<int64_t>& shape() const { return shape_; }
    int ndim() const { return static_cast<int>(shape_.size()); }
    int64_t dim(int i) const { return shape_.at(static_cast<size_t>(i)); }
    int64_t numel() const { return static_cast<int64_t>(data_.size()); }
    bool empty() const { return data_.empty(); }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    double& operator[](int64_t i) { return data_[static_cast<size_t>(i)]; }
    double operator[](int64_t i) const { return data_[static_cast<size_t>(i)]; }

    // 4-d accessor for NCHW code paths.
    double& at(int64_t n, int64_t c, int64_t h, int64_t w) {
        return data_[static_cast<size_t>(((n * shape_[1] + c) * shape_[2] + h) * shape_[3] + w)];
    }
    double at(int64_t n, int64_t c, int64_t h, int64_t w) const {
        return data_[static_cast<size_t>(((n * shape_[1] + c) * shape_[2] + h) * shape_[3] + w)];
    }
    double& at2(int64_t i, int64_t j) { return data_[static_cast<size_t>(i * shape_[1] + j)]; }
    double at2(int64_t i, int64_t j) const { return data_[static_cast<size_t>(i * shape_[1] + j)]; }

    Tensor reshaped(std::vector<int64_t> shape) const {
        Tensor out(std::move(shape), data_);
        return out;
    }

    void fill(double v) { std::fill(data_.begin(), data_.end(), v); }
    bool same_shape(const Tensor& o) const { return shape_ == o.shape_; }

    double min() const;
    double max() const;
    double sum() const;
    double mean() const;
    double abs_mean() const;

    // this += alpha * other
    void axpy(double alpha, const Tensor& other);
    void scale(double alpha);
    void clamp_(double lo, double hi);

    static int64_t count(const std::vector<int64_t>& shape) {
        int64_t n = 1;
        for (int64_t d : shape) {
            if (d < 0) throw std::invalid_argument("tensor: negative dimension");
            n *= d;
        }
        return shape.empty() ? 0 : n;
    }

private:
    std::vector<int64_t> shape_;
    std::vector<double> data_;
};

std::string shape_str(const std::vector<int64_t>& s);

inline void check_same_shape(const Tensor& a, const Tensor& b, const char* what) {
    if (!a.same_shape(b))
        throw std::invalid_argument(std::string(what) + ": shape mismatch " + shape_str(a.shape()) +
                                    " vs " + shape_str(b.shape()));
}

// 64-bit FNV-1a over raw tensor bytes; used for freeze contracts and provenance.
uint64_t fnv1a64(const void* data, size_t nbytes, uint64_t seed = 0xcbf29ce484222325ull);
uint64_t tensor_hash(const Tensor& t, uint64_t seed = 0xcbf29ce484222325ull);
std::string hash_hex(uint64_t h);

}  // namespace dod
