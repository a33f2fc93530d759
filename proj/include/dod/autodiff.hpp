#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "dod/tensor.hpp"

namespace dod::nn {

// Define-by-run reverse-mode tape. Each op allocates a Node holding the
// forward value, the input edges, and a closure that routes the node's grad
// into its inputs. Graphs are rebuilt every step; releasing the root frees
// the tape.
struct Node;
using Var = std::shared_ptr<Node>;

struct Node {
    Tensor value;
    Tensor grad;  // allocated on first accumulate
    bool has_grad = false;
    bool requires_grad = false;
    std::vector<Var> inputs;
    std::function<void(Node&)> backward_fn;
    const char* op = "leaf";

    void accumulate(const Tensor& g) {
        if (!has_grad) {
            grad = g;
            has_grad = true;
        } else {
            grad.axpy(1.0, g);
        }
    }
    void ensure_grad() {
        if (!has_grad) {
            grad = Tensor(value.shape());
            has_grad = true;
        }
    }
    void clear_grad() {
        grad = Tensor();
        has_grad = false;
    }
};

Var make_var(Tensor value, bool requires_grad = false, const char* op = "leaf");

inline bool any_requires(const std::vector<Var>& vs) {
    for (const auto& v : vs)
        if (v && v->requires_grad) return true;
    return false;
}

// Creates an op node; requires_grad is inherited from the inputs.
Var make_op(Tensor value, std::vector<Var> inputs, std::function<void(Node&)> backward,
            const char* op);

// Reverse-mode sweep from a scalar root. Accumulates into the .grad of every
// requires_grad node reachable from the root.
void backward(const Var& root);

// Value copy with the tape cut.
Var detach(const Var& x);

// row-major GEMM helper: C = alpha * op(A) * op(B) + beta * C
void gemm(bool trans_a, bool trans_b, int64_t m, int64_t n, int64_t k, double alpha,
          const double* a, const double* b, double beta, double* c);

}  // namespace dod::nn
