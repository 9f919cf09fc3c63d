#pragma once

#include <cstddef>
#include <vector>

#include "fslhate/tensor.hpp"

namespace fslhate {

/// Numerically stable softmax (max subtraction). Errors on empty input;
/// output is nonnegative and sums to 1 within 1e-12.
std::vector<double> softmax(const std::vector<double>& scores);

/// Layer normalization with population variance and learnable affine.
std::vector<double> layer_norm(const std::vector<double>& x,
                               const std::vector<double>& gamma,
                               const std::vector<double>& beta, double eps);

// Cache-returning variant used by the model backward pass.
struct LayerNormCache {
    std::vector<double> xhat;
    double inv_std = 0.0;
};

std::vector<double> layer_norm_forward(const std::vector<double>& x,
                                       const std::vector<double>& gamma,
                                       const std::vector<double>& beta, double eps,
                                       LayerNormCache& cache);

void layer_norm_backward(const std::vector<double>& dy, const std::vector<double>& gamma,
                         const LayerNormCache& cache, std::vector<double>& dx,
                         double* dgamma, double* dbeta);

}  // namespace fslhate
