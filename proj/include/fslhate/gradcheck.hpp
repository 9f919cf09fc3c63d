#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fslhate/tensor.hpp"

namespace fslhate {

struct GradReport {
    double max_rel_err = 0.0;
    bool pass = false;
    double tol = 0.0;
    std::string worst_param;
    std::size_t worst_index = 0;
};

// One checked parameter: the tensor the loss closure reads from (perturbed
// in place and restored) and the analytic gradient claimed for it.
// first_checked skips leading elements that are frozen (the PAD embedding
// row is not a free parameter).
struct ParamRef {
    std::string name;
    Tensor* value = nullptr;
    const Tensor* grad = nullptr;
    std::size_t first_checked = 0;
};

/// Central-difference gradient check, the oracle for every backward pass.
/// Relative error |a-n| / max(1e-8, |a|+|n|) per element; eps must lie in
/// [1e-7, 1e-3]. Throws NumericalFailure when the loss turns non-finite.
GradReport finite_diff_check(const std::function<double()>& loss,
                             const std::vector<ParamRef>& params, double eps = 1e-5,
                             double tol = 1e-4);

}  // namespace fslhate
