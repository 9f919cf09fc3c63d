#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace fslhate {

/// Dense row-major tensor of 64-bit floats. The single numeric carrier for
/// the whole library; rank is dynamic but almost everything here is 1-d or
/// 2-d (conv weights are 3-d).
struct Tensor {
    std::vector<std::size_t> shape;
    std::vector<double> data;

    Tensor() = default;
    explicit Tensor(std::vector<std::size_t> dims);
    Tensor(std::initializer_list<std::size_t> dims);

    static Tensor of(std::vector<double> values);  // 1-d from values

    std::size_t size() const { return data.size(); }
    std::size_t rank() const { return shape.size(); }
    std::size_t dim(std::size_t i) const { return shape[i]; }
    std::size_t rows() const { return shape.empty() ? 0 : shape[0]; }
    std::size_t cols() const { return shape.size() < 2 ? 1 : shape[1]; }

    double& operator()(std::size_t i) { return data[i]; }
    double operator()(std::size_t i) const { return data[i]; }
    double& operator()(std::size_t i, std::size_t j) { return data[i * shape[1] + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * shape[1] + j]; }
    double& operator()(std::size_t i, std::size_t j, std::size_t k) {
        return data[(i * shape[1] + j) * shape[2] + k];
    }
    double operator()(std::size_t i, std::size_t j, std::size_t k) const {
        return data[(i * shape[1] + j) * shape[2] + k];
    }

    // Pointer to row i of a 2-d tensor (or the i-th k*d block of a 3-d one).
    double* row(std::size_t i) { return data.data() + i * row_stride(); }
    const double* row(std::size_t i) const { return data.data() + i * row_stride(); }
    std::size_t row_stride() const;

    void fill(double v);
    void zero() { fill(0.0); }
    bool same_shape(const Tensor& other) const { return shape == other.shape; }
};

std::size_t numel(const std::vector<std::size_t>& dims);

bool all_finite(const Tensor& t);
// Throws NumericalFailure naming `what` when t contains NaN/Inf.
void require_finite(const Tensor& t, const char* what);

// Contiguous kernels; everything heavier is built from these two.
double dot(const double* a, const double* b, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);

}  // namespace fslhate
