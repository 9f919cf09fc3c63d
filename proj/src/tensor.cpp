#include "fslhate/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fslhate/errors.hpp"

namespace fslhate {

std::size_t numel(const std::vector<std::size_t>& dims) {
    std::size_t n = 1;
    for (std::size_t d : dims) n *= d;
    return n;
}

Tensor::Tensor(std::vector<std::size_t> dims) : shape(std::move(dims)) {
    for (std::size_t d : shape) {
        if (d == 0) throw InvalidArgument("Tensor: zero dimension");
    }
    data.assign(numel(shape), 0.0);
}

Tensor::Tensor(std::initializer_list<std::size_t> dims)
    : Tensor(std::vector<std::size_t>(dims)) {}

Tensor Tensor::of(std::vector<double> values) {
    Tensor t;
    t.shape = {values.size()};
    t.data = std::move(values);
    return t;
}

std::size_t Tensor::row_stride() const {
    std::size_t s = 1;
    for (std::size_t i = 1; i < shape.size(); ++i) s *= shape[i];
    return s;
}

void Tensor::fill(double v) { std::fill(data.begin(), data.end(), v); }

bool all_finite(const Tensor& t) {
    for (double v : t.data) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

void require_finite(const Tensor& t, const char* what) {
    if (!all_finite(t)) {
        throw NumericalFailure(std::string("non-finite values in ") + what);
    }
}

double dot(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

}  // namespace fslhate
