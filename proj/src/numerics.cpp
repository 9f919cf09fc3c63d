#include "fslhate/numerics.hpp"

#include <algorithm>
#include <cmath>

#include "fslhate/errors.hpp"

namespace fslhate {

std::vector<double> softmax(const std::vector<double>& scores) {
    if (scores.empty()) throw InvalidArgument("softmax: empty input");
    double mx = *std::max_element(scores.begin(), scores.end());
    if (!std::isfinite(mx)) throw NumericalFailure("softmax: non-finite input");
    std::vector<double> out(scores.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        out[i] = std::exp(scores[i] - mx);
        sum += out[i];
    }
    for (double& v : out) v /= sum;
    return out;
}

std::vector<double> layer_norm(const std::vector<double>& x, const std::vector<double>& gamma,
                               const std::vector<double>& beta, double eps) {
    LayerNormCache cache;
    return layer_norm_forward(x, gamma, beta, eps, cache);
}

std::vector<double> layer_norm_forward(const std::vector<double>& x,
                                       const std::vector<double>& gamma,
                                       const std::vector<double>& beta, double eps,
                                       LayerNormCache& cache) {
    std::size_t n = x.size();
    if (n < 2) throw InvalidArgument("layer_norm: input shorter than 2");
    if (gamma.size() != n || beta.size() != n) {
        throw InvalidArgument("layer_norm: gamma/beta length mismatch");
    }
    if (eps <= 0.0) throw InvalidArgument("layer_norm: eps must be positive");

    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;  // population variance
    for (double v : x) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n);

    cache.inv_std = 1.0 / std::sqrt(var + eps);
    cache.xhat.resize(n);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        cache.xhat[i] = (x[i] - mean) * cache.inv_std;
        out[i] = gamma[i] * cache.xhat[i] + beta[i];
        if (!std::isfinite(out[i])) throw NumericalFailure("layer_norm: non-finite output");
    }
    return out;
}

void layer_norm_backward(const std::vector<double>& dy, const std::vector<double>& gamma,
                         const LayerNormCache& cache, std::vector<double>& dx,
                         double* dgamma, double* dbeta) {
    std::size_t n = dy.size();
    double sum_dxhat = 0.0;
    double sum_dxhat_xhat = 0.0;
    std::vector<double> dxhat(n);
    for (std::size_t i = 0; i < n; ++i) {
        dxhat[i] = dy[i] * gamma[i];
        sum_dxhat += dxhat[i];
        sum_dxhat_xhat += dxhat[i] * cache.xhat[i];
        if (dgamma) dgamma[i] += dy[i] * cache.xhat[i];
        if (dbeta) dbeta[i] += dy[i];
    }
    dx.resize(n);
    double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        dx[i] = cache.inv_std * (dxhat[i] - inv_n * sum_dxhat - inv_n * cache.xhat[i] * sum_dxhat_xhat);
    }
}

}  // namespace fslhate
