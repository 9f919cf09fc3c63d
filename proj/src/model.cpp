#include "fslhate/model.hpp"

#include <algorithm>
#include <cmath>

#include "fslhate/errors.hpp"

namespace fslhate {

namespace {

double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    double e = std::exp(x);
    return e / (1.0 + e);
}

// Modified Gram-Schmidt orthogonalization of each (d, d) gate block of a
// recurrent weight matrix filled with unit Gaussians.
void orthogonalize_blocks(Tensor& wh, std::size_t d) {
    for (std::size_t block = 0; block < 4; ++block) {
        double* base = wh.data.data() + block * d * d;
        for (std::size_t r = 0; r < d; ++r) {
            double* v = base + r * d;
            for (std::size_t prev = 0; prev < r; ++prev) {
                const double* q = base + prev * d;
                double proj = dot(v, q, d);
                axpy(-proj, q, v, d);
            }
            double norm = std::sqrt(dot(v, v, d));
            if (norm < 1e-12) {
                std::fill(v, v + d, 0.0);
                v[r % d] = 1.0;
                norm = 1.0;
            }
            for (std::size_t c = 0; c < d; ++c) v[c] /= norm;
        }
    }
}

void glorot_fill(Tensor& t, std::size_t fan_in, std::size_t fan_out, Rng& rng) {
    double bound = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    for (double& v : t.data) v = rng.uniform(-bound, bound);
}

LstmWeights init_lstm(std::size_t d_in, std::size_t d, Rng& rng) {
    LstmWeights w;
    w.wx = Tensor{4 * d, d_in};
    glorot_fill(w.wx, d_in, d, rng);
    w.wh = Tensor{4 * d, d};
    for (double& v : w.wh.data) v = rng.normal();
    orthogonalize_blocks(w.wh, d);
    w.b = Tensor{4 * d};
    for (std::size_t i = d; i < 2 * d; ++i) w.b(i) = 1.0;  // forget gate
    return w;
}

}  // namespace

void ModelConfig::validate() const {
    if (d_emb < 1 || d_conv < 1 || kernel < 1 || pool < 1 || d_lstm < 1 || n_classes < 1 ||
        seq_len < 1) {
        throw InvalidArgument("ModelConfig: dimensions must be >= 1");
    }
    if (kernel % 2 == 0) throw InvalidArgument("ModelConfig: kernel width must be odd");
    if (!(keep_prob > 0.0 && keep_prob <= 1.0)) {
        throw InvalidArgument("ModelConfig: keep_prob must lie in (0, 1]");
    }
    if (!(lstm_input_dropout >= 0.0 && lstm_input_dropout < 1.0)) {
        throw InvalidArgument("ModelConfig: lstm_input_dropout must lie in [0, 1)");
    }
    if (ln_eps <= 0.0) throw InvalidArgument("ModelConfig: ln_eps must be positive");
    if (input_len() < kernel) throw InvalidArgument("ModelConfig: input shorter than kernel");
}

ModelConfig ablation_variant(const ModelConfig& config, const std::string& variant) {
    ModelConfig out = config;
    if (variant == "full") return out;
    if (variant == "no_prompt") {
        out.prompt_len = 0;
        return out;
    }
    if (variant == "no_attention") {
        out.use_attention = false;
        return out;
    }
    throw InvalidArgument("ablation_variant: unknown variant '" + variant + "'");
}

ModelParams init_params(const ModelConfig& config, std::size_t vocab_size, Rng& rng) {
    config.validate();
    if (vocab_size < 3) throw InvalidArgument("init_params: vocab_size must be >= 3");

    ModelParams p;
    p.embedding = Tensor{vocab_size, config.d_emb};
    for (double& v : p.embedding.data) v = rng.uniform(-0.05, 0.05);
    for (std::size_t c = 0; c < config.d_emb; ++c) p.embedding(kPadId, c) = 0.0;  // frozen

    if (config.prompt_len > 0) {
        p.prompt = Tensor{config.prompt_len, config.d_emb};
        for (double& v : p.prompt.data) v = rng.uniform(-0.05, 0.05);
    } else {
        p.prompt = Tensor{};
    }

    p.conv_w = Tensor{config.d_conv, config.kernel, config.d_emb};
    glorot_fill(p.conv_w, config.kernel * config.d_emb, config.d_conv, rng);
    p.conv_b = Tensor{config.d_conv};

    p.lstm_fwd = init_lstm(config.d_conv, config.d_lstm, rng);
    p.lstm_bwd = init_lstm(config.d_conv, config.d_lstm, rng);

    std::size_t d2 = 2 * config.d_lstm;
    p.attn_w = Tensor{d2};
    glorot_fill(p.attn_w, d2, 1, rng);
    p.ln_gamma = Tensor{d2};
    p.ln_gamma.fill(1.0);
    p.ln_beta = Tensor{d2};
    p.fc_w = Tensor{config.n_classes, d2};
    glorot_fill(p.fc_w, d2, config.n_classes, rng);
    p.fc_b = Tensor{config.n_classes};
    return p;
}

ModelGrads zero_grads(const ModelConfig& config, std::size_t vocab_size) {
    ModelGrads g;
    g.embedding = Tensor{vocab_size, config.d_emb};
    g.prompt = config.prompt_len > 0 ? Tensor{config.prompt_len, config.d_emb} : Tensor{};
    g.conv_w = Tensor{config.d_conv, config.kernel, config.d_emb};
    g.conv_b = Tensor{config.d_conv};
    std::size_t d = config.d_lstm;
    for (LstmWeights* w : {&g.lstm_fwd, &g.lstm_bwd}) {
        w->wx = Tensor{4 * d, config.d_conv};
        w->wh = Tensor{4 * d, d};
        w->b = Tensor{4 * d};
    }
    std::size_t d2 = 2 * d;
    g.attn_w = Tensor{d2};
    g.ln_gamma = Tensor{d2};
    g.ln_beta = Tensor{d2};
    g.fc_w = Tensor{config.n_classes, d2};
    g.fc_b = Tensor{config.n_classes};
    return g;
}

void accumulate_grads(ModelGrads& acc, const ModelGrads& delta, double scale) {
    std::vector<Tensor*> dst;
    for_each_tensor(acc, [&](const char*, Tensor& t) { dst.push_back(&t); });
    std::vector<const Tensor*> src;
    for_each_tensor(delta, [&](const char*, const Tensor& t) { src.push_back(&t); });
    for (std::size_t i = 0; i < dst.size(); ++i) {
        if (dst[i]->size() != src[i]->size()) {
            throw InvalidArgument("accumulate_grads: shape mismatch");
        }
        axpy(scale, src[i]->data.data(), dst[i]->data.data(), src[i]->size());
    }
}

EmbedResult embed_with_prompt(const ModelParams& params, const EncodedExample& example,
                              const ModelConfig& config) {
    if (example.ids.size() != config.seq_len) {
        throw InvalidArgument("embed_with_prompt: example length does not match seq_len");
    }
    std::size_t m = config.prompt_len;
    std::size_t vocab = params.embedding.dim(0);

    EmbedResult out;
    out.eprime = Tensor{m + config.seq_len, config.d_emb};
    out.mask.assign(m + config.seq_len, 0);
    for (std::size_t j = 0; j < m; ++j) {
        std::copy_n(params.prompt.row(j), config.d_emb, out.eprime.row(j));
        out.mask[j] = 1;
    }
    for (std::size_t i = 0; i < config.seq_len; ++i) {
        int id = example.ids[i];
        if (id < 0 || static_cast<std::size_t>(id) >= vocab) {
            throw InvalidArgument("embed_with_prompt: token id out of range");
        }
        std::copy_n(params.embedding.row(static_cast<std::size_t>(id)), config.d_emb,
                    out.eprime.row(m + i));
        if (i < static_cast<std::size_t>(example.true_length)) out.mask[m + i] = 1;
    }
    return out;
}

ConvPoolResult conv_relu_maxpool(const Tensor& eprime, const std::vector<std::uint8_t>& mask,
                                 const ModelParams& params, const ModelConfig& config) {
    std::size_t len = eprime.dim(0);
    std::size_t d_emb = config.d_emb;
    std::size_t k = config.kernel;
    std::size_t pad = (k - 1) / 2;
    if (len < k) throw InvalidArgument("conv_relu_maxpool: input shorter than kernel");
    if (mask.size() != len) throw InvalidArgument("conv_relu_maxpool: mask length mismatch");

    ConvPoolResult out;
    out.pre = Tensor{len, config.d_conv};
    for (std::size_t t = 0; t < len; ++t) {
        double* pre_row = out.pre.row(t);
        bool interior = t >= pad && t + pad < len;
        for (std::size_t f = 0; f < config.d_conv; ++f) {
            const double* w = params.conv_w.row(f);
            double acc = params.conv_b(f);
            if (interior) {
                // Window rows are contiguous, so this is one long dot product.
                acc += dot(w, eprime.row(t - pad), k * d_emb);
            } else {
                for (std::size_t j = 0; j < k; ++j) {
                    std::size_t src = t + j;
                    if (src < pad || src - pad >= len) continue;  // zero padding
                    acc += dot(w + j * d_emb, eprime.row(src - pad), d_emb);
                }
            }
            pre_row[f] = acc;
        }
    }

    std::size_t stride = config.pool;
    std::size_t pooled_len = (len + stride - 1) / stride;
    out.pooled = Tensor{pooled_len, config.d_conv};
    out.argmax.assign(pooled_len * config.d_conv, 0);
    out.pooled_mask.assign(pooled_len, 0);
    for (std::size_t j = 0; j < pooled_len; ++j) {
        std::size_t begin = j * stride;
        std::size_t end = std::min(begin + stride, len);
        for (std::size_t t = begin; t < end; ++t) {
            if (mask[t]) out.pooled_mask[j] = 1;
        }
        for (std::size_t f = 0; f < config.d_conv; ++f) {
            double best = 0.0;
            std::size_t best_t = begin;  // ties (incl. all-negative windows) take the lowest index
            for (std::size_t t = begin; t < end; ++t) {
                double v = std::max(0.0, out.pre(t, f));
                if (v > best) {
                    best = v;
                    best_t = t;
                }
            }
            out.pooled(j, f) = best;
            out.argmax[j * config.d_conv + f] = static_cast<int>(best_t);
        }
    }
    return out;
}

Tensor conv_relu_maxpool_backward(const ConvPoolResult& cache, const Tensor& eprime,
                                  const ModelParams& params, const ModelConfig& config,
                                  const Tensor& d_pooled, Tensor& d_conv_w, Tensor& d_conv_b) {
    std::size_t len = eprime.dim(0);
    std::size_t d_emb = config.d_emb;
    std::size_t k = config.kernel;
    std::size_t pad = (k - 1) / 2;

    Tensor d_pre{len, config.d_conv};
    std::size_t pooled_len = cache.pooled.dim(0);
    for (std::size_t j = 0; j < pooled_len; ++j) {
        for (std::size_t f = 0; f < config.d_conv; ++f) {
            double g = d_pooled(j, f);
            if (g == 0.0) continue;
            std::size_t t = static_cast<std::size_t>(cache.argmax[j * config.d_conv + f]);
            if (cache.pre(t, f) > 0.0) d_pre(t, f) += g;  // ReLU subgradient 0 at 0
        }
    }

    Tensor d_eprime{len, d_emb};
    for (std::size_t t = 0; t < len; ++t) {
        const double* dp = d_pre.row(t);
        for (std::size_t f = 0; f < config.d_conv; ++f) {
            double g = dp[f];
            if (g == 0.0) continue;
            d_conv_b(f) += g;
            double* dw = d_conv_w.row(f);
            const double* w = params.conv_w.row(f);
            for (std::size_t j = 0; j < k; ++j) {
                std::size_t src = t + j;
                if (src < pad || src - pad >= len) continue;
                axpy(g, eprime.row(src - pad), dw + j * d_emb, d_emb);
                axpy(g, w + j * d_emb, d_eprime.row(src - pad), d_emb);
            }
        }
    }
    return d_eprime;
}

namespace {

// One LSTM direction over the first t_eff rows of x, visiting positions in
// `reverse` order when asked. Cache rows are stored in processing order.
void lstm_dir_forward(const Tensor& x, std::size_t t_eff, const LstmWeights& w, std::size_t d,
                      bool reverse, LstmDirCache& cache) {
    std::size_t d_in = x.dim(1);
    cache.gi = Tensor{std::max<std::size_t>(t_eff, 1), d};
    cache.gf = cache.gi;
    cache.gg = cache.gi;
    cache.go = cache.gi;
    cache.c = cache.gi;
    cache.h = cache.gi;

    std::vector<double> z(4 * d);
    std::vector<double> h_prev(d, 0.0);
    std::vector<double> c_prev(d, 0.0);
    for (std::size_t step = 0; step < t_eff; ++step) {
        std::size_t pos = reverse ? t_eff - 1 - step : step;
        const double* xt = x.row(pos);
        for (std::size_t r = 0; r < 4 * d; ++r) {
            z[r] = w.b(r) + dot(w.wx.row(r), xt, d_in) + dot(w.wh.row(r), h_prev.data(), d);
        }
        for (std::size_t u = 0; u < d; ++u) {
            double gi = sigmoid(z[u]);
            double gf = sigmoid(z[d + u]);
            double gg = std::tanh(z[2 * d + u]);
            double go = sigmoid(z[3 * d + u]);
            double c = gf * c_prev[u] + gi * gg;
            double h = go * std::tanh(c);
            cache.gi(step, u) = gi;
            cache.gf(step, u) = gf;
            cache.gg(step, u) = gg;
            cache.go(step, u) = go;
            cache.c(step, u) = c;
            cache.h(step, u) = h;
            c_prev[u] = c;
            h_prev[u] = h;
        }
    }
}

// BPTT for one direction. dh_ext rows are indexed by processing step, like
// the cache. Accumulates weight gradients and adds input gradients into
// d_x at the original positions.
void lstm_dir_backward(const Tensor& x, std::size_t t_eff, const LstmWeights& w, std::size_t d,
                       bool reverse, const LstmDirCache& cache, const Tensor& dh_ext,
                       LstmWeights& dw, Tensor& d_x) {
    std::size_t d_in = x.dim(1);
    std::vector<double> dh(d, 0.0);
    std::vector<double> dc(d, 0.0);
    std::vector<double> dz(4 * d);
    for (std::size_t step_plus1 = t_eff; step_plus1 > 0; --step_plus1) {
        std::size_t step = step_plus1 - 1;
        std::size_t pos = reverse ? t_eff - 1 - step : step;
        const double* xt = x.row(pos);
        for (std::size_t u = 0; u < d; ++u) {
            double dh_total = dh[u] + dh_ext(step, u);
            double gi = cache.gi(step, u);
            double gf = cache.gf(step, u);
            double gg = cache.gg(step, u);
            double go = cache.go(step, u);
            double c = cache.c(step, u);
            double tc = std::tanh(c);
            double c_prev = step > 0 ? cache.c(step - 1, u) : 0.0;

            double dgo = dh_total * tc;
            double dct = dc[u] + dh_total * go * (1.0 - tc * tc);
            double dgi = dct * gg;
            double dgf = dct * c_prev;
            double dgg = dct * gi;

            dz[u] = dgi * gi * (1.0 - gi);
            dz[d + u] = dgf * gf * (1.0 - gf);
            dz[2 * d + u] = dgg * (1.0 - gg * gg);
            dz[3 * d + u] = dgo * go * (1.0 - go);

            dc[u] = dct * gf;  // carried to step-1
        }
        const double* h_prev = step > 0 ? cache.h.row(step - 1) : nullptr;
        std::fill(dh.begin(), dh.end(), 0.0);
        double* dxt = d_x.row(pos);
        for (std::size_t r = 0; r < 4 * d; ++r) {
            double g = dz[r];
            if (g == 0.0) continue;
            dw.b(r) += g;
            axpy(g, xt, dw.wx.row(r), d_in);
            axpy(g, w.wx.row(r), dxt, d_in);
            if (h_prev) {
                axpy(g, h_prev, dw.wh.row(r), d);
            }
            axpy(g, w.wh.row(r), dh.data(), d);
        }
    }
}

std::size_t unmasked_prefix(const std::vector<std::uint8_t>& mask) {
    std::size_t n = 0;
    while (n < mask.size() && mask[n]) ++n;
    // Masked-true positions always form a prefix (prompt rows then real
    // tokens); anything else means the caller built the mask by hand.
    for (std::size_t i = n; i < mask.size(); ++i) {
        if (mask[i]) throw InvalidArgument("bilstm: mask is not a true-prefix");
    }
    return n;
}

}  // namespace

BilstmResult bilstm(const Tensor& pooled, const std::vector<std::uint8_t>& pooled_mask,
                    const ModelParams& params, const ModelConfig& config, Mode mode, Rng* rng) {
    std::size_t len = pooled.dim(0);
    if (len < 1) throw InvalidArgument("bilstm: empty input");
    if (pooled_mask.size() != len) throw InvalidArgument("bilstm: mask length mismatch");
    std::size_t d = config.d_lstm;

    BilstmResult out;
    out.t_eff = unmasked_prefix(pooled_mask);
    if (out.t_eff == 0) throw InvalidArgument("bilstm: no unmasked positions");

    out.lstm_in = Tensor{out.t_eff, pooled.dim(1)};
    for (std::size_t t = 0; t < out.t_eff; ++t) {
        std::copy_n(pooled.row(t), pooled.dim(1), out.lstm_in.row(t));
    }
    bool drop = mode == Mode::train && config.lstm_input_dropout > 0.0;
    if (drop) {
        if (!rng) throw InvalidArgument("bilstm: train-mode dropout needs an rng");
        double keep = 1.0 - config.lstm_input_dropout;
        out.input_drop_mask.assign(out.t_eff * pooled.dim(1), 0);
        for (std::size_t i = 0; i < out.input_drop_mask.size(); ++i) {
            bool kept = rng->next_double() >= config.lstm_input_dropout;
            out.input_drop_mask[i] = kept ? 1 : 0;
            out.lstm_in.data[i] = kept ? out.lstm_in.data[i] / keep : 0.0;
        }
    }

    lstm_dir_forward(out.lstm_in, out.t_eff, params.lstm_fwd, d, false, out.fwd);
    lstm_dir_forward(out.lstm_in, out.t_eff, params.lstm_bwd, d, true, out.bwd);

    out.hcat = Tensor{len, 2 * d};
    for (std::size_t t = 0; t < out.t_eff; ++t) {
        std::copy_n(out.fwd.h.row(t), d, out.hcat.row(t));
        // bwd cache row `step` holds position t_eff-1-step
        std::copy_n(out.bwd.h.row(out.t_eff - 1 - t), d, out.hcat.row(t) + d);
    }
    return out;
}

Tensor bilstm_backward(const BilstmResult& cache, const Tensor& pooled,
                       const ModelParams& params, const ModelConfig& config,
                       const Tensor& d_hcat, LstmWeights& d_fwd, LstmWeights& d_bwd) {
    std::size_t len = pooled.dim(0);
    std::size_t d = config.d_lstm;
    std::size_t t_eff = cache.t_eff;

    Tensor dh_fwd{std::max<std::size_t>(t_eff, 1), d};
    Tensor dh_bwd{std::max<std::size_t>(t_eff, 1), d};
    for (std::size_t t = 0; t < t_eff; ++t) {
        const double* row = d_hcat.row(t);
        std::copy_n(row, d, dh_fwd.row(t));
        std::copy_n(row + d, d, dh_bwd.row(t_eff - 1 - t));
    }

    Tensor d_in{t_eff, pooled.dim(1)};
    lstm_dir_backward(cache.lstm_in, t_eff, params.lstm_fwd, d, false, cache.fwd, dh_fwd, d_fwd,
                      d_in);
    lstm_dir_backward(cache.lstm_in, t_eff, params.lstm_bwd, d, true, cache.bwd, dh_bwd, d_bwd,
                      d_in);

    Tensor d_pooled{len, pooled.dim(1)};
    bool drop = !cache.input_drop_mask.empty();
    double keep = 1.0 - config.lstm_input_dropout;
    for (std::size_t t = 0; t < t_eff; ++t) {
        for (std::size_t c = 0; c < pooled.dim(1); ++c) {
            double g = d_in(t, c);
            if (drop) g = cache.input_drop_mask[t * pooled.dim(1) + c] ? g / keep : 0.0;
            d_pooled(t, c) = g;
        }
    }
    return d_pooled;
}

AttentionResult attention_pool(const Tensor& hcat, const Tensor& attn_w,
                               const std::vector<std::uint8_t>& mask) {
    std::size_t len = hcat.dim(0);
    std::size_t width = hcat.dim(1);
    if (mask.size() != len) throw InvalidArgument("attention_pool: mask length mismatch");
    if (attn_w.size() != width) throw InvalidArgument("attention_pool: weight length mismatch");

    std::vector<std::size_t> live;
    std::vector<double> scores;
    for (std::size_t t = 0; t < len; ++t) {
        if (!mask[t]) continue;
        live.push_back(t);
        scores.push_back(dot(attn_w.data.data(), hcat.row(t), width));
    }
    if (live.empty()) throw InvalidArgument("attention_pool: all positions masked");

    std::vector<double> weights = softmax(scores);
    AttentionResult out;
    out.alphas = Tensor{len};
    out.context = Tensor{width};
    for (std::size_t i = 0; i < live.size(); ++i) {
        out.alphas(live[i]) = weights[i];
        axpy(weights[i], hcat.row(live[i]), out.context.data.data(), width);
    }
    return out;
}

void attention_pool_backward(const AttentionResult& cache, const Tensor& hcat,
                             const Tensor& attn_w, const std::vector<std::uint8_t>& mask,
                             const Tensor& d_context, Tensor& d_hcat, Tensor& d_attn_w) {
    std::size_t len = hcat.dim(0);
    std::size_t width = hcat.dim(1);

    std::vector<double> dalpha(len, 0.0);
    double weighted_sum = 0.0;
    for (std::size_t t = 0; t < len; ++t) {
        if (!mask[t]) continue;
        dalpha[t] = dot(d_context.data.data(), hcat.row(t), width);
        axpy(cache.alphas(t), d_context.data.data(), d_hcat.row(t), width);
        weighted_sum += cache.alphas(t) * dalpha[t];
    }
    for (std::size_t t = 0; t < len; ++t) {
        if (!mask[t]) continue;
        double du = cache.alphas(t) * (dalpha[t] - weighted_sum);
        if (du == 0.0) continue;
        axpy(du, hcat.row(t), d_attn_w.data.data(), width);
        axpy(du, attn_w.data.data(), d_hcat.row(t), width);
    }
}

AttentionResult mean_pool(const Tensor& hcat, const std::vector<std::uint8_t>& mask) {
    std::size_t len = hcat.dim(0);
    std::size_t width = hcat.dim(1);
    if (mask.size() != len) throw InvalidArgument("mean_pool: mask length mismatch");
    std::size_t live = 0;
    for (std::uint8_t m : mask) live += m ? 1 : 0;
    if (live == 0) throw InvalidArgument("mean_pool: all positions masked");

    AttentionResult out;
    out.alphas = Tensor{len};
    out.context = Tensor{width};
    double w = 1.0 / static_cast<double>(live);
    for (std::size_t t = 0; t < len; ++t) {
        if (!mask[t]) continue;
        out.alphas(t) = w;
        axpy(w, hcat.row(t), out.context.data.data(), width);
    }
    return out;
}

void mean_pool_backward(const Tensor& hcat, const std::vector<std::uint8_t>& mask,
                        const Tensor& d_context, Tensor& d_hcat) {
    std::size_t len = hcat.dim(0);
    std::size_t width = hcat.dim(1);
    std::size_t live = 0;
    for (std::uint8_t m : mask) live += m ? 1 : 0;
    double w = 1.0 / static_cast<double>(live);
    for (std::size_t t = 0; t < len; ++t) {
        if (!mask[t]) continue;
        axpy(w, d_context.data.data(), d_hcat.row(t), width);
    }
}

Tensor forward(const ModelParams& params, const ModelConfig& config,
               const EncodedExample& example, Mode mode, Rng* rng, ForwardCache* cache) {
    config.validate();
    ForwardCache local;
    ForwardCache& cx = cache ? *cache : local;
    cx.example = example;
    cx.mode = mode;

    cx.embed = embed_with_prompt(params, example, config);
    cx.conv = conv_relu_maxpool(cx.embed.eprime, cx.embed.mask, params, config);
    cx.lstm = bilstm(cx.conv.pooled, cx.conv.pooled_mask, params, config, mode, rng);
    cx.pool = config.use_attention ? attention_pool(cx.lstm.hcat, params.attn_w, cx.conv.pooled_mask)
                                   : mean_pool(cx.lstm.hcat, cx.conv.pooled_mask);

    cx.ln_out = layer_norm_forward(cx.pool.context.data, params.ln_gamma.data,
                                   params.ln_beta.data, config.ln_eps, cx.ln);

    cx.ctx_dropped = cx.ln_out;
    cx.ctx_drop_mask.clear();
    if (mode == Mode::train && config.keep_prob < 1.0) {
        if (!rng) throw InvalidArgument("forward: train-mode dropout needs an rng");
        cx.ctx_drop_mask.assign(cx.ctx_dropped.size(), 0);
        for (std::size_t i = 0; i < cx.ctx_dropped.size(); ++i) {
            bool kept = rng->next_double() < config.keep_prob;
            cx.ctx_drop_mask[i] = kept ? 1 : 0;
            cx.ctx_dropped[i] = kept ? cx.ctx_dropped[i] / config.keep_prob : 0.0;
        }
    }

    cx.logits = Tensor{config.n_classes};
    for (std::size_t c = 0; c < config.n_classes; ++c) {
        cx.logits(c) = params.fc_b(c) +
                       dot(params.fc_w.row(c), cx.ctx_dropped.data(), cx.ctx_dropped.size());
    }
    require_finite(cx.logits, "forward logits");
    return cx.logits;
}

ModelGrads backward(const ForwardCache& cache, const ModelParams& params,
                    const ModelConfig& config, const Tensor& dlogits) {
    ModelGrads grads = zero_grads(config, params.embedding.dim(0));
    backward_into(cache, params, config, dlogits, grads);
    return grads;
}

void backward_into(const ForwardCache& cache, const ModelParams& params,
                   const ModelConfig& config, const Tensor& dlogits, ModelGrads& grads) {
    if (dlogits.size() != config.n_classes || cache.logits.size() != config.n_classes ||
        cache.example.ids.size() != config.seq_len ||
        cache.lstm.hcat.dim(1) != 2 * config.d_lstm) {
        throw InvalidState("backward: cache does not match config");
    }
    std::size_t d2 = 2 * config.d_lstm;

    // classifier
    std::vector<double> d_ctx_dropped(d2, 0.0);
    for (std::size_t c = 0; c < config.n_classes; ++c) {
        double g = dlogits(c);
        grads.fc_b(c) += g;
        if (g == 0.0) continue;
        axpy(g, cache.ctx_dropped.data(), grads.fc_w.row(c), d2);
        axpy(g, params.fc_w.row(c), d_ctx_dropped.data(), d2);
    }

    // context dropout
    std::vector<double> d_ln_out = d_ctx_dropped;
    if (!cache.ctx_drop_mask.empty()) {
        for (std::size_t i = 0; i < d_ln_out.size(); ++i) {
            d_ln_out[i] = cache.ctx_drop_mask[i] ? d_ln_out[i] / config.keep_prob : 0.0;
        }
    }

    // layer norm
    std::vector<double> d_context;
    layer_norm_backward(d_ln_out, params.ln_gamma.data, cache.ln, d_context,
                        grads.ln_gamma.data.data(), grads.ln_beta.data.data());
    Tensor d_context_t = Tensor::of(d_context);

    // pooling
    Tensor d_hcat{cache.lstm.hcat.dim(0), d2};
    if (config.use_attention) {
        attention_pool_backward(cache.pool, cache.lstm.hcat, params.attn_w,
                                cache.conv.pooled_mask, d_context_t, d_hcat, grads.attn_w);
    } else {
        mean_pool_backward(cache.lstm.hcat, cache.conv.pooled_mask, d_context_t, d_hcat);
    }

    // BiLSTM
    Tensor d_pooled = bilstm_backward(cache.lstm, cache.conv.pooled, params, config, d_hcat,
                                      grads.lstm_fwd, grads.lstm_bwd);

    // conv + pool
    Tensor d_eprime = conv_relu_maxpool_backward(cache.conv, cache.embed.eprime, params, config,
                                                 d_pooled, grads.conv_w, grads.conv_b);

    // prompt and embedding rows (PAD row stays frozen at zero gradient)
    std::size_t m = config.prompt_len;
    for (std::size_t j = 0; j < m; ++j) {
        axpy(1.0, d_eprime.row(j), grads.prompt.row(j), config.d_emb);
    }
    for (std::size_t i = 0; i < static_cast<std::size_t>(cache.example.true_length); ++i) {
        int id = cache.example.ids[i];
        if (id == kPadId) continue;
        axpy(1.0, d_eprime.row(m + i), grads.embedding.row(static_cast<std::size_t>(id)),
             config.d_emb);
    }
}

}  // namespace fslhate
