#include "fslhate/train.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <ostream>
#include <thread>

#include "fslhate/errors.hpp"
#include "fslhate/parallel.hpp"

namespace fslhate {

namespace {

// Independent seed spaces for shuffling, augmentation and dropout so the
// draw streams never overlap across purposes.
std::uint64_t sub_seed(std::uint64_t master, std::uint64_t tag) {
    std::uint64_t x = master ^ (0xd6e8feb86659fd93ULL * (tag + 1));
    return splitmix64(x);
}

constexpr std::uint64_t kShuffleTag = 1;
constexpr std::uint64_t kAugmentTag = 2;
constexpr std::uint64_t kDropoutTag = 3;

std::vector<Tensor*> tensor_list(ModelGrads& grads) {
    std::vector<Tensor*> out;
    for_each_tensor(grads, [&](const char*, Tensor& t) { out.push_back(&t); });
    return out;
}

void zero_all(ModelGrads& grads) {
    for_each_tensor(grads, [](const char*, Tensor& t) { t.zero(); });
}

}  // namespace

void TrainConfig::validate() const {
    if (batch_size < 1) throw InvalidArgument("TrainConfig: batch_size must be >= 1");
    if (lr_min > lr_init) throw InvalidArgument("TrainConfig: lr_min must not exceed lr_init");
    if (clip_norm <= 0.0) throw InvalidArgument("TrainConfig: clip_norm must be positive");
    if (!(beta1 >= 0.0 && beta1 < 1.0 && beta2 >= 0.0 && beta2 < 1.0)) {
        throw InvalidArgument("TrainConfig: betas must lie in [0, 1)");
    }
    if (adam_eps <= 0.0) throw InvalidArgument("TrainConfig: adam_eps must be positive");
    if (augment_p < 0.0 || augment_p > 1.0) {
        throw InvalidArgument("TrainConfig: augment_p must lie in [0, 1]");
    }
    if (seeds.empty()) throw InvalidArgument("TrainConfig: at least one seed required");
}

std::vector<double> class_weights(const std::vector<long long>& label_counts) {
    if (label_counts.empty()) throw InvalidArgument("class_weights: no classes");
    long long total = 0;
    for (long long c : label_counts) {
        if (c < 0) throw InvalidArgument("class_weights: negative count");
        total += c;
    }
    if (total == 0) throw InvalidArgument("class_weights: all counts zero");
    double n = static_cast<double>(total);
    double c_classes = static_cast<double>(label_counts.size());
    std::vector<double> weights(label_counts.size());
    for (std::size_t i = 0; i < label_counts.size(); ++i) {
        weights[i] = n / (c_classes * static_cast<double>(std::max<long long>(1, label_counts[i])));
    }
    return weights;
}

CeResult weighted_ce(const Tensor& logits, int label, const std::vector<double>& weights) {
    std::size_t n = logits.size();
    if (label < 0 || static_cast<std::size_t>(label) >= n) {
        throw InvalidArgument("weighted_ce: label out of range");
    }
    if (weights.size() != n) throw InvalidArgument("weighted_ce: weight vector arity mismatch");

    // log-sum-exp form keeps the loss finite for any finite logits
    double mx = *std::max_element(logits.data.begin(), logits.data.end());
    double sum = 0.0;
    for (double v : logits.data) sum += std::exp(v - mx);
    double lse = mx + std::log(sum);
    double w = weights[static_cast<std::size_t>(label)];

    CeResult out;
    out.loss = w * (lse - logits(static_cast<std::size_t>(label)));
    out.dlogits = Tensor{n};
    for (std::size_t i = 0; i < n; ++i) {
        double p = std::exp(logits(i) - lse);
        out.dlogits(i) = w * (p - (static_cast<int>(i) == label ? 1.0 : 0.0));
    }
    return out;
}

double cosine_lr(std::size_t step, std::size_t total_steps, double lr_init, double lr_min) {
    if (total_steps < 1) throw InvalidArgument("cosine_lr: total_steps must be >= 1");
    if (step == 0) return lr_init;              // exact endpoints
    if (step >= total_steps) return lr_min;     // steps past the schedule clamp
    double phase = static_cast<double>(step) / static_cast<double>(total_steps);
    return lr_min + 0.5 * (lr_init - lr_min) * (1.0 + std::cos(std::numbers::pi * phase));
}

double clip_global_norm(const std::vector<Tensor*>& grads, double clip_norm) {
    if (clip_norm <= 0.0) throw InvalidArgument("clip_global_norm: clip_norm must be positive");
    double sum_sq = 0.0;
    for (const Tensor* t : grads) {
        for (double v : t->data) sum_sq += v * v;
    }
    if (!std::isfinite(sum_sq)) throw NumericalFailure("clip_global_norm: non-finite gradient");
    double norm = std::sqrt(sum_sq);
    if (norm > clip_norm) {
        double scale = clip_norm / norm;
        for (Tensor* t : grads) {
            for (double& v : t->data) v *= scale;
        }
    }
    return norm;
}

double clip_global_norm(ModelGrads& grads, double clip_norm) {
    auto list = tensor_list(grads);
    return clip_global_norm(list, clip_norm);
}

OptState init_opt_state(const ModelConfig& config, std::size_t vocab_size) {
    OptState state;
    state.m = zero_grads(config, vocab_size);
    state.v = zero_grads(config, vocab_size);
    state.step = 0;
    return state;
}

void adamw_step(ModelParams& params, const ModelGrads& grads, OptState& state, double lr,
                const TrainConfig& config) {
    if (lr < 0.0) throw InvalidArgument("adamw_step: negative learning rate");
    state.step += 1;
    double t = static_cast<double>(state.step);
    double bc1 = 1.0 - std::pow(config.beta1, t);
    double bc2 = 1.0 - std::pow(config.beta2, t);

    struct Slot {
        Tensor* p;
        const Tensor* g;
        Tensor* m;
        Tensor* v;
        bool is_embedding;
    };
    std::vector<Slot> slots;
    {
        std::vector<Tensor*> ps, ms, vs;
        std::vector<const Tensor*> gs;
        std::vector<bool> emb;
        for_each_tensor(params, [&](const char* name, Tensor& tns) {
            ps.push_back(&tns);
            emb.push_back(std::string_view(name) == "embedding");
        });
        for_each_tensor(grads, [&](const char*, const Tensor& tns) { gs.push_back(&tns); });
        for_each_tensor(state.m, [&](const char*, Tensor& tns) { ms.push_back(&tns); });
        for_each_tensor(state.v, [&](const char*, Tensor& tns) { vs.push_back(&tns); });
        for (std::size_t i = 0; i < ps.size(); ++i) {
            slots.push_back({ps[i], gs[i], ms[i], vs[i], emb[i]});
        }
    }

    for (Slot& s : slots) {
        if (s.p->size() != s.g->size()) throw InvalidArgument("adamw_step: shape mismatch");
        // PAD embedding row (row 0) frozen: skip its elements and moments.
        std::size_t begin = s.is_embedding ? s.p->row_stride() : 0;
        for (std::size_t i = begin; i < s.p->size(); ++i) {
            double g = s.g->data[i];
            double m = config.beta1 * s.m->data[i] + (1.0 - config.beta1) * g;
            double v = config.beta2 * s.v->data[i] + (1.0 - config.beta2) * g * g;
            s.m->data[i] = m;
            s.v->data[i] = v;
            double mhat = m / bc1;
            double vhat = v / bc2;
            double theta = s.p->data[i];
            s.p->data[i] = theta - lr * mhat / (std::sqrt(vhat) + config.adam_eps) -
                           lr * config.weight_decay * theta;
        }
    }
}

std::size_t worker_count() {
    static std::size_t cached = [] {
        if (const char* env = std::getenv("FSLHATE_THREADS")) {
            long v = std::strtol(env, nullptr, 10);
            if (v >= 1) return static_cast<std::size_t>(v);
        }
        unsigned hw = std::thread::hardware_concurrency();
        return static_cast<std::size_t>(hw >= 1 ? hw : 1);
    }();
    return cached;
}

TrainTrace train_loop(ModelParams& params, const std::vector<TrainExample>& data,
                      const Vocabulary& vocab, const SynonymLexicon* lexicon,
                      const ModelConfig& mcfg, const TrainConfig& tcfg, std::uint64_t seed,
                      std::ostream* log) {
    mcfg.validate();
    tcfg.validate();
    if (data.empty()) throw InvalidArgument("train_loop: empty training set");

    std::size_t n = data.size();
    std::size_t batches_per_epoch = (n + tcfg.batch_size - 1) / tcfg.batch_size;
    std::size_t total_steps = tcfg.epochs * batches_per_epoch;

    std::vector<long long> counts(mcfg.n_classes, 0);
    for (const TrainExample& ex : data) {
        if (ex.label < 0 || static_cast<std::size_t>(ex.label) >= mcfg.n_classes) {
            throw InvalidArgument("train_loop: label out of range");
        }
        ++counts[static_cast<std::size_t>(ex.label)];
    }
    std::vector<double> weights = tcfg.class_weighting ? class_weights(counts)
                                                       : std::vector<double>(mcfg.n_classes, 1.0);

    bool do_augment = tcfg.augment_enabled && lexicon != nullptr && tcfg.augment_p > 0.0;
    std::uint64_t shuffle_base = sub_seed(seed, kShuffleTag);
    std::uint64_t augment_base = sub_seed(seed, kAugmentTag);
    std::uint64_t dropout_base = sub_seed(seed, kDropoutTag);

    std::size_t workers = std::min(worker_count(), tcfg.batch_size);
    std::vector<ModelGrads> buffers;
    for (std::size_t w = 0; w < workers; ++w) buffers.push_back(zero_grads(mcfg, vocab.size()));
    ModelGrads batch_grads = zero_grads(mcfg, vocab.size());
    OptState opt = init_opt_state(mcfg, vocab.size());

    TrainTrace trace;
    std::vector<std::size_t> order(n);
    std::vector<double> losses(n);
    std::size_t step = 0;
    for (std::size_t epoch = 0; epoch < tcfg.epochs; ++epoch) {
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        Rng shuffle_rng(shuffle_base, epoch);
        for (std::size_t i = n - 1; i > 0; --i) {
            std::size_t j = static_cast<std::size_t>(shuffle_rng.below(i + 1));
            std::swap(order[i], order[j]);
        }

        for (std::size_t start = 0; start < n; start += tcfg.batch_size) {
            std::size_t bsize = std::min(tcfg.batch_size, n - start);
            zero_all(batch_grads);
            for (std::size_t wave = 0; wave < bsize; wave += workers) {
                std::size_t wn = std::min(workers, bsize - wave);
                parallel_for(wn, wn, [&](std::size_t slot) {
                    std::size_t orig = order[start + wave + slot];
                    zero_all(buffers[slot]);
                    const TrainExample& ex = data[orig];
                    EncodedExample enc;
                    if (do_augment) {
                        Rng aug_rng(augment_base, epoch * n + orig);
                        AugmentConfig acfg{tcfg.augment_p, seed};
                        enc = encode(augment(ex.tokens, *lexicon, acfg, aug_rng), vocab,
                                     mcfg.seq_len);
                    } else {
                        enc = encode(ex.tokens, vocab, mcfg.seq_len);
                    }
                    enc.label = ex.label;
                    Rng drop_rng(dropout_base, epoch * n + orig);
                    ForwardCache cache;
                    Tensor logits = forward(params, mcfg, enc, Mode::train, &drop_rng, &cache);
                    CeResult ce = weighted_ce(logits, enc.label, weights);
                    losses[orig] = ce.loss;
                    backward_into(cache, params, mcfg, ce.dlogits, buffers[slot]);
                });
                // Reduce strictly in example order so the result is
                // independent of the worker count.
                for (std::size_t slot = 0; slot < wn; ++slot) {
                    accumulate_grads(batch_grads, buffers[slot], 1.0 / static_cast<double>(bsize));
                }
            }
            try {
                clip_global_norm(batch_grads, tcfg.clip_norm);
                double lr = cosine_lr(step, total_steps, tcfg.lr_init, tcfg.lr_min);
                adamw_step(params, batch_grads, opt, lr, tcfg);
                trace.lr_last = lr;
            } catch (const NumericalFailure& e) {
                throw NumericalFailure(std::string(e.what()) + " (optimizer step " +
                                       std::to_string(step) + ")");
            }
            ++step;
        }

        double mean_loss = 0.0;
        for (double l : losses) mean_loss += l;
        mean_loss /= static_cast<double>(n);
        trace.epoch_loss.push_back(mean_loss);
        if (log) {
            (*log) << "epoch=" << epoch << " loss=" << mean_loss << " lr_last=" << trace.lr_last
                   << '\n';
            log->flush();
        }
    }
    trace.steps = step;
    return trace;
}

}  // namespace fslhate
