#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fslhate/augment.hpp"
#include "fslhate/model.hpp"
#include "fslhate/tensor.hpp"
#include "fslhate/textpipe.hpp"

namespace fslhate {

struct TrainConfig {
    std::size_t batch_size = 32;
    std::size_t epochs = 3;
    double lr_init = 5e-4;
    double lr_min = 1e-5;
    double weight_decay = 1e-5;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double adam_eps = 1e-8;
    double clip_norm = 1.0;
    double augment_p = 0.1;
    bool augment_enabled = true;
    bool class_weighting = true;  // inverse-frequency class weights
    std::vector<std::uint64_t> seeds = {0, 1, 2};

    void validate() const;
};

/// Inverse-frequency weights w_c = N / (C * max(1, N_c)); averages to 1 on
/// balanced counts. Zero-count classes are weighted as if they had count 1.
std::vector<double> class_weights(const std::vector<long long>& label_counts);

struct CeResult {
    double loss = 0.0;
    Tensor dlogits;
};

/// Weighted cross entropy: loss = -w_label * log softmax(logits)[label],
/// dlogits = w_label * (softmax(logits) - onehot(label)).
CeResult weighted_ce(const Tensor& logits, int label, const std::vector<double>& weights);

/// Per-step cosine annealing from lr_init down to lr_min; steps past
/// total_steps clamp to lr_min.
double cosine_lr(std::size_t step, std::size_t total_steps, double lr_init, double lr_min);

/// Joint L2 clipping across every tensor; returns the pre-clip global norm.
double clip_global_norm(const std::vector<Tensor*>& grads, double clip_norm);
double clip_global_norm(ModelGrads& grads, double clip_norm);

struct OptState {
    ModelParams m;  // first moments, parameter-shaped
    ModelParams v;  // second moments
    long long step = 0;
};

OptState init_opt_state(const ModelConfig& config, std::size_t vocab_size);

/// Decoupled-decay Adam. The PAD embedding row (and its moments) is never
/// touched.
void adamw_step(ModelParams& params, const ModelGrads& grads, OptState& state, double lr,
                const TrainConfig& config);

struct TrainExample {
    std::vector<std::string> tokens;
    int label = 0;
};

struct TrainTrace {
    std::vector<double> epoch_loss;  // mean loss per epoch
    double lr_last = 0.0;
    std::size_t steps = 0;
};

/// The epoch loop: shuffle, re-augment (training data only), batch,
/// forward/backward, clip, AdamW with per-step cosine annealing. Bitwise
/// deterministic for fixed (seed, data, configs) regardless of worker count.
TrainTrace train_loop(ModelParams& params, const std::vector<TrainExample>& data,
                      const Vocabulary& vocab, const SynonymLexicon* lexicon,
                      const ModelConfig& mcfg, const TrainConfig& tcfg, std::uint64_t seed,
                      std::ostream* log = nullptr);

// Parallelism cap shared by training and evaluation (FSLHATE_THREADS,
// default: logical CPUs).
std::size_t worker_count();

}  // namespace fslhate
