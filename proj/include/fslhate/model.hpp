#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fslhate/numerics.hpp"
#include "fslhate/rng.hpp"
#include "fslhate/tensor.hpp"
#include "fslhate/textpipe.hpp"

namespace fslhate {

struct ModelConfig {
    std::size_t d_emb = 300;
    std::size_t prompt_len = 10;  // m; 0 disables the prompt block
    std::size_t d_conv = 128;
    std::size_t kernel = 3;  // odd; 'same' zero padding
    std::size_t pool = 2;    // width and stride of the non-overlapping max pool
    std::size_t d_lstm = 256;
    std::size_t n_classes = kNumClasses;
    double keep_prob = 0.7;          // dropout keep probability on the context vector
    double lstm_input_dropout = 0.2; // dropout rate on the BiLSTM inputs
    std::size_t seq_len = kDefaultSeqLen;
    double ln_eps = 1e-5;
    bool use_attention = true;  // false: masked mean pooling instead

    std::size_t input_len() const { return prompt_len + seq_len; }
    std::size_t pooled_len() const { return (input_len() + pool - 1) / pool; }
    void validate() const;
};

/// Ablation switch: full keeps the config, no_prompt sets prompt_len to 0,
/// no_attention swaps attention pooling for masked mean pooling.
/// (no_augmentation is a training switch, not a model change.)
ModelConfig ablation_variant(const ModelConfig& config, const std::string& variant);

struct LstmWeights {
    Tensor wx;  // (4*d_lstm, d_in), gate row blocks in i, f, g, o order
    Tensor wh;  // (4*d_lstm, d_lstm)
    Tensor b;   // (4*d_lstm)
};

struct ModelParams {
    Tensor embedding;  // (vocab, d_emb); PAD row frozen at zero
    Tensor prompt;     // (m, d_emb)
    Tensor conv_w;     // (d_conv, k, d_emb)
    Tensor conv_b;     // (d_conv)
    LstmWeights lstm_fwd;
    LstmWeights lstm_bwd;
    Tensor attn_w;    // (2*d_lstm)
    Tensor ln_gamma;  // (2*d_lstm)
    Tensor ln_beta;   // (2*d_lstm)
    Tensor fc_w;      // (n_classes, 2*d_lstm)
    Tensor fc_b;      // (n_classes)
};

// Gradients mirror the parameter layout exactly.
using ModelGrads = ModelParams;

// Canonical tensor order; also the checkpoint array order.
template <class Params, class Fn>
void for_each_tensor(Params& params, Fn&& fn) {
    fn("embedding", params.embedding);
    fn("prompt", params.prompt);
    fn("conv.w", params.conv_w);
    fn("conv.b", params.conv_b);
    fn("lstm.fwd.wx", params.lstm_fwd.wx);
    fn("lstm.fwd.wh", params.lstm_fwd.wh);
    fn("lstm.fwd.b", params.lstm_fwd.b);
    fn("lstm.bwd.wx", params.lstm_bwd.wx);
    fn("lstm.bwd.wh", params.lstm_bwd.wh);
    fn("lstm.bwd.b", params.lstm_bwd.b);
    fn("attn.w", params.attn_w);
    fn("ln.gamma", params.ln_gamma);
    fn("ln.beta", params.ln_beta);
    fn("fc.w", params.fc_w);
    fn("fc.b", params.fc_b);
}

/// Deterministic initialization: embeddings/prompts uniform(-0.05, 0.05),
/// conv/linear Glorot-uniform, LSTM recurrent weights orthogonal,
/// forget-gate biases 1, PAD embedding row zeroed (and kept frozen by the
/// optimizer and backward pass).
ModelParams init_params(const ModelConfig& config, std::size_t vocab_size, Rng& rng);

ModelGrads zero_grads(const ModelConfig& config, std::size_t vocab_size);

void accumulate_grads(ModelGrads& acc, const ModelGrads& delta, double scale);

enum class Mode { train, eval };

struct EmbedResult {
    Tensor eprime;              // (m + seq_len, d_emb)
    std::vector<std::uint8_t> mask;  // true on prompt rows and real-token rows
};

EmbedResult embed_with_prompt(const ModelParams& params, const EncodedExample& example,
                              const ModelConfig& config);

struct ConvPoolResult {
    Tensor pre;                      // (L, d_conv) pre-activation
    Tensor pooled;                   // (T, d_conv) post ReLU + max pool
    std::vector<int> argmax;         // (T * d_conv) winning input position per pooled unit
    std::vector<std::uint8_t> pooled_mask;  // (T), OR of the window's input mask
};

ConvPoolResult conv_relu_maxpool(const Tensor& eprime, const std::vector<std::uint8_t>& mask,
                                 const ModelParams& params, const ModelConfig& config);

// Accumulates into d_conv_w / d_conv_b and returns d_eprime.
Tensor conv_relu_maxpool_backward(const ConvPoolResult& cache, const Tensor& eprime,
                                  const ModelParams& params, const ModelConfig& config,
                                  const Tensor& d_pooled, Tensor& d_conv_w, Tensor& d_conv_b);

struct LstmDirCache {
    Tensor gi, gf, gg, go;  // (T_eff, d) post-nonlinearity gate values
    Tensor c, h;            // (T_eff, d)
};

struct BilstmResult {
    Tensor hcat;  // (T, 2*d_lstm); rows beyond the unmasked prefix are zero
    std::size_t t_eff = 0;
    Tensor lstm_in;  // (T_eff, d_conv) inputs actually consumed (post dropout)
    std::vector<std::uint8_t> input_drop_mask;  // empty when dropout is off
    LstmDirCache fwd, bwd;
};

/// Runs both LSTM directions over the unmasked prefix of the pooled
/// sequence (the mask is always prefix-true by construction, so masked
/// positions can never bleed into real ones through the recurrence).
BilstmResult bilstm(const Tensor& pooled, const std::vector<std::uint8_t>& pooled_mask,
                    const ModelParams& params, const ModelConfig& config, Mode mode, Rng* rng);

// Accumulates LSTM weight gradients and returns d_pooled (zero on masked rows).
Tensor bilstm_backward(const BilstmResult& cache, const Tensor& pooled,
                       const ModelParams& params, const ModelConfig& config,
                       const Tensor& d_hcat, LstmWeights& d_fwd, LstmWeights& d_bwd);

struct AttentionResult {
    Tensor alphas;   // (T); exactly 0 at masked positions
    Tensor context;  // (2*d_lstm)
};

AttentionResult attention_pool(const Tensor& hcat, const Tensor& attn_w,
                               const std::vector<std::uint8_t>& mask);

void attention_pool_backward(const AttentionResult& cache, const Tensor& hcat,
                             const Tensor& attn_w, const std::vector<std::uint8_t>& mask,
                             const Tensor& d_context, Tensor& d_hcat, Tensor& d_attn_w);

// Arithmetic mean over unmasked rows (the no_attention pooling path).
AttentionResult mean_pool(const Tensor& hcat, const std::vector<std::uint8_t>& mask);

void mean_pool_backward(const Tensor& hcat, const std::vector<std::uint8_t>& mask,
                        const Tensor& d_context, Tensor& d_hcat);

struct ForwardCache {
    EncodedExample example;
    Mode mode = Mode::eval;
    EmbedResult embed;
    ConvPoolResult conv;
    BilstmResult lstm;
    AttentionResult pool;
    LayerNormCache ln;
    std::vector<double> ln_out;
    std::vector<std::uint8_t> ctx_drop_mask;  // empty when dropout is off
    std::vector<double> ctx_dropped;
    Tensor logits;
};

/// Full pipeline: embed+prompt -> conv/ReLU/maxpool -> BiLSTM -> attention
/// (or mean) pooling -> layer norm -> dropout (train only) -> linear head.
/// Eval mode is deterministic and ignores rng.
Tensor forward(const ModelParams& params, const ModelConfig& config,
               const EncodedExample& example, Mode mode, Rng* rng, ForwardCache* cache);

ModelGrads backward(const ForwardCache& cache, const ModelParams& params,
                    const ModelConfig& config, const Tensor& dlogits);

// Accumulating variant used by the batch loop (grads += backward(...)).
void backward_into(const ForwardCache& cache, const ModelParams& params,
                   const ModelConfig& config, const Tensor& dlogits, ModelGrads& grads);

}  // namespace fslhate
