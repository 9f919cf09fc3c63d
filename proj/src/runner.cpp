#include "fslhate/runner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "fslhate/checkpoint.hpp"
#include "fslhate/errors.hpp"
#include "fslhate/parallel.hpp"

namespace fslhate {

namespace {

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string());
    out << content;
    if (!out) throw IoError("write failed for " + path.string());
}

// Echoes training-log lines to stdout while writing the run-directory copy.
class TeeStream {
   public:
    explicit TeeStream(const std::filesystem::path& path) : file_(path, std::ios::binary) {
        if (!file_) throw IoError("cannot open log " + path.string());
    }
    std::ofstream& file() { return file_; }

   private:
    std::ofstream file_;
};

std::vector<RawExample> drop_empty(std::vector<RawExample> examples, std::size_t* dropped) {
    std::vector<RawExample> out;
    out.reserve(examples.size());
    std::size_t skipped = 0;
    for (RawExample& ex : examples) {
        ex.tokens = tokens_of(ex);
        if (ex.tokens.empty()) {
            ++skipped;
            continue;
        }
        out.push_back(std::move(ex));
    }
    if (dropped) *dropped = skipped;
    return out;
}

std::vector<TrainExample> to_train_examples(const std::vector<RawExample>& examples) {
    std::vector<TrainExample> out;
    out.reserve(examples.size());
    for (const RawExample& ex : examples) out.push_back({ex.tokens, ex.label});
    return out;
}

struct VariantParts {
    std::string model_variant;
    bool augment = true;
};

// The two augmentation-off variants are training switches over a model
// variant; everything else maps straight through to ablation_variant.
VariantParts variant_parts(const std::string& variant) {
    if (variant == "no_augmentation") return {"full", false};
    if (variant == "no_prompt_and_augmentation") return {"no_prompt", false};
    return {variant, true};
}

struct PreparedData {
    std::vector<RawExample> pool;  // merged train+val (optionally few-shot sampled)
    std::vector<RawExample> test;
    Vocabulary vocab;
    SynonymLexicon lexicon;
    bool has_lexicon = false;
    std::size_t dropped_empty = 0;
};

PreparedData prepare(const RunConfig& cfg, bool want_augmentation) {
    if (cfg.dataset.empty()) throw InvalidArgument("config: dataset path is required");
    PreparedData prep;

    std::vector<RawExample> all = load_dataset(cfg.dataset_format, cfg.dataset);
    all = drop_empty(std::move(all), &prep.dropped_empty);
    if (all.empty()) throw InvalidArgument("dataset: no usable examples");

    Splits splits = split(all, cfg.split);
    prep.pool = splits.train;
    prep.pool.insert(prep.pool.end(), splits.val.begin(), splits.val.end());
    prep.test = std::move(splits.test);
    if (cfg.k_per_class > 0) {
        prep.pool = sample_few_shot(prep.pool, cfg.k_per_class, cfg.split.seed);
    }
    if (prep.pool.empty()) throw InvalidArgument("dataset: empty training pool");

    if (want_augmentation) {
        if (cfg.lexicon.empty()) {
            throw InvalidArgument("config: augmentation is on but no lexicon path is set");
        }
        prep.lexicon = load_lexicon(cfg.lexicon);
        prep.has_lexicon = true;
    }

    std::vector<std::vector<std::string>> corpus;
    corpus.reserve(prep.pool.size());
    for (const RawExample& ex : prep.pool) corpus.push_back(ex.tokens);
    prep.vocab = build_pipeline_vocab(corpus, cfg.vocab_size,
                                      prep.has_lexicon ? &prep.lexicon : nullptr,
                                      cfg.train.augment_p);
    return prep;
}

struct SeedRun {
    ModelParams params;
    MetricsReport metrics;
    TrainTrace trace;
};

SeedRun train_one_seed(const PreparedData& prep, const ModelConfig& mcfg, const TrainConfig& tcfg,
                       std::uint64_t seed, std::ostream* log) {
    SeedRun run;
    Rng init_rng(seed);
    run.params = init_params(mcfg, prep.vocab.size(), init_rng);
    std::vector<TrainExample> pool = to_train_examples(prep.pool);
    run.trace = train_loop(run.params, pool, prep.vocab,
                           prep.has_lexicon ? &prep.lexicon : nullptr, mcfg, tcfg, seed, log);
    run.metrics = evaluate_examples(run.params, mcfg, prep.vocab, prep.test);
    return run;
}

void write_metrics(const std::filesystem::path& base, const MetricsReport& report) {
    write_text_file(base.string() + ".txt", metrics_to_text(report));
    write_text_file(base.string() + ".json", metrics_to_json(report));
}

}  // namespace

std::vector<RawExample> load_dataset(const std::string& format,
                                     const std::filesystem::path& path) {
    if (format == "hatexplain") return load_hatexplain(path).examples;
    if (format == "hsol") return load_hsol(path);
    if (format == "tsv") return load_tsv(path);
    throw InvalidArgument("load_dataset: unknown format '" + format + "'");
}

Vocabulary build_pipeline_vocab(const std::vector<std::vector<std::string>>& corpus,
                                std::size_t max_size, const SynonymLexicon* lexicon, double p) {
    std::map<std::string, long long> counts;
    for (const auto& tokens : corpus) {
        for (const auto& t : tokens) ++counts[t];
    }
    if (lexicon && p > 0.0) {
        // Tokens augmentation can inject get their expected frequency mass;
        // without this every replacement would encode to UNK.
        std::map<std::string, long long> injected;
        for (const auto& [token, count] : counts) {
            auto it = lexicon->entries.find(token);
            if (it == lexicon->entries.end()) continue;
            long long share = std::max<long long>(
                1, std::llround(p * static_cast<double>(count) /
                                static_cast<double>(it->second.size())));
            for (const std::string& syn : it->second) injected[syn] += share;
        }
        for (const auto& [token, count] : injected) counts[token] += count;
    }
    return build_vocab_from_counts(counts, max_size);
}

MetricsReport evaluate_examples(const ModelParams& params, const ModelConfig& config,
                                const Vocabulary& vocab, const std::vector<RawExample>& examples) {
    if (examples.empty()) throw InvalidArgument("evaluate: empty dataset");
    std::vector<int> preds(examples.size());
    std::vector<int> labels(examples.size());
    parallel_for(examples.size(), worker_count(), [&](std::size_t i) {
        EncodedExample enc = encode(tokens_of(examples[i]), vocab, config.seq_len);
        enc.label = examples[i].label;
        Tensor logits = forward(params, config, enc, Mode::eval, nullptr, nullptr);
        std::size_t best = 0;
        for (std::size_t c = 1; c < logits.size(); ++c) {
            if (logits(c) > logits(best)) best = c;
        }
        preds[i] = static_cast<int>(best);
        labels[i] = examples[i].label;
    });
    return prf(confusion(preds, labels, config.n_classes));
}

TrainOutcome run_training(const RunConfig& cfg) {
    std::filesystem::create_directories(cfg.out);
    std::filesystem::remove(cfg.out / "FAILED");
    try {
        VariantParts parts = variant_parts(cfg.variant);
        ModelConfig mcfg = ablation_variant(cfg.model, parts.model_variant);
        TrainConfig tcfg = cfg.train;
        tcfg.augment_enabled = tcfg.augment_enabled && parts.augment;
        bool want_aug = tcfg.augment_enabled && tcfg.augment_p > 0.0;

        PreparedData prep = prepare(cfg, want_aug);
        if (prep.dropped_empty > 0) {
            std::cout << "note: dropped " << prep.dropped_empty << " empty-token examples\n";
        }

        write_text_file(cfg.out / "config_effective.txt", render_config(cfg));
        save_vocab(prep.vocab, cfg.out / "vocab.txt");
        save_tsv(prep.test, cfg.out / "test.tsv");
        std::uint64_t vocab_hash = fnv1a64_file(cfg.out / "vocab.txt");

        TrainOutcome outcome;
        outcome.run_dir = cfg.out;
        for (std::uint64_t seed : tcfg.seeds) {
            std::filesystem::path seed_dir = cfg.out / ("seed" + std::to_string(seed));
            std::filesystem::create_directories(seed_dir);
            TeeStream log(seed_dir / "train.log");
            if (!tcfg.augment_enabled) {
                log.file() << "augmentation=disabled\n";
                std::cout << "augmentation=disabled\n";
            }
            std::cout << "[seed " << seed << "]\n";

            // train_loop writes epoch lines into the file; echo them after.
            SeedRun run = train_one_seed(prep, mcfg, tcfg, seed, &log.file());
            for (std::size_t e = 0; e < run.trace.epoch_loss.size(); ++e) {
                std::cout << "epoch=" << e << " loss=" << run.trace.epoch_loss[e]
                          << " lr_last=" << run.trace.lr_last << '\n';
            }

            save_checkpoint(seed_dir / "checkpoint.bin", run.params, mcfg, vocab_hash);
            std::filesystem::copy_file(cfg.out / "vocab.txt", seed_dir / "vocab.txt",
                                       std::filesystem::copy_options::overwrite_existing);
            write_metrics(cfg.out / ("metrics_seed" + std::to_string(seed)), run.metrics);
            outcome.per_seed.push_back(std::move(run.metrics));
        }
        outcome.mean = aggregate_seeds(outcome.per_seed);
        write_metrics(cfg.out / "metrics_mean", outcome.mean);
        return outcome;
    } catch (...) {
        write_text_file(cfg.out / "FAILED", "run failed; artifacts may be incomplete\n");
        throw;
    }
}

MetricsReport run_eval(const RunConfig& cfg) {
    if (cfg.checkpoint.empty()) throw InvalidArgument("config: eval needs a checkpoint path");
    if (cfg.dataset.empty()) throw InvalidArgument("config: dataset path is required");

    Checkpoint ckpt = load_checkpoint(cfg.checkpoint);
    std::filesystem::path vocab_path = cfg.checkpoint.parent_path() / "vocab.txt";
    if (!std::filesystem::exists(vocab_path)) {
        throw ArtifactMismatch("eval: no vocab.txt alongside " + cfg.checkpoint.string());
    }
    if (fnv1a64_file(vocab_path) != ckpt.vocab_hash) {
        throw ArtifactMismatch("eval: vocabulary hash does not match the checkpoint manifest");
    }
    Vocabulary vocab = load_vocab(vocab_path);

    std::vector<RawExample> examples = load_dataset(cfg.dataset_format, cfg.dataset);
    std::size_t dropped = 0;
    examples = drop_empty(std::move(examples), &dropped);
    if (examples.empty()) throw InvalidArgument("eval: empty dataset");

    MetricsReport report = evaluate_examples(ckpt.params, ckpt.config, vocab, examples);
    std::cout << metrics_to_text(report);
    std::filesystem::path base = cfg.checkpoint.parent_path() / "metrics_eval";
    write_metrics(base, report);
    return report;
}

AblationOutcome run_ablation(const RunConfig& cfg) {
    std::filesystem::create_directories(cfg.out);
    std::filesystem::remove(cfg.out / "FAILED");
    try {
        // Shared vocabulary and splits; the full config decides the synonym
        // extension so every variant sees identical data and ids.
        bool want_aug = cfg.train.augment_enabled && cfg.train.augment_p > 0.0;
        PreparedData prep = prepare(cfg, want_aug);
        write_text_file(cfg.out / "config_effective.txt", render_config(cfg));
        save_vocab(prep.vocab, cfg.out / "vocab.txt");
        save_tsv(prep.test, cfg.out / "test.tsv");
        std::uint64_t vocab_hash = fnv1a64_file(cfg.out / "vocab.txt");

        struct VariantSpec {
            const char* name;
            const char* model_variant;
            bool augment;
        };
        const VariantSpec variants[] = {
            {"full", "full", true},
            {"no_prompt", "no_prompt", true},
            {"no_augmentation", "full", false},
            {"no_attention", "no_attention", true},
            {"no_prompt_and_augmentation", "no_prompt", false},
        };

        AblationOutcome outcome;
        outcome.run_dir = cfg.out;
        for (const VariantSpec& spec : variants) {
            ModelConfig mcfg = ablation_variant(cfg.model, spec.model_variant);
            TrainConfig tcfg = cfg.train;
            tcfg.augment_enabled = tcfg.augment_enabled && spec.augment;

            std::filesystem::path vdir = cfg.out / spec.name;
            std::filesystem::create_directories(vdir);
            std::vector<MetricsReport> per_seed;
            for (std::uint64_t seed : tcfg.seeds) {
                std::filesystem::path seed_dir = vdir / ("seed" + std::to_string(seed));
                std::filesystem::create_directories(seed_dir);
                TeeStream log(seed_dir / "train.log");
                if (!tcfg.augment_enabled) log.file() << "augmentation=disabled\n";
                SeedRun run = train_one_seed(prep, mcfg, tcfg, seed, &log.file());
                save_checkpoint(seed_dir / "checkpoint.bin", run.params, mcfg, vocab_hash);
                write_metrics(vdir / ("metrics_seed" + std::to_string(seed)), run.metrics);
                per_seed.push_back(std::move(run.metrics));
            }
            MetricsReport mean = aggregate_seeds(per_seed);
            write_metrics(vdir / "metrics_mean", mean);
            outcome.per_variant.emplace(spec.name, std::move(mean));
            std::cout << "[variant " << spec.name << "] done\n";
        }

        outcome.table = ablation_table(outcome.per_variant, cfg.average);
        write_text_file(cfg.out / "ablation_table.txt", outcome.table);
        std::cout << outcome.table;
        return outcome;
    } catch (...) {
        write_text_file(cfg.out / "FAILED", "run failed; artifacts may be incomplete\n");
        throw;
    }
}

AugmentOutcome run_augment(const RunConfig& cfg) {
    if (cfg.dataset.empty()) throw InvalidArgument("config: dataset path is required");
    if (cfg.dataset_format != "tsv") {
        throw InvalidArgument("augment: corpus must be in tsv format");
    }
    if (cfg.lexicon.empty()) throw InvalidArgument("config: augment needs a lexicon path");

    std::vector<RawExample> examples = load_tsv(cfg.dataset);
    SynonymLexicon lexicon = load_lexicon(cfg.lexicon);
    AugmentConfig acfg{cfg.train.augment_p, cfg.train.seeds.front()};
    acfg.validate();

    std::filesystem::create_directories(cfg.out);
    AugmentOutcome outcome;
    outcome.output = cfg.out / "augmented.tsv";

    std::vector<RawExample> augmented = examples;
    AugmentStats stats;
    for (std::size_t i = 0; i < examples.size(); ++i) {
        Rng rng(acfg.master_seed, i);  // per-example stream
        augmented[i].tokens = augment_with_stats(examples[i].tokens, lexicon, acfg, rng, stats);
        augmented[i].text.clear();
    }
    save_tsv(augmented, outcome.output);

    outcome.lines = examples.size();
    outcome.covered = stats.covered;
    outcome.replaced = stats.replaced;
    outcome.rate = stats.covered > 0
                       ? static_cast<double>(stats.replaced) / static_cast<double>(stats.covered)
                       : 0.0;
    std::ostringstream audit;
    audit << "augment: lines=" << outcome.lines << " covered=" << outcome.covered
          << " replaced=" << outcome.replaced << " replacement_rate=" << outcome.rate
          << " p=" << acfg.p << '\n';
    std::cout << audit.str();
    write_text_file(cfg.out / "augment_audit.txt", audit.str());
    return outcome;
}

SyntheticOutcome run_gen_synthetic(const RunConfig& cfg) {
    SyntheticData data = gen_synthetic(cfg.n_per_class, cfg.noise, cfg.train.seeds.front());
    std::filesystem::create_directories(cfg.out);
    SyntheticOutcome outcome;
    outcome.corpus = cfg.out / "synthetic.tsv";
    outcome.lexicon = cfg.out / "lexicon.tsv";
    outcome.examples = data.examples.size();
    save_tsv(data.examples, outcome.corpus);
    save_lexicon(data.lexicon, outcome.lexicon);
    std::cout << "gen-synthetic: wrote " << outcome.examples << " examples to "
              << outcome.corpus.string() << '\n';
    return outcome;
}

}  // namespace fslhate
