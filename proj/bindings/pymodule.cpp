#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "fslhate/augment.hpp"
#include "fslhate/data.hpp"
#include "fslhate/metrics.hpp"
#include "fslhate/numerics.hpp"
#include "fslhate/rng.hpp"
#include "fslhate/runner.hpp"
#include "fslhate/textpipe.hpp"
#include "fslhate/train.hpp"

namespace py = pybind11;
using namespace fslhate;

namespace {

py::dict report_to_dict(const MetricsReport& r) {
    py::dict out;
    py::list classes;
    for (std::size_t c = 0; c < r.per_class.size(); ++c) {
        py::dict cm;
        cm["precision"] = r.per_class[c].precision;
        cm["recall"] = r.per_class[c].recall;
        cm["f1"] = r.per_class[c].f1;
        cm["support"] = r.per_class[c].support;
        classes.append(cm);
    }
    out["classes"] = classes;
    out["macro_precision"] = r.macro_precision;
    out["macro_recall"] = r.macro_recall;
    out["macro_f1"] = r.macro_f1;
    out["weighted_precision"] = r.weighted_precision;
    out["weighted_recall"] = r.weighted_recall;
    out["weighted_f1"] = r.weighted_f1;
    if (r.has_std) {
        out["n_runs"] = r.n_runs;
        out["macro_f1_std"] = r.macro_f1_std;
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_fslhate, m) {
    m.doc() = "Few-shot hate speech classifier: prompt-enhanced CNN-BiLSTM-attention "
              "model with synonym-replacement augmentation.";

    m.def("tokenize", &tokenize, py::arg("text"),
          "Lowercase, sentinel-replace URLs/@mentions, split punctuation runs.");

    py::class_<Vocabulary>(m, "Vocabulary")
        .def_static(
            "build",
            [](const std::vector<std::vector<std::string>>& corpus, std::size_t max_size) {
                return build_vocab(corpus, max_size);
            },
            py::arg("corpus"), py::arg("max_size") = kDefaultVocabSize)
        .def_static("load", &load_vocab, py::arg("path"))
        .def("save", &save_vocab, py::arg("path"))
        .def("__len__", &Vocabulary::size)
        .def("id_of", &Vocabulary::id_of, py::arg("token"))
        .def("__contains__", &Vocabulary::contains)
        .def(
            "encode",
            [](const Vocabulary& vocab, const std::vector<std::string>& tokens,
               std::size_t seq_len) {
                EncodedExample ex = encode(tokens, vocab, seq_len);
                return py::make_tuple(ex.ids, ex.true_length);
            },
            py::arg("tokens"), py::arg("seq_len") = kDefaultSeqLen,
            "Returns (ids, true_length).");

    py::class_<SynonymLexicon>(m, "SynonymLexicon")
        .def_static("load", &load_lexicon, py::arg("path"))
        .def("save", &save_lexicon, py::arg("path"))
        .def("__len__", &SynonymLexicon::size)
        .def("covers", &SynonymLexicon::covers, py::arg("token"))
        .def("synonyms",
             [](const SynonymLexicon& lex, const std::string& token) {
                 auto it = lex.entries.find(token);
                 return it == lex.entries.end() ? std::vector<std::string>{} : it->second;
             })
        .def_readonly("skipped_lines", &SynonymLexicon::skipped_lines);

    m.def(
        "augment",
        [](const std::vector<std::string>& tokens, const SynonymLexicon& lexicon, double p,
           std::uint64_t seed, std::uint64_t stream) {
            AugmentConfig cfg{p, seed};
            Rng rng(seed, stream);
            return augment(tokens, lexicon, cfg, rng);
        },
        py::arg("tokens"), py::arg("lexicon"), py::arg("p") = 0.1, py::arg("seed") = 0,
        py::arg("stream") = 0, "Synonym replacement with a per-call rng stream.");

    m.def("softmax", &softmax, py::arg("scores"));
    m.def("layer_norm", &layer_norm, py::arg("x"), py::arg("gamma"), py::arg("beta"),
          py::arg("eps") = 1e-5);
    m.def("cosine_lr", &cosine_lr, py::arg("step"), py::arg("total_steps"), py::arg("lr_init"),
          py::arg("lr_min"));
    m.def("class_weights", &class_weights, py::arg("label_counts"));

    m.def(
        "confusion",
        [](const std::vector<int>& preds, const std::vector<int>& labels, std::size_t n) {
            ConfusionMatrix cm = confusion(preds, labels, n);
            std::vector<std::vector<long long>> rows(n, std::vector<long long>(n, 0));
            for (std::size_t t = 0; t < n; ++t) {
                for (std::size_t p = 0; p < n; ++p) rows[t][p] = cm.at(t, p);
            }
            return rows;
        },
        py::arg("predictions"), py::arg("labels"), py::arg("n_classes") = kNumClasses);

    m.def(
        "prf",
        [](const std::vector<int>& preds, const std::vector<int>& labels, std::size_t n) {
            return report_to_dict(prf(confusion(preds, labels, n)));
        },
        py::arg("predictions"), py::arg("labels"), py::arg("n_classes") = kNumClasses,
        "Per-class and macro/weighted precision, recall, F1.");

    m.def(
        "gen_synthetic",
        [](std::size_t n_per_class, double noise, std::uint64_t seed) {
            SyntheticData data = gen_synthetic(n_per_class, noise, seed);
            py::list examples;
            for (const RawExample& ex : data.examples) {
                examples.append(py::make_tuple(ex.label, ex.tokens));
            }
            py::dict lexicon;
            for (const auto& [head, syns] : data.lexicon.entries) lexicon[py::str(head)] = syns;
            return py::make_tuple(examples, lexicon);
        },
        py::arg("n_per_class"), py::arg("noise") = 0.0, py::arg("seed") = 0,
        "Returns (examples as (label, tokens) tuples, lexicon dict).");

    m.def(
        "run_training",
        [](const std::filesystem::path& config_path) {
            TrainOutcome outcome = run_training(parse_config_file(config_path));
            py::dict out;
            out["run_dir"] = outcome.run_dir;
            out["mean"] = report_to_dict(outcome.mean);
            py::list per_seed;
            for (const MetricsReport& r : outcome.per_seed) per_seed.append(report_to_dict(r));
            out["per_seed"] = per_seed;
            return out;
        },
        py::arg("config_path"), "Full training pipeline driven by a config file.");

    m.def(
        "run_eval",
        [](const std::filesystem::path& checkpoint, const std::filesystem::path& dataset,
           const std::string& dataset_format) {
            RunConfig cfg;
            cfg.checkpoint = checkpoint;
            cfg.dataset = dataset;
            cfg.dataset_format = dataset_format;
            return report_to_dict(run_eval(cfg));
        },
        py::arg("checkpoint"), py::arg("dataset"), py::arg("dataset_format") = "tsv");
}
