#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fslhate/checkpoint.hpp"
#include "fslhate/errors.hpp"
#include "fslhate/runconfig.hpp"
#include "fslhate/runner.hpp"
#include "gradcheck_utils.hpp"

using namespace fslhate;
namespace fs = std::filesystem;

namespace {

const char* kCli = FSLHATE_CLI_PATH;

int run_cli(const std::string& args) {
    std::string cmd = std::string(kCli) + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

// A desk-scale config over a generated synthetic corpus.
fs::path write_small_config(const fs::path& dir, const std::string& extra = "") {
    RunConfig gen;
    gen.out = dir / "datagen";
    gen.n_per_class = 12;
    gen.noise = 0.1;
    gen.train.seeds = {3};
    SyntheticOutcome synth = run_gen_synthetic(gen);

    fs::path config = dir / "run.cfg";
    std::ofstream out(config);
    out << "dataset = " << synth.corpus.string() << "\n"
        << "dataset_format = tsv\n"
        << "lexicon = " << synth.lexicon.string() << "\n"
        << "out = " << (dir / "run").string() << "\n"
        << "seeds = 0\n"
        << "epochs = 2\n"
        << "batch_size = 8\n"
        << "d_emb = 12\n"
        << "prompt_len = 2\n"
        << "d_conv = 6\n"
        << "d_lstm = 5\n"
        << "seq_len = 24\n"
        << "vocab_size = 500\n"
        << "split_train = 0.6\nsplit_val = 0.2\nsplit_test = 0.2\n"
        << extra;
    return config;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("config parser") {
    RunConfig cfg = parse_config_text(
        "# comment\n"
        "dataset = corpus.tsv\n"
        "seeds = 4, 5 ,6\n"
        "keep_prob = 0.9   # trailing comment\n"
        "augment = off\n");
    CHECK(cfg.dataset == "corpus.tsv");
    CHECK(cfg.train.seeds == std::vector<std::uint64_t>{4, 5, 6});
    CHECK(cfg.model.keep_prob == doctest::Approx(0.9));
    CHECK_FALSE(cfg.train.augment_enabled);

    CHECK_THROWS_AS(parse_config_text("mystery_key = 1\n"), InvalidArgument);
    CHECK_THROWS_AS(parse_config_text("keep_prob = lots\n"), InvalidArgument);
    CHECK_THROWS_AS(parse_config_text("no equals sign\n"), InvalidArgument);

    // defaults render + reparse to the same config
    std::string rendered = render_config(cfg);
    RunConfig back = parse_config_text(rendered);
    CHECK(render_config(back) == rendered);
}

TEST_CASE("checkpoint round trip") {
    ModelConfig cfg = testutil::tiny_config();
    Rng rng(33);
    ModelParams params = init_params(cfg, testutil::kTinyVocab, rng);
    fs::path dir = fresh_dir("fslhate_ckpt_test");
    fs::path path = dir / "checkpoint.bin";

    save_checkpoint(path, params, cfg, 0xabcdef1234567890ULL);
    Checkpoint loaded = load_checkpoint(path);
    CHECK(loaded.vocab_hash == 0xabcdef1234567890ULL);
    CHECK(loaded.config.d_emb == cfg.d_emb);
    CHECK(loaded.config.seq_len == cfg.seq_len);

    // float32 storage: values agree to float precision
    for (std::size_t i = 0; i < params.embedding.size(); ++i) {
        CHECK(loaded.params.embedding.data[i] ==
              static_cast<double>(static_cast<float>(params.embedding.data[i])));
    }

    // save -> load -> save is byte-identical
    fs::path second = dir / "checkpoint2.bin";
    save_checkpoint(second, loaded.params, loaded.config, loaded.vocab_hash);
    CHECK(slurp(path) == slurp(second));

    SUBCASE("corrupted payload is rejected") {
        std::string bytes = slurp(path);
        std::ofstream(path, std::ios::binary) << bytes.substr(0, bytes.size() - 8);
        CHECK_THROWS_AS(load_checkpoint(path), ArtifactMismatch);
    }
    fs::remove_all(dir);
}

TEST_CASE("training run writes the documented artifacts") {
    fs::path dir = fresh_dir("fslhate_cli_train");
    fs::path config = write_small_config(dir);
    REQUIRE(run_cli("train --config " + config.string()) == 0);

    fs::path run = dir / "run";
    CHECK(fs::exists(run / "vocab.txt"));
    CHECK(fs::exists(run / "test.tsv"));
    CHECK(fs::exists(run / "config_effective.txt"));
    CHECK(fs::exists(run / "seed0" / "checkpoint.bin"));
    CHECK(fs::exists(run / "seed0" / "train.log"));
    CHECK(fs::exists(run / "metrics_seed0.txt"));
    CHECK(fs::exists(run / "metrics_seed0.json"));
    CHECK(fs::exists(run / "metrics_mean.txt"));
    CHECK_FALSE(fs::exists(run / "FAILED"));

    std::string log = slurp(run / "seed0" / "train.log");
    CHECK(log.find("epoch=0 loss=") != std::string::npos);

    SUBCASE("rerun is byte-identical") {
        std::string ckpt = slurp(run / "seed0" / "checkpoint.bin");
        std::string metrics = slurp(run / "metrics_seed0.txt");
        fs::remove_all(run);
        REQUIRE(run_cli("train --config " + config.string()) == 0);
        CHECK(slurp(run / "seed0" / "checkpoint.bin") == ckpt);
        CHECK(slurp(run / "metrics_seed0.txt") == metrics);
    }

    SUBCASE("worker count does not change the result") {
        std::string ckpt = slurp(run / "seed0" / "checkpoint.bin");
        for (const char* threads : {"1", "3"}) {
            fs::remove_all(run);
            std::string cmd = std::string("FSLHATE_THREADS=") + threads + " " + kCli +
                              " train --config " + config.string() + " >/dev/null 2>&1";
            REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
            CHECK(slurp(run / "seed0" / "checkpoint.bin") == ckpt);
        }
    }

    SUBCASE("eval on the saved test split reproduces train-time metrics") {
        RunConfig eval_cfg;
        eval_cfg.checkpoint = run / "seed0" / "checkpoint.bin";
        eval_cfg.dataset = run / "test.tsv";
        eval_cfg.dataset_format = "tsv";
        MetricsReport eval_report = run_eval(eval_cfg);

        std::string train_metrics = slurp(run / "metrics_seed0.txt");
        std::istringstream in(train_metrics);
        std::string line;
        double train_macro_f1 = -1.0;
        while (std::getline(in, line)) {
            if (line.rfind("macro.f1 = ", 0) == 0) train_macro_f1 = std::stod(line.substr(11));
        }
        REQUIRE(train_macro_f1 >= 0.0);
        CHECK(std::fabs(eval_report.macro_f1 - train_macro_f1) <= 1e-4);
    }

    SUBCASE("checkpoint corruption is exit 4") {
        fs::path ckpt = run / "seed0" / "checkpoint.bin";
        std::string bytes = slurp(ckpt);
        std::ofstream(ckpt, std::ios::binary) << bytes.substr(0, bytes.size() / 2);
        RunConfig eval_cfg;
        eval_cfg.checkpoint = ckpt;
        eval_cfg.dataset = run / "test.tsv";
        std::ofstream cfg_file(dir / "eval.cfg");
        cfg_file << "checkpoint = " << ckpt.string() << "\ndataset = "
                 << (run / "test.tsv").string() << "\n";
        cfg_file.close();
        CHECK(run_cli("eval --config " + (dir / "eval.cfg").string()) == 4);
    }

    SUBCASE("vocab hash mismatch is exit 4") {
        std::ofstream(run / "seed0" / "vocab.txt", std::ios::app) << "extra-token\n";
        std::ofstream cfg_file(dir / "eval2.cfg");
        cfg_file << "checkpoint = " << (run / "seed0" / "checkpoint.bin").string()
                 << "\ndataset = " << (run / "test.tsv").string() << "\n";
        cfg_file.close();
        CHECK(run_cli("eval --config " + (dir / "eval2.cfg").string()) == 4);
    }
    fs::remove_all(dir);
}

TEST_CASE("cli error codes") {
    fs::path dir = fresh_dir("fslhate_cli_errors");
    SUBCASE("missing dataset is exit 2 without artifacts") {
        std::ofstream(dir / "bad.cfg") << "out = " << (dir / "never").string() << "\n";
        CHECK(run_cli("train --config " + (dir / "bad.cfg").string()) == 2);
        CHECK(fs::exists(dir / "never" / "FAILED"));
        CHECK_FALSE(fs::exists(dir / "never" / "metrics_mean.txt"));
    }
    SUBCASE("unknown key is exit 2") {
        std::ofstream(dir / "bad2.cfg") << "surprise = 1\n";
        CHECK(run_cli("train --config " + (dir / "bad2.cfg").string()) == 2);
    }
    SUBCASE("unknown subcommand is usage error") {
        CHECK(run_cli("explode") == 2);
    }
    SUBCASE("nonexistent lexicon is exit 2") {
        std::ofstream(dir / "corpus.tsv") << "normal\thello there\n";
        std::ofstream(dir / "bad3.cfg") << "dataset = " << (dir / "corpus.tsv").string()
                                        << "\nlexicon = /nonexistent/lex.tsv\nout = "
                                        << (dir / "aug").string() << "\n";
        CHECK(run_cli("augment --config " + (dir / "bad3.cfg").string()) == 2);
    }
    fs::remove_all(dir);
}

TEST_CASE("augment command identity and audit") {
    fs::path dir = fresh_dir("fslhate_cli_augment");
    RunConfig gen;
    gen.out = dir;
    gen.n_per_class = 20;
    gen.noise = 0.0;
    gen.train.seeds = {11};
    SyntheticOutcome synth = run_gen_synthetic(gen);

    SUBCASE("p=0 reproduces the corpus byte for byte") {
        std::ofstream(dir / "id.cfg") << "dataset = " << synth.corpus.string()
                                      << "\nlexicon = " << synth.lexicon.string()
                                      << "\naugment_p = 0\nout = " << (dir / "out0").string()
                                      << "\n";
        REQUIRE(run_cli("augment --config " + (dir / "id.cfg").string()) == 0);
        CHECK(slurp(dir / "out0" / "augmented.tsv") == slurp(synth.corpus));
    }
    SUBCASE("p=0.1 lands in the statistical band") {
        std::ofstream(dir / "p1.cfg") << "dataset = " << synth.corpus.string()
                                      << "\nlexicon = " << synth.lexicon.string()
                                      << "\naugment_p = 0.1\nout = " << (dir / "out1").string()
                                      << "\nseeds = 5\n";
        RunConfig cfg = parse_config_file(dir / "p1.cfg");
        AugmentOutcome out = run_augment(cfg);
        CHECK(out.lines == 60);
        CHECK(out.rate >= 0.05);
        CHECK(out.rate <= 0.15);

        // determinism: same seed, same file
        fs::path first = dir / "out1" / "augmented.tsv";
        std::string bytes = slurp(first);
        run_augment(cfg);
        CHECK(slurp(first) == bytes);
    }
    fs::remove_all(dir);
}

TEST_CASE("ablation command produces a five-row table") {
    fs::path dir = fresh_dir("fslhate_cli_ablate");
    fs::path config = write_small_config(dir, "epochs = 1\n");
    REQUIRE(run_cli("ablate --config " + config.string()) == 0);

    fs::path run = dir / "run";
    std::string table = slurp(run / "ablation_table.txt");
    CHECK(table.find("full") != std::string::npos);
    CHECK(table.find("no_prompt") != std::string::npos);
    CHECK(table.find("no_augmentation") != std::string::npos);
    CHECK(table.find("no_attention") != std::string::npos);
    CHECK(table.find("no_prompt_and_augmentation") != std::string::npos);
    CHECK(table.find("full") < table.find("no_prompt"));

    // the training log of the augmentation-off variant records the switch
    std::string log = slurp(run / "no_augmentation" / "seed0" / "train.log");
    CHECK(log.find("augmentation=disabled") != std::string::npos);

    // shared splits: every variant saw the same vocabulary file
    CHECK(fs::exists(run / "vocab.txt"));
    CHECK(fs::exists(run / "no_attention" / "metrics_mean.txt"));
    fs::remove_all(dir);
}

TEST_SUITE_END();
