#include <doctest.h>

#include <cmath>

#include "fslhate/errors.hpp"
#include "fslhate/metrics.hpp"
#include "fslhate/rng.hpp"

using namespace fslhate;

namespace {

// Independent brute-force oracle: recompute P/R/F1 straight from the
// (pred, label) pairs without going through a ConfusionMatrix.
MetricsReport brute_force_prf(const std::vector<int>& preds, const std::vector<int>& labels,
                              std::size_t n_classes) {
    MetricsReport report;
    report.per_class.resize(n_classes);
    long long total = static_cast<long long>(labels.size());
    for (std::size_t c = 0; c < n_classes; ++c) {
        long long tp = 0, fp = 0, fn = 0, support = 0;
        for (std::size_t i = 0; i < preds.size(); ++i) {
            bool pc = preds[i] == static_cast<int>(c);
            bool lc = labels[i] == static_cast<int>(c);
            if (pc && lc) ++tp;
            if (pc && !lc) ++fp;
            if (!pc && lc) ++fn;
            if (lc) ++support;
        }
        ClassMetrics& cm = report.per_class[c];
        cm.support = support;
        cm.precision = tp + fp > 0 ? double(tp) / double(tp + fp) : 0.0;
        cm.recall = tp + fn > 0 ? double(tp) / double(tp + fn) : 0.0;
        cm.f1 = cm.precision + cm.recall > 0.0
                    ? 2.0 * cm.precision * cm.recall / (cm.precision + cm.recall)
                    : 0.0;
        report.macro_precision += cm.precision / double(n_classes);
        report.macro_recall += cm.recall / double(n_classes);
        report.macro_f1 += cm.f1 / double(n_classes);
        double share = total > 0 ? double(support) / double(total) : 1.0 / double(n_classes);
        report.weighted_precision += cm.precision * share;
        report.weighted_recall += cm.recall * share;
        report.weighted_f1 += cm.f1 * share;
    }
    return report;
}

}  // namespace

TEST_SUITE_BEGIN("metrics");

TEST_CASE("confusion tallies") {
    SUBCASE("identity") {
        ConfusionMatrix m = confusion({0, 1, 2}, {0, 1, 2}, 3);
        for (std::size_t t = 0; t < 3; ++t) {
            for (std::size_t p = 0; p < 3; ++p) CHECK(m.at(t, p) == (t == p ? 1 : 0));
        }
        CHECK(m.total() == 3);
    }
    SUBCASE("empty") {
        ConfusionMatrix m = confusion({}, {}, 3);
        CHECK(m.total() == 0);
    }
    SUBCASE("direct tally") {
        ConfusionMatrix m = confusion({0, 0}, {0, 1}, 2);
        CHECK(m.at(0, 0) == 1);
        CHECK(m.at(1, 0) == 1);
        CHECK(m.at(0, 1) == 0);
    }
    CHECK_THROWS_AS(confusion({0}, {0, 1}, 2), InvalidArgument);
    CHECK_THROWS_AS(confusion({5}, {0}, 2), InvalidArgument);
}

TEST_CASE("prf hand-derived 2x2 case") {
    ConfusionMatrix m(2);
    m.at(0, 0) = 1;
    m.at(0, 1) = 1;
    m.at(1, 0) = 0;
    m.at(1, 1) = 2;
    MetricsReport r = prf(m);
    CHECK(r.per_class[0].precision == doctest::Approx(1.0));
    CHECK(r.per_class[0].recall == doctest::Approx(0.5));
    CHECK(r.per_class[0].f1 == doctest::Approx(2.0 / 3.0));
    CHECK(r.per_class[1].precision == doctest::Approx(2.0 / 3.0));
    CHECK(r.per_class[1].recall == doctest::Approx(1.0));
    CHECK(r.per_class[1].f1 == doctest::Approx(0.8));
    CHECK(r.macro_f1 == doctest::Approx(11.0 / 15.0));
}

TEST_CASE("prf perfect and degenerate cases") {
    ConfusionMatrix perfect(3);
    perfect.at(0, 0) = 4;
    perfect.at(1, 1) = 2;
    perfect.at(2, 2) = 6;
    MetricsReport r = prf(perfect);
    CHECK(r.macro_precision == doctest::Approx(1.0));
    CHECK(r.macro_recall == doctest::Approx(1.0));
    CHECK(r.macro_f1 == doctest::Approx(1.0));

    // a class never predicted and never true gets 0 by convention
    ConfusionMatrix hole(3);
    hole.at(0, 0) = 3;
    hole.at(1, 1) = 3;
    MetricsReport h = prf(hole);
    CHECK(h.per_class[2].precision == 0.0);
    CHECK(h.per_class[2].recall == 0.0);
    CHECK(h.per_class[2].f1 == 0.0);
}

TEST_CASE("prf equals the brute-force pair oracle on random instances") {
    Rng rng(99);
    for (int trial = 0; trial < 1000; ++trial) {
        std::size_t n_classes = 2 + rng.below(4);
        std::size_t n = 1 + rng.below(60);
        std::vector<int> preds(n), labels(n);
        for (std::size_t i = 0; i < n; ++i) {
            preds[i] = static_cast<int>(rng.below(n_classes));
            labels[i] = static_cast<int>(rng.below(n_classes));
        }
        MetricsReport fast = prf(confusion(preds, labels, n_classes));
        MetricsReport slow = brute_force_prf(preds, labels, n_classes);
        for (std::size_t c = 0; c < n_classes; ++c) {
            REQUIRE(fast.per_class[c].precision == slow.per_class[c].precision);
            REQUIRE(fast.per_class[c].recall == slow.per_class[c].recall);
            REQUIRE(fast.per_class[c].f1 == slow.per_class[c].f1);
            REQUIRE(fast.per_class[c].support == slow.per_class[c].support);
        }
        REQUIRE(fast.macro_f1 == doctest::Approx(slow.macro_f1).epsilon(1e-15));
        double lo = 1.0, hi = 0.0;
        for (auto& cm : fast.per_class) {
            lo = std::min(lo, cm.f1);
            hi = std::max(hi, cm.f1);
        }
        REQUIRE(fast.macro_f1 >= lo - 1e-12);
        REQUIRE(fast.macro_f1 <= hi + 1e-12);
    }
}

TEST_CASE("aggregate_seeds mean and std") {
    ConfusionMatrix m(2);
    m.at(0, 0) = 2;
    m.at(1, 1) = 2;
    MetricsReport one = prf(m);

    SUBCASE("identical reports have zero std") {
        MetricsReport agg = aggregate_seeds({one, one, one});
        CHECK(agg.macro_f1 == doctest::Approx(one.macro_f1));
        CHECK(agg.macro_f1_std == 0.0);
        CHECK(agg.n_runs == 3);
    }
    SUBCASE("single report convention") {
        MetricsReport agg = aggregate_seeds({one});
        CHECK(agg.macro_f1 == doctest::Approx(one.macro_f1));
        CHECK(agg.macro_f1_std == 0.0);
    }
    SUBCASE("hand computed std") {
        MetricsReport a = one, b = one;
        a.macro_f1 = 0.6;
        b.macro_f1 = 0.7;
        MetricsReport agg = aggregate_seeds({a, b});
        CHECK(agg.macro_f1 == doctest::Approx(0.65));
        CHECK(agg.macro_f1_std == doctest::Approx(0.070710678).epsilon(1e-6));
    }
    SUBCASE("arity mismatch") {
        MetricsReport bad;
        bad.per_class.resize(3);
        CHECK_THROWS_AS(aggregate_seeds({one, bad}), InvalidArgument);
    }
}

TEST_CASE("ablation table shape and deltas") {
    ConfusionMatrix m(2);
    m.at(0, 0) = 2;
    m.at(1, 1) = 2;
    MetricsReport full = prf(m);

    SUBCASE("full only") {
        std::string table = ablation_table({{"full", full}});
        CHECK(table.find("full") != std::string::npos);
        CHECK(table.find("+0.00") != std::string::npos);
    }
    SUBCASE("paper-shaped delta") {
        MetricsReport variant = full;
        full.macro_f1 = 0.6556;
        variant.macro_f1 = 0.6016;
        std::string table = ablation_table({{"full", full}, {"no_prompt", variant}});
        CHECK(table.find("-5.40") != std::string::npos);
        CHECK(table.find("65.56") != std::string::npos);
        CHECK(table.find("60.16") != std::string::npos);
        // full row first
        CHECK(table.find("full") < table.find("no_prompt"));
    }
    SUBCASE("missing full") {
        CHECK_THROWS_AS(ablation_table({{"no_prompt", full}}), InvalidArgument);
    }
}

TEST_CASE("serialization carries every metric") {
    ConfusionMatrix m(3);
    m.at(0, 0) = 5;
    m.at(1, 1) = 3;
    m.at(2, 0) = 1;
    MetricsReport r = prf(m);
    std::string text = metrics_to_text(r);
    CHECK(text.find("class.normal.precision = ") != std::string::npos);
    CHECK(text.find("macro.f1 = ") != std::string::npos);
    std::string json = metrics_to_json(r);
    CHECK(json.find("\"macro\"") != std::string::npos);
    CHECK(json.find("\"hatespeech\"") != std::string::npos);
}

TEST_SUITE_END();
