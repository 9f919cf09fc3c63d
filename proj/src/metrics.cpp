#include "fslhate/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "fslhate/errors.hpp"
#include "fslhate/textpipe.hpp"

namespace fslhate {

long long ConfusionMatrix::total() const {
    long long t = 0;
    for (long long c : counts) t += c;
    return t;
}

ConfusionMatrix confusion(const std::vector<int>& predictions, const std::vector<int>& labels,
                          std::size_t n_classes) {
    if (predictions.size() != labels.size()) {
        throw InvalidArgument("confusion: prediction/label length mismatch");
    }
    ConfusionMatrix m(n_classes);
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        int p = predictions[i];
        int t = labels[i];
        if (p < 0 || t < 0 || static_cast<std::size_t>(p) >= n_classes ||
            static_cast<std::size_t>(t) >= n_classes) {
            throw InvalidArgument("confusion: class id out of range");
        }
        ++m.at(static_cast<std::size_t>(t), static_cast<std::size_t>(p));
    }
    return m;
}

MetricsReport prf(const ConfusionMatrix& matrix) {
    std::size_t n = matrix.n_classes;
    MetricsReport report;
    report.per_class.resize(n);
    long long total_support = 0;
    for (std::size_t c = 0; c < n; ++c) {
        long long tp = matrix.at(c, c);
        long long fp = 0;
        long long fn = 0;
        for (std::size_t o = 0; o < n; ++o) {
            if (o == c) continue;
            fp += matrix.at(o, c);
            fn += matrix.at(c, o);
        }
        ClassMetrics& cm = report.per_class[c];
        cm.support = tp + fn;
        total_support += cm.support;
        cm.precision = (tp + fp) > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
        cm.recall = (tp + fn) > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
        cm.f1 = (cm.precision + cm.recall) > 0.0
                    ? 2.0 * cm.precision * cm.recall / (cm.precision + cm.recall)
                    : 0.0;
    }
    for (std::size_t c = 0; c < n; ++c) {
        const ClassMetrics& cm = report.per_class[c];
        report.macro_precision += cm.precision / static_cast<double>(n);
        report.macro_recall += cm.recall / static_cast<double>(n);
        report.macro_f1 += cm.f1 / static_cast<double>(n);
        double share = total_support > 0
                           ? static_cast<double>(cm.support) / static_cast<double>(total_support)
                           : 1.0 / static_cast<double>(n);
        report.weighted_precision += cm.precision * share;
        report.weighted_recall += cm.recall * share;
        report.weighted_f1 += cm.f1 * share;
    }
    return report;
}

namespace {

double sample_std(const std::vector<double>& values, double mean) {
    if (values.size() < 2) return 0.0;
    double acc = 0.0;
    for (double v : values) acc += (v - mean) * (v - mean);
    return std::sqrt(acc / static_cast<double>(values.size() - 1));
}

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;
};

MeanStd mean_std(const std::vector<double>& values) {
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    return {mean, sample_std(values, mean)};
}

}  // namespace

MetricsReport aggregate_seeds(const std::vector<MetricsReport>& reports) {
    if (reports.empty()) throw InvalidArgument("aggregate_seeds: no reports");
    std::size_t n = reports.front().per_class.size();
    for (const MetricsReport& r : reports) {
        if (r.per_class.size() != n) throw InvalidArgument("aggregate_seeds: class arity mismatch");
    }

    MetricsReport out;
    out.has_std = true;
    out.n_runs = reports.size();
    out.per_class.resize(n);
    out.per_class_std.resize(n);

    auto collect = [&](auto getter) {
        std::vector<double> values;
        values.reserve(reports.size());
        for (const MetricsReport& r : reports) values.push_back(getter(r));
        return mean_std(values);
    };

    for (std::size_t c = 0; c < n; ++c) {
        MeanStd p = collect([&](const MetricsReport& r) { return r.per_class[c].precision; });
        MeanStd rc = collect([&](const MetricsReport& r) { return r.per_class[c].recall; });
        MeanStd f = collect([&](const MetricsReport& r) { return r.per_class[c].f1; });
        MeanStd s = collect(
            [&](const MetricsReport& r) { return static_cast<double>(r.per_class[c].support); });
        out.per_class[c] = {p.mean, rc.mean, f.mean, static_cast<long long>(std::llround(s.mean))};
        out.per_class_std[c] = {p.std, rc.std, f.std, 0};
    }
    MeanStd mp = collect([](const MetricsReport& r) { return r.macro_precision; });
    MeanStd mr = collect([](const MetricsReport& r) { return r.macro_recall; });
    MeanStd mf = collect([](const MetricsReport& r) { return r.macro_f1; });
    MeanStd wp = collect([](const MetricsReport& r) { return r.weighted_precision; });
    MeanStd wr = collect([](const MetricsReport& r) { return r.weighted_recall; });
    MeanStd wf = collect([](const MetricsReport& r) { return r.weighted_f1; });
    out.macro_precision = mp.mean;
    out.macro_precision_std = mp.std;
    out.macro_recall = mr.mean;
    out.macro_recall_std = mr.std;
    out.macro_f1 = mf.mean;
    out.macro_f1_std = mf.std;
    out.weighted_precision = wp.mean;
    out.weighted_precision_std = wp.std;
    out.weighted_recall = wr.mean;
    out.weighted_recall_std = wr.std;
    out.weighted_f1 = wf.mean;
    out.weighted_f1_std = wf.std;
    return out;
}

Average average_from_string(const std::string& s) {
    if (s == "macro") return Average::macro;
    if (s == "weighted") return Average::weighted;
    throw InvalidArgument("average: expected macro or weighted, got '" + s + "'");
}

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string class_key(std::size_t c, std::size_t n_classes) {
    // The 3-class task gets readable names; anything else falls back to ids.
    if (n_classes == kNumClasses) return label_name(static_cast<int>(c));
    return "class" + std::to_string(c);
}

}  // namespace

std::string metrics_to_text(const MetricsReport& report) {
    std::ostringstream out;
    out << "n_classes = " << report.per_class.size() << '\n';
    if (report.has_std) out << "n_runs = " << report.n_runs << '\n';
    for (std::size_t c = 0; c < report.per_class.size(); ++c) {
        const ClassMetrics& cm = report.per_class[c];
        std::string key = "class." + class_key(c, report.per_class.size());
        out << key << ".precision = " << fmt(cm.precision) << '\n';
        out << key << ".recall = " << fmt(cm.recall) << '\n';
        out << key << ".f1 = " << fmt(cm.f1) << '\n';
        out << key << ".support = " << cm.support << '\n';
        if (report.has_std) {
            const ClassMetrics& sd = report.per_class_std[c];
            out << key << ".precision.std = " << fmt(sd.precision) << '\n';
            out << key << ".recall.std = " << fmt(sd.recall) << '\n';
            out << key << ".f1.std = " << fmt(sd.f1) << '\n';
        }
    }
    out << "macro.precision = " << fmt(report.macro_precision) << '\n';
    out << "macro.recall = " << fmt(report.macro_recall) << '\n';
    out << "macro.f1 = " << fmt(report.macro_f1) << '\n';
    out << "weighted.precision = " << fmt(report.weighted_precision) << '\n';
    out << "weighted.recall = " << fmt(report.weighted_recall) << '\n';
    out << "weighted.f1 = " << fmt(report.weighted_f1) << '\n';
    if (report.has_std) {
        out << "macro.precision.std = " << fmt(report.macro_precision_std) << '\n';
        out << "macro.recall.std = " << fmt(report.macro_recall_std) << '\n';
        out << "macro.f1.std = " << fmt(report.macro_f1_std) << '\n';
        out << "weighted.precision.std = " << fmt(report.weighted_precision_std) << '\n';
        out << "weighted.recall.std = " << fmt(report.weighted_recall_std) << '\n';
        out << "weighted.f1.std = " << fmt(report.weighted_f1_std) << '\n';
    }
    return out.str();
}

std::string metrics_to_json(const MetricsReport& report) {
    nlohmann::json j;
    j["n_classes"] = report.per_class.size();
    for (std::size_t c = 0; c < report.per_class.size(); ++c) {
        const ClassMetrics& cm = report.per_class[c];
        nlohmann::json jc;
        jc["precision"] = cm.precision;
        jc["recall"] = cm.recall;
        jc["f1"] = cm.f1;
        jc["support"] = cm.support;
        if (report.has_std) {
            jc["precision_std"] = report.per_class_std[c].precision;
            jc["recall_std"] = report.per_class_std[c].recall;
            jc["f1_std"] = report.per_class_std[c].f1;
        }
        j["classes"][class_key(c, report.per_class.size())] = jc;
    }
    j["macro"] = {{"precision", report.macro_precision},
                  {"recall", report.macro_recall},
                  {"f1", report.macro_f1}};
    j["weighted"] = {{"precision", report.weighted_precision},
                     {"recall", report.weighted_recall},
                     {"f1", report.weighted_f1}};
    if (report.has_std) {
        j["n_runs"] = report.n_runs;
        j["macro_std"] = {{"precision", report.macro_precision_std},
                          {"recall", report.macro_recall_std},
                          {"f1", report.macro_f1_std}};
        j["weighted_std"] = {{"precision", report.weighted_precision_std},
                             {"recall", report.weighted_recall_std},
                             {"f1", report.weighted_f1_std}};
    }
    return j.dump(2) + "\n";
}

std::string ablation_table(const std::map<std::string, MetricsReport>& results, Average average) {
    auto full_it = results.find("full");
    if (full_it == results.end()) throw InvalidArgument("ablation_table: missing 'full' variant");

    auto pick = [&](const MetricsReport& r) {
        struct Row {
            double p, rec, f1;
        };
        if (average == Average::macro) return Row{r.macro_precision, r.macro_recall, r.macro_f1};
        return Row{r.weighted_precision, r.weighted_recall, r.weighted_f1};
    };

    std::vector<std::string> order = {"full", "no_prompt", "no_augmentation", "no_attention",
                                      "no_prompt_and_augmentation"};
    for (const auto& [name, _] : results) {
        if (std::find(order.begin(), order.end(), name) == order.end()) order.push_back(name);
    }

    auto base = pick(full_it->second);
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof(line), "%-28s %9s %9s %9s %9s %9s %9s\n", "variant", "P(%)", "R(%)",
                  "F1(%)", "dP", "dR", "dF1");
    out << line;
    for (const std::string& name : order) {
        auto it = results.find(name);
        if (it == results.end()) continue;
        auto row = pick(it->second);
        std::snprintf(line, sizeof(line), "%-28s %9.2f %9.2f %9.2f %+9.2f %+9.2f %+9.2f\n",
                      name.c_str(), 100.0 * row.p, 100.0 * row.rec, 100.0 * row.f1,
                      100.0 * (row.p - base.p), 100.0 * (row.rec - base.rec),
                      100.0 * (row.f1 - base.f1));
        out << line;
    }
    return out.str();
}

}  // namespace fslhate
