#pragma once

#include <map>
#include <string>
#include <vector>

namespace fslhate {

struct ConfusionMatrix {
    std::size_t n_classes = 0;
    std::vector<long long> counts;  // row = true class, column = predicted

    ConfusionMatrix() = default;
    explicit ConfusionMatrix(std::size_t n) : n_classes(n), counts(n * n, 0) {}
    long long& at(std::size_t truth, std::size_t pred) { return counts[truth * n_classes + pred]; }
    long long at(std::size_t truth, std::size_t pred) const {
        return counts[truth * n_classes + pred];
    }
    long long total() const;
};

ConfusionMatrix confusion(const std::vector<int>& predictions, const std::vector<int>& labels,
                          std::size_t n_classes);

struct ClassMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    long long support = 0;
};

struct MetricsReport {
    std::vector<ClassMetrics> per_class;
    double macro_precision = 0.0, macro_recall = 0.0, macro_f1 = 0.0;
    double weighted_precision = 0.0, weighted_recall = 0.0, weighted_f1 = 0.0;

    // Filled by aggregate_seeds: cross-seed sample standard deviations.
    bool has_std = false;
    std::size_t n_runs = 1;
    std::vector<ClassMetrics> per_class_std;
    double macro_precision_std = 0.0, macro_recall_std = 0.0, macro_f1_std = 0.0;
    double weighted_precision_std = 0.0, weighted_recall_std = 0.0, weighted_f1_std = 0.0;
};

/// Per-class and averaged precision/recall/F1 from a confusion matrix.
/// Zero denominators yield 0 by convention; macro averages are unweighted,
/// weighted averages use the class supports.
MetricsReport prf(const ConfusionMatrix& matrix);

/// Elementwise mean plus sample standard deviation (n-1 denominator, 0 for
/// a single report) across per-seed reports.
MetricsReport aggregate_seeds(const std::vector<MetricsReport>& reports);

enum class Average { macro, weighted };
Average average_from_string(const std::string& s);

// Flat `key = value` text block (one metric per line).
std::string metrics_to_text(const MetricsReport& report);
// Machine-readable JSON string (serialized with sorted keys).
std::string metrics_to_json(const MetricsReport& report);

/// Variant comparison in percent (2 decimals) with delta-vs-full columns;
/// the `full` row comes first and must be present.
std::string ablation_table(const std::map<std::string, MetricsReport>& results,
                           Average average = Average::macro);

}  // namespace fslhate
