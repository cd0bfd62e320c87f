#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "etdmine/features.hpp"
#include "etdmine/svm.hpp"

namespace etdmine {

/// Confusion matrix with rows = predicted class, columns = true class.
struct EvalReport {
    std::vector<std::string> classes;
    std::vector<std::vector<std::uint64_t>> confusion;
    std::uint64_t total = 0;
    double accuracy = 0.0;
    std::vector<double> precision;  // diag / row sum, 0 when the row is empty
    std::vector<double> recall;     // diag / column sum, 0 when the column is empty
    std::vector<bool> precision_undefined;
    std::vector<bool> recall_undefined;
    /// Cohen's kappa; absent when chance agreement is 1.
    std::optional<double> kappa;
};

/// Builds every derived field from a predicted x true count matrix.
EvalReport report_from_confusion(std::vector<std::string> classes,
                                 std::vector<std::vector<std::uint64_t>> confusion);

/// Classes default to the sorted union of both label lists.
EvalReport evaluate_predictions(const std::vector<std::string>& truth, const std::vector<std::string>& predicted,
                                std::vector<std::string> classes = {});

enum class EvalPopulation { test, all };

/// Predicts the plan's test rows (or every row) and compares with tags.
/// Throws DataError when the evaluated population is empty.
EvalReport evaluate(const SvmModel& model, const FeatureMatrix& features, const std::vector<std::string>& tags,
                    const SplitPlan& plan, EvalPopulation population = EvalPopulation::test);

/// Tab-separated layout: "kappa: X.XXX", a header of true classes plus
/// "class precision", one row per predicted class, and a "class recall" row.
std::string render_eval_text(const EvalReport& report, std::string_view class_prefix = "Topic ");
/// The same grid as RFC 4180 CSV.
std::string render_eval_csv(const EvalReport& report, std::string_view class_prefix = "Topic ");

}  // namespace etdmine
