#include "etdmine/evaluation.hpp"

#include <algorithm>
#include <map>

#include <fmt/format.h>

#include "etdmine/csv.hpp"
#include "etdmine/errors.hpp"

namespace etdmine {

EvalReport report_from_confusion(std::vector<std::string> classes, std::vector<std::vector<std::uint64_t>> confusion) {
    const std::size_t n = classes.size();
    if (confusion.size() != n) throw ConfigError("confusion matrix size differs from class count");
    for (const auto& row : confusion)
        if (row.size() != n) throw ConfigError("confusion matrix is not square");

    EvalReport r;
    r.classes = std::move(classes);
    r.confusion = std::move(confusion);
    std::vector<std::uint64_t> row_sum(n, 0), col_sum(n, 0);
    std::uint64_t trace = 0;
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t t = 0; t < n; ++t) {
            row_sum[p] += r.confusion[p][t];
            col_sum[t] += r.confusion[p][t];
            r.total += r.confusion[p][t];
        }
    for (std::size_t c = 0; c < n; ++c) trace += r.confusion[c][c];

    r.precision.resize(n);
    r.recall.resize(n);
    r.precision_undefined.resize(n);
    r.recall_undefined.resize(n);
    for (std::size_t c = 0; c < n; ++c) {
        r.precision_undefined[c] = row_sum[c] == 0;
        r.recall_undefined[c] = col_sum[c] == 0;
        r.precision[c] = row_sum[c] ? static_cast<double>(r.confusion[c][c]) / static_cast<double>(row_sum[c]) : 0.0;
        r.recall[c] = col_sum[c] ? static_cast<double>(r.confusion[c][c]) / static_cast<double>(col_sum[c]) : 0.0;
    }
    if (r.total == 0) return r;

    // kappa = (N * trace - sum_c row_c col_c) / (N^2 - sum_c row_c col_c); integer until the final division.
    const long double N = static_cast<long double>(r.total);
    long double chance = 0;
    for (std::size_t c = 0; c < n; ++c) chance += static_cast<long double>(row_sum[c]) * static_cast<long double>(col_sum[c]);
    r.accuracy = static_cast<double>(static_cast<long double>(trace) / N);
    long double denom = N * N - chance;
    if (denom != 0) r.kappa = static_cast<double>((N * static_cast<long double>(trace) - chance) / denom);
    return r;
}

EvalReport evaluate_predictions(const std::vector<std::string>& truth, const std::vector<std::string>& predicted,
                                std::vector<std::string> classes) {
    if (truth.size() != predicted.size()) throw ConfigError("truth and prediction counts differ");
    if (classes.empty()) {
        classes = truth;
        classes.insert(classes.end(), predicted.begin(), predicted.end());
    }
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());

    std::map<std::string, std::size_t> index;
    for (std::size_t c = 0; c < classes.size(); ++c) index[classes[c]] = c;
    std::vector<std::vector<std::uint64_t>> confusion(classes.size(), std::vector<std::uint64_t>(classes.size(), 0));
    for (std::size_t i = 0; i < truth.size(); ++i) {
        auto p = index.find(predicted[i]);
        auto t = index.find(truth[i]);
        if (p == index.end() || t == index.end()) throw ConfigError("label outside the class list");
        ++confusion[p->second][t->second];
    }
    return report_from_confusion(std::move(classes), std::move(confusion));
}

EvalReport evaluate(const SvmModel& model, const FeatureMatrix& features, const std::vector<std::string>& tags,
                    const SplitPlan& plan, EvalPopulation population) {
    if (tags.size() != features.num_docs()) throw ConfigError("one tag per document is required");
    std::vector<std::size_t> rows;
    if (population == EvalPopulation::test) {
        rows = plan.test;
    } else {
        rows.resize(features.num_docs());
        for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    }
    if (rows.empty()) throw DataError("evaluation set is empty");

    std::vector<std::string> truth, predicted;
    for (std::size_t r : rows) {
        truth.push_back(tags[r]);
        predicted.push_back(model.predict(features.rows[r]));
    }
    std::vector<std::string> classes = model.classes();
    classes.insert(classes.end(), truth.begin(), truth.end());
    return evaluate_predictions(truth, predicted, std::move(classes));
}

namespace {

std::string percent(double v) { return fmt::format("{:.2f}%", 100.0 * v); }

std::string kappa_line(const EvalReport& r) {
    return r.kappa ? fmt::format("kappa: {:.3f}", *r.kappa) : std::string("kappa: undefined");
}

std::vector<CsvRow> grid(const EvalReport& r, std::string_view prefix) {
    const std::size_t n = r.classes.size();
    std::vector<CsvRow> rows;
    CsvRow kappa(n + 2);
    kappa[0] = kappa_line(r);
    rows.push_back(std::move(kappa));
    CsvRow header{""};
    for (const auto& c : r.classes) header.push_back(fmt::format("true {}{}", prefix, c));
    header.push_back("class precision");
    rows.push_back(std::move(header));
    for (std::size_t p = 0; p < n; ++p) {
        CsvRow row{fmt::format("pred. {}{}", prefix, r.classes[p])};
        for (std::size_t t = 0; t < n; ++t) row.push_back(std::to_string(r.confusion[p][t]));
        row.push_back(percent(r.precision[p]));
        rows.push_back(std::move(row));
    }
    CsvRow recall{"class recall"};
    for (std::size_t t = 0; t < n; ++t) recall.push_back(percent(r.recall[t]));
    recall.push_back("");
    rows.push_back(std::move(recall));
    return rows;
}

}  // namespace

std::string render_eval_text(const EvalReport& report, std::string_view class_prefix) {
    std::string out;
    for (const auto& row : grid(report, class_prefix)) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += '\t';
            out += row[i];
        }
        out += '\n';
    }
    return out;
}

std::string render_eval_csv(const EvalReport& report, std::string_view class_prefix) {
    std::string out;
    for (const auto& row : grid(report, class_prefix)) out += csv_line(row);
    return out;
}

}  // namespace etdmine
