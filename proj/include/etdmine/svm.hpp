#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "etdmine/features.hpp"

namespace etdmine {

struct SvmOptions {
    double C = 1.0;
    std::size_t max_epochs = 1000;
    /// Stop once an accepted epoch lowers the primal objective by less than
    /// this fraction.
    double relative_tolerance = 1e-6;
    /// Dual stopping tolerance on the maximal KKT violation.
    double kkt_tolerance = 1e-8;
};

/// Primal objective (1/2)|w|^2 + C * sum_i max(0, 1 - y_i (w.x_i + b)).
double hinge_objective(std::span<const double> w, double b, const std::vector<const SparseVector*>& rows,
                       std::span<const int> labels, double C);

struct BinarySvm {
    std::vector<double> w;
    double b = 0.0;
    /// Primal objective after each accepted epoch; non-increasing.
    std::vector<double> objective_trace;
    std::size_t epochs = 0;
    bool converged = false;
};

/// Soft-margin linear SVM with an unregularized bias, solved in the dual by
/// SMO with second-order working-set selection. After each epoch (one update
/// per training point) the primal iterate is accepted only if its objective
/// does not exceed the best so far; the best accepted iterate is returned.
/// labels are +1/-1 and both signs must be present.
BinarySvm train_binary_svm(const std::vector<const SparseVector*>& rows, std::span<const int> labels,
                           std::size_t dim, const SvmOptions& options = {});

/// Index of the largest decision value; ties go to the lowest index.
std::size_t argmax_decision(std::span<const double> values);

/// One-vs-rest linear SVM over TF-IDF rows, together with the vocabulary and
/// idf table needed to vectorize new text.
class SvmModel {
public:
    static constexpr int kFormatVersion = 1;

    /// Classes sorted alphabetically.
    const std::vector<std::string>& classes() const noexcept { return classes_; }
    const std::vector<double>& weights(std::size_t c) const { return weights_.at(c); }
    double bias(std::size_t c) const { return bias_.at(c); }
    double C() const noexcept { return C_; }
    const Vocabulary& vocab() const noexcept { return vocab_; }
    const std::vector<double>& idf() const noexcept { return idf_; }
    std::uint64_t vocab_hash() const noexcept { return vocab_hash_; }
    /// Set when training saw a single class; the model then always predicts it.
    bool degenerate() const noexcept { return degenerate_; }
    /// Per-class training traces, empty for a degenerate model.
    const std::vector<BinarySvm>& training() const noexcept { return training_; }

    std::vector<double> decision_values(const SparseVector& x) const;
    /// argmax of decision values; ties go to the alphabetically first class.
    const std::string& predict(const SparseVector& x) const;

    /// Multiplies every (w_c, b_c) by factor.
    void scale(double factor);

    void save(const std::filesystem::path& path) const;
    /// Throws DataError on a malformed file or a vocabulary hash mismatch.
    static SvmModel load(const std::filesystem::path& path);

    friend SvmModel train_svm(const FeatureMatrix&, const std::vector<std::string>&, std::span<const std::size_t>,
                              const SvmOptions&);

private:
    std::vector<std::string> classes_;
    std::vector<std::vector<double>> weights_;
    std::vector<double> bias_;
    double C_ = 1.0;
    Vocabulary vocab_;
    std::vector<double> idf_;
    std::uint64_t vocab_hash_ = 0;
    bool degenerate_ = false;
    std::vector<BinarySvm> training_;
};

/// Trains on the rows listed in train_rows. tags holds one label per
/// FeatureMatrix row. Throws ConfigError on an empty training set.
SvmModel train_svm(const FeatureMatrix& features, const std::vector<std::string>& tags,
                   std::span<const std::size_t> train_rows, const SvmOptions& options = {});

}  // namespace etdmine
