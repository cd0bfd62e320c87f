#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "etdmine/preprocess.hpp"

namespace etdmine {

struct SparseEntry {
    TermId index;
    double value;
};

/// Entries sorted by index, no explicit zeros.
using SparseVector = std::vector<SparseEntry>;

double dot(const SparseVector& x, std::span<const double> dense);
double dot(const SparseVector& a, const SparseVector& b);
double squared_norm(const SparseVector& x);

/// L2-normalized TF-IDF rows. tf is the raw in-document count, idf = ln(D / df).
struct FeatureMatrix {
    std::vector<std::string> doc_ids;
    Vocabulary vocab;
    std::vector<double> idf;
    std::vector<SparseVector> rows;
    std::vector<bool> zero_rows;  // empty documents, or only corpus-wide terms

    std::size_t num_docs() const noexcept { return rows.size(); }
    std::size_t dim() const noexcept { return vocab.size(); }
};

FeatureMatrix vectorize(const TokenizedCorpus& tc);

/// Vectorizes preprocessed tokens against a fixed vocabulary and idf table;
/// unseen terms are dropped.
SparseVector vectorize_tokens(const std::vector<std::string>& tokens, const Vocabulary& vocab,
                              std::span<const double> idf);

/// Seeded train/test partition over document indices 0..D-1. Both lists ascending.
struct SplitPlan {
    std::uint64_t seed = 0;
    double train_ratio = 0.7;
    bool stratified = false;
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
    std::vector<std::string> warnings;
};

/// Uniform shuffle, first floor(ratio * D) indices to train.
/// Throws ConfigError unless 0 < ratio < 1 and D >= 2.
SplitPlan split(std::size_t num_docs, double train_ratio, std::uint64_t seed);

/// Per-tag proportional allocation with the same total train size as split().
/// Tags seen once are pooled and shuffled together, with a warning.
SplitPlan stratified_split(const std::vector<std::string>& tags, double train_ratio, std::uint64_t seed);

}  // namespace etdmine
