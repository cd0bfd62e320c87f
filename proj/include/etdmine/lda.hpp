#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "etdmine/preprocess.hpp"

namespace etdmine {

struct LdaConfig {
    std::size_t num_topics = 5;
    /// Total document-topic concentration, split evenly across topics unless
    /// alpha_per_topic is set.
    double alpha = 10.0;
    bool alpha_per_topic = false;
    double beta = 0.01;
    std::size_t iterations = 1000;
    std::uint64_t seed = 1;

    double alpha_k() const { return alpha_per_topic ? alpha : alpha / static_cast<double>(num_topics); }
    double alpha_sum() const { return alpha_k() * static_cast<double>(num_topics); }
    /// K in [2, 26], alpha > 0, beta > 0, iterations >= 1. Throws ConfigError.
    void validate() const;
};

/// Unnormalized collapsed conditional over topics for one token:
///   (n_dk + alpha_k) * (n_kw + beta) / (n_k + V * beta)
/// All counts must exclude the token being resampled.
std::vector<double> gibbs_conditional(std::span<const int> doc_topic_counts,
                                      std::span<const int> word_topic_counts,
                                      std::span<const int> topic_totals, double alpha_k, double beta,
                                      std::size_t vocab_size);

/// Count tables of a collapsed Gibbs sampler. topic_word is stored term-major:
/// topic_word[w * K + k].
struct LdaCounts {
    std::size_t num_topics = 0;
    std::size_t vocab_size = 0;
    std::vector<std::vector<int>> assignments;  // z, per document per token
    std::vector<int> doc_topic;                 // D x K
    std::vector<int> topic_word;                // V x K
    std::vector<int> topic_totals;              // K
    std::vector<int> doc_lengths;               // D

    int n_dk(std::size_t d, std::size_t k) const { return doc_topic[d * num_topics + k]; }
    int n_kw(std::size_t k, std::size_t w) const { return topic_word[w * num_topics + k]; }
};

/// Checks the count-consistency equalities against the token streams and the
/// assignments. Returns an empty string when consistent, else a description.
std::string check_counts(const LdaCounts& counts, const std::vector<std::vector<TermId>>& docs);

/// Collapsed joint log-likelihood log p(w, z) for the given counts.
double log_likelihood(const LdaCounts& counts, const LdaConfig& config);

class TopicModel {
public:
    TopicModel(LdaConfig config, LdaCounts counts);

    const LdaConfig& config() const noexcept { return config_; }
    const LdaCounts& counts() const noexcept { return counts_; }
    std::size_t num_topics() const noexcept { return counts_.num_topics; }
    std::size_t num_docs() const noexcept { return counts_.doc_lengths.size(); }
    std::size_t vocab_size() const noexcept { return counts_.vocab_size; }

    double theta(std::size_t d, std::size_t k) const { return theta_[d * num_topics() + k]; }
    double phi(std::size_t k, std::size_t w) const { return phi_[k * vocab_size() + w]; }
    std::span<const double> theta_row(std::size_t d) const {
        return {theta_.data() + d * num_topics(), num_topics()};
    }
    std::span<const double> phi_row(std::size_t k) const {
        return {phi_.data() + k * vocab_size(), vocab_size()};
    }

    /// Mean of each theta column over all documents.
    const std::vector<double>& topic_weights() const noexcept { return weights_; }
    /// Topics by descending weight, ties by lower index. Position i carries tag 'a' + i.
    const std::vector<std::size_t>& topic_order() const noexcept { return order_; }
    /// Tag letter for a topic index.
    char tag_of(std::size_t topic) const;

private:
    LdaConfig config_;
    LdaCounts counts_;
    std::vector<double> theta_;
    std::vector<double> phi_;
    std::vector<double> weights_;
    std::vector<std::size_t> order_;
    std::vector<char> tags_;
};

/// Called after every sweep with the 1-based sweep number.
using SweepObserver = std::function<void(std::size_t sweep, const LdaCounts&)>;

/// Random initialization followed by config.iterations sequential-scan sweeps.
/// Throws ConfigError when no document has a token.
TopicModel fit_lda(const TokenizedCorpus& tc, const LdaConfig& config,
                   const SweepObserver& observer = {});
TopicModel fit_lda(const std::vector<std::vector<TermId>>& docs, std::size_t vocab_size,
                   const LdaConfig& config, const SweepObserver& observer = {});

struct RankedTerm {
    TermId term;
    double weight;
};

struct RankedDoc {
    std::size_t doc;
    double weight;
};

/// n terms with the largest phi for topic k; ties by term id.
std::vector<RankedTerm> top_words(const TopicModel& model, std::size_t topic, std::size_t n = 5);
/// n documents with the largest theta for topic k; ties by document index.
std::vector<RankedDoc> representative_docs(const TopicModel& model, std::size_t topic, std::size_t n = 5);
/// argmax theta per document, ties resolved toward the earlier topic in topic_order.
std::vector<char> dominant_tags(const TopicModel& model);

/// Position in topic_order of the argmax of a theta row; ties go to the earlier position.
std::size_t dominant_position(std::span<const double> theta_row, std::span<const std::size_t> topic_order);

}  // namespace etdmine
