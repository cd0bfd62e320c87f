#include "etdmine/lda.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "etdmine/errors.hpp"
#include "etdmine/random.hpp"

namespace etdmine {

void LdaConfig::validate() const {
    if (num_topics < 2 || num_topics > 26)
        throw ConfigError(fmt::format("number of topics must be in [2, 26], got {}", num_topics));
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ConfigError("alpha must be > 0");
    if (!(beta > 0.0) || !std::isfinite(beta)) throw ConfigError("beta must be > 0");
    if (iterations < 1) throw ConfigError("iterations must be >= 1");
}

std::vector<double> gibbs_conditional(std::span<const int> doc_topic_counts,
                                      std::span<const int> word_topic_counts,
                                      std::span<const int> topic_totals, double alpha_k, double beta,
                                      std::size_t vocab_size) {
    const double v_beta = static_cast<double>(vocab_size) * beta;
    std::vector<double> weights(topic_totals.size());
    for (std::size_t k = 0; k < weights.size(); ++k)
        weights[k] = (doc_topic_counts[k] + alpha_k) * (word_topic_counts[k] + beta) /
                     (topic_totals[k] + v_beta);
    return weights;
}

std::string check_counts(const LdaCounts& c, const std::vector<std::vector<TermId>>& docs) {
    const std::size_t K = c.num_topics;
    if (c.assignments.size() != docs.size()) return "assignment table size differs from corpus";

    std::vector<int> dt(docs.size() * K, 0), tw(c.vocab_size * K, 0), tt(K, 0);
    for (std::size_t d = 0; d < docs.size(); ++d) {
        if (c.assignments[d].size() != docs[d].size())
            return fmt::format("document {}: {} assignments for {} tokens", d, c.assignments[d].size(),
                               docs[d].size());
        for (std::size_t i = 0; i < docs[d].size(); ++i) {
            int k = c.assignments[d][i];
            if (k < 0 || static_cast<std::size_t>(k) >= K) return fmt::format("document {}: topic {} out of range", d, k);
            ++dt[d * K + k];
            ++tw[docs[d][i] * K + k];
            ++tt[k];
        }
    }
    std::size_t total = 0;
    for (std::size_t d = 0; d < docs.size(); ++d) {
        long row = 0;
        for (std::size_t k = 0; k < K; ++k) row += c.doc_topic[d * K + k];
        if (row != static_cast<long>(docs[d].size()) || c.doc_lengths[d] != static_cast<int>(docs[d].size()))
            return fmt::format("document {}: sum_k n_dk = {} but the document has {} tokens", d, row,
                               docs[d].size());
        total += docs[d].size();
    }
    for (std::size_t k = 0; k < K; ++k) {
        long col = 0;
        for (std::size_t w = 0; w < c.vocab_size; ++w) col += c.topic_word[w * K + k];
        if (col != c.topic_totals[k])
            return fmt::format("topic {}: sum_w n_kw = {} but n_k = {}", k, col, c.topic_totals[k]);
    }
    long all = std::accumulate(c.topic_totals.begin(), c.topic_totals.end(), 0L);
    if (all != static_cast<long>(total)) return fmt::format("sum_k n_k = {} but corpus has {} tokens", all, total);
    if (dt != c.doc_topic) return "doc-topic table disagrees with assignments";
    if (tw != c.topic_word) return "topic-word table disagrees with assignments";
    if (tt != c.topic_totals) return "topic totals disagree with assignments";
    return {};
}

double log_likelihood(const LdaCounts& c, const LdaConfig& config) {
    const std::size_t K = c.num_topics, V = c.vocab_size, D = c.doc_lengths.size();
    const double beta = config.beta, v_beta = static_cast<double>(V) * beta;
    const double a_k = config.alpha_k(), a_sum = config.alpha_sum();

    double ll = static_cast<double>(K) * (std::lgamma(v_beta) - static_cast<double>(V) * std::lgamma(beta));
    for (std::size_t k = 0; k < K; ++k) {
        for (std::size_t w = 0; w < V; ++w) {
            int n = c.topic_word[w * K + k];
            if (n > 0) ll += std::lgamma(n + beta) - std::lgamma(beta);
        }
        ll -= std::lgamma(c.topic_totals[k] + v_beta) - std::lgamma(v_beta);
    }
    for (std::size_t d = 0; d < D; ++d) {
        for (std::size_t k = 0; k < K; ++k) {
            int n = c.doc_topic[d * K + k];
            if (n > 0) ll += std::lgamma(n + a_k) - std::lgamma(a_k);
        }
        ll -= std::lgamma(c.doc_lengths[d] + a_sum) - std::lgamma(a_sum);
    }
    return ll;
}

TopicModel::TopicModel(LdaConfig config, LdaCounts counts)
    : config_(std::move(config)), counts_(std::move(counts)) {
    const std::size_t K = counts_.num_topics, V = counts_.vocab_size, D = counts_.doc_lengths.size();
    const double a_k = config_.alpha_k(), a_sum = config_.alpha_sum();
    const double beta = config_.beta, v_beta = static_cast<double>(V) * beta;

    theta_.resize(D * K);
    for (std::size_t d = 0; d < D; ++d)
        for (std::size_t k = 0; k < K; ++k)
            theta_[d * K + k] = (counts_.n_dk(d, k) + a_k) / (counts_.doc_lengths[d] + a_sum);

    phi_.resize(K * V);
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t w = 0; w < V; ++w)
            phi_[k * V + w] = (counts_.n_kw(k, w) + beta) / (counts_.topic_totals[k] + v_beta);

    weights_.assign(K, 0.0);
    for (std::size_t d = 0; d < D; ++d)
        for (std::size_t k = 0; k < K; ++k) weights_[k] += theta_[d * K + k];
    if (D > 0)
        for (auto& w : weights_) w /= static_cast<double>(D);

    order_.resize(K);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [this](std::size_t a, std::size_t b) { return weights_[a] > weights_[b]; });
    tags_.resize(K);
    for (std::size_t pos = 0; pos < K; ++pos) tags_[order_[pos]] = static_cast<char>('a' + pos);
}

char TopicModel::tag_of(std::size_t topic) const { return tags_.at(topic); }

namespace {

class GibbsSampler {
public:
    GibbsSampler(const std::vector<std::vector<TermId>>& docs, std::size_t vocab_size, const LdaConfig& config)
        : docs_(docs), config_(config), rng_(config.seed) {
        const std::size_t K = config.num_topics;
        c_.num_topics = K;
        c_.vocab_size = vocab_size;
        c_.doc_topic.assign(docs.size() * K, 0);
        c_.topic_word.assign(vocab_size * K, 0);
        c_.topic_totals.assign(K, 0);
        c_.doc_lengths.resize(docs.size());
        c_.assignments.resize(docs.size());
        for (std::size_t d = 0; d < docs.size(); ++d) {
            c_.doc_lengths[d] = static_cast<int>(docs[d].size());
            auto& z = c_.assignments[d];
            z.resize(docs[d].size());
            for (std::size_t i = 0; i < docs[d].size(); ++i) {
                int k = static_cast<int>(rng_.below(K));
                z[i] = k;
                ++c_.doc_topic[d * K + k];
                ++c_.topic_word[docs[d][i] * K + k];
                ++c_.topic_totals[k];
            }
        }
        weights_.resize(K);
    }

    void sweep() {
        const std::size_t K = c_.num_topics;
        const double a_k = config_.alpha_k(), beta = config_.beta;
        const double v_beta = static_cast<double>(c_.vocab_size) * beta;
        for (std::size_t d = 0; d < docs_.size(); ++d) {
            int* dt = c_.doc_topic.data() + d * K;
            auto& z = c_.assignments[d];
            for (std::size_t i = 0; i < docs_[d].size(); ++i) {
                int* tw = c_.topic_word.data() + docs_[d][i] * K;
                int old = z[i];
                --dt[old];
                --tw[old];
                --c_.topic_totals[old];

                double total = 0.0;
                for (std::size_t k = 0; k < K; ++k) {
                    total += (dt[k] + a_k) * (tw[k] + beta) / (c_.topic_totals[k] + v_beta);
                    weights_[k] = total;
                }
                double u = rng_.uniform() * total;
                std::size_t k = 0;
                while (k + 1 < K && weights_[k] <= u) ++k;

                z[i] = static_cast<int>(k);
                ++dt[k];
                ++tw[k];
                ++c_.topic_totals[k];
            }
        }
    }

    const LdaCounts& counts() const noexcept { return c_; }
    LdaCounts release() { return std::move(c_); }

private:
    const std::vector<std::vector<TermId>>& docs_;
    const LdaConfig& config_;
    Rng rng_;
    LdaCounts c_;
    std::vector<double> weights_;  // cumulative
};

}  // namespace

TopicModel fit_lda(const std::vector<std::vector<TermId>>& docs, std::size_t vocab_size,
                   const LdaConfig& config, const SweepObserver& observer) {
    config.validate();
    bool any = std::any_of(docs.begin(), docs.end(), [](const auto& d) { return !d.empty(); });
    if (docs.empty() || vocab_size == 0 || !any)
        throw ConfigError("topic model needs at least one non-empty document");
    for (const auto& d : docs)
        for (TermId w : d)
            if (w >= vocab_size) throw ConfigError("token id outside the vocabulary");

    GibbsSampler sampler(docs, vocab_size, config);
    for (std::size_t it = 1; it <= config.iterations; ++it) {
        sampler.sweep();
        if (observer) observer(it, sampler.counts());
    }
    return TopicModel(config, sampler.release());
}

TopicModel fit_lda(const TokenizedCorpus& tc, const LdaConfig& config, const SweepObserver& observer) {
    return fit_lda(tc.docs, tc.vocab.size(), config, observer);
}

std::vector<RankedTerm> top_words(const TopicModel& model, std::size_t topic, std::size_t n) {
    if (topic >= model.num_topics()) throw ConfigError(fmt::format("topic {} out of range", topic));
    auto row = model.phi_row(topic);
    std::vector<TermId> ids(row.size());
    std::iota(ids.begin(), ids.end(), TermId{0});
    n = std::min(n, ids.size());
    std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(n), ids.end(),
                      [&](TermId a, TermId b) { return row[a] > row[b] || (row[a] == row[b] && a < b); });
    std::vector<RankedTerm> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back({ids[i], row[ids[i]]});
    return out;
}

std::vector<RankedDoc> representative_docs(const TopicModel& model, std::size_t topic, std::size_t n) {
    if (topic >= model.num_topics()) throw ConfigError(fmt::format("topic {} out of range", topic));
    std::vector<std::size_t> ids(model.num_docs());
    std::iota(ids.begin(), ids.end(), std::size_t{0});
    n = std::min(n, ids.size());
    auto th = [&](std::size_t d) { return model.theta(d, topic); };
    std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(n), ids.end(),
                      [&](std::size_t a, std::size_t b) { return th(a) > th(b) || (th(a) == th(b) && a < b); });
    std::vector<RankedDoc> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back({ids[i], th(ids[i])});
    return out;
}

std::size_t dominant_position(std::span<const double> theta_row, std::span<const std::size_t> topic_order) {
    std::size_t best = 0;
    for (std::size_t pos = 1; pos < topic_order.size(); ++pos)
        if (theta_row[topic_order[pos]] > theta_row[topic_order[best]]) best = pos;
    return best;
}

std::vector<char> dominant_tags(const TopicModel& model) {
    std::vector<char> tags(model.num_docs());
    for (std::size_t d = 0; d < tags.size(); ++d)
        tags[d] = static_cast<char>('a' + dominant_position(model.theta_row(d), model.topic_order()));
    return tags;
}

}  // namespace etdmine
