#include <doctest.h>

#include <cmath>
#include <random>

#include "etdmine/errors.hpp"
#include "etdmine/lda.hpp"
#include "support/synthetic.hpp"
#include "support/test_util.hpp"

using namespace etdmine;
using Docs = std::vector<std::vector<TermId>>;

namespace {

// Two disjoint vocabulary blocks; doc i draws only from block i % 2.
Docs block_corpus(std::size_t docs, std::size_t block, std::size_t len, std::uint32_t seed,
                  std::vector<std::size_t>& truth) {
    std::mt19937 gen(seed);
    Docs out(docs);
    truth.assign(docs, 0);
    for (std::size_t d = 0; d < docs; ++d) {
        truth[d] = d % 2;
        for (std::size_t i = 0; i < len; ++i)
            out[d].push_back(static_cast<TermId>(truth[d] * block + gen() % block));
    }
    return out;
}

std::vector<std::size_t> dominant_topics(const TopicModel& m) {
    std::vector<std::size_t> out;
    for (std::size_t d = 0; d < m.num_docs(); ++d) {
        auto row = m.theta_row(d);
        out.push_back(static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin()));
    }
    return out;
}

// Recounts every table from the assignments; exact integer comparison.
bool counts_consistent(const LdaCounts& c, const Docs& docs) {
    const std::size_t K = c.num_topics;
    std::vector<int> dk(docs.size() * K, 0), kw(c.vocab_size * K, 0), k_tot(K, 0);
    if (c.assignments.size() != docs.size()) return false;
    for (std::size_t d = 0; d < docs.size(); ++d) {
        if (c.assignments[d].size() != docs[d].size()) return false;
        if (c.doc_lengths[d] != static_cast<int>(docs[d].size())) return false;
        for (std::size_t i = 0; i < docs[d].size(); ++i) {
            auto z = static_cast<std::size_t>(c.assignments[d][i]);
            if (z >= K) return false;
            ++dk[d * K + z];
            ++kw[docs[d][i] * K + z];
            ++k_tot[z];
        }
    }
    return dk == c.doc_topic && kw == c.topic_word && k_tot == c.topic_totals;
}

LdaCounts hand_counts(std::size_t K, std::size_t V, const std::vector<std::vector<int>>& doc_topic,
                      const std::vector<std::vector<int>>& topic_word) {
    LdaCounts c;
    c.num_topics = K;
    c.vocab_size = V;
    c.topic_totals.assign(K, 0);
    for (const auto& row : doc_topic) {
        int n = 0;
        for (auto v : row) {
            c.doc_topic.push_back(v);
            n += v;
        }
        c.doc_lengths.push_back(n);
    }
    c.topic_word.assign(V * K, 0);
    for (std::size_t k = 0; k < topic_word.size(); ++k)
        for (std::size_t w = 0; w < V; ++w) {
            c.topic_word[w * K + k] = topic_word[k][w];
            c.topic_totals[k] += topic_word[k][w];
        }
    return c;
}

LdaConfig sharp_config(std::size_t K) {
    LdaConfig cfg;
    cfg.num_topics = K;
    cfg.alpha = 1e-12;
    cfg.beta = 1e-12;
    return cfg;
}

}  // namespace

TEST_CASE("gibbs_conditional") {
    SUBCASE("hand evaluated") {
        std::vector<int> nd{1, 0}, nw{1, 0}, nk{2, 0};
        auto p = gibbs_conditional(nd, nw, nk, 1.0, 0.5, 2);
        REQUIRE(p.size() == 2);
        CHECK(p[0] == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(p[1] == doctest::Approx(0.5).epsilon(1e-15));
    }
    SUBCASE("zero counts are uniform") {
        std::vector<int> z(4, 0);
        auto p = gibbs_conditional(z, z, z, 0.3, 0.01, 7);
        for (auto v : p) CHECK(v == p[0]);
        CHECK(p[0] == doctest::Approx(0.3 * 0.01 / 0.07));
    }
}

TEST_CASE("config validation and alpha semantics") {
    LdaConfig cfg;
    CHECK(cfg.alpha_k() == doctest::Approx(2.0));
    CHECK(cfg.alpha_sum() == doctest::Approx(10.0));
    cfg.alpha_per_topic = true;
    CHECK(cfg.alpha_k() == doctest::Approx(10.0));
    CHECK(cfg.alpha_sum() == doctest::Approx(50.0));
    CHECK_NOTHROW(cfg.validate());
    cfg.num_topics = 1;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.num_topics = 27;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.num_topics = 5;
    cfg.beta = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("fit rejects an empty corpus") {
    LdaConfig cfg;
    cfg.iterations = 5;
    CHECK_THROWS_AS(fit_lda(Docs{{}, {}}, 3, cfg), ConfigError);
    CHECK_THROWS_AS(fit_lda(Docs{}, 0, cfg), ConfigError);
}

TEST_CASE("fit is deterministic") {
    std::vector<std::size_t> truth;
    auto docs = block_corpus(20, 10, 30, 3, truth);
    LdaConfig cfg;
    cfg.num_topics = 3;
    cfg.iterations = 50;
    cfg.seed = 99;
    auto a = fit_lda(docs, 20, cfg);
    auto b = fit_lda(docs, 20, cfg);
    CHECK(a.counts().assignments == b.counts().assignments);
    for (std::size_t d = 0; d < a.num_docs(); ++d)
        for (std::size_t k = 0; k < 3; ++k) CHECK(a.theta(d, k) == b.theta(d, k));
    for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t w = 0; w < 20; ++w) CHECK(a.phi(k, w) == b.phi(k, w));
}

TEST_CASE("two disjoint blocks are recovered") {
    std::vector<std::size_t> truth;
    auto docs = block_corpus(60, 25, 40, 5, truth);
    LdaConfig cfg;
    cfg.num_topics = 2;
    cfg.iterations = 200;
    cfg.seed = 4;
    auto model = fit_lda(docs, 50, cfg);
    CHECK(testing::matched_agreement(truth, dominant_topics(model), 2) >= 0.95);
}

TEST_CASE("count tables stay consistent after every sweep") {
    std::vector<std::size_t> truth;
    auto docs = block_corpus(30, 15, 25, 8, truth);
    docs.push_back({});
    LdaConfig cfg;
    cfg.num_topics = 4;
    cfg.iterations = 40;
    std::size_t sweeps = 0, bad = 0;
    auto model = fit_lda(docs, 30, cfg, [&](std::size_t sweep, const LdaCounts& c) {
        ++sweeps;
        if (sweep != sweeps || !counts_consistent(c, docs) || !check_counts(c, docs).empty()) ++bad;
    });
    CHECK(sweeps == 40);
    CHECK(bad == 0);
    CHECK(counts_consistent(model.counts(), docs));

    for (std::size_t d = 0; d < model.num_docs(); ++d) {
        double s = 0;
        for (auto v : model.theta_row(d)) {
            CHECK(v >= 0);
            s += v;
        }
        CHECK(std::abs(s - 1.0) <= 1e-9);
    }
    for (std::size_t k = 0; k < 4; ++k) {
        double s = 0;
        for (auto v : model.phi_row(k)) s += v;
        CHECK(std::abs(s - 1.0) <= 1e-9);
    }
    auto last = model.theta_row(model.num_docs() - 1);
    for (auto v : last) CHECK(v == doctest::Approx(0.25));
}

TEST_CASE("check_counts detects tampering") {
    std::vector<std::size_t> truth;
    auto docs = block_corpus(5, 4, 6, 1, truth);
    LdaConfig cfg;
    cfg.num_topics = 2;
    cfg.iterations = 2;
    auto c = fit_lda(docs, 8, cfg).counts();
    CHECK(check_counts(c, docs).empty());
    c.topic_totals[0] += 1;
    CHECK_FALSE(check_counts(c, docs).empty());
}

TEST_CASE("log-likelihood improves on planted data") {
    synth::Spec spec;
    spec.docs = 60;
    spec.min_len = 60;
    spec.max_len = 90;
    auto corpus = synth::generate(spec);
    auto tc = build_tokenized_corpus(Corpus(corpus.docs), PreprocessProfile::topic());

    int improved = 0;
    for (std::uint64_t seed : {1, 2, 3}) {
        LdaConfig cfg;
        cfg.iterations = 200;
        cfg.seed = seed;
        std::vector<double> ll;
        bool finite = true;
        fit_lda(tc, cfg, [&](std::size_t, const LdaCounts& c) {
            ll.push_back(log_likelihood(c, cfg));
            finite = finite && std::isfinite(ll.back());
        });
        CHECK(finite);
        const std::size_t tail = ll.size() / 10;
        double mean = 0;
        for (std::size_t i = ll.size() - tail; i < ll.size(); ++i) mean += ll[i];
        mean /= static_cast<double>(tail);
        if (mean >= ll.front()) ++improved;
    }
    CHECK(improved >= 2);
}

TEST_CASE("planted topics: completion, seed agreement and tag order") {
    auto corpus = synth::generate(synth::Spec{});
    auto tc = build_tokenized_corpus(Corpus(corpus.docs), PreprocessProfile::topic());
    LdaConfig cfg;
    cfg.seed = 11;
    auto a = fit_lda(tc, cfg);
    cfg.seed = 12;
    auto b = fit_lda(tc, cfg);

    CHECK(check_counts(a.counts(), tc.docs).empty());
    CHECK(testing::matched_agreement(dominant_topics(a), dominant_topics(b), 5) >= 0.90);
    CHECK(testing::matched_agreement(corpus.planted, dominant_topics(a), 5) >= 0.90);

    const auto& order = a.topic_order();
    for (std::size_t i = 1; i < order.size(); ++i)
        CHECK(a.topic_weights()[order[i - 1]] >= a.topic_weights()[order[i]]);
    for (std::size_t i = 0; i < order.size(); ++i) CHECK(a.tag_of(order[i]) == static_cast<char>('a' + i));

    auto tags = dominant_tags(a);
    auto dom = dominant_topics(a);
    for (std::size_t d = 0; d < tags.size(); ++d) CHECK(tags[d] == a.tag_of(dom[d]));
}

TEST_CASE("top_words") {
    TopicModel m(sharp_config(2), hand_counts(2, 3, {{10, 0}}, {{5, 3, 2}, {0, 0, 0}}));
    auto top = top_words(m, 0, 2);
    REQUIRE(top.size() == 2);
    CHECK(top[0].term == 0);
    CHECK(top[1].term == 1);
    CHECK(top[0].weight == doctest::Approx(0.5));

    auto all = top_words(m, 0, 10);
    CHECK(all.size() == 3);
    auto ties = top_words(m, 1, 3);
    REQUIRE(ties.size() == 3);
    CHECK(ties[0].term == 0);
    CHECK(ties[1].term == 1);
    CHECK(ties[2].term == 2);
}

TEST_CASE("representative_docs") {
    TopicModel m(sharp_config(2), hand_counts(2, 1, {{9, 1}, {1, 9}, {5, 5}}, {{15}, {15}}));
    auto top = representative_docs(m, 0, 2);
    REQUIRE(top.size() == 2);
    CHECK(top[0].doc == 0);
    CHECK(top[1].doc == 2);
    CHECK(top[0].weight == doctest::Approx(0.9));
    CHECK(representative_docs(m, 0, 10).size() == 3);

    TopicModel single(sharp_config(2), hand_counts(2, 1, {{3, 1}}, {{3}, {1}}));
    auto one = representative_docs(single, 1, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].doc == 0);
}

TEST_CASE("dominant position") {
    std::vector<std::size_t> identity{0, 1, 2}, swapped{1, 0, 2};
    std::vector<double> r1{0.7, 0.2, 0.1}, r2{0.2, 0.7, 0.1}, flat(3, 1.0 / 3);
    CHECK(dominant_position(r1, identity) == 0);
    CHECK(dominant_position(r2, swapped) == 0);
    CHECK(dominant_position(flat, identity) == 0);
    CHECK(dominant_position(flat, std::vector<std::size_t>{2, 0, 1}) == 0);
    CHECK(dominant_position(r1, swapped) == 1);
}

TEST_CASE("dominant_tags follow corpus weight") {
    // topic 1 dominates most documents, so it gets tag 'a'
    TopicModel m(sharp_config(2), hand_counts(2, 1, {{1, 9}, {2, 8}, {6, 4}}, {{9}, {21}}));
    CHECK(m.topic_order() == std::vector<std::size_t>{1, 0});
    CHECK(dominant_tags(m) == std::vector<char>{'a', 'a', 'b'});
}
