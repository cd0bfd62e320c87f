#include "etdmine/preprocess.hpp"

#include <numeric>

#include "etdmine/errors.hpp"
#include "etdmine/porter.hpp"

namespace etdmine {

PreprocessProfile PreprocessProfile::topic() {
    PreprocessProfile p;
    p.name = "topic";
    p.stopwords = default_stopwords();
    return p;
}

PreprocessProfile PreprocessProfile::classify() {
    PreprocessProfile p;
    p.name = "classify";
    p.stopwords = default_stopwords();
    p.stem = true;
    p.ngram_max = 2;
    return p;
}

void PreprocessProfile::validate() const {
    if (min_token_len < 1) throw ConfigError("profile '" + name + "': min_token_len must be >= 1");
    if (ngram_max < 1) throw ConfigError("profile '" + name + "': ngram_max must be >= 1");
}

std::vector<std::string> filter_stopwords(std::vector<std::string> tokens,
                                          const std::set<std::string>& stopwords,
                                          std::size_t min_token_len) {
    std::erase_if(tokens, [&](const std::string& t) {
        return stopwords.count(t) > 0 || utf8_length(t) < min_token_len;
    });
    return tokens;
}

std::vector<std::string> ngrams(const std::vector<std::string>& tokens, std::size_t n_max) {
    std::vector<std::string> out(tokens);
    for (std::size_t k = 2; k <= n_max && k <= tokens.size(); ++k) {
        for (std::size_t i = 0; i + k <= tokens.size(); ++i) {
            std::string gram = tokens[i];
            for (std::size_t j = 1; j < k; ++j) {
                gram += '_';
                gram += tokens[i + j];
            }
            out.push_back(std::move(gram));
        }
    }
    return out;
}

std::vector<std::string> preprocess_text(std::string_view text, const PreprocessProfile& profile) {
    auto tokens = filter_stopwords(tokenize(text, profile.lowercase), profile.stopwords,
                                   profile.min_token_len);
    if (profile.stem)
        for (auto& t : tokens) t = porter_stem(t);
    if (profile.ngram_max > 1) tokens = ngrams(tokens, profile.ngram_max);
    return tokens;
}

TermId Vocabulary::add(const std::string& term) {
    auto [it, inserted] = index_.try_emplace(term, static_cast<TermId>(terms_.size()));
    if (inserted) terms_.push_back(term);
    return it->second;
}

std::optional<TermId> Vocabulary::find(std::string_view term) const {
    auto it = index_.find(term);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::uint64_t vocabulary_hash(std::span<const std::string> terms) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](unsigned char c) {
        h ^= c;
        h *= 1099511628211ULL;
    };
    for (const auto& t : terms) {
        for (std::size_t n = t.size(), i = 0; i < 8; ++i, n >>= 8) mix(static_cast<unsigned char>(n & 0xff));
        for (char c : t) mix(static_cast<unsigned char>(c));
    }
    return h;
}

std::uint64_t Vocabulary::hash() const { return vocabulary_hash(terms_); }

std::size_t TokenizedCorpus::total_tokens() const {
    return std::accumulate(docs.begin(), docs.end(), std::size_t{0},
                           [](std::size_t n, const auto& d) { return n + d.size(); });
}

TokenizedCorpus build_tokenized_corpus(const Corpus& corpus, const PreprocessProfile& profile,
                                       TextSource source) {
    profile.validate();
    TokenizedCorpus tc;
    tc.profile = profile;
    tc.doc_ids.reserve(corpus.size());
    tc.docs.reserve(corpus.size());
    for (const auto& doc : corpus.documents()) {
        auto tokens = preprocess_text(source == TextSource::body ? std::string_view(doc.text)
                                                                 : std::string_view(bibliographic_text(doc)),
                                      profile);
        std::vector<TermId> ids;
        ids.reserve(tokens.size());
        for (const auto& t : tokens) ids.push_back(tc.vocab.add(t));
        tc.doc_ids.push_back(doc.meta.id);
        tc.empty.push_back(ids.empty());
        tc.docs.push_back(std::move(ids));
    }
    return tc;
}

}  // namespace etdmine
