#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "etdmine/corpus.hpp"

namespace etdmine {

using TermId = std::uint32_t;

struct PreprocessProfile {
    std::string name;
    bool lowercase = true;
    std::size_t min_token_len = 1;  // in code points
    std::set<std::string> stopwords;
    bool stem = false;
    std::size_t ngram_max = 1;

    /// Lowercase, bundled stopwords, no stemming, unigrams.
    static PreprocessProfile topic();
    /// Lowercase, bundled stopwords, Porter stemming, uni- and bigrams.
    static PreprocessProfile classify();
    /// Throws ConfigError when min_token_len or ngram_max is zero.
    void validate() const;
};

/// The bundled English stopword list.
const std::set<std::string>& default_stopwords();

/// One term per line, '#' starts a comment, surrounding whitespace ignored.
std::set<std::string> read_stopword_file(const std::filesystem::path& path);

/// Maximal runs of Unicode letters and digits in UTF-8 text. Invalid UTF-8
/// bytes act as separators.
std::vector<std::string> tokenize(std::string_view text, bool lowercase = true);

/// Number of code points in a UTF-8 string.
std::size_t utf8_length(std::string_view s);

/// Drops stopwords and tokens shorter than min_token_len code points.
std::vector<std::string> filter_stopwords(std::vector<std::string> tokens,
                                          const std::set<std::string>& stopwords,
                                          std::size_t min_token_len = 1);

/// Tokens followed by every contiguous k-gram, 2 <= k <= n_max, joined with '_'.
std::vector<std::string> ngrams(const std::vector<std::string>& tokens, std::size_t n_max);

/// tokenize -> filter_stopwords -> stem -> ngrams as configured by the profile.
std::vector<std::string> preprocess_text(std::string_view text, const PreprocessProfile& profile);

/// Dense term <-> id map. Ids follow first insertion.
class Vocabulary {
public:
    TermId add(const std::string& term);
    std::optional<TermId> find(std::string_view term) const;
    const std::string& term(TermId id) const { return terms_.at(id); }
    const std::vector<std::string>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }

    /// FNV-1a 64 over the length-prefixed ordered term list; identifies a vocabulary in model files.
    std::uint64_t hash() const;

private:
    struct Hash {
        using is_transparent = void;
        std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
    };
    std::vector<std::string> terms_;
    std::unordered_map<std::string, TermId, Hash, std::equal_to<>> index_;
};

std::uint64_t vocabulary_hash(std::span<const std::string> terms);

enum class TextSource { body, bibliographic };

struct TokenizedCorpus {
    PreprocessProfile profile;
    Vocabulary vocab;
    std::vector<std::string> doc_ids;
    std::vector<std::vector<TermId>> docs;
    std::vector<bool> empty;  // documents reduced to zero tokens

    std::size_t num_docs() const noexcept { return docs.size(); }
    std::size_t total_tokens() const;
};

TokenizedCorpus build_tokenized_corpus(const Corpus& corpus, const PreprocessProfile& profile,
                                       TextSource source = TextSource::body);

}  // namespace etdmine
