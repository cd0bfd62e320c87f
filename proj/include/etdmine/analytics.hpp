#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "etdmine/preprocess.hpp"

namespace etdmine {

/// A term or, with a trailing '*', every term starting with the prefix.
/// Matched terms are aggregated as one term.
class TermQuery {
public:
    /// Throws QueryError on an empty pattern or a '*' anywhere but the end.
    static TermQuery parse(std::string_view pattern);

    const std::string& pattern() const noexcept { return pattern_; }
    bool wildcard() const noexcept { return wildcard_; }
    /// Pattern without the trailing '*'.
    const std::string& stem() const noexcept { return stem_; }

    bool matches(std::string_view term) const;
    /// Matching vocabulary ids, ascending.
    std::vector<TermId> resolve(const Vocabulary& vocab) const;

private:
    std::string pattern_;
    std::string stem_;
    bool wildcard_ = false;
};

std::vector<TermQuery> parse_queries(const std::vector<std::string>& patterns);

struct TrendRow {
    std::size_t doc;
    std::string doc_id;
    std::uint64_t count;
    std::uint64_t doc_tokens;
    /// count / doc_tokens * 1e7, 0 for an empty document.
    double relative;
    std::vector<std::uint64_t> segments;
};

struct TrendReport {
    TermQuery query;
    std::vector<TrendRow> rows;
};

/// Per-document raw count, relative frequency per 10^7 tokens, and counts in
/// `segments` equal positional spans (the last span takes the remainder).
TrendReport trend(const TokenizedCorpus& tc, const TermQuery& query, std::size_t segments = 10);

/// Segment of a token position under the equal-span rule.
std::size_t segment_of(std::size_t position, std::size_t doc_length, std::size_t segments);

struct CollocateEdge {
    std::size_t keyword;  // index into CollocateGraph::keywords
    TermId neighbor;
    std::uint64_t weight;
};

struct CollocateGraph {
    std::vector<TermQuery> keywords;
    std::vector<std::uint64_t> keyword_counts;
    std::vector<CollocateEdge> edges;  // grouped by keyword, weight descending
    std::size_t window = 5;
};

/// Counts every token within `window` positions of each keyword occurrence,
/// excluding the occurrence itself, and keeps the top_n neighbors per keyword
/// (ties by term id). top_n = 0 keeps all.
CollocateGraph collocates(const TokenizedCorpus& tc, const std::vector<TermQuery>& keywords,
                          std::size_t window = 5, std::size_t top_n = 25);

struct KeywordCount {
    std::string keyword;
    std::uint64_t count;
};

/// Corpus-wide raw counts per keyword.
std::vector<KeywordCount> keyword_counts(const TokenizedCorpus& tc, const std::vector<TermQuery>& keywords);

std::string collocates_dot(const CollocateGraph& graph, const Vocabulary& vocab);
std::string collocates_json(const CollocateGraph& graph, const Vocabulary& vocab);

}  // namespace etdmine
