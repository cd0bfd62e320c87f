#include "etdmine/analytics.hpp"

#include <algorithm>

#include <fmt/format.h>
#include <json.hpp>

#include "etdmine/errors.hpp"

namespace etdmine {

TermQuery TermQuery::parse(std::string_view pattern) {
    if (pattern.empty()) throw QueryError("empty term query");
    auto star = pattern.find('*');
    if (star != std::string_view::npos && star != pattern.size() - 1)
        throw QueryError(fmt::format("'*' is only allowed at the end of a query: '{}'", pattern));
    if (pattern == "*") throw QueryError("a wildcard query needs a prefix");
    TermQuery q;
    q.pattern_ = std::string(pattern);
    q.wildcard_ = star != std::string_view::npos;
    q.stem_ = q.wildcard_ ? std::string(pattern.substr(0, pattern.size() - 1)) : q.pattern_;
    return q;
}

bool TermQuery::matches(std::string_view term) const {
    return wildcard_ ? term.starts_with(stem_) : term == stem_;
}

std::vector<TermId> TermQuery::resolve(const Vocabulary& vocab) const {
    std::vector<TermId> ids;
    if (!wildcard_) {
        if (auto id = vocab.find(stem_)) ids.push_back(*id);
        return ids;
    }
    for (TermId id = 0; id < vocab.size(); ++id)
        if (matches(vocab.term(id))) ids.push_back(id);
    return ids;
}

std::vector<TermQuery> parse_queries(const std::vector<std::string>& patterns) {
    std::vector<TermQuery> out;
    out.reserve(patterns.size());
    for (const auto& p : patterns) out.push_back(TermQuery::parse(p));
    return out;
}

namespace {

std::vector<bool> match_mask(const TermQuery& q, const Vocabulary& vocab) {
    std::vector<bool> mask(vocab.size(), false);
    for (TermId id : q.resolve(vocab)) mask[id] = true;
    return mask;
}

}  // namespace

std::size_t segment_of(std::size_t position, std::size_t doc_length, std::size_t segments) {
    std::size_t span = doc_length / segments;
    if (span == 0) return segments - 1;
    return std::min(position / span, segments - 1);
}

TrendReport trend(const TokenizedCorpus& tc, const TermQuery& query, std::size_t segments) {
    if (segments < 1) throw ConfigError("segments must be >= 1");
    auto mask = match_mask(query, tc.vocab);
    TrendReport report{query, {}};
    for (std::size_t d = 0; d < tc.num_docs(); ++d) {
        const auto& doc = tc.docs[d];
        TrendRow row{d, tc.doc_ids[d], 0, doc.size(), 0.0, std::vector<std::uint64_t>(segments, 0)};
        for (std::size_t p = 0; p < doc.size(); ++p) {
            if (!mask[doc[p]]) continue;
            ++row.count;
            ++row.segments[segment_of(p, doc.size(), segments)];
        }
        // count * 1e7 is exact in a double, so this is a single rounding.
        if (row.doc_tokens > 0)
            row.relative = static_cast<double>(row.count) * 1e7 / static_cast<double>(row.doc_tokens);
        report.rows.push_back(std::move(row));
    }
    return report;
}

CollocateGraph collocates(const TokenizedCorpus& tc, const std::vector<TermQuery>& keywords, std::size_t window,
                          std::size_t top_n) {
    if (window < 1) throw ConfigError("collocate window must be >= 1");
    CollocateGraph graph;
    graph.keywords = keywords;
    graph.window = window;

    std::vector<std::uint64_t> weight(tc.vocab.size());
    for (std::size_t q = 0; q < keywords.size(); ++q) {
        auto mask = match_mask(keywords[q], tc.vocab);
        std::fill(weight.begin(), weight.end(), 0);
        std::uint64_t occurrences = 0;
        for (const auto& doc : tc.docs) {
            const std::size_t n = doc.size();
            for (std::size_t p = 0; p < n; ++p) {
                if (!mask[doc[p]]) continue;
                ++occurrences;
                std::size_t lo = p >= window ? p - window : 0;
                std::size_t hi = std::min(n - 1, p + window);
                for (std::size_t i = lo; i <= hi; ++i)
                    if (i != p) ++weight[doc[i]];
            }
        }
        graph.keyword_counts.push_back(occurrences);

        std::vector<CollocateEdge> edges;
        for (TermId t = 0; t < weight.size(); ++t)
            if (weight[t] > 0) edges.push_back({q, t, weight[t]});
        std::stable_sort(edges.begin(), edges.end(),
                         [](const CollocateEdge& a, const CollocateEdge& b) { return a.weight > b.weight; });
        if (top_n > 0 && edges.size() > top_n) edges.resize(top_n);
        graph.edges.insert(graph.edges.end(), edges.begin(), edges.end());
    }
    return graph;
}

std::vector<KeywordCount> keyword_counts(const TokenizedCorpus& tc, const std::vector<TermQuery>& keywords) {
    std::vector<KeywordCount> out;
    for (const auto& q : keywords) {
        auto mask = match_mask(q, tc.vocab);
        std::uint64_t n = 0;
        for (const auto& doc : tc.docs)
            for (TermId t : doc) n += mask[t];
        out.push_back({q.pattern(), n});
    }
    return out;
}

namespace {

std::string dot_quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + '"';
}

}  // namespace

std::string collocates_dot(const CollocateGraph& graph, const Vocabulary& vocab) {
    std::string out = fmt::format("graph collocates {{\n  // window = {}\n", graph.window);
    for (std::size_t q = 0; q < graph.keywords.size(); ++q)
        out += fmt::format("  {} [shape=box, count={}];\n", dot_quote(graph.keywords[q].pattern()),
                           graph.keyword_counts[q]);
    for (const auto& e : graph.edges)
        out += fmt::format("  {} -- {} [weight={}];\n", dot_quote(graph.keywords[e.keyword].pattern()),
                           dot_quote(vocab.term(e.neighbor)), e.weight);
    out += "}\n";
    return out;
}

std::string collocates_json(const CollocateGraph& graph, const Vocabulary& vocab) {
    nlohmann::ordered_json j;
    j["window"] = graph.window;
    j["keywords"] = nlohmann::ordered_json::array();
    for (std::size_t q = 0; q < graph.keywords.size(); ++q)
        j["keywords"].push_back({{"keyword", graph.keywords[q].pattern()}, {"count", graph.keyword_counts[q]}});
    j["edges"] = nlohmann::ordered_json::array();
    for (const auto& e : graph.edges)
        j["edges"].push_back({{"source", graph.keywords[e.keyword].pattern()},
                              {"target", vocab.term(e.neighbor)},
                              {"weight", e.weight}});
    return j.dump(2) + "\n";
}

}  // namespace etdmine
