#include "etdmine/topic_report.hpp"

#include <fmt/format.h>

namespace etdmine {

std::vector<CsvRow> doc_topic_rows(const TopicModel& model, const TokenizedCorpus& tc, CsvRow& header) {
    const auto& order = model.topic_order();
    header = {"id", "tag"};
    for (std::size_t pos = 0; pos < order.size(); ++pos) header.push_back(std::string(1, static_cast<char>('a' + pos)));

    auto tags = dominant_tags(model);
    std::vector<CsvRow> rows;
    for (std::size_t d = 0; d < model.num_docs(); ++d) {
        CsvRow row{tc.doc_ids[d], std::string(1, tags[d])};
        for (std::size_t k : order) row.push_back(format_fixed(model.theta(d, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<CsvRow> topic_word_rows(const TopicModel& model, const Vocabulary& vocab, std::size_t n,
                                    CsvRow& header) {
    header = {"tag", "rank", "term", "phi"};
    std::vector<CsvRow> rows;
    for (std::size_t k : model.topic_order()) {
        auto words = top_words(model, k, n);
        for (std::size_t r = 0; r < words.size(); ++r)
            rows.push_back({std::string(1, model.tag_of(k)), std::to_string(r + 1), vocab.term(words[r].term),
                            format_fixed(words[r].weight)});
    }
    return rows;
}

std::string html_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string topic_report_html(const TopicModel& model, const TokenizedCorpus& tc, const Corpus& corpus,
                              std::size_t n_words, std::size_t n_docs) {
    const auto& cfg = model.config();
    std::string html;
    html += "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n<title>Topic model summary</title>\n";
    html += "<style>body{font-family:sans-serif}table{border-collapse:collapse}"
            "td,th{border:1px solid #999;padding:4px 8px;vertical-align:top}</style>\n</head>\n<body>\n";
    html += fmt::format("<h1>Topic model summary</h1>\n<p>documents={}; topics={}; alpha={}; beta={}; "
                        "iterations={}; seed={}</p>\n",
                        model.num_docs(), model.num_topics(), cfg.alpha, cfg.beta, cfg.iterations, cfg.seed);

    html += "<h2>Top words</h2>\n<table>\n<tr><th>Tag</th><th>Weight</th><th>Words</th></tr>\n";
    for (std::size_t k : model.topic_order()) {
        std::string words;
        for (const auto& w : top_words(model, k, n_words)) {
            if (!words.empty()) words += ", ";
            words += html_escape(tc.vocab.term(w.term));
        }
        html += fmt::format("<tr><td>Topic {}</td><td>{}</td><td>{}</td></tr>\n", model.tag_of(k),
                            format_fixed(model.topic_weights()[k], 4), words);
    }
    html += "</table>\n";

    html += "<h2>Representative documents</h2>\n";
    for (std::size_t k : model.topic_order()) {
        html += fmt::format("<h3>Topic {}</h3>\n<ol>\n", model.tag_of(k));
        for (const auto& r : representative_docs(model, k, n_docs)) {
            const auto& id = tc.doc_ids[r.doc];
            std::string title = id;
            if (auto idx = corpus.find(id); idx && !corpus[*idx].meta.title.empty()) title = corpus[*idx].meta.title;
            html += fmt::format("<li>{} <small>({}, {:.2f}%)</small></li>\n", html_escape(title), html_escape(id),
                                100.0 * r.weight);
        }
        html += "</ol>\n";
    }
    html += "</body>\n</html>\n";
    return html;
}

}  // namespace etdmine
