#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "etdmine/corpus.hpp"
#include "etdmine/csv.hpp"
#include "etdmine/lda.hpp"
#include "etdmine/preprocess.hpp"

namespace etdmine {

/// doc_topics.csv: id, tag, then theta for each tag in letter order.
std::vector<CsvRow> doc_topic_rows(const TopicModel& model, const TokenizedCorpus& tc, CsvRow& header);

/// topic_words.csv: tag, rank, term, phi; topics listed in tag order.
std::vector<CsvRow> topic_word_rows(const TopicModel& model, const Vocabulary& vocab, std::size_t n,
                                    CsvRow& header);

/// Static HTML summary: per tag, the top words and representative titles.
std::string topic_report_html(const TopicModel& model, const TokenizedCorpus& tc, const Corpus& corpus,
                              std::size_t n_words = 5, std::size_t n_docs = 5);

std::string html_escape(std::string_view s);

}  // namespace etdmine
