#include <fstream>

#include <fmt/format.h>

#include "etdmine/errors.hpp"
#include "etdmine/preprocess.hpp"

namespace etdmine {

// Common English function words. Contractions appear split, the way the
// tokenizer produces them ("don't" -> "don", "t").
const std::set<std::string>& default_stopwords() {
    static const std::set<std::string> words = {
        "a", "about", "above", "after", "again", "against", "ain", "all", "am", "an",
        "and", "any", "are", "aren", "as", "at", "be", "because", "been", "before",
        "being", "below", "between", "both", "but", "by", "can", "couldn", "d", "did",
        "didn", "do", "does", "doesn", "doing", "don", "down", "during", "each", "few",
        "for", "from", "further", "had", "hadn", "has", "hasn", "have", "haven", "having",
        "he", "her", "here", "hers", "herself", "him", "himself", "his", "how", "i",
        "if", "in", "into", "is", "isn", "it", "its", "itself", "just", "ll",
        "m", "ma", "me", "mightn", "more", "most", "mustn", "my", "myself", "needn",
        "no", "nor", "not", "now", "o", "of", "off", "on", "once", "only",
        "or", "other", "our", "ours", "ourselves", "out", "over", "own", "re", "s",
        "same", "shan", "she", "should", "shouldn", "so", "some", "such", "t", "than",
        "that", "the", "their", "theirs", "them", "themselves", "then", "there", "these", "they",
        "this", "those", "through", "to", "too", "under", "until", "up", "ve", "very",
        "was", "wasn", "we", "were", "weren", "what", "when", "where", "which", "while",
        "who", "whom", "why", "will", "with", "won", "wouldn", "y", "you", "your",
        "yours", "yourself", "yourselves",
    };
    return words;
}

std::set<std::string> read_stopword_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(fmt::format("cannot read stopword file '{}'", path.string()));
    std::set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        words.insert(line.substr(first, last - first + 1));
    }
    return words;
}

}  // namespace etdmine
