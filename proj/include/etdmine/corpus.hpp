#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace etdmine {

struct DocumentMeta {
    std::string id;
    std::string title;
    std::optional<std::string> author;
    std::optional<std::string> advisor;
    std::optional<std::string> department;
    std::optional<int> year;
    std::optional<std::string> abstract;
    std::vector<std::string> keywords;
    std::optional<std::string> subject;
};

struct Document {
    DocumentMeta meta;
    std::string text;
};

/// Immutable, id-ordered collection of documents.
class Corpus {
public:
    Corpus() = default;
    /// Sorts by id. Throws IngestError on an empty or duplicate id.
    explicit Corpus(std::vector<Document> documents);

    const std::vector<Document>& documents() const noexcept { return docs_; }
    std::size_t size() const noexcept { return docs_.size(); }
    bool empty() const noexcept { return docs_.empty(); }
    const Document& operator[](std::size_t i) const { return docs_[i]; }

    std::vector<std::string> ids() const;
    /// Index of the document with this id, if present.
    std::optional<std::size_t> find(std::string_view id) const;

private:
    std::vector<Document> docs_;
};

/// Join diagnostics from load_corpus. Id lists are sorted.
struct LoadReport {
    std::vector<std::string> text_only;  // <id>.txt without a metadata record
    std::vector<std::string> meta_only;  // metadata record without <id>.txt
};

struct LoadedCorpus {
    Corpus corpus;
    LoadReport report;
};

/// Parses one metadata record (a JSON object). Throws IngestError.
DocumentMeta parse_metadata_record(std::string_view line);

/// Reads a line-delimited metadata file. Blank lines are skipped.
/// Throws IngestError naming the line number or the duplicated id.
std::vector<DocumentMeta> read_metadata(const std::filesystem::path& metadata_file);

/// Joins `<id>.txt` files in text_dir with metadata records; keeps the intersection.
LoadedCorpus load_corpus(const std::filesystem::path& text_dir,
                         const std::filesystem::path& metadata_file);

/// Space-joined present fields in the order title, abstract, keywords, subject,
/// author, advisor, department.
std::string bibliographic_text(const Document& doc);

}  // namespace etdmine
