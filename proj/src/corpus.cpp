#include "etdmine/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <map>
#include <set>

#include <fmt/format.h>
#include <json.hpp>

#include "etdmine/errors.hpp"

namespace etdmine {

namespace fs = std::filesystem;
using nlohmann::json;

Corpus::Corpus(std::vector<Document> documents) : docs_(std::move(documents)) {
    std::sort(docs_.begin(), docs_.end(),
              [](const Document& a, const Document& b) { return a.meta.id < b.meta.id; });
    for (std::size_t i = 0; i < docs_.size(); ++i) {
        if (docs_[i].meta.id.empty()) throw IngestError("document with empty id");
        if (i > 0 && docs_[i].meta.id == docs_[i - 1].meta.id)
            throw IngestError(fmt::format("duplicate document id '{}'", docs_[i].meta.id));
    }
}

std::vector<std::string> Corpus::ids() const {
    std::vector<std::string> out;
    out.reserve(docs_.size());
    for (const auto& d : docs_) out.push_back(d.meta.id);
    return out;
}

std::optional<std::size_t> Corpus::find(std::string_view id) const {
    auto it = std::lower_bound(docs_.begin(), docs_.end(), id,
                               [](const Document& d, std::string_view v) { return d.meta.id < v; });
    if (it == docs_.end() || it->meta.id != id) return std::nullopt;
    return static_cast<std::size_t>(it - docs_.begin());
}

namespace {

std::optional<std::string> optional_string(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) throw IngestError(fmt::format("field '{}' must be a string", key));
    return it->get<std::string>();
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IngestError(fmt::format("cannot read '{}'", path.string()));
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

DocumentMeta parse_metadata_record(std::string_view line) {
    json obj;
    try {
        obj = json::parse(line);
    } catch (const json::parse_error& e) {
        throw IngestError(e.what());
    }
    if (!obj.is_object()) throw IngestError("record is not an object");

    DocumentMeta meta;
    auto id = optional_string(obj, "id");
    if (!id || id->empty()) throw IngestError("missing or empty 'id'");
    meta.id = std::move(*id);
    meta.title = optional_string(obj, "title").value_or("");
    meta.author = optional_string(obj, "author");
    meta.advisor = optional_string(obj, "advisor");
    meta.department = optional_string(obj, "department");
    meta.abstract = optional_string(obj, "abstract");
    meta.subject = optional_string(obj, "subject");

    if (auto it = obj.find("year"); it != obj.end() && !it->is_null()) {
        if (!it->is_number_integer()) throw IngestError("field 'year' must be an integer");
        meta.year = it->get<int>();
    }
    if (auto it = obj.find("keywords"); it != obj.end() && !it->is_null()) {
        if (!it->is_array()) throw IngestError("field 'keywords' must be a list of strings");
        for (const auto& k : *it) {
            if (!k.is_string()) throw IngestError("field 'keywords' must be a list of strings");
            meta.keywords.push_back(k.get<std::string>());
        }
    }
    return meta;
}

std::vector<DocumentMeta> read_metadata(const fs::path& metadata_file) {
    std::ifstream in(metadata_file, std::ios::binary);
    if (!in) throw IngestError(fmt::format("cannot read metadata file '{}'", metadata_file.string()));

    std::vector<DocumentMeta> records;
    std::set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        DocumentMeta meta;
        try {
            meta = parse_metadata_record(line);
        } catch (const IngestError& e) {
            throw IngestError(fmt::format("{} line {}: malformed metadata record: {}",
                                          metadata_file.string(), line_no, e.what()));
        }
        if (!seen.insert(meta.id).second)
            throw IngestError(fmt::format("{} line {}: duplicate id '{}'", metadata_file.string(),
                                          line_no, meta.id));
        records.push_back(std::move(meta));
    }
    return records;
}

LoadedCorpus load_corpus(const fs::path& text_dir, const fs::path& metadata_file) {
    std::error_code ec;
    if (!fs::is_directory(text_dir, ec))
        throw IngestError(fmt::format("cannot read text directory '{}'", text_dir.string()));

    std::map<std::string, fs::path> texts;
    fs::directory_iterator it(text_dir, ec);
    if (ec) throw IngestError(fmt::format("cannot read text directory '{}': {}", text_dir.string(), ec.message()));
    for (const auto& entry : it) {
        if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
        texts.emplace(entry.path().stem().string(), entry.path());
    }

    auto records = read_metadata(metadata_file);

    LoadedCorpus out;
    std::vector<Document> docs;
    std::set<std::string> meta_ids;
    for (auto& meta : records) {
        meta_ids.insert(meta.id);
        auto t = texts.find(meta.id);
        if (t == texts.end()) {
            out.report.meta_only.push_back(meta.id);
            continue;
        }
        Document doc;
        doc.text = read_file(t->second);
        doc.meta = std::move(meta);
        docs.push_back(std::move(doc));
    }
    for (const auto& [id, path] : texts)
        if (!meta_ids.count(id)) out.report.text_only.push_back(id);
    std::sort(out.report.meta_only.begin(), out.report.meta_only.end());

    out.corpus = Corpus(std::move(docs));
    return out;
}

std::string bibliographic_text(const Document& doc) {
    const auto& m = doc.meta;
    std::string out;
    auto append = [&out](const std::string& s) {
        if (s.empty()) return;
        if (!out.empty()) out += ' ';
        out += s;
    };
    append(m.title);
    if (m.abstract) append(*m.abstract);
    for (const auto& k : m.keywords) append(k);
    if (m.subject) append(*m.subject);
    if (m.author) append(*m.author);
    if (m.advisor) append(*m.advisor);
    if (m.department) append(*m.department);
    return out;
}

}  // namespace etdmine
