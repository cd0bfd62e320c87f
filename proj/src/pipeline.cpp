#include "etdmine/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <set>

#include <fmt/format.h>

#include "etdmine/analytics.hpp"
#include "etdmine/corpus.hpp"
#include "etdmine/csv.hpp"
#include "etdmine/errors.hpp"
#include "etdmine/features.hpp"
#include "etdmine/svm.hpp"
#include "etdmine/topic_report.hpp"

namespace etdmine {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

PreprocessProfile ProfileOverrides::apply(PreprocessProfile base) const {
    if (stopwords_file) base.stopwords = stopwords_file->empty() ? std::set<std::string>{} : read_stopword_file(*stopwords_file);
    if (lowercase) base.lowercase = *lowercase;
    if (min_token_len) base.min_token_len = *min_token_len;
    if (stem) base.stem = *stem;
    if (ngram_max) base.ngram_max = *ngram_max;
    base.validate();
    return base;
}

LdaConfig RunConfig::lda_config() const {
    if (!lda_seed) throw ConfigError("topic model seed is not set");
    LdaConfig c = lda;
    c.seed = *lda_seed;
    return c;
}

std::uint64_t RunConfig::split_seed() const {
    if (!classify.seed) throw ConfigError("classifier seed is not set");
    return *classify.seed;
}

// ---------------------------------------------------------------------------
// runconfig.json

namespace {

const char* population_name(EvalPopulation p) { return p == EvalPopulation::test ? "test" : "all"; }
const char* source_name(TextSource s) { return s == TextSource::body ? "body" : "bibliographic"; }

ordered_json profile_json(const ProfileOverrides& p) {
    ordered_json j = ordered_json::object();
    if (p.stopwords_file) j["stopwords_file"] = *p.stopwords_file;
    if (p.lowercase) j["lowercase"] = *p.lowercase;
    if (p.min_token_len) j["min_token_len"] = *p.min_token_len;
    if (p.stem) j["stem"] = *p.stem;
    if (p.ngram_max) j["ngram_max"] = *p.ngram_max;
    return j;
}

template <class T>
void read_field(const json& obj, const char* key, T& out) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return;
    try {
        if constexpr (std::is_same_v<T, bool>) {
            if (!it->is_boolean()) throw ConfigError("");
        } else if constexpr (std::is_integral_v<T>) {
            if (!it->is_number_unsigned() && !(it->is_number_integer() && it->get<long long>() >= 0)) throw ConfigError("");
        } else if constexpr (std::is_floating_point_v<T>) {
            if (!it->is_number()) throw ConfigError("");
        } else if constexpr (std::is_same_v<T, std::string>) {
            if (!it->is_string()) throw ConfigError("");
        }
        out = it->get<T>();
    } catch (const std::exception&) {
        throw ConfigError(fmt::format("config field '{}' has the wrong type", key));
    }
}

template <class T>
void read_optional(const json& obj, const char* key, std::optional<T>& out) {
    if (!obj.contains(key) || obj.at(key).is_null()) return;
    T v{};
    read_field(obj, key, v);
    out = v;
}

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed, std::string_view where) {
    for (const auto& [key, value] : obj.items())
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw ConfigError(fmt::format("unknown config key '{}{}'", where, key));
}

const json& section(const json& j, const char* key) {
    static const json empty = json::object();
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return empty;
    if (!it->is_object()) throw ConfigError(fmt::format("config section '{}' must be an object", key));
    return *it;
}

ProfileOverrides profile_from_json(const json& j) {
    check_keys(j, {"stopwords_file", "lowercase", "min_token_len", "stem", "ngram_max"}, "profiles.");
    ProfileOverrides p;
    read_optional(j, "stopwords_file", p.stopwords_file);
    read_optional(j, "lowercase", p.lowercase);
    read_optional(j, "min_token_len", p.min_token_len);
    read_optional(j, "stem", p.stem);
    read_optional(j, "ngram_max", p.ngram_max);
    return p;
}

}  // namespace

ordered_json to_json(const RunConfig& c) {
    ordered_json j;
    j["corpus_dir"] = c.corpus_dir;
    j["metadata_file"] = c.metadata_file;
    j["out_dir"] = c.out_dir;
    j["lda"] = {{"topics", c.lda.num_topics},
                {"alpha", c.lda.alpha},
                {"alpha_per_topic", c.lda.alpha_per_topic},
                {"beta", c.lda.beta},
                {"iterations", c.lda.iterations},
                {"seed", c.lda_seed ? json(*c.lda_seed) : json(nullptr)},
                {"top_words", c.topic_words}};
    j["classify"] = {{"train_ratio", c.classify.train_ratio},
                     {"C", c.classify.C},
                     {"seed", c.classify.seed ? json(*c.classify.seed) : json(nullptr)},
                     {"stratified", c.classify.stratified},
                     {"population", population_name(c.classify.population)},
                     {"source", source_name(c.classify.source)},
                     {"tags_file", c.classify.tags_file},
                     {"model_file", c.classify.model_file}};
    j["analytics"] = {{"keywords_file", c.analytics.keywords_file},
                      {"keywords", c.analytics.keywords},
                      {"window", c.analytics.window},
                      {"segments", c.analytics.segments},
                      {"top_n", c.analytics.top_n},
                      {"raw_stream", c.analytics.raw_stream}};
    j["profiles"] = {{"topic", profile_json(c.topic_profile)}, {"classify", profile_json(c.classify_profile)}};
    return j;
}

RunConfig run_config_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("run config must be a JSON object");
    check_keys(j, {"corpus_dir", "metadata_file", "out_dir", "lda", "classify", "analytics", "profiles"}, "");
    RunConfig c;
    read_field(j, "corpus_dir", c.corpus_dir);
    read_field(j, "metadata_file", c.metadata_file);
    read_field(j, "out_dir", c.out_dir);

    const auto& lda = section(j, "lda");
    check_keys(lda, {"topics", "alpha", "alpha_per_topic", "beta", "iterations", "seed", "top_words"}, "lda.");
    read_field(lda, "topics", c.lda.num_topics);
    read_field(lda, "alpha", c.lda.alpha);
    read_field(lda, "alpha_per_topic", c.lda.alpha_per_topic);
    read_field(lda, "beta", c.lda.beta);
    read_field(lda, "iterations", c.lda.iterations);
    read_optional(lda, "seed", c.lda_seed);
    read_field(lda, "top_words", c.topic_words);

    const auto& cl = section(j, "classify");
    check_keys(cl, {"train_ratio", "C", "seed", "stratified", "population", "source", "tags_file", "model_file"},
               "classify.");
    read_field(cl, "train_ratio", c.classify.train_ratio);
    read_field(cl, "C", c.classify.C);
    read_optional(cl, "seed", c.classify.seed);
    read_field(cl, "stratified", c.classify.stratified);
    std::string population = population_name(c.classify.population), source = source_name(c.classify.source);
    read_field(cl, "population", population);
    read_field(cl, "source", source);
    if (population != "test" && population != "all") throw ConfigError("classify.population must be 'test' or 'all'");
    if (source != "body" && source != "bibliographic")
        throw ConfigError("classify.source must be 'body' or 'bibliographic'");
    c.classify.population = population == "test" ? EvalPopulation::test : EvalPopulation::all;
    c.classify.source = source == "body" ? TextSource::body : TextSource::bibliographic;
    read_field(cl, "tags_file", c.classify.tags_file);
    read_field(cl, "model_file", c.classify.model_file);

    const auto& an = section(j, "analytics");
    check_keys(an, {"keywords_file", "keywords", "window", "segments", "top_n", "raw_stream"}, "analytics.");
    read_field(an, "keywords_file", c.analytics.keywords_file);
    if (auto it = an.find("keywords"); it != an.end() && !it->is_null()) {
        if (!it->is_array()) throw ConfigError("analytics.keywords must be a list of strings");
        for (const auto& k : *it) {
            if (!k.is_string()) throw ConfigError("analytics.keywords must be a list of strings");
            c.analytics.keywords.push_back(k.get<std::string>());
        }
    }
    read_field(an, "window", c.analytics.window);
    read_field(an, "segments", c.analytics.segments);
    read_field(an, "top_n", c.analytics.top_n);
    read_field(an, "raw_stream", c.analytics.raw_stream);

    const auto& prof = section(j, "profiles");
    check_keys(prof, {"topic", "classify"}, "profiles.");
    c.topic_profile = profile_from_json(section(prof, "topic"));
    c.classify_profile = profile_from_json(section(prof, "classify"));
    return c;
}

RunConfig load_run_config(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(fmt::format("cannot read config '{}'", path.string()));
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(fmt::format("config '{}': {}", path.string(), e.what()));
    }
    return run_config_from_json(j);
}

void resolve_seeds(RunConfig& config, std::optional<std::uint64_t> seed) {
    if (!seed && (!config.lda_seed || !config.classify.seed)) seed = std::random_device{}();
    if (!config.lda_seed) config.lda_seed = *seed;
    if (!config.classify.seed) config.classify.seed = *seed;
}

namespace {

void ensure_out_dir(const RunConfig& config) {
    std::error_code ec;
    fs::create_directories(config.out_dir, ec);
    if (ec) throw DataError(fmt::format("cannot create output directory '{}': {}", config.out_dir, ec.message()));
}

}  // namespace

void persist_run_config(const RunConfig& config) {
    ensure_out_dir(config);
    std::ofstream out(config.out("runconfig.json"), std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write runconfig.json");
    out << to_json(config).dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Subcommands

namespace {

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError(fmt::format("cannot write '{}'", path.string()));
    out << text;
}

Corpus load(const RunConfig& config, std::ostream& out) {
    if (config.corpus_dir.empty() || config.metadata_file.empty())
        throw ConfigError("corpus directory and metadata file are required");
    auto loaded = load_corpus(config.corpus_dir, config.metadata_file);
    auto list = [](const std::vector<std::string>& ids) {
        std::string s;
        for (std::size_t i = 0; i < ids.size() && i < 10; ++i) s += (i ? ", " : "") + ids[i];
        if (ids.size() > 10) s += ", ...";
        return s;
    };
    if (!loaded.report.text_only.empty())
        out << fmt::format("warning: {} text file(s) without metadata: {}\n", loaded.report.text_only.size(),
                           list(loaded.report.text_only));
    if (!loaded.report.meta_only.empty())
        out << fmt::format("warning: {} metadata record(s) without text: {}\n", loaded.report.meta_only.size(),
                           list(loaded.report.meta_only));
    if (loaded.corpus.empty()) throw DataError("no documents found in both the text directory and the metadata");
    return std::move(loaded.corpus);
}

TopicModel fit_topics(const RunConfig& config, const TokenizedCorpus& tc) {
    auto cfg = config.lda_config();
    return fit_lda(tc, cfg);
}

std::vector<std::string> topic_keywords(const RunConfig& config) {
    auto path = config.out("topic_words.csv");
    if (!fs::exists(path))
        throw ConfigError("no keywords given and no topic_words.csv from a previous topics run in " + config.out_dir);
    auto rows = read_csv(path);
    std::vector<std::string> words;
    std::set<std::string> seen;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() < 3) throw DataError("malformed topic_words.csv");
        if (std::stoul(rows[r][1]) > 5) continue;
        if (seen.insert(rows[r][2]).second) words.push_back(rows[r][2]);
    }
    return words;
}

std::vector<std::string> read_keyword_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(fmt::format("cannot read keywords file '{}'", path.string()));
    std::vector<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        words.push_back(line.substr(first, line.find_last_not_of(" \t\r") - first + 1));
    }
    return words;
}

// Tags aligned with corpus order; a missing tag is an error.
std::vector<std::string> aligned_tags(const Corpus& corpus, const std::vector<std::pair<std::string, std::string>>& pairs,
                                      std::ostream& out) {
    std::map<std::string, std::string> by_id(pairs.begin(), pairs.end());
    std::vector<std::string> tags;
    std::vector<std::string> missing;
    for (const auto& doc : corpus.documents()) {
        auto it = by_id.find(doc.meta.id);
        if (it == by_id.end()) {
            missing.push_back(doc.meta.id);
            continue;
        }
        tags.push_back(it->second);
    }
    if (!missing.empty())
        throw DataError(fmt::format("{} document(s) have no tag, first: '{}'", missing.size(), missing.front()));
    if (by_id.size() > corpus.size())
        out << fmt::format("warning: {} tag(s) for documents not in the corpus ignored\n", by_id.size() - corpus.size());
    return tags;
}

std::vector<std::string> load_tags(const RunConfig& config, const Corpus& corpus, std::ostream& out, bool with_topics) {
    if (with_topics) {
        auto tc = build_tokenized_corpus(corpus, config.topic(), TextSource::body);
        auto model = fit_topics(config, tc);
        std::vector<std::string> tags;
        for (char t : dominant_tags(model)) tags.emplace_back(1, t);
        return tags;
    }
    fs::path path = config.classify.tags_file.empty() ? config.out("doc_topics.csv") : fs::path(config.classify.tags_file);
    if (!fs::exists(path))
        throw ConfigError(fmt::format("no tags: '{}' does not exist (run 'topics' first or pass --tags)", path.string()));
    return aligned_tags(corpus, read_tags(path), out);
}

SplitPlan make_plan(const RunConfig& config, const std::vector<std::string>& tags) {
    return config.classify.stratified ? stratified_split(tags, config.classify.train_ratio, config.split_seed())
                                      : split(tags.size(), config.classify.train_ratio, config.split_seed());
}

fs::path model_path(const RunConfig& config) {
    return config.classify.model_file.empty() ? config.out("model.bin") : fs::path(config.classify.model_file);
}

void write_eval(const RunConfig& config, const EvalReport& report, std::ostream& out) {
    std::string text = render_eval_text(report);
    write_text(config.out("eval.txt"), text);
    write_text(config.out("eval.csv"), render_eval_csv(report));
    out << fmt::format("evaluated {} documents ({} population)\n", report.total, population_name(config.classify.population));
    out << text;
    if (!report.kappa) out << "warning: kappa is undefined (chance agreement is 1)\n";
    for (std::size_t c = 0; c < report.classes.size(); ++c) {
        if (report.precision_undefined[c]) out << fmt::format("warning: precision of '{}' undefined (never predicted)\n", report.classes[c]);
        if (report.recall_undefined[c]) out << fmt::format("warning: recall of '{}' undefined (absent from truth)\n", report.classes[c]);
    }
}

}  // namespace

std::vector<std::pair<std::string, std::string>> read_tags(const fs::path& path) {
    auto rows = read_csv(path);
    if (rows.empty()) throw DataError(fmt::format("'{}' is empty", path.string()));
    const auto& header = rows.front();
    auto id_col = std::find(header.begin(), header.end(), "id") - header.begin();
    auto tag_col = std::find(header.begin(), header.end(), "tag") - header.begin();
    if (id_col == static_cast<long>(header.size()) || tag_col == static_cast<long>(header.size()))
        throw DataError(fmt::format("'{}' needs 'id' and 'tag' columns", path.string()));
    std::vector<std::pair<std::string, std::string>> out;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() <= static_cast<std::size_t>(std::max(id_col, tag_col)))
            throw DataError(fmt::format("'{}' line {}: too few fields", path.string(), r + 1));
        if (row[tag_col].empty()) throw DataError(fmt::format("'{}' line {}: empty tag", path.string(), r + 1));
        out.emplace_back(row[id_col], row[tag_col]);
    }
    return out;
}

void cmd_ingest(const RunConfig& config, std::ostream& out) {
    auto corpus = load(config, out);
    ensure_out_dir(config);
    std::size_t no_advisor = 0, no_department = 0;
    for (const auto& d : corpus.documents()) {
        no_advisor += !d.meta.advisor || d.meta.advisor->empty();
        no_department += !d.meta.department || d.meta.department->empty();
    }
    out << fmt::format("{} documents; {} missing advisor; {} missing department\n", corpus.size(), no_advisor,
                       no_department);

    auto topic = build_tokenized_corpus(corpus, config.topic(), TextSource::body);
    auto classify = build_tokenized_corpus(corpus, config.classify_prof(), config.classify.source);
    auto biblio = build_tokenized_corpus(corpus, config.topic(), TextSource::bibliographic);
    out << fmt::format("tokens (topic profile, body): {} ({} terms)\n", topic.total_tokens(), topic.vocab.size());
    out << fmt::format("tokens (classify profile, {}): {} ({} terms)\n", source_name(config.classify.source),
                       classify.total_tokens(), classify.vocab.size());
    out << fmt::format("tokens (topic profile, bibliographic): {} ({} terms)\n", biblio.total_tokens(),
                       biblio.vocab.size());
    std::size_t empty = std::count(topic.empty.begin(), topic.empty.end(), true);
    if (empty) out << fmt::format("warning: {} document(s) have no tokens under the topic profile\n", empty);

    std::vector<CsvRow> rows;
    for (std::size_t d = 0; d < corpus.size(); ++d) {
        const auto& m = corpus[d].meta;
        rows.push_back({m.id, m.title, m.year ? std::to_string(*m.year) : "", m.advisor ? "1" : "0",
                        m.department ? "1" : "0", std::to_string(topic.docs[d].size()),
                        std::to_string(classify.docs[d].size()), std::to_string(biblio.docs[d].size())});
    }
    write_csv(config.out("corpus_summary.csv"),
              {"id", "title", "year", "has_advisor", "has_department", "topic_tokens", "classify_tokens",
               "bibliographic_tokens"},
              rows);
}

void cmd_topics(const RunConfig& config, std::ostream& out) {
    auto corpus = load(config, out);
    ensure_out_dir(config);
    auto tc = build_tokenized_corpus(corpus, config.topic(), TextSource::body);
    auto model = fit_topics(config, tc);

    CsvRow header;
    auto rows = doc_topic_rows(model, tc, header);
    write_csv(config.out("doc_topics.csv"), header, rows);
    rows = topic_word_rows(model, tc.vocab, config.topic_words, header);
    write_csv(config.out("topic_words.csv"), header, rows);
    write_text(config.out("report.html"), topic_report_html(model, tc, corpus));

    const auto& cfg = model.config();
    out << fmt::format("{} documents; {} topics; alpha={} ({}per topic {}); beta={}; {} sweeps; seed={}\n",
                       model.num_docs(), model.num_topics(), cfg.alpha, cfg.alpha_per_topic ? "" : "total, ",
                       cfg.alpha_k(), cfg.beta, cfg.iterations, cfg.seed);
    auto tags = dominant_tags(model);
    for (std::size_t k : model.topic_order()) {
        std::string words;
        for (const auto& w : top_words(model, k, 5)) words += " " + tc.vocab.term(w.term);
        char tag = model.tag_of(k);
        out << fmt::format("Topic {} ({} docs, weight {:.4f}):{}\n", tag, std::count(tags.begin(), tags.end(), tag),
                           model.topic_weights()[k], words);
    }
}

void cmd_analyze(const RunConfig& config, std::ostream& out) {
    const auto& an = config.analytics;
    std::vector<std::string> patterns = an.keywords;
    if (!an.keywords_file.empty()) {
        auto more = read_keyword_file(an.keywords_file);
        patterns.insert(patterns.end(), more.begin(), more.end());
    }
    if (patterns.empty()) patterns = topic_keywords(config);
    if (patterns.empty()) throw ConfigError("no keywords to analyze");
    auto queries = parse_queries(patterns);
    if (an.segments < 1) throw ConfigError("segments must be >= 1");
    if (an.window < 1) throw ConfigError("window must be >= 1");

    auto corpus = load(config, out);
    ensure_out_dir(config);
    auto profile = config.topic();
    auto tc = build_tokenized_corpus(corpus, profile, TextSource::bibliographic);

    CsvRow header{"Term", "Doc", "Count", "Relative"};
    for (std::size_t s = 1; s <= an.segments; ++s) header.push_back(fmt::format("Seg{}", s));
    std::vector<CsvRow> rows;
    for (const auto& q : queries) {
        auto report = trend(tc, q, an.segments);
        for (const auto& r : report.rows) {
            CsvRow row{q.pattern(), r.doc_id, std::to_string(r.count), fmt::format("{}", r.relative)};
            for (auto s : r.segments) row.push_back(std::to_string(s));
            rows.push_back(std::move(row));
        }
    }
    write_csv(config.out("trend.csv"), header, rows);

    const TokenizedCorpus* stream = &tc;
    TokenizedCorpus raw;
    if (an.raw_stream) {
        auto unfiltered = profile;
        unfiltered.stopwords.clear();
        raw = build_tokenized_corpus(corpus, unfiltered, TextSource::bibliographic);
        stream = &raw;
    }
    auto graph = collocates(*stream, queries, an.window, an.top_n);
    write_text(config.out("collocates.dot"), collocates_dot(graph, stream->vocab));
    write_text(config.out("collocates.json"), collocates_json(graph, stream->vocab));

    std::vector<CsvRow> kw_rows;
    auto counts = keyword_counts(tc, queries);
    for (std::size_t q = 0; q < queries.size(); ++q) {
        std::string assoc;
        std::size_t shown = 0;
        for (const auto& e : graph.edges) {
            if (e.keyword != q || shown == 7) continue;
            assoc += (shown++ ? "; " : "") + stream->vocab.term(e.neighbor);
        }
        kw_rows.push_back({counts[q].keyword, std::to_string(counts[q].count), assoc});
        out << fmt::format("{} ({}): {}\n", counts[q].keyword, counts[q].count, assoc);
    }
    write_csv(config.out("keywords.csv"), {"Keyword", "Count", "Associated"}, kw_rows);
}

void cmd_train(const RunConfig& config, std::ostream& out, bool with_topics) {
    auto corpus = load(config, out);
    ensure_out_dir(config);
    auto tags = load_tags(config, corpus, out, with_topics);
    auto tc = build_tokenized_corpus(corpus, config.classify_prof(), config.classify.source);
    auto features = vectorize(tc);
    auto plan = make_plan(config, tags);
    for (const auto& w : plan.warnings) out << "warning: " << w << '\n';
    out << fmt::format("split: {} train / {} test (ratio {}, seed {})\n", plan.train.size(), plan.test.size(),
                       plan.train_ratio, plan.seed);

    SvmOptions opts;
    opts.C = config.classify.C;
    auto model = train_svm(features, tags, plan.train, opts);
    if (model.degenerate())
        out << fmt::format("warning: training set has a single class '{}'; the model is a constant predictor\n",
                           model.classes().front());
    model.save(model_path(config));

    std::vector<CsvRow> split_rows, pred_rows;
    std::vector<bool> in_train(corpus.size(), false);
    for (auto r : plan.train) in_train[r] = true;
    for (std::size_t d = 0; d < corpus.size(); ++d) {
        const char* set = in_train[d] ? "train" : "test";
        split_rows.push_back({features.doc_ids[d], set, tags[d]});
        pred_rows.push_back({features.doc_ids[d], set, tags[d], model.predict(features.rows[d])});
    }
    write_csv(config.out("split.csv"), {"id", "set", "tag"}, split_rows);
    write_csv(config.out("predictions.csv"), {"id", "set", "true", "predicted"}, pred_rows);

    auto report = evaluate(model, features, tags, plan, config.classify.population);
    write_eval(config, report, out);
}

void cmd_eval(const RunConfig& config, std::ostream& out) {
    auto model = SvmModel::load(model_path(config));
    auto corpus = load(config, out);
    ensure_out_dir(config);
    auto tags = load_tags(config, corpus, out, false);
    auto tc = build_tokenized_corpus(corpus, config.classify_prof(), config.classify.source);
    if (tc.vocab.hash() != model.vocab_hash())
        throw DataError(fmt::format("vocabulary hash mismatch: model {:016x}, corpus {:016x}", model.vocab_hash(),
                                    tc.vocab.hash()));
    auto features = vectorize(tc);
    auto plan = make_plan(config, tags);
    auto report = evaluate(model, features, tags, plan, config.classify.population);
    write_eval(config, report, out);
}

void cmd_predict(const RunConfig& config, const std::vector<std::string>& inputs, std::ostream& out) {
    if (inputs.empty()) throw ConfigError("no input files to predict");
    auto model = SvmModel::load(model_path(config));
    auto profile = config.classify_prof();

    CsvRow header{"file", "predicted"};
    for (const auto& c : model.classes()) header.push_back("f_" + c);
    std::vector<CsvRow> rows;
    for (const auto& input : inputs) {
        std::ifstream in(input, std::ios::binary);
        if (!in) throw DataError(fmt::format("cannot read '{}'", input));
        std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
        auto x = vectorize_tokens(preprocess_text(text, profile), model.vocab(), model.idf());
        const auto& tag = model.predict(x);
        CsvRow row{input, tag};
        for (double f : model.decision_values(x)) row.push_back(format_fixed(f));
        rows.push_back(std::move(row));
        out << input << '\t' << tag << '\n';
    }
    ensure_out_dir(config);
    write_csv(config.out("predicted.csv"), header, rows);
}

}  // namespace etdmine
