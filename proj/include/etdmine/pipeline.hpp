#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "etdmine/evaluation.hpp"
#include "etdmine/lda.hpp"
#include "etdmine/preprocess.hpp"

namespace etdmine {

/// Optional changes to a built-in preprocessing profile.
struct ProfileOverrides {
    std::optional<std::string> stopwords_file;
    std::optional<bool> lowercase;
    std::optional<std::size_t> min_token_len;
    std::optional<bool> stem;
    std::optional<std::size_t> ngram_max;

    PreprocessProfile apply(PreprocessProfile base) const;
};

struct ClassifyConfig {
    double train_ratio = 0.7;
    double C = 1.0;
    std::optional<std::uint64_t> seed;
    bool stratified = false;
    EvalPopulation population = EvalPopulation::test;
    TextSource source = TextSource::body;
    std::string tags_file;   // empty: doc_topics.csv in the output directory
    std::string model_file;  // empty: model.bin in the output directory
};

struct AnalyticsConfig {
    std::string keywords_file;
    std::vector<std::string> keywords;
    std::size_t window = 5;
    std::size_t segments = 10;
    std::size_t top_n = 25;
    /// Count collocates on the unfiltered token stream.
    bool raw_stream = false;
};

struct RunConfig {
    std::string corpus_dir;
    std::string metadata_file;
    std::string out_dir = "out";
    LdaConfig lda;  // lda.seed is ignored; see lda_seed
    std::optional<std::uint64_t> lda_seed;
    std::size_t topic_words = 10;
    ClassifyConfig classify;
    AnalyticsConfig analytics;
    ProfileOverrides topic_profile;
    ProfileOverrides classify_profile;

    /// Throw ConfigError when the seed has not been resolved.
    LdaConfig lda_config() const;
    std::uint64_t split_seed() const;

    PreprocessProfile topic() const { return topic_profile.apply(PreprocessProfile::topic()); }
    PreprocessProfile classify_prof() const { return classify_profile.apply(PreprocessProfile::classify()); }
    std::filesystem::path out(const std::string& name) const { return std::filesystem::path(out_dir) / name; }
};

nlohmann::ordered_json to_json(const RunConfig& config);
/// Missing keys keep their defaults. Throws ConfigError on wrong types or values.
RunConfig run_config_from_json(const nlohmann::json& j);
RunConfig load_run_config(const std::filesystem::path& path);

/// Fills absent seeds from `seed`, or from the system entropy source when no
/// seed is given, so every persisted config carries explicit seeds.
void resolve_seeds(RunConfig& config, std::optional<std::uint64_t> seed);

/// Creates the output directory and writes runconfig.json into it.
void persist_run_config(const RunConfig& config);

/// Subcommands. Call resolve_seeds and persist_run_config first, as the CLI
/// does. Errors surface as ConfigError or DataError.
void cmd_ingest(const RunConfig& config, std::ostream& out);
void cmd_topics(const RunConfig& config, std::ostream& out);
void cmd_analyze(const RunConfig& config, std::ostream& out);
/// with_topics fits the topic model in-process instead of reading tags.
void cmd_train(const RunConfig& config, std::ostream& out, bool with_topics = false);
void cmd_eval(const RunConfig& config, std::ostream& out);
void cmd_predict(const RunConfig& config, const std::vector<std::string>& inputs, std::ostream& out);

/// Reads an "id,tag" CSV (header row required).
std::vector<std::pair<std::string, std::string>> read_tags(const std::filesystem::path& path);

}  // namespace etdmine
