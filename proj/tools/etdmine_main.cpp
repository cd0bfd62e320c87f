// etdmine: topic modeling, word analytics and tag prediction for document corpora.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "etdmine/errors.hpp"
#include "etdmine/pipeline.hpp"

namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

struct Flags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir, corpus, metadata;

    std::optional<std::size_t> k, iterations, top_words;
    std::optional<double> alpha, beta;
    bool alpha_per_topic = false;

    std::vector<std::string> keywords;
    std::optional<std::string> keywords_file;
    std::optional<std::size_t> window, segments, top_n;
    bool raw_stream = false;

    std::optional<std::string> tags, model, source;
    std::optional<double> ratio, C;
    bool stratified = false, eval_all = false, with_topics = false;

    std::vector<std::string> inputs;
};

template <class T>
void set_if(const std::optional<T>& v, T& target) {
    if (v) target = *v;
}

etdmine::RunConfig build_config(const Flags& f) {
    etdmine::RunConfig c = f.config.empty() ? etdmine::RunConfig{} : etdmine::load_run_config(f.config);
    set_if(f.out_dir, c.out_dir);
    set_if(f.corpus, c.corpus_dir);
    set_if(f.metadata, c.metadata_file);
    set_if(f.k, c.lda.num_topics);
    set_if(f.iterations, c.lda.iterations);
    set_if(f.top_words, c.topic_words);
    set_if(f.alpha, c.lda.alpha);
    set_if(f.beta, c.lda.beta);
    if (f.alpha_per_topic) c.lda.alpha_per_topic = true;
    if (!f.keywords.empty()) c.analytics.keywords = f.keywords;
    set_if(f.keywords_file, c.analytics.keywords_file);
    set_if(f.window, c.analytics.window);
    set_if(f.segments, c.analytics.segments);
    set_if(f.top_n, c.analytics.top_n);
    if (f.raw_stream) c.analytics.raw_stream = true;
    set_if(f.tags, c.classify.tags_file);
    set_if(f.model, c.classify.model_file);
    set_if(f.ratio, c.classify.train_ratio);
    set_if(f.C, c.classify.C);
    if (f.stratified) c.classify.stratified = true;
    if (f.eval_all) c.classify.population = etdmine::EvalPopulation::all;
    if (f.source) {
        if (*f.source == "body")
            c.classify.source = etdmine::TextSource::body;
        else if (*f.source == "bibliographic")
            c.classify.source = etdmine::TextSource::bibliographic;
        else
            throw etdmine::ConfigError("--source must be 'body' or 'bibliographic'");
    }
    if (f.seed) {
        c.lda_seed = *f.seed;
        c.classify.seed = *f.seed;
    }
    etdmine::resolve_seeds(c, std::nullopt);
    c.lda.validate();
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Topic modeling, word analytics and tag prediction for thesis corpora"};
    app.require_subcommand(1);
    app.fallthrough();

    Flags f;
    app.add_option("--config", f.config, "runconfig.json to start from")->check(CLI::ExistingFile);
    app.add_option("--seed", f.seed, "seed for every random stage");
    app.add_option("--out-dir", f.out_dir, "output directory");
    app.add_option("--corpus", f.corpus, "directory of <id>.txt files");
    app.add_option("--metadata", f.metadata, "line-delimited JSON metadata");

    auto* ingest = app.add_subcommand("ingest", "load the corpus and print a summary");

    auto* topics = app.add_subcommand("topics", "fit the topic model and write doc_topics.csv, topic_words.csv, report.html");
    topics->add_option("--k", f.k, "number of topics");
    topics->add_option("--alpha", f.alpha, "total document-topic concentration");
    topics->add_flag("--alpha-per-topic", f.alpha_per_topic, "treat --alpha as the per-topic value");
    topics->add_option("--beta", f.beta, "topic-word smoothing");
    topics->add_option("--iterations", f.iterations, "Gibbs sweeps");
    topics->add_option("--top-words", f.top_words, "words per topic in topic_words.csv");

    auto* analyze = app.add_subcommand("analyze", "trend and collocate analysis over bibliographic text");
    analyze->add_option("--keywords", f.keywords, "keywords; a trailing * matches a prefix")->delimiter(',');
    analyze->add_option("--keywords-file", f.keywords_file, "one keyword per line");
    analyze->add_option("--window", f.window, "collocate context on each side");
    analyze->add_option("--segments", f.segments, "trend segments per document");
    analyze->add_option("--top-n", f.top_n, "collocates kept per keyword (0 = all)");
    analyze->add_flag("--raw-stream", f.raw_stream, "count collocates without stopword filtering");

    auto* train = app.add_subcommand("train", "train the tag classifier and evaluate it");
    train->add_option("--tags", f.tags, "id,tag CSV (default: doc_topics.csv in the output directory)");
    train->add_flag("--with-topics", f.with_topics, "fit the topic model in-process for tags");
    train->add_option("--ratio", f.ratio, "training fraction");
    train->add_option("--C", f.C, "SVM regularization trade-off");
    train->add_flag("--stratified", f.stratified, "per-tag proportional split");
    train->add_flag("--eval-all", f.eval_all, "evaluate on every document instead of the test set");
    train->add_option("--source", f.source, "body or bibliographic");
    train->add_option("--model", f.model, "model file to write");

    auto* eval = app.add_subcommand("eval", "evaluate a stored model");
    eval->add_option("--tags", f.tags, "id,tag CSV");
    eval->add_option("--model", f.model, "model file");
    eval->add_flag("--eval-all", f.eval_all, "evaluate on every document");
    eval->add_option("--source", f.source, "body or bibliographic");

    auto* predict = app.add_subcommand("predict", "tag new text files with a stored model");
    predict->add_option("--model", f.model, "model file");
    predict->add_option("files", f.inputs, "text files")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageError;
    }

    try {
        auto config = build_config(f);
        etdmine::persist_run_config(config);
        if (*ingest)
            etdmine::cmd_ingest(config, std::cout);
        else if (*topics)
            etdmine::cmd_topics(config, std::cout);
        else if (*analyze)
            etdmine::cmd_analyze(config, std::cout);
        else if (*train)
            etdmine::cmd_train(config, std::cout, f.with_topics);
        else if (*eval)
            etdmine::cmd_eval(config, std::cout);
        else if (*predict)
            etdmine::cmd_predict(config, f.inputs, std::cout);
    } catch (const etdmine::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const etdmine::DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDataError;
    }
    return 0;
}
