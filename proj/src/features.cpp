#include "etdmine/features.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "etdmine/errors.hpp"
#include "etdmine/random.hpp"

namespace etdmine {

double dot(const SparseVector& x, std::span<const double> dense) {
    double s = 0.0;
    for (const auto& e : x)
        if (e.index < dense.size()) s += e.value * dense[e.index];
    return s;
}

double dot(const SparseVector& a, const SparseVector& b) {
    double s = 0.0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (i->index < j->index)
            ++i;
        else if (j->index < i->index)
            ++j;
        else
            s += (i++)->value * (j++)->value;
    }
    return s;
}

double squared_norm(const SparseVector& x) {
    double s = 0.0;
    for (const auto& e : x) s += e.value * e.value;
    return s;
}

namespace {

SparseVector weight_and_normalize(const std::map<TermId, std::uint32_t>& tf, std::span<const double> idf) {
    SparseVector row;
    for (const auto& [term, count] : tf) {
        double v = count * idf[term];
        if (v != 0.0) row.push_back({term, v});
    }
    double norm = std::sqrt(squared_norm(row));
    if (norm > 0.0)
        for (auto& e : row) e.value /= norm;
    return row;
}

}  // namespace

FeatureMatrix vectorize(const TokenizedCorpus& tc) {
    FeatureMatrix fm;
    fm.doc_ids = tc.doc_ids;
    fm.vocab = tc.vocab;
    const std::size_t D = tc.num_docs(), V = tc.vocab.size();

    std::vector<std::map<TermId, std::uint32_t>> tf(D);
    std::vector<std::size_t> df(V, 0);
    for (std::size_t d = 0; d < D; ++d) {
        for (TermId t : tc.docs[d]) ++tf[d][t];
        for (const auto& entry : tf[d]) ++df[entry.first];
    }
    fm.idf.resize(V);
    for (std::size_t t = 0; t < V; ++t)
        fm.idf[t] = df[t] == D ? 0.0 : std::log(static_cast<double>(D) / static_cast<double>(df[t]));

    for (std::size_t d = 0; d < D; ++d) {
        fm.rows.push_back(weight_and_normalize(tf[d], fm.idf));
        fm.zero_rows.push_back(fm.rows.back().empty());
    }
    return fm;
}

SparseVector vectorize_tokens(const std::vector<std::string>& tokens, const Vocabulary& vocab,
                              std::span<const double> idf) {
    std::map<TermId, std::uint32_t> tf;
    for (const auto& t : tokens)
        if (auto id = vocab.find(t)) ++tf[*id];
    return weight_and_normalize(tf, idf);
}

namespace {

void check_split_args(std::size_t n, double ratio) {
    if (!(ratio > 0.0 && ratio < 1.0)) throw ConfigError(fmt::format("train ratio must be in (0, 1), got {}", ratio));
    if (n < 2) throw ConfigError("a train/test split needs at least 2 documents");
}

std::size_t train_size(std::size_t n, double ratio) {
    return static_cast<std::size_t>(std::floor(ratio * static_cast<double>(n)));
}

}  // namespace

SplitPlan split(std::size_t num_docs, double train_ratio, std::uint64_t seed) {
    check_split_args(num_docs, train_ratio);
    SplitPlan plan;
    plan.seed = seed;
    plan.train_ratio = train_ratio;

    std::vector<std::size_t> order(num_docs);
    for (std::size_t i = 0; i < num_docs; ++i) order[i] = i;
    Rng rng(seed);
    rng.shuffle(order);

    std::size_t n_train = train_size(num_docs, train_ratio);
    plan.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
    plan.test.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
    std::sort(plan.train.begin(), plan.train.end());
    std::sort(plan.test.begin(), plan.test.end());
    return plan;
}

SplitPlan stratified_split(const std::vector<std::string>& tags, double train_ratio, std::uint64_t seed) {
    check_split_args(tags.size(), train_ratio);
    SplitPlan plan;
    plan.seed = seed;
    plan.train_ratio = train_ratio;
    plan.stratified = true;

    std::map<std::string, std::vector<std::size_t>> by_tag;
    for (std::size_t i = 0; i < tags.size(); ++i) by_tag[tags[i]].push_back(i);

    // Singleton tags cannot be stratified; they share one shuffled pool.
    std::vector<std::vector<std::size_t>> groups;
    std::vector<std::size_t> pool;
    for (auto& [tag, members] : by_tag) {
        if (members.size() == 1) {
            plan.warnings.push_back(fmt::format("tag '{}' occurs once; split as unstratified", tag));
            pool.push_back(members.front());
        } else {
            groups.push_back(std::move(members));
        }
    }
    if (!pool.empty()) groups.push_back(std::move(pool));

    const std::size_t n_train = train_size(tags.size(), train_ratio);
    std::vector<std::size_t> quota(groups.size());
    std::vector<std::pair<double, std::size_t>> remainders;
    std::size_t assigned = 0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        double exact = train_ratio * static_cast<double>(groups[g].size());
        quota[g] = static_cast<std::size_t>(std::floor(exact));
        assigned += quota[g];
        remainders.emplace_back(exact - std::floor(exact), g);
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t r = 0; assigned < n_train && r < remainders.size(); ++r, ++assigned) ++quota[remainders[r].second];

    Rng rng(seed);
    for (std::size_t g = 0; g < groups.size(); ++g) {
        auto& members = groups[g];
        rng.shuffle(members);
        plan.train.insert(plan.train.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(quota[g]));
        plan.test.insert(plan.test.end(), members.begin() + static_cast<std::ptrdiff_t>(quota[g]), members.end());
    }
    std::sort(plan.train.begin(), plan.train.end());
    std::sort(plan.test.begin(), plan.test.end());
    return plan;
}

}  // namespace etdmine
