#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "etdmine/errors.hpp"
#include "etdmine/features.hpp"
#include "support/tokens.hpp"

using namespace etdmine;
using etdmine::testing::corpus_of;

namespace {

double weight_of(const SparseVector& row, TermId t) {
    for (const auto& e : row)
        if (e.index == t) return e.value;
    return 0.0;
}

}  // namespace

TEST_CASE("tf-idf weights") {
    // x: tf 2 in doc 0 only; z: tf 1 in doc 0 only; y in both documents
    auto tc = corpus_of({{"x", "x", "z", "y"}, {"y", "w"}});
    auto fm = vectorize(tc);
    const TermId x = *fm.vocab.find("x"), z = *fm.vocab.find("z"), y = *fm.vocab.find("y");
    CHECK(fm.idf[x] == doctest::Approx(std::log(2.0)));
    CHECK(fm.idf[y] == 0.0);
    // pre-norm weights 2 ln 2 and ln 2
    const double norm = std::sqrt(5.0) * std::log(2.0);
    CHECK(weight_of(fm.rows[0], x) == doctest::Approx(2 * std::log(2.0) / norm));
    CHECK(weight_of(fm.rows[0], z) == doctest::Approx(std::log(2.0) / norm));
    CHECK(weight_of(fm.rows[0], y) == 0.0);
    for (const auto& e : fm.rows[0]) CHECK(e.value != 0.0);
    CHECK(squared_norm(fm.rows[0]) == doctest::Approx(1.0));
    CHECK(fm.zero_rows == std::vector<bool>{false, false});
}

TEST_CASE("zero rows are flagged") {
    auto fm = vectorize(corpus_of({{"a", "b"}, {}, {"a"}}));
    CHECK(fm.rows[1].empty());
    CHECK(fm.zero_rows[1]);
    auto all_shared = vectorize(corpus_of({{"a"}, {"a"}}));
    CHECK(all_shared.zero_rows == std::vector<bool>{true, true});
}

TEST_CASE("rows are sorted and unit length") {
    auto fm = vectorize(corpus_of({{"c", "a", "b", "a"}, {"b", "d"}, {"e"}}));
    for (const auto& row : fm.rows) {
        for (std::size_t i = 1; i < row.size(); ++i) CHECK(row[i - 1].index < row[i].index);
        if (!row.empty()) CHECK(squared_norm(row) == doctest::Approx(1.0));
    }
}

TEST_CASE("vectorize_tokens drops unseen terms") {
    auto fm = vectorize(corpus_of({{"a", "b"}, {"c"}}));
    auto v = vectorize_tokens({"a", "zzz", "a"}, fm.vocab, fm.idf);
    REQUIRE(v.size() == 1);
    CHECK(v[0].index == *fm.vocab.find("a"));
    CHECK(v[0].value == doctest::Approx(1.0));
    CHECK(vectorize_tokens({"zzz"}, fm.vocab, fm.idf).empty());
}

TEST_CASE("dot products") {
    SparseVector a{{0, 1.0}, {2, 2.0}}, b{{1, 5.0}, {2, 3.0}};
    std::vector<double> dense{1.0, 1.0, 0.5};
    CHECK(dot(a, b) == 6.0);
    CHECK(dot(a, dense) == 2.0);
    CHECK(squared_norm(a) == 5.0);
}

TEST_CASE("split sizes") {
    auto p = split(263, 0.7, 1);
    CHECK(p.train.size() == 184);
    CHECK(p.test.size() == 79);
    auto q = split(10, 0.7, 1);
    CHECK(q.train.size() == 7);
    CHECK(q.test.size() == 3);
    CHECK_THROWS_AS(split(1, 0.7, 1), ConfigError);
    CHECK_THROWS_AS(split(10, 1.0, 1), ConfigError);
    CHECK_THROWS_AS(split(10, 0.0, 1), ConfigError);
}

TEST_CASE("split is a deterministic partition") {
    for (std::uint64_t seed : {1, 2, 3, 77}) {
        auto a = split(50, 0.7, seed);
        auto b = split(50, 0.7, seed);
        CHECK(a.train == b.train);
        CHECK(a.test == b.test);
        CHECK(std::is_sorted(a.train.begin(), a.train.end()));
        CHECK(std::is_sorted(a.test.begin(), a.test.end()));
        std::set<std::size_t> all(a.train.begin(), a.train.end());
        all.insert(a.test.begin(), a.test.end());
        CHECK(all.size() == 50);
        CHECK(*all.rbegin() == 49);
    }
    CHECK(split(50, 0.7, 1).train != split(50, 0.7, 2).train);
}

TEST_CASE("stratified split") {
    std::vector<std::string> tags;
    for (int i = 0; i < 40; ++i) tags.push_back("a");
    for (int i = 0; i < 20; ++i) tags.push_back("b");
    for (int i = 0; i < 10; ++i) tags.push_back("c");
    tags.push_back("solo");
    auto p = stratified_split(tags, 0.7, 9);
    CHECK(p.stratified);
    CHECK(p.train.size() == 49);
    CHECK(p.test.size() == 22);
    std::map<std::string, int> train_count;
    for (auto i : p.train) ++train_count[tags[i]];
    CHECK(train_count["a"] == 28);
    CHECK(train_count["b"] == 14);
    CHECK(train_count["c"] == 7);
    REQUIRE(p.warnings.size() == 1);
    CHECK(p.warnings[0].find("solo") != std::string::npos);
    auto again = stratified_split(tags, 0.7, 9);
    CHECK(again.train == p.train);
}
