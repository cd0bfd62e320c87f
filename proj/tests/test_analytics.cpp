#include <doctest.h>

#include <map>
#include <json.hpp>
#include <random>

#include "etdmine/analytics.hpp"
#include "etdmine/errors.hpp"
#include "support/tokens.hpp"

using namespace etdmine;
using etdmine::testing::corpus_of;

TEST_CASE("TermQuery parsing") {
    auto q = TermQuery::parse("coat*");
    CHECK(q.wildcard());
    CHECK(q.stem() == "coat");
    CHECK(q.matches("coat"));
    CHECK(q.matches("coating"));
    CHECK_FALSE(q.matches("coa"));
    auto exact = TermQuery::parse("coat");
    CHECK_FALSE(exact.wildcard());
    CHECK_FALSE(exact.matches("coats"));
    CHECK_THROWS_AS(TermQuery::parse("co*at"), QueryError);
    CHECK_THROWS_AS(TermQuery::parse("*"), QueryError);
    CHECK_THROWS_AS(TermQuery::parse(""), QueryError);
    CHECK_THROWS_AS(TermQuery::parse("a**"), QueryError);
}

TEST_CASE("trend") {
    SUBCASE("raw and relative") {
        auto tc = corpus_of({{"x", "y", "x", "z"}});
        auto r = trend(tc, TermQuery::parse("x"), 2);
        REQUIRE(r.rows.size() == 1);
        CHECK(r.rows[0].count == 2);
        CHECK(r.rows[0].doc_tokens == 4);
        CHECK(r.rows[0].relative == 5000000.0);
        CHECK(r.rows[0].segments == std::vector<std::uint64_t>{1, 1});
    }
    SUBCASE("wildcard aggregates") {
        auto tc = corpus_of({{"coat", "coating", "coats", "boat"}});
        auto r = trend(tc, TermQuery::parse("coat*"));
        CHECK(r.rows[0].count == 3);
        CHECK(r.rows[0].relative == 7500000.0);
    }
    SUBCASE("absent term") {
        auto tc = corpus_of({{"a", "b"}, {}});
        auto r = trend(tc, TermQuery::parse("zzz"), 4);
        REQUIRE(r.rows.size() == 2);
        for (const auto& row : r.rows) {
            CHECK(row.count == 0);
            CHECK(row.relative == 0.0);
            CHECK(row.segments == std::vector<std::uint64_t>(4, 0));
        }
    }
    SUBCASE("segment counts sum to the raw count") {
        std::mt19937 gen(5);
        std::vector<std::vector<std::string>> docs(40);
        for (auto& d : docs)
            for (std::size_t i = 0, n = gen() % 37; i < n; ++i) d.push_back(std::string(1, static_cast<char>('a' + gen() % 4)));
        auto tc = corpus_of(docs);
        for (std::size_t segs : {1, 3, 10, 50}) {
            auto r = trend(tc, TermQuery::parse("a"), segs);
            for (const auto& row : r.rows) {
                std::uint64_t s = 0;
                for (auto v : row.segments) s += v;
                CHECK(s == row.count);
                CHECK(row.segments.size() == segs);
            }
        }
    }
}

TEST_CASE("segment_of") {
    CHECK(segment_of(0, 10, 3) == 0);
    CHECK(segment_of(2, 10, 3) == 0);
    CHECK(segment_of(3, 10, 3) == 1);
    CHECK(segment_of(6, 10, 3) == 2);
    CHECK(segment_of(9, 10, 3) == 2);
    // span of zero: everything in the last segment
    CHECK(segment_of(0, 3, 10) == 9);
    CHECK(segment_of(2, 3, 10) == 9);
}

TEST_CASE("collocates") {
    SUBCASE("window one") {
        auto tc = corpus_of({{"a", "b", "c", "b"}});
        auto g = collocates(tc, {TermQuery::parse("c")}, 1);
        REQUIRE(g.edges.size() == 1);
        CHECK(tc.vocab.term(g.edges[0].neighbor) == "b");
        CHECK(g.edges[0].weight == 2);
        CHECK(g.keyword_counts == std::vector<std::uint64_t>{1});
    }
    SUBCASE("document start") {
        auto tc = corpus_of({{"k", "x", "y"}});
        auto g = collocates(tc, {TermQuery::parse("k")}, 1);
        REQUIRE(g.edges.size() == 1);
        CHECK(tc.vocab.term(g.edges[0].neighbor) == "x");
    }
    SUBCASE("windows stop at document boundaries") {
        auto tc = corpus_of({{"x", "k"}, {"y", "z"}});
        auto g = collocates(tc, {TermQuery::parse("k")}, 5);
        REQUIRE(g.edges.size() == 1);
        CHECK(tc.vocab.term(g.edges[0].neighbor) == "x");
    }
    SUBCASE("absent keyword") {
        auto tc = corpus_of({{"a", "b"}});
        auto g = collocates(tc, {TermQuery::parse("q")}, 5);
        CHECK(g.edges.empty());
        CHECK(g.keyword_counts == std::vector<std::uint64_t>{0});
    }
    SUBCASE("repeated keyword counts itself at other positions") {
        auto tc = corpus_of({{"k", "k"}});
        auto g = collocates(tc, {TermQuery::parse("k")}, 1);
        REQUIRE(g.edges.size() == 1);
        CHECK(g.edges[0].weight == 2);
    }
    SUBCASE("top_n with ties by term id") {
        auto tc = corpus_of({{"k", "p", "q", "r", "k", "r"}});
        auto g = collocates(tc, {TermQuery::parse("k")}, 5, 2);
        REQUIRE(g.edges.size() == 2);
        CHECK(tc.vocab.term(g.edges[0].neighbor) == "r");
        CHECK(tc.vocab.term(g.edges[1].neighbor) == "k");
    }
}

TEST_CASE("keyword_counts") {
    auto tc = corpus_of({{"x", "x", "y"}, {"xy"}});
    auto counts = keyword_counts(tc, parse_queries({"x", "z", "x*"}));
    REQUIRE(counts.size() == 3);
    CHECK(counts[0].keyword == "x");
    CHECK(counts[0].count == 2);
    CHECK(counts[1].count == 0);
    CHECK(counts[2].count == 3);
}

TEST_CASE("graph exports") {
    auto tc = corpus_of({{"library", "books", "library", "history"}});
    auto g = collocates(tc, {TermQuery::parse("library")}, 1);
    auto dot = collocates_dot(g, tc.vocab);
    CHECK(dot.rfind("graph", 0) == 0);
    CHECK(dot.find("\"library\" -- \"books\"") != std::string::npos);

    auto j = nlohmann::json::parse(collocates_json(g, tc.vocab));
    CHECK(j["window"] == 1);
    CHECK(j["edges"].size() == g.edges.size());
    std::map<std::string, int> weights;
    for (const auto& e : j["edges"]) weights[e["target"].get<std::string>()] = e["weight"].get<int>();
    CHECK(weights["books"] == 2);
    CHECK(weights["history"] == 1);
}
