#include <doctest.h>

#include <fstream>

#include "etdmine/porter.hpp"

using etdmine::porter_stem;

TEST_CASE("porter examples") {
    CHECK(porter_stem("book") == "book");
    CHECK(porter_stem("libraries") == "librari");
    CHECK(porter_stem("running") == "run");
    CHECK(porter_stem("caresses") == "caress");
    CHECK(porter_stem("ponies") == "poni");
    CHECK(porter_stem("relational") == "relat");
    CHECK(porter_stem("generalization") == "gener");
    CHECK(porter_stem("hopeful") == "hope");
    CHECK(porter_stem("adjustable") == "adjust");
    CHECK(porter_stem("controlling") == "control");
    CHECK(porter_stem("rate") == "rate");
}

TEST_CASE("porter edge cases") {
    CHECK(porter_stem("").empty());
    CHECK(porter_stem("as") == "as");
    CHECK(porter_stem("is") == "is");
    CHECK(porter_stem("2016") == "2016");
    CHECK(porter_stem("caf\xC3\xA9s") == "caf\xC3\xA9s");
}

TEST_CASE("porter reference vocabulary sample") {
    std::ifstream voc(ETDMINE_TEST_DATA "/porter_voc.txt");
    std::ifstream out(ETDMINE_TEST_DATA "/porter_output.txt");
    REQUIRE(voc);
    REQUIRE(out);
    std::string word, expected;
    std::size_t n = 0;
    while (std::getline(voc, word) && std::getline(out, expected)) {
        if (n++ % 50 == 0) CHECK_MESSAGE(porter_stem(word) == expected, word);
    }
    CHECK(n > 20000);
}
