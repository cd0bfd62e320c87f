#include <doctest.h>

#include <algorithm>
#include <random>

#include "etdmine/evaluation.hpp"

using namespace etdmine;
using Matrix = std::vector<std::vector<std::uint64_t>>;

TEST_CASE("perfect five-class report") {
    const std::vector<std::uint64_t> counts{41, 91, 57, 20, 54};
    Matrix m(5, std::vector<std::uint64_t>(5, 0));
    for (std::size_t i = 0; i < 5; ++i) m[i][i] = counts[i];
    auto r = report_from_confusion({"a", "b", "c", "d", "e"}, m);
    CHECK(r.total == 263);
    REQUIRE(r.kappa.has_value());
    CHECK(*r.kappa == 1.0);
    CHECK(r.accuracy == 1.0);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(r.precision[i] == 1.0);
        CHECK(r.recall[i] == 1.0);
    }
    const std::string expected =
        "kappa: 1.000\t\t\t\t\t\t\n"
        "\ttrue Topic a\ttrue Topic b\ttrue Topic c\ttrue Topic d\ttrue Topic e\tclass precision\n"
        "pred. Topic a\t41\t0\t0\t0\t0\t100.00%\n"
        "pred. Topic b\t0\t91\t0\t0\t0\t100.00%\n"
        "pred. Topic c\t0\t0\t57\t0\t0\t100.00%\n"
        "pred. Topic d\t0\t0\t0\t20\t0\t100.00%\n"
        "pred. Topic e\t0\t0\t0\t0\t54\t100.00%\n"
        "class recall\t100.00%\t100.00%\t100.00%\t100.00%\t100.00%\t\n";
    CHECK(render_eval_text(r) == expected);
    auto csv = render_eval_csv(r);
    CHECK(csv.rfind("kappa: 1.000,,,,,,\r\n", 0) == 0);
}

TEST_CASE("chance-level two-class matrix") {
    auto r = report_from_confusion({"a", "b"}, Matrix{{1, 1}, {1, 1}});
    CHECK(r.accuracy == 0.5);
    REQUIRE(r.kappa.has_value());
    CHECK(*r.kappa == 0.0);
    CHECK(r.precision == std::vector<double>{0.5, 0.5});
}

TEST_CASE("single-class agreement leaves kappa undefined") {
    auto r = evaluate_predictions({"a", "a", "a"}, {"a", "a", "a"});
    CHECK(r.accuracy == 1.0);
    CHECK_FALSE(r.kappa.has_value());
    CHECK(render_eval_text(r).rfind("kappa: undefined", 0) == 0);
}

TEST_CASE("evaluate_predictions builds predicted x true") {
    auto r = evaluate_predictions({"a", "a", "b", "c"}, {"a", "b", "b", "b"});
    CHECK(r.classes == std::vector<std::string>{"a", "b", "c"});
    CHECK(r.confusion == Matrix{{1, 0, 0}, {1, 1, 1}, {0, 0, 0}});
    CHECK(r.total == 4);
    CHECK(r.recall[0] == 0.5);
    CHECK(r.precision[1] == doctest::Approx(1.0 / 3));
    CHECK(r.precision_undefined[2]);
    CHECK_FALSE(r.recall_undefined[2]);
    CHECK(r.recall[2] == 0.0);
}

TEST_CASE("kappa against a hand formula") {
    // p_o = 0.7, p_e = (0.5*0.6 + 0.5*0.4) = 0.5 -> 0.4
    auto r = report_from_confusion({"a", "b"}, Matrix{{4, 2}, {1, 3}});
    REQUIRE(r.kappa.has_value());
    CHECK(*r.kappa == doctest::Approx(0.4).epsilon(1e-15));
}

TEST_CASE("kappa properties on random matrices") {
    std::mt19937 gen(17);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + gen() % 5;
        Matrix m(n, std::vector<std::uint64_t>(n));
        for (auto& row : m)
            for (auto& v : row) v = gen() % 4 == 0 ? gen() % 20 : 0;
        m[0][0] += 1;
        std::vector<std::string> classes;
        for (std::size_t i = 0; i < n; ++i) classes.push_back(std::string(1, static_cast<char>('a' + i)));
        auto r = report_from_confusion(classes, m);

        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), gen);
        Matrix pm(n, std::vector<std::uint64_t>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) pm[i][j] = m[perm[i]][perm[j]];
        auto p = report_from_confusion(classes, pm);
        REQUIRE(r.kappa.has_value() == p.kappa.has_value());
        if (r.kappa) CHECK(*r.kappa == doctest::Approx(*p.kappa).epsilon(1e-12));

        bool diagonal = true;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j && m[i][j]) diagonal = false;
        if (r.kappa) CHECK((*r.kappa == 1.0) == diagonal);
    }
}
