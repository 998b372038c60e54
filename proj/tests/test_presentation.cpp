#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"

using namespace tbound;

namespace {

const char* kTrefoil = "gens: x, y\nrel: x y x Y X Y\n";

FinitePresentation free_group(std::size_t m) {
    FinitePresentation p;
    for (std::uint32_t j = 0; j < m; ++j) p.generator_names.push_back(oracle::gen_name(j));
    return p;
}

}  // namespace

TEST_CASE("parse the trefoil presentation") {
    const auto p = parse_presentation(kTrefoil);
    CHECK(p.generator_names == std::vector<std::string>{"x", "y"});
    REQUIRE(p.relator_count() == 1);
    CHECK(p.relators[0] == oracle::word_of({{0, 1}, {1, 1}, {0, 1}, {1, -1}, {0, -1}, {1, -1}}));
    CHECK(p.warnings.empty());
    CHECK(serialize_presentation(p) == kTrefoil);
}

TEST_CASE("relators reducing to the identity are dropped with a warning") {
    const auto p = parse_presentation("gens: a\nrel: a A\n");
    CHECK(p.relator_count() == 0);
    CHECK(p.warnings.size() == 1);
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_presentation("rel: x\n"), ParseError);
    CHECK_THROWS_AS(parse_presentation("gens: x, x\n"), ParseError);
    CHECK_THROWS_AS(parse_presentation("gens: x\nrel: x y\n"), ParseError);
    CHECK_THROWS_AS(parse_presentation("gens: x\ngens: y\n"), ParseError);
    CHECK_THROWS_AS(parse_presentation("gens: X1\n"), ParseError);
    CHECK_THROWS_AS(parse_presentation("gens: x\nrel: x^0\n"), ParseError);
    CHECK_THROWS_AS(parse_presentation("gens: x\nrel:\n"), ParseError);
    CHECK_THROWS_AS(parse_presentation("gens: x\nrelator: x\n"), ParseError);
    try {
        parse_presentation("gens: x, y\n\nrel: x z\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() == 8);
    }
}

TEST_CASE("powers, comments and multi-character names") {
    const auto p = parse_presentation("# torus knot\ngens: x1, y_2  # trailing\n\nrel: x1^2 y_2^-3 Y_2^2\n");
    REQUIRE(p.relator_count() == 1);
    CHECK(p.relators[0].exponent_sums(2) == std::vector<std::int64_t>{2, -5});
    CHECK(serialize_presentation(p) == "gens: x1, y_2\nrel: x1 x1 Y_2 Y_2 Y_2 Y_2 Y_2\n");
}

TEST_CASE("property: serializer round-trips random presentations") {
    for (const auto& p : oracle::random_suite(100, 21)) {
        const auto q = parse_presentation(serialize_presentation(p));
        REQUIRE(q.generator_names == p.generator_names);
        REQUIRE(q.relators == p.relators);
    }
}

TEST_CASE("exponent sum matrix") {
    const auto e = exponent_sum_matrix(parse_presentation(kTrefoil));
    CHECK(e(0, 0) == 1);
    CHECK(e(0, 1) == -1);
    const auto c = exponent_sum_matrix(parse_presentation("gens: a, b\nrel: a b A B\n"));
    CHECK(c(0, 0) == 0);
    CHECK(c(0, 1) == 0);
    const auto z = exponent_sum_matrix(free_group(3));
    CHECK(z.rows() == 0);
    CHECK(z.cols() == 3);
}

TEST_CASE("property: exponent sums equal augmented Fox derivatives") {
    for (const auto& p : oracle::random_suite(100, 22)) {
        const auto e = exponent_sum_matrix(p);
        const auto j = fox_jacobian(p);
        for (std::size_t i = 0; i < p.relator_count(); ++i)
            for (std::size_t k = 0; k < p.generator_count(); ++k) REQUIRE(j(i, k).augmentation() == e(i, k));
    }
}

TEST_CASE("validate epimorphisms") {
    const auto p = parse_presentation(kTrefoil);
    CHECK(validate_epimorphism(p, {1, 1}).valid);
    const auto bad = validate_epimorphism(p, {1, 2});
    CHECK_FALSE(bad.valid);
    CHECK(bad.relator == std::size_t{0});
    CHECK(bad.reason.find("kills-relators violated at relator") == 0);
    const auto two = validate_epimorphism(p, {2, 2});
    CHECK_FALSE(two.valid);
    CHECK(two.gcd == 2);
    CHECK(two.reason == "not surjective (gcd = 2)");
    CHECK_FALSE(validate_epimorphism(p, {1}).valid);
}

TEST_CASE("enumerate epimorphisms examples") {
    const auto p = parse_presentation(kTrefoil);
    CHECK(enumerate_epimorphisms(p, 1) == std::vector<Epimorphism>{{{1, 1}}});
    CHECK(enumerate_epimorphisms(p, 3) == std::vector<Epimorphism>{{{1, 1}}});
    CHECK(enumerate_epimorphisms(free_group(2), 1) ==
          std::vector<Epimorphism>{{{0, 1}}, {{1, 0}}, {{1, 1}}, {{1, -1}}});
    CHECK(enumerate_epimorphisms(parse_presentation("gens: x\nrel: x^2\n"), 4).empty());
    CHECK_THROWS_AS(enumerate_epimorphisms(p, 0), std::invalid_argument);
}

TEST_CASE("property: enumeration matches the brute-force box oracle") {
    std::size_t compared = 0;
    for (const auto& p : oracle::random_suite(80, 23)) {
        for (std::int64_t bound = 1; bound <= 5; ++bound) {
            const auto got = enumerate_epimorphisms(p, bound);
            REQUIRE(got == oracle::box_epimorphisms(p, bound));
            for (const auto& e : got) REQUIRE(validate_epimorphism(p, e.values).valid);
            ++compared;
        }
    }
    for (std::size_t m = 1; m <= 3; ++m)
        for (std::int64_t bound = 1; bound <= 5; ++bound)
            REQUIRE(enumerate_epimorphisms(free_group(m), bound) == oracle::box_epimorphisms(free_group(m), bound));
    CHECK(compared == 400);
}

TEST_CASE("complexity and root bound") {
    const auto trefoil = parse_presentation(kTrefoil);
    CHECK(complexity_k(trefoil) == 6);
    CHECK(root_bound_c(trefoil) == 73);
    CHECK(complexity_k(free_group(1)) == 0);
    CHECK(root_bound_c(free_group(1)) == 1);
    const auto sq = parse_presentation("gens: x\nrel: x^2\n");
    CHECK(complexity_k(sq) == 2);
    CHECK(root_bound_c(sq) == 3);
    for (const auto& p : oracle::random_suite(50, 24)) REQUIRE(root_bound_c(p) >= 1);
}

TEST_CASE("epimorphism helpers") {
    const Epimorphism e{{1, -2, 0}};
    CHECK(e.to_string() == "1,-2,0");
    CHECK(e.negated() == Epimorphism{{-1, 2, 0}});
}
