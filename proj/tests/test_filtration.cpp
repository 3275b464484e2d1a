#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include "cabletau/filtration.hpp"
#include "cabletau/knot.hpp"

using namespace cabletau;

namespace {

// Reduced model of the figure-eight filtered complex: a surviving generator
// plus two cancelling pairs, one above and one below the middle level.
FilteredComplex figure_eight_model() {
    FilteredComplex c;
    c.add_generator("u", 0, 0);
    c.add_generator("a", 1, 1);
    c.add_generator("b1", 0, 0);
    c.add_generator("b2", 0, 0);
    c.add_generator("c", -1, -1);
    c.add_boundary_term("a", "b1");
    c.add_boundary_term("b2", "c");
    c.validate();
    return c;
}

}  // namespace

TEST_CASE("builder rejects malformed complexes", "[filtration]") {
    FilteredComplex c;
    c.add_generator("a", 0, 0);
    CHECK_THROWS_AS(c.add_generator("a", 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(c.add_boundary_term("a", "zz"), std::invalid_argument);

    SECTION("generator cap") {
        FilteredComplex small(2);
        small.add_generator("x", 0, 0);
        small.add_generator("y", 0, 0);
        CHECK_THROWS_AS(small.add_generator("z", 0, 0), std::length_error);
    }
    SECTION("Maslov step must be exactly 1") {
        FilteredComplex bad;
        bad.add_generator("x", 1, 0);
        bad.add_generator("y", 0, -2);
        bad.add_boundary_term("x", "y");
        CHECK_THROWS_WITH(bad.validate(),
                          Catch::Matchers::ContainsSubstring("drop Maslov by exactly 1"));
    }
    SECTION("Alexander grading must not increase") {
        FilteredComplex bad;
        bad.add_generator("x", 0, 0);
        bad.add_generator("y", 1, -1);
        bad.add_boundary_term("x", "y");
        CHECK_THROWS_WITH(bad.validate(),
                          Catch::Matchers::ContainsSubstring("raises the Alexander grading"));
    }
    SECTION("differential squares to zero") {
        FilteredComplex bad;
        bad.add_generator("a", 2, 2);
        bad.add_generator("b", 1, 1);
        bad.add_generator("c", 0, 0);
        bad.add_boundary_term("a", "b");
        bad.add_boundary_term("b", "c");
        CHECK_THROWS_WITH(bad.validate(),
                          Catch::Matchers::ContainsSubstring("square to zero at a"));
    }
    SECTION("repeated boundary term") {
        FilteredComplex bad;
        bad.add_generator("x", 1, 1);
        bad.add_generator("y", 0, 0);
        bad.add_boundary_term("x", "y");
        CHECK_THROWS_AS(bad.add_boundary_term("x", "y"), std::invalid_argument);
    }
}

TEST_CASE("trefoil staircase: gradings, filtration homology, tau", "[filtration]") {
    const FilteredComplex c = staircase_complex(torus_knot_alexander(2, 3));
    REQUIRE(c.size() == 3);
    const auto& g = c.generators();
    CHECK(g[0].alexander == 1);
    CHECK(g[0].maslov == 0);
    CHECK(g[1].alexander == 0);
    CHECK(g[1].maslov == -1);
    CHECK(g[2].alexander == -1);
    CHECK(g[2].maslov == -2);
    CHECK(c.boundary_of(0).empty());
    CHECK(c.boundary_of(1) == std::vector<std::size_t>{2});
    CHECK(c.boundary_of(2).empty());

    CHECK(homology_of_subcomplex(c, 1) == GradedRanks{{0, 1}});
    CHECK(homology_of_subcomplex(c, 5) == GradedRanks{{0, 1}});
    CHECK(homology_of_subcomplex(c, 0) == GradedRanks{});
    CHECK(homology_of_subcomplex(c, -1) == GradedRanks{{-2, 1}});
    CHECK(homology_of_subcomplex(c, -2) == GradedRanks{});

    CHECK(tau_of_complex(c) == 1);
}

TEST_CASE("unknot staircase", "[filtration]") {
    const FilteredComplex c = staircase_complex(LaurentPoly::one());
    REQUIRE(c.size() == 1);
    CHECK(c.generators()[0].alexander == 0);
    CHECK(c.generators()[0].maslov == 0);
    CHECK(tau_of_complex(c) == 0);
    CHECK(associated_graded_hfk(c).ranks ==
          std::map<std::pair<int, int>, std::size_t>{{{0, 0}, 1}});
}

TEST_CASE("staircase gradings frozen for T(3,4)", "[filtration]") {
    const FilteredComplex c = staircase_complex(torus_knot_alexander(3, 4));
    REQUIRE(c.size() == 5);
    const std::vector<std::pair<int, int>> expect = {
        {3, 0}, {2, -1}, {0, -2}, {-2, -5}, {-3, -6}};
    for (std::size_t i = 0; i < expect.size(); ++i) {
        CAPTURE(i);
        CHECK(c.generators()[i].alexander == expect[i].first);
        CHECK(c.generators()[i].maslov == expect[i].second);
    }
    CHECK(tau_of_complex(c) == 3);
}

TEST_CASE("staircase of a cable polynomial", "[filtration]") {
    // (2,7)-companion product: seven steps ending at Maslov -2 * top
    const LaurentPoly cable =
        torus_knot_alexander(2, 7) * torus_knot_alexander(2, 3).substitute_power(2);
    const FilteredComplex c = staircase_complex(cable);
    REQUIRE(c.size() == 7);
    CHECK(c.generators().front().alexander == 5);
    CHECK(c.generators().front().maslov == 0);
    CHECK(c.generators().back().alexander == -5);
    CHECK(c.generators().back().maslov == -10);
    CHECK(tau_of_complex(c) == 5);
}

TEST_CASE("staircase normalization over the torus grid", "[filtration]") {
    for (int p = 2; p <= 5; ++p) {
        for (int q = p + 1; q <= 13; ++q) {
            if (std::gcd(p, q) != 1) continue;
            CAPTURE(p, q);
            const LaurentPoly d = torus_knot_alexander(p, q);
            const FilteredComplex c = staircase_complex(d);
            CHECK(c.size() == d.term_count());
            CHECK(homology_of_subcomplex(c, *c.max_alexander()) == GradedRanks{{0, 1}});
            CHECK(tau_of_complex(c) == *d.top_degree());
            CHECK(c.generators().back().maslov == -2 * *d.top_degree());

            // associated graded: rank 1 exactly at each staircase step
            const HFKTable t = associated_graded_hfk(c);
            CHECK(t.total_rank() == c.size());
            for (const auto& g : c.generators())
                CHECK(t.rank_at(g.alexander, g.maslov) == 1);
        }
    }
}

TEST_CASE("staircase rejects non-qualifying polynomials", "[filtration]") {
    const LaurentPoly fig8 = LaurentPoly::from_terms({{1, -1}, {0, 3}, {-1, -1}});
    CHECK_THROWS_AS(staircase_complex(fig8), std::domain_error);
    CHECK_THROWS_AS(staircase_complex(LaurentPoly::monomial(1, 1)), std::domain_error);
    CHECK_THROWS_AS(staircase_complex(LaurentPoly::zero()), std::domain_error);
}

TEST_CASE("figure-eight model: non-staircase homology and tau", "[filtration]") {
    const FilteredComplex c = figure_eight_model();

    CHECK(homology_of_subcomplex(c, 1) == GradedRanks{{0, 1}});
    CHECK(homology_of_subcomplex(c, 0) == GradedRanks{{0, 2}});
    CHECK(homology_of_subcomplex(c, -1) == GradedRanks{{-1, 1}});
    CHECK(homology_of_subcomplex(c, -2) == GradedRanks{});

    const HFKTable t = associated_graded_hfk(c);
    CHECK(t.rank_at(1, 1) == 1);
    CHECK(t.rank_at(0, 0) == 3);
    CHECK(t.rank_at(-1, -1) == 1);
    CHECK(t.total_rank() == 5);

    CHECK(tau_of_complex(c) == 0);
}

TEST_CASE("tau sees cycles that are sums of generators", "[filtration]") {
    FilteredComplex c;
    c.add_generator("z1", 0, 0);
    c.add_generator("z2", 2, 0);
    c.add_generator("w", 2, 1);
    c.add_boundary_term("w", "z1");
    c.add_boundary_term("w", "z2");
    CHECK(homology_of_subcomplex(c, 2) == GradedRanks{{0, 1}});
    CHECK(tau_of_complex(c) == 0);  // z1 alone already escapes the boundary image
}

TEST_CASE("tau preconditions", "[filtration]") {
    SECTION("empty complex") {
        FilteredComplex c;
        CHECK(homology_of_subcomplex(c, 3) == GradedRanks{});
        CHECK_THROWS_AS(tau_of_complex(c), std::domain_error);
    }
    SECTION("total homology rank 2") {
        FilteredComplex c;
        c.add_generator("a", 0, 0);
        c.add_generator("b", 3, 0);
        CHECK_THROWS_AS(tau_of_complex(c), std::domain_error);
    }
    SECTION("rank 1 in the wrong Maslov grading") {
        FilteredComplex c;
        c.add_generator("a", 0, 1);
        CHECK_THROWS_AS(tau_of_complex(c), std::domain_error);
    }
}

TEST_CASE("complex JSON round trip", "[filtration]") {
    const FilteredComplex c = staircase_complex(torus_knot_alexander(3, 4));
    const nlohmann::json j = c.to_json();
    CHECK(j.at("generators").size() == 5);
    CHECK(j.at("boundary").size() == 2);
    const FilteredComplex back = FilteredComplex::from_json(j);
    CHECK(back == c);

    CHECK_THROWS_AS(FilteredComplex::from_json(nlohmann::json::parse("{}")),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        FilteredComplex::from_json(nlohmann::json::parse(
            R"({"generators":[{"id":"a","A":0,"M":0}],"boundary":{"a":["b"]}})")),
        std::invalid_argument);
    // malformed gradings are rejected by validation on load
    CHECK_THROWS_AS(
        FilteredComplex::from_json(nlohmann::json::parse(
            R"({"generators":[{"id":"a","A":0,"M":0},{"id":"b","A":0,"M":2}],"boundary":{"b":["a"]}})")),
        std::invalid_argument);
}

TEST_CASE("homology of random staircase direct sums stays additive", "[filtration]") {
    // Direct sums of shifted staircases: ranks add levelwise.  Exercises the
    // elimination on complexes with several components.
    const LaurentPoly d1 = torus_knot_alexander(2, 5);
    const LaurentPoly d2 = torus_knot_alexander(3, 4);
    const FilteredComplex c1 = staircase_complex(d1);
    const FilteredComplex c2 = staircase_complex(d2);
    FilteredComplex sum;
    for (const auto& g : c1.generators()) sum.add_generator("p" + g.id, g.alexander, g.maslov);
    for (const auto& g : c2.generators()) sum.add_generator("q" + g.id, g.alexander, g.maslov);
    for (std::size_t i = 0; i < c1.size(); ++i)
        for (std::size_t t : c1.boundary_of(i))
            sum.add_boundary_term("p" + c1.generators()[i].id, "p" + c1.generators()[t].id);
    for (std::size_t i = 0; i < c2.size(); ++i)
        for (std::size_t t : c2.boundary_of(i))
            sum.add_boundary_term("q" + c2.generators()[i].id, "q" + c2.generators()[t].id);
    for (int j = -5; j <= 5; ++j) {
        GradedRanks expect = homology_of_subcomplex(c1, j);
        for (const auto& [m, r] : homology_of_subcomplex(c2, j)) expect[m] += r;
        CHECK(homology_of_subcomplex(sum, j) == expect);
    }
}
