#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <string>

#include "cabletau/obstructions.hpp"
#include "cabletau/surgery.hpp"

using namespace cabletau;
using Catch::Matchers::ContainsSubstring;

namespace {

KnotRecord atlas(const std::string& name) {
    const auto& knots = builtin_knots();
    const KnotRecord* k = find_knot(knots, name);
    REQUIRE(k != nullptr);
    return *k;
}

}  // namespace

TEST_CASE("band negativity obstructs quasipositive and complex-curve cables",
          "[obstructions]") {
    const KnotRecord left = atlas("left-trefoil");
    const KnotRecord right = atlas("right-trefoil");
    const KnotRecord unknot = atlas("unknot");

    SECTION("left-handed trefoil cables with small n are obstructed") {
        const ObstructionReport r = quasipositive_cable_obstruction(left, 2, 0);
        CHECK(r.verdict == Verdict::Obstructed);
        CHECK_THAT(r.reason, ContainsSubstring("= -1 < 0"));
        CHECK(quasipositive_cable_obstruction(left, 2, -3).verdict == Verdict::Obstructed);
        CHECK(complex_curve_cable_obstruction(left, 2, 0).verdict == Verdict::Obstructed);
        CHECK(complex_curve_cable_obstruction(left, 3, 0).property == "complex-curve cable");
    }

    SECTION("the boundary case leaves membership open") {
        // upper endpoint exactly zero: strict inequality obstructs nothing
        const ObstructionReport r = quasipositive_cable_obstruction(left, 2, 1);
        CHECK(r.verdict == Verdict::NotObstructed);
        CHECK_THAT(r.reason, ContainsSubstring("= 0 >= 0"));
        CHECK(quasipositive_cable_obstruction(unknot, 2, -1).verdict ==
              Verdict::NotObstructed);
        CHECK(quasipositive_cable_obstruction(unknot, 2, -2).verdict == Verdict::Obstructed);
    }

    SECTION("positive companions are never band-obstructed at n >= 0") {
        for (int n = 0; n <= 4; ++n) {
            CHECK(quasipositive_cable_obstruction(right, 2, n).verdict ==
                  Verdict::NotObstructed);
            CHECK(complex_curve_cable_obstruction(right, 3, n).verdict ==
                  Verdict::NotObstructed);
        }
        CHECK(quasipositive_cable_obstruction(right, 2, -4).verdict == Verdict::Obstructed);
        CHECK(quasipositive_cable_obstruction(right, 2, -3).verdict == Verdict::NotObstructed);
    }

    SECTION("unknown tau yields an unknown verdict") {
        KnotRecord mystery = atlas("figure-eight");
        mystery.tau.reset();
        mystery.pos_member.reset();
        const ObstructionReport r = quasipositive_cable_obstruction(mystery, 2, 0);
        CHECK(r.verdict == Verdict::Unknown);
        CHECK_THAT(r.reason, ContainsSubstring("tau is unknown"));
    }

    SECTION("report serialization") {
        const auto j = quasipositive_cable_obstruction(left, 2, 0).to_json();
        CHECK(j["property"] == "quasipositive cable");
        CHECK(j["verdict"] == "obstructed");
        CHECK(j["p"] == 2);
        CHECK(j["n"] == 0);
    }

    CHECK_THROWS_AS(quasipositive_cable_obstruction(right, 1, 0), std::invalid_argument);
}

TEST_CASE("tau = genus obstructions for cables", "[obstructions]") {
    const KnotRecord right = atlas("right-trefoil");
    const KnotRecord left = atlas("left-trefoil");
    const KnotRecord fig8 = atlas("figure-eight");

    SECTION("extremal companions with n >= 0 pass") {
        for (int n = 0; n <= 3; ++n) {
            CHECK(cable_tau_genus_obstruction(right, 2, n).verdict == Verdict::NotObstructed);
            CHECK(cable_lspace_surgery_obstruction(right, 3, n).verdict ==
                  Verdict::NotObstructed);
        }
        CHECK(cable_tau_genus_obstruction(atlas("unknot"), 2, 0).verdict ==
              Verdict::NotObstructed);
    }

    SECTION("negative parameters are obstructed regardless of the companion") {
        const ObstructionReport r = cable_tau_genus_obstruction(right, 2, -1);
        CHECK(r.verdict == Verdict::Obstructed);
        CHECK_THAT(r.reason, ContainsSubstring("negative-parameter cable"));
        CHECK(cable_lspace_surgery_obstruction(atlas("unknot"), 2, -1).verdict ==
              Verdict::Obstructed);
    }

    SECTION("non-extremal tau is obstructed") {
        const ObstructionReport r = cable_tau_genus_obstruction(fig8, 2, 3);
        CHECK(r.verdict == Verdict::Obstructed);
        CHECK_THAT(r.reason, ContainsSubstring("tau = 0 != genus = 1"));
        CHECK(cable_lspace_surgery_obstruction(left, 2, 5).verdict == Verdict::Obstructed);
    }

    SECTION("certified cables are never obstructed") {
        for (const KnotRecord& k :
             {atlas("unknot"), right, torus_knot_record(2, 5), torus_knot_record(3, 4)})
            for (int p = 2; p <= 3; ++p)
                for (int n = 0; n <= 4; ++n) {
                    const int q = p * n + 1;
                    if (std::gcd(p, q) != 1) continue;
                    if (!cable_lspace_certificate(k, CableParams(p, q)).certified) continue;
                    INFO(k.name << " p=" << p << " n=" << n);
                    CHECK(cable_lspace_surgery_obstruction(k, p, n).verdict ==
                          Verdict::NotObstructed);
                    CHECK(cable_tau_genus_obstruction(k, p, n).verdict ==
                          Verdict::NotObstructed);
                }
    }

    SECTION("unknown tau yields an unknown verdict") {
        KnotRecord mystery = fig8;
        mystery.tau.reset();
        CHECK(cable_tau_genus_obstruction(mystery, 2, 1).verdict == Verdict::Unknown);
    }
}

TEST_CASE("positivity-class membership of cables", "[obstructions]") {
    CHECK(positive_cable_obstruction(atlas("right-trefoil"), 2, 1).verdict ==
          Verdict::NotObstructed);
    CHECK(positive_cable_obstruction(atlas("unknot"), 3, 2).verdict == Verdict::NotObstructed);

    const ObstructionReport left = positive_cable_obstruction(atlas("left-trefoil"), 2, 1);
    CHECK(left.verdict == Verdict::Obstructed);
    CHECK_THAT(left.reason, ContainsSubstring("outside the positivity class"));
    CHECK(positive_cable_obstruction(atlas("figure-eight"), 2, 1).verdict ==
          Verdict::Obstructed);

    KnotRecord mystery = atlas("figure-eight");
    mystery.pos_member.reset();
    CHECK(positive_cable_obstruction(mystery, 2, 1).verdict == Verdict::Unknown);
    CHECK_THROWS_AS(positive_cable_obstruction(mystery, 0, 1), std::invalid_argument);
}

TEST_CASE("complex-curve fiber criterion", "[obstructions]") {
    const KnotRecord right = atlas("right-trefoil");
    CHECK(fiber_surface_complex_criterion(right, CableParams(2, 7)));
    CHECK(fiber_surface_complex_criterion(atlas("unknot"), CableParams(2, 1)));
    CHECK_FALSE(fiber_surface_complex_criterion(right, CableParams(2, -3)));
    CHECK_FALSE(fiber_surface_complex_criterion(atlas("left-trefoil"), CableParams(2, 7)));
    CHECK_FALSE(fiber_surface_complex_criterion(atlas("figure-eight"), CableParams(2, 7)));

    KnotRecord mystery = right;
    mystery.fibered.reset();
    mystery.complex_fiber.reset();
    CHECK_THROWS_AS(fiber_surface_complex_criterion(mystery, CableParams(2, 7)),
                    std::domain_error);
}

TEST_CASE("cabling does not commute with concordance", "[obstructions]") {
    for (int p = 2; p <= 10; ++p) {
        const ConcordanceDemo d = concordance_demo(p);
        INFO("p=" << p);
        CHECK(d.tau_unknot_cable == 0);
        CHECK(d.tau_right_cable == p);
        CHECK(d.tau_left_cable == -1);
        CHECK(d.discrepancy == p - 1);
        CHECK(d.discrepancy != 0);
    }
    const auto j = concordance_demo(3).to_json();
    CHECK(j["discrepancy"] == 2);
    CHECK(j["tau_left_cable"] == -1);
    CHECK_THROWS_AS(concordance_demo(1), std::invalid_argument);
}
