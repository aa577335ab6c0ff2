#include <catch2/catch_amalgamated.hpp>

#include "betatest/design.hpp"

using betatest::DegenerateSampleError;
using betatest::DesignError;
using betatest::TwoSampleDesign;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("design ratios") {
    const auto d = TwoSampleDesign::make(50, 70, 40);
    REQUIRE_THAT(d.y1n, WithinRel(0.8, 1e-15));
    REQUIRE_THAT(d.y2n, WithinRel(40.0 / 70.0, 1e-15));
    REQUIRE_THAT(d.c1 + d.c2, WithinAbs(1.0, 1e-15));
    REQUIRE_THAT(d.alpha_n, WithinRel(1.4, 1e-15));
    // h^2 = p (n1 + n2 - p) / (n1 n2)
    REQUIRE_THAT(d.hn * d.hn, WithinRel(40.0 * 80.0 / (50.0 * 70.0), 1e-12));

    // effective counterparts at n_l - 1
    REQUIRE_THAT(d.y1_eff, WithinRel(40.0 / 49.0, 1e-15));
    REQUIRE_THAT(d.y2_eff, WithinRel(40.0 / 69.0, 1e-15));
    REQUIRE_THAT(d.c1_eff + d.c2_eff, WithinAbs(1.0, 1e-15));
    REQUIRE_THAT(d.c1_eff, WithinRel(49.0 / 118.0, 1e-15));
    REQUIRE_THAT(d.alpha_eff, WithinRel(69.0 / 49.0, 1e-15));
    REQUIRE(d.h_eff > 0.0);
}

TEST_CASE("design bounds") {
    REQUIRE_THROWS_AS(TwoSampleDesign::make(1, 70, 5), DegenerateSampleError);
    REQUIRE_THROWS_AS(TwoSampleDesign::make(50, 70, 0), DesignError);
    REQUIRE_THROWS_AS(TwoSampleDesign::make(50, 70, 119), DesignError);
    REQUIRE_NOTHROW(TwoSampleDesign::make(50, 70, 118));  // p = n1 + n2 - 2 is legal

    // h stays real and positive across the whole legal range
    for (int p : {1, 40, 80, 118}) {
        const auto d = TwoSampleDesign::make(50, 70, p);
        REQUIRE(d.hn > 0.0);
    }
    // ... while the effective support collapses exactly at the boundary
    REQUIRE_THAT(TwoSampleDesign::make(50, 70, 118).h_eff, WithinAbs(0.0, 1e-7));
    REQUIRE(TwoSampleDesign::make(50, 70, 117).h_eff > 0.0);
}
