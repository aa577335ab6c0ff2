#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "betatest/asymptotics.hpp"
#include "betatest/esd.hpp"

using namespace betatest;
using Catch::Matchers::WithinAbs;

TEST_CASE("support endpoints and masses") {
    const auto p = EsdParams::make(0.5, 0.5);
    REQUIRE(p.x_l >= 0.0);
    REQUIRE(p.x_r <= 1.0);
    REQUIRE(p.x_l < p.x_r);
    REQUIRE_THAT(p.x_l + p.x_r, WithinAbs(1.0, 1e-14));  // symmetric when y1 = y2
    REQUIRE(p.mass0 == 0.0);
    REQUIRE(p.mass1 == 0.0);

    const auto q = EsdParams::make(1.5, 2.0);
    REQUIRE_THAT(q.mass0, WithinAbs(0.5 / 1.5, 1e-15));
    REQUIRE_THAT(q.mass1, WithinAbs(0.5, 1e-15));

    REQUIRE_THROWS_AS(EsdParams::make(2.0, 2.0), DegenerateDesignError);
    REQUIRE_THROWS_AS(EsdParams::make(0.0, 1.0), DesignError);

    for (double y1 : {0.2, 0.7, 1.0, 1.4, 1.9})
        for (double y2 : {0.3, 0.9, 1.0, 1.6}) {
            const auto e = EsdParams::make(y1, y2);
            REQUIRE(e.x_l >= 0.0);
            REQUIRE(e.x_r <= 1.0 + 1e-15);
        }
}

TEST_CASE("density vanishes at and outside the support") {
    const auto p = EsdParams::make(0.8, 1.3);
    REQUIRE(esd_density(p.x_l, p) == 0.0);
    REQUIRE(esd_density(p.x_r, p) == 0.0);
    REQUIRE(esd_density(p.x_l - 0.01, p) == 0.0);
    REQUIRE(esd_density(p.x_r + 0.01, p) == 0.0);
    REQUIRE(esd_density(0.5 * (p.x_l + p.x_r), p) > 0.0);
}

TEST_CASE("density is symmetric about one half when y1 = y2") {
    const auto p = EsdParams::make(0.5, 0.5);
    for (double t = 0.0; t < 0.43; t += 0.01)
        REQUIRE_THAT(esd_density(0.5 + t, p), WithinAbs(esd_density(0.5 - t, p), 1e-12));
}

TEST_CASE("total mass of the limiting distribution is one") {
    for (double y1 : {0.25, 0.8, 1.0, 1.3, 1.8})
        for (double y2 : {0.3, 0.95, 1.0, 1.6}) {
            const auto p = EsdParams::make(y1, y2);
            const double cont = integrate_esd([](double) { return 1.0; }, p, 4096);
            REQUIRE_THAT(cont + p.mass0 + p.mass1, WithinAbs(1.0, 1e-8));
        }
}

TEST_CASE("quadrature reproduces the closed-form limits") {
    {
        const auto p = EsdParams::make(0.5, 2.0);
        const double l = integrate_esd([](double x) { return x; }, p, 2048);
        REQUIRE_THAT(l, WithinAbs(0.3, 1e-9));
        REQUIRE_THAT(l, WithinAbs(limit_l(0.5, 2.0), 1e-9));
    }
    {
        const auto p = EsdParams::make(2.0, 0.5);
        const double lt =
            integrate_esd([](double x) { return quadratic_limit_integrand(x, 2.0, 0.5); }, p, 2048);
        REQUIRE_THAT(lt, WithinAbs(0.275, 1e-9));
        REQUIRE_THAT(lt, WithinAbs(limit_l_tilde(2.0, 0.5), 1e-9));
    }
}

TEST_CASE("quadrature is converged at the default node count") {
    for (auto [y1, y2] : {std::pair{0.5, 0.5}, std::pair{1.5, 0.6}, std::pair{0.9, 1.2}}) {
        const auto p = EsdParams::make(y1, y2);
        auto g = [](double x) { return x * x + 0.5 * x; };
        const double a = integrate_esd(g, p, 512);
        const double b = integrate_esd(g, p, 1024);
        REQUIRE_THAT(a, WithinAbs(b, 1e-10));
    }
}

TEST_CASE("quadrature rejects bad inputs") {
    const auto p = EsdParams::make(0.5, 0.5);
    REQUIRE_THROWS_AS(integrate_esd([](double) { return 1.0; }, p, 8), InputError);
    REQUIRE_THROWS_AS(
        integrate_esd([](double x) { return 1.0 / (x - x); }, p, 64), IntegrandError);
}
