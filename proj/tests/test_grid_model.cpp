#include <doctest.h>

#include <cmath>

#include "bgkmix/model.hpp"
#include "test_support.hpp"

using namespace bgkmix;
using bgkmix::testing::symmetric_params;

TEST_CASE("velocity grids integrate their matched Maxwellian to 1") {
    for (double m : {0.5, 1.0, 3.0}) {
        const VelocityGrid gh = gauss_hermite_grid(128, m);
        CHECK(std::abs(unit_maxwellian_quadrature(gh) - 1.0) < 1e-12);
        const VelocityGrid un = uniform_grid(257, m);
        CHECK(std::abs(unit_maxwellian_quadrature(un) - 1.0) < 1e-12);
    }
}

TEST_CASE("grid nodes are strictly increasing with positive weights") {
    for (const VelocityGrid& g : {gauss_hermite_grid(64, 2.0), uniform_grid(101, 2.0)}) {
        for (int j = 0; j + 1 < g.size(); ++j) CHECK(g.nodes[j] < g.nodes[j + 1]);
        for (double w : g.weights) CHECK(w > 0.0);
    }
}

TEST_CASE("maxwellian values and scalings") {
    CHECK(maxwellian(1, 0, 1, 1, 0) == doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)).epsilon(1e-12));
    // linear in n
    CHECK(maxwellian(2, 0.3, 0.7, 2, 0.1) ==
          doctest::Approx(2.0 * maxwellian(1, 0.3, 0.7, 2, 0.1)).epsilon(1e-14));
    // quadrupling the mass doubles the peak
    CHECK(maxwellian(1, 0, 1, 4, 0) == doctest::Approx(2.0 * maxwellian(1, 0, 1, 1, 0)).epsilon(1e-14));
    CHECK_THROWS_AS(maxwellian(-1, 0, 1, 1, 0), NonPositiveError);
    CHECK_THROWS_AS(maxwellian(1, 0, 0, 1, 0), NonPositiveError);
}

TEST_CASE("maxwellian mass under quadrature") {
    const VelocityGrid g = gauss_hermite_grid(128, 2.0);
    std::vector<double> f(g.size());
    for (int j = 0; j < g.size(); ++j) f[j] = maxwellian(1.3, 0.2, 0.7, 2.0, g.nodes[j]);
    CHECK(std::abs(integrate(g, f) - 1.3) < 1e-10);
}

TEST_CASE("moments recover Maxwellian parameters") {
    const VelocityGrid g = gauss_hermite_grid(128, 1.0);
    SUBCASE("standard") {
        std::vector<double> f(g.size());
        for (int j = 0; j < g.size(); ++j) f[j] = maxwellian(1, 0, 1, 1, g.nodes[j]);
        const MacroState s = moments(g, f, 1.0);
        CHECK(std::abs(s.n - 1.0) < 1e-10);
        CHECK(std::abs(s.u) < 1e-10);
        CHECK(std::abs(s.T - 1.0) < 1e-10);
    }
    SUBCASE("shifted, heavier") {
        const VelocityGrid g2 = gauss_hermite_grid(160, 2.0);
        std::vector<double> f(g2.size());
        for (int j = 0; j < g2.size(); ++j) f[j] = maxwellian(1, 0.3, 0.5, 2.0, g2.nodes[j]);
        const MacroState s = moments(g2, f, 2.0);
        CHECK(std::abs(s.n - 1.0) < 1e-10);
        CHECK(std::abs(s.u - 0.3) < 1e-10);
        CHECK(std::abs(s.T - 0.5) < 1e-10);
    }
    SUBCASE("doubling f doubles n, fixes u and T") {
        std::vector<double> f(g.size()), f2(g.size());
        for (int j = 0; j < g.size(); ++j) {
            f[j] = maxwellian(0.8, -0.1, 1.4, 1.0, g.nodes[j]);
            f2[j] = 2.0 * f[j];
        }
        const MacroState a = moments(g, f, 1.0), b = moments(g, f2, 1.0);
        CHECK(b.n == doctest::Approx(2.0 * a.n).epsilon(1e-13));
        CHECK(b.u == doctest::Approx(a.u).epsilon(1e-13));
        CHECK(b.T == doctest::Approx(a.T).epsilon(1e-13));
    }
    SUBCASE("degenerate density throws") {
        std::vector<double> f(g.size(), 0.0);
        CHECK_THROWS_AS(moments(g, f, 1.0), DegenerateDensityError);
    }
}

TEST_CASE("equilibrium matches the unit-temperature Maxwellian") {
    const auto vp = validate_or_throw(symmetric_params());
    CHECK(equilibrium(vp, 1, 0.0) == doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)).epsilon(1e-13));
    const VelocityGrid g = gauss_hermite_grid(128, 1.0);
    std::vector<double> f(g.size());
    for (int j = 0; j < g.size(); ++j) f[j] = equilibrium(vp, 1, g.nodes[j]);
    const MacroState s = moments(g, f, 1.0);
    CHECK(std::abs(s.n - 1.0) < 1e-10);
    CHECK(std::abs(s.u) < 1e-10);
    CHECK(std::abs(s.T - 1.0) < 1e-10);
}

TEST_CASE("nonlinear collision terms vanish at a common Maxwellian") {
    const auto vp = validate_or_throw(testing::asymmetric_params());
    const MixtureParams& p = vp.p();
    const VelocityGrid g = gauss_hermite_grid(200, std::min(p.m1, p.m2));
    std::vector<double> f1(g.size()), f2(g.size());
    for (int j = 0; j < g.size(); ++j) {
        f1[j] = maxwellian(p.n_inf_1, 0.2, 1.1, p.m1, g.nodes[j]);
        f2[j] = maxwellian(p.n_inf_2, 0.2, 1.1, p.m2, g.nodes[j]);
    }
    const auto [q1, q2] = nonlinear_rhs(vp, g, f1, f2);
    for (int j = 0; j < g.size(); ++j) {
        CHECK(std::abs(q1[j]) < 1e-12);
        CHECK(std::abs(q2[j]) < 1e-12);
    }
}

TEST_CASE("nonlinear collision terms conserve counts, momentum, energy") {
    const auto vp = validate_or_throw(testing::asymmetric_params());
    const MixtureParams& p = vp.p();
    const VelocityGrid g = gauss_hermite_grid(220, std::min(p.m1, p.m2));
    // two displaced, unequal-temperature Maxwellians
    std::vector<double> f1(g.size()), f2(g.size());
    for (int j = 0; j < g.size(); ++j) {
        f1[j] = maxwellian(1.1, 0.4, 0.9, p.m1, g.nodes[j]);
        f2[j] = maxwellian(0.7, -0.6, 1.3, p.m2, g.nodes[j]);
    }
    const auto [q1, q2] = nonlinear_rhs(vp, g, f1, f2);
    double c1 = 0, c2 = 0, mom = 0, en = 0;
    for (int j = 0; j < g.size(); ++j) {
        const double w = g.weights[j], v = g.nodes[j];
        c1 += w * q1[j];
        c2 += w * q2[j];
        mom += w * v * (p.m1 * q1[j] + p.m2 * q2[j]);
        en += w * v * v * (p.m1 * q1[j] + p.m2 * q2[j]);
    }
    CHECK(std::abs(c1) < 1e-10);
    CHECK(std::abs(c2) < 1e-10);
    CHECK(std::abs(mom) < 1e-10);
    CHECK(std::abs(en) < 1e-10);
}
