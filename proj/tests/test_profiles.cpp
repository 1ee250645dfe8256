#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "starnls/profiles.hpp"

using namespace starnls;
using Catch::Approx;

TEST_CASE("attractive bump/tail profile matches the scalar closed form") {
    // N=3, k=1, alpha=-1, omega=4, p=3: a_1 = atanh(1/2), vertex sqrt(6),
    // bump maximum sqrt(8) at x = a_1 / sqrt(omega)
    const auto spec = ProfileSpec::attractive(3, 1, -1.0, 4.0, 3.0);
    const double a1 = std::atanh(0.5);
    REQUIRE(spec.branch_offset() == Approx(a1).epsilon(1e-14));
    REQUIRE(spec.value(0, 0.0) == Approx(std::sqrt(6.0)).epsilon(1e-14));
    REQUIRE(spec.value(2, 0.0) == Approx(std::sqrt(6.0)).epsilon(1e-14));

    const double x_max = a1 / 2.0;
    REQUIRE(x_max == Approx(0.274653).margin(1e-6));
    REQUIRE(spec.value(0, x_max) == Approx(std::sqrt(8.0)).epsilon(1e-14));
    // tail edges are monotone decreasing from the vertex
    REQUIRE(spec.value(1, 0.1) < spec.value(1, 0.0));

    const auto phi = build_profile(spec);
    REQUIRE(phi.value(0, 0) == Approx(std::sqrt(6.0)).epsilon(1e-14));
    // bump edges come first: edges 1..k carry the interior maximum
    double bump_max = 0.0;
    for (int i = 0; i <= phi.grid().segments; ++i) bump_max = std::max(bump_max, phi.value(0, i));
    REQUIRE(bump_max == Approx(std::sqrt(8.0)).margin(1e-5));
}

TEST_CASE("Kirchhoff half-soliton starts at ((p+1)omega/2)^(1/(p-1)) and decreases") {
    const auto spec = ProfileSpec::kirchhoff(3, 1.0, 3.0);
    const auto phi = build_profile(spec);
    REQUIRE(phi.value(0, 0) == Approx(std::sqrt(2.0)).epsilon(1e-14));
    for (int i = 1; i <= phi.grid().segments; ++i) REQUIRE(phi.value(0, i) < phi.value(0, i - 1));
}

TEST_CASE("repulsive profile vertex value") {
    // N=3, alpha=-6, omega=1, p=3: a = acoth(2) = ln(3)/2, csch(a) = sqrt(3),
    // vertex value sqrt(6)
    const auto spec = ProfileSpec::repulsive(3, -6.0, 1.0, 3.0);
    const auto phi = build_profile(spec);
    REQUIRE(phi.value(0, 0) == Approx(std::sqrt(6.0)).epsilon(1e-12));
    REQUIRE(phi.value(1, 0) == phi.value(0, 0));
}

TEST_CASE("existence boundaries are sharp") {
    SECTION("attractive: omega must exceed alpha^2/(N-2k)^2") {
        const double thresh = 1.0; // alpha=-1, N=3, k=1
        REQUIRE_THROWS_AS(ProfileSpec::attractive(3, 1, -1.0, thresh, 3.0).validate(),
                          ExistenceError);
        REQUIRE_THROWS_AS(ProfileSpec::attractive(3, 1, -1.0, thresh * (1.0 - 1e-6), 3.0).validate(),
                          ExistenceError);
        REQUIRE_NOTHROW(ProfileSpec::attractive(3, 1, -1.0, thresh * (1.0 + 1e-6), 3.0).validate());
    }
    SECTION("repulsive: omega must stay below alpha^2/N^2") {
        const double cap = 4.0; // alpha=-6, N=3
        REQUIRE_THROWS_AS(ProfileSpec::repulsive(3, -6.0, cap, 3.0).validate(), ExistenceError);
        REQUIRE_THROWS_AS(ProfileSpec::repulsive(3, -6.0, cap * (1.0 + 1e-6), 3.0).validate(),
                          ExistenceError);
        REQUIRE_NOTHROW(ProfileSpec::repulsive(3, -6.0, cap * (1.0 - 1e-6), 3.0).validate());
    }
    SECTION("repulsive requires alpha < 0") {
        REQUIRE_THROWS_AS(ProfileSpec::repulsive(3, 1.0, 0.05, 3.0).validate(), ExistenceError);
    }
    SECTION("attractive requires alpha != 0 and k within range") {
        REQUIRE_THROWS_AS(ProfileSpec::attractive(3, 1, 0.0, 4.0, 3.0).validate(), ValidationError);
        REQUIRE_THROWS_AS(ProfileSpec::attractive(3, 2, -1.0, 4.0, 3.0).validate(), ValidationError);
    }
    SECTION("shifted family needs even N") {
        REQUIRE_THROWS_AS(ProfileSpec::kirchhoff_shifted(3, 0.5, 1.0, 3.0).validate(),
                          ValidationError);
        REQUIRE_NOTHROW(ProfileSpec::kirchhoff_shifted(4, 0.5, 1.0, 3.0).validate());
    }
}

TEST_CASE("profile symmetry within branches is structural") {
    const auto spec = ProfileSpec::attractive(5, 2, -1.0, 4.0, 2.5);
    const auto phi = build_profile(spec);
    for (int i = 1; i <= phi.grid().segments; ++i) {
        REQUIRE(phi.value(0, i) == phi.value(1, i));
        REQUIRE(phi.value(2, i) == phi.value(3, i));
        REQUIRE(phi.value(2, i) == phi.value(4, i));
    }
}

TEST_CASE("stationary residual") {
    SECTION("exact profiles have O(h^2) residual decreasing >= 3.5x under halving") {
        for (const auto& spec :
             {ProfileSpec::attractive(3, 1, -1.0, 4.0, 3.0), ProfileSpec::kirchhoff(4, 1.0, 2.0),
              ProfileSpec::repulsive(3, -6.0, 1.0, 3.0)}) {
            const double len = 40.0 / std::sqrt(spec.omega);
            const double coarse = stationary_residual(build_profile(spec, GridSpec{len, 1000}), spec);
            const double fine = stationary_residual(build_profile(spec, GridSpec{len, 2000}), spec);
            REQUIRE(coarse / fine >= 3.5);
        }
    }
    SECTION("a scaled profile is far from stationary") {
        const auto spec = ProfileSpec::attractive(3, 1, -1.0, 4.0, 3.0);
        auto phi = build_profile(spec);
        phi.vertex() *= 1.1;
        for (int j = 0; j < phi.edge_count(); ++j)
            for (auto& v : phi.edge_samples(j)) v *= 1.1;
        // oracle: the defect of 1.1 Phi is (1.1 - 1.1^3) Phi^3, of order one
        REQUIRE(stationary_residual(phi, spec) >= 0.01);
    }
    SECTION("the zero function is stationary") {
        const auto spec = ProfileSpec::attractive(3, 1, -1.0, 4.0, 3.0);
        RealGraphFunction zero(StarGraphSpec{3, -1.0, Sector::full()}, default_grid(4.0));
        REQUIRE(stationary_residual(zero, spec) == 0.0);
    }
}

TEST_CASE("attractive profile converges to the half-soliton as alpha -> 0") {
    const auto grid = default_grid(1.0, 2000);
    const auto near = build_profile(ProfileSpec::attractive(3, 1, -1e-4, 1.0, 3.0), grid);
    const auto limit = build_profile(ProfileSpec::kirchhoff(3, 1.0, 3.0), grid);
    double sup = 0.0;
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i <= grid.segments; ++i)
            sup = std::max(sup, std::abs(near.value(j, i) - limit.value(j, i)));
    REQUIRE(sup < 1e-3);
}

TEST_CASE("functionals") {
    SECTION("mass of the reference bump/tail state") {
        const auto spec = ProfileSpec::attractive(3, 1, -1.0, 4.0, 3.0);
        const auto f = functionals(build_profile(spec), spec);
        REQUIRE(f.mass == Approx(10.0).margin(1e-4));
        REQUIRE(f.action == Approx(f.energy + 2.0 * f.mass).epsilon(1e-13));
    }
    SECTION("action grows with the number of bumps (alpha < 0)") {
        const double omega = 1.0;
        const auto s0 = ProfileSpec::attractive(5, 0, -1.0, omega, 3.0);
        const auto s1 = ProfileSpec::attractive(5, 1, -1.0, omega, 3.0);
        const auto s2 = ProfileSpec::attractive(5, 2, -1.0, omega, 3.0);
        const double a0 = functionals(build_profile(s0), s0).action;
        const double a1 = functionals(build_profile(s1), s1).action;
        const double a2 = functionals(build_profile(s2), s2).action;
        REQUIRE(a0 < a1);
        REQUIRE(a1 < a2);
    }
    SECTION("zero function has zero energy") {
        const auto spec = ProfileSpec::kirchhoff(3, 1.0, 3.0);
        GraphFunction zero(StarGraphSpec{3, 0.0, Sector::full()}, default_grid(1.0));
        REQUIRE(functionals(zero, spec).energy == 0.0);
    }
}
