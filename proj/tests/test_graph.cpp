#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "starnls/graph.hpp"
#include "starnls/profiles.hpp"

using namespace starnls;
using Catch::Approx;

namespace {

GraphFunction random_function(const StarGraphSpec& spec, const GridSpec& grid, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    GraphFunction f(spec, grid);
    f.vertex() = Complex(gauss(rng), gauss(rng));
    for (int j = 0; j < f.edge_count(); ++j)
        for (int i = 1; i <= grid.segments; ++i) f.set_value(j, i, Complex(gauss(rng), gauss(rng)));
    return f;
}

} // namespace

TEST_CASE("inner product reproduces the closed-form mass of the bump/tail state") {
    // closed form for p = 3: ||Phi||_2^2 = 6 sqrt(omega) - 2 at N=3, k=1, alpha=-1
    const auto spec = ProfileSpec::attractive(3, 1, -1.0, 4.0, 3.0);
    const auto phi = build_profile(spec);
    const auto mass = inner_product(phi, phi);
    REQUIRE(mass == Approx(10.0).margin(1e-4));
}

TEST_CASE("inner product of the zero function vanishes") {
    StarGraphSpec spec{3, 0.5, Sector::full()};
    const GridSpec grid{10.0, 100};
    GraphFunction zero(spec, grid);
    const auto v = random_function(spec, grid, 7);
    REQUIRE(std::abs(inner_product(zero, v)) == 0.0);
}

TEST_CASE("inner product is conjugate symmetric on random inputs") {
    StarGraphSpec spec{4, -0.3, Sector::full()};
    const GridSpec grid{5.0, 64};
    for (unsigned seed = 1; seed <= 5; ++seed) {
        const auto u = random_function(spec, grid, seed);
        const auto v = random_function(spec, grid, seed + 100);
        const auto uv = inner_product(u, v);
        const auto vu = inner_product(v, u);
        REQUIRE(std::abs(uv - std::conj(vu)) < 1e-12 * std::abs(uv));
    }
}

TEST_CASE("grid mismatch is rejected") {
    StarGraphSpec spec{3, 0.0, Sector::full()};
    GraphFunction a(spec, GridSpec{10.0, 100});
    GraphFunction b(spec, GridSpec{10.0, 200});
    REQUIRE_THROWS_AS(inner_product(a, b), GridError);
}

TEST_CASE("L^q norms") {
    StarGraphSpec spec{3, 0.0, Sector::full()};
    const GridSpec grid{10.0, 400};

    SECTION("q = 2 agrees with the inner product") {
        const auto v = random_function(spec, grid, 11);
        const double n2 = norm_lq(v, 2.0);
        const double ip = std::sqrt(inner_product(v, v).real());
        REQUIRE(n2 == Approx(ip).epsilon(1e-12));
    }
    SECTION("constant one on N=3, L=10 has L^2 norm sqrt(30)") {
        GraphFunction one(spec, grid);
        one.fill([](int, double) { return Complex(1.0, 0.0); });
        REQUIRE(norm_lq(one, 2.0) == Approx(std::sqrt(30.0)).epsilon(1e-12));
    }
    SECTION("q = 4 of the half-soliton: each edge integrates 4 sech^4 to 8/3") {
        const auto phi = build_profile(ProfileSpec::kirchhoff(3, 1.0, 3.0));
        // oracle: integral of sech^4 = tanh - tanh^3/3, so each edge gives 8/3
        const double expected = std::pow(3.0 * 8.0 / 3.0, 0.25);
        REQUIRE(norm_lq(phi, 4.0) == Approx(expected).margin(1e-6));
    }
    SECTION("q < 1 is rejected") {
        const auto v = random_function(spec, grid, 3);
        REQUIRE_THROWS_AS(norm_lq(v, 0.5), ParameterError);
    }
}

TEST_CASE("trapezoid quadrature error decays at second order") {
    const auto spec = ProfileSpec::attractive(3, 1, -1.0, 4.0, 3.0);
    const double exact = 6.0 * std::sqrt(4.0) - 2.0;
    const double len = 40.0 / std::sqrt(4.0);
    const auto mass_error = [&](int m) {
        const auto phi = build_profile(spec, GridSpec{len, m});
        return std::abs(inner_product(phi, phi) - exact);
    };
    const double coarse = mass_error(500);
    const double fine = mass_error(1000);
    REQUIRE(coarse / fine >= 3.5);
}

TEST_CASE("sector reduction") {
    SECTION("Sector(1) on N=3 maps (a,b,b) to [(1,a),(2,b)]") {
        StarGraphSpec spec{3, 0.0, Sector::split(1)};
        const GridSpec grid{4.0, 32};
        GraphFunction v(spec, grid);
        v.fill([](int edge, double x) { return Complex(edge == 0 ? std::exp(-x) : std::cos(x), 0.0); });
        // shared vertex makes the x=0 sample common; it belongs to both groups
        const auto red = reduce_to_sector(v);
        REQUIRE(red.components.size() == 2);
        REQUIRE(red.components[0].multiplicity == 1);
        REQUIRE(red.components[1].multiplicity == 2);
        REQUIRE(red.components[1].samples[5] == v.value(1, 5));
    }
    SECTION("Equal on N=5 maps to a single component of multiplicity 5") {
        StarGraphSpec spec{5, 0.0, Sector::equal()};
        const GridSpec grid{4.0, 32};
        GraphFunction v(spec, grid);
        v.fill([](int, double x) { return Complex(std::sin(x + 0.3), 0.1 * x); });
        const auto red = reduce_to_sector(v);
        REQUIRE(red.components.size() == 1);
        REQUIRE(red.components[0].multiplicity == 5);
    }
    SECTION("reduction is an isometry on random sector members") {
        StarGraphSpec spec{5, 0.0, Sector::split(2)};
        const GridSpec grid{6.0, 128};
        for (unsigned seed = 1; seed <= 4; ++seed) {
            GraphFunction v(spec, grid);
            const auto base = random_function(StarGraphSpec{2, 0.0, Sector::full()}, grid, seed);
            v.vertex() = base.value(0, 0);
            for (int j = 0; j < 5; ++j)
                for (int i = 1; i <= grid.segments; ++i)
                    v.set_value(j, i, base.value(j < 2 ? 0 : 1, i));
            const double full = inner_product(v, v).real();
            const double reduced = reduce_to_sector(v).weighted_norm_sq();
            REQUIRE(std::abs(full - reduced) <= 1e-13 * full);
        }
    }
    SECTION("sector violation beyond tolerance raises") {
        StarGraphSpec spec{3, 0.0, Sector::equal()};
        const GridSpec grid{4.0, 32};
        GraphFunction v(spec, grid);
        v.fill([](int, double x) { return Complex(std::exp(-x), 0.0); });
        v.set_value(2, 7, v.value(2, 7) + Complex(1e-6, 0.0));
        REQUIRE_THROWS_AS(reduce_to_sector(v), SectorError);
    }
}

TEST_CASE("vertex trace") {
    StarGraphSpec spec{3, 0.0, Sector::full()};
    const GridSpec grid{2.0, 200};

    SECTION("linear function: value 0, unit derivatives, stencil exact") {
        RealGraphFunction v(spec, grid);
        v.fill([](int, double x) { return x; });
        const auto t = vertex_trace(v);
        REQUIRE(t.value == 0.0);
        for (const double d : t.derivatives) REQUIRE(d == Approx(1.0).margin(1e-13));
    }
    SECTION("quadratic function: derivative 0 exactly") {
        RealGraphFunction v(spec, grid);
        v.fill([](int, double x) { return x * x; });
        const auto t = vertex_trace(v);
        for (const double d : t.derivatives) REQUIRE(std::abs(d) < 1e-12);
    }
    SECTION("attractive profile satisfies the flux condition to O(h^2)") {
        const auto pspec = ProfileSpec::attractive(3, 1, -1.0, 4.0, 3.0);
        const auto phi = build_profile(pspec);
        const auto t = vertex_trace(phi);
        REQUIRE(t.value == Approx(std::sqrt(6.0)).margin(1e-10));
        REQUIRE(t.flux() == Approx(-std::sqrt(6.0)).margin(1e-3));
        // and the defect shrinks at second order
        const auto fine = build_profile(pspec, GridSpec{20.0, 8000});
        const auto tf = vertex_trace(fine);
        const double coarse_defect = std::abs(t.flux() + std::sqrt(6.0));
        const double fine_defect = std::abs(tf.flux() + std::sqrt(6.0));
        REQUIRE(coarse_defect / fine_defect >= 3.5);
    }
    SECTION("needs at least three segments") {
        RealGraphFunction v(StarGraphSpec{2, 0.0, Sector::full()}, GridSpec{1.0, 3});
        GridSpec tiny{1.0, 3};
        REQUIRE_NOTHROW(vertex_trace(v));
    }
}

TEST_CASE("graph spec invariants") {
    REQUIRE_THROWS_AS((StarGraphSpec{1, 0.0, Sector::full()}.validate()), ValidationError);
    REQUIRE_THROWS_AS((StarGraphSpec{4, 0.0, Sector::split(2)}.validate()), ValidationError);
    REQUIRE_NOTHROW((StarGraphSpec{5, 0.0, Sector::split(2)}.validate()));
    REQUIRE_THROWS_AS((GridSpec{-1.0, 100}.validate()), GridError);
}
