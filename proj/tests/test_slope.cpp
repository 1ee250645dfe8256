#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "starnls/slope.hpp"

using namespace starnls;
using Catch::Approx;

TEST_CASE("hand value: J = 1.5 at N=3, k=1, alpha=-1, omega=4, p=3") {
    const auto r = slope_j(3, 1, -1.0, 4.0, 3.0);
    REQUIRE(r.j_tilde == Approx(3.0).margin(1e-10));
    REQUIRE(r.j == Approx(1.5).margin(1e-8));
}

TEST_CASE("p = 3 closed form: J = N / sqrt(omega) for every k and alpha") {
    // the mass at p = 3 is 2 N sqrt(omega) + 2 alpha (termwise sech^2 integral)
    for (const auto& [n, k, alpha, omega] :
         std::vector<std::tuple<int, int, double, double>>{{3, 1, -1.0, 2.0},
                                                           {5, 2, -1.0, 4.0},
                                                           {5, 1, 0.7, 1.0},
                                                           {4, 1, -0.5, 0.3},
                                                           {3, 1, 2.0, 9.0}}) {
        const auto r = slope_j(n, k, alpha, omega, 3.0);
        REQUIRE(r.j == Approx(n / std::sqrt(omega)).epsilon(1e-10));
    }
}

TEST_CASE("slope signs follow the five regimes") {
    SECTION("alpha < 0, 1 < p <= 5: J > 0") {
        for (const double p : {1.5, 2.0, 3.0, 4.0, 5.0})
            REQUIRE(slope_j(3, 1, -1.0, 3.0, p).j > 0.0);
    }
    SECTION("alpha > 0, p >= 5: J < 0") {
        for (const double p : {5.0, 6.0, 8.0})
            REQUIRE(slope_j(3, 1, 1.0, 3.0, p).j < 0.0);
    }
    SECTION("alpha > 0, 1 < p <= 3: J > 0") {
        for (const double p : {1.5, 2.0, 3.0})
            REQUIRE(slope_j(4, 1, 1.0, 2.0, p).j > 0.0);
    }
}

TEST_CASE("critical frequency search") {
    SECTION("alpha < 0, p = 7: omega* exists with a verified sign change") {
        const auto root = find_critical_omega(3, 1, -1.0, 7.0);
        REQUIRE(root.has_value());
        REQUIRE(std::abs(slope_j(3, 1, -1.0, *root, 7.0).j_tilde) < 1e-10);
        const double delta = 1e-3 * *root;
        REQUIRE(slope_j(3, 1, -1.0, *root - delta, 7.0).j > 0.0);
        REQUIRE(slope_j(3, 1, -1.0, *root + delta, 7.0).j < 0.0);
        // dense-scan oracle: exactly one sign change near the root
        int changes = 0;
        double prev = slope_j(3, 1, -1.0, 0.5 * *root, 7.0).j_tilde;
        for (double w = 0.5 * *root; w <= 1.5 * *root; w += *root / 1000.0) {
            const double cur = slope_j(3, 1, -1.0, w, 7.0).j_tilde;
            if (prev * cur < 0.0) ++changes;
            prev = cur;
        }
        REQUIRE(changes == 1);
    }
    SECTION("alpha < 0, p = 3: no root") {
        REQUIRE_FALSE(find_critical_omega(3, 1, -1.0, 3.0).has_value());
    }
    SECTION("alpha > 0, p = 4: omega-hat with J < 0 below and J > 0 above") {
        const auto hat = find_critical_omega(3, 1, 1.0, 4.0);
        REQUIRE(hat.has_value());
        const double delta = 1e-3 * *hat;
        REQUIRE(slope_j(3, 1, 1.0, *hat - delta, 4.0).j < 0.0);
        REQUIRE(slope_j(3, 1, 1.0, *hat + delta, 4.0).j > 0.0);
    }
    SECTION("alpha > 0, p = 2: no root") {
        REQUIRE_FALSE(find_critical_omega(3, 1, 1.0, 2.0).has_value());
    }
}

TEST_CASE("slope indicator") {
    REQUIRE(slope_indicator(3, 1, -1.0, 4.0, 3.0) == SlopeSign::Positive);
    for (const double omega : {2.1, 3.0, 4.0})
        REQUIRE(slope_indicator(3, 1, 1.0, omega * 1.0, 6.0) == SlopeSign::Negative);
    SECTION("degenerate at the critical frequency") {
        const auto root = find_critical_omega(3, 1, -1.0, 7.0);
        REQUIRE_THROWS_AS(slope_indicator(3, 1, -1.0, *root, 7.0), NumericalError);
    }
}

TEST_CASE("Jtilde is strictly decreasing in omega for alpha < 0, p > 5") {
    double prev = slope_j(3, 1, -1.0, 1.01, 7.0).j_tilde;
    for (double w = 1.05; w < 8.0; w += 0.05) {
        const double cur = slope_j(3, 1, -1.0, w, 7.0).j_tilde;
        REQUIRE(cur < prev);
        prev = cur;
    }
}

TEST_CASE("large-omega limit for alpha > 0, 1 < p < 5") {
    // Jtilde -> (5-p)/(p-1) N int_0^1 (1-t^2)^((3-p)/(p-1)) dt; the limit
    // integral has the closed beta-function form used as the oracle
    for (const double p : {2.0, 2.5, 4.0}) {
        const double q = (3.0 - p) / (p - 1.0);
        const double limit_integral =
            0.5 * std::sqrt(std::numbers::pi) * std::tgamma(q + 1.0) / std::tgamma(q + 1.5);
        const int n = 3;
        const double limit = (5.0 - p) / (p - 1.0) * n * limit_integral;
        const double jt = slope_j(n, 1, 1.0, 1e6, p).j_tilde;
        REQUIRE(std::abs(jt - limit) / std::abs(limit) < 1e-2);
    }
}

TEST_CASE("Kirchhoff slope: positive below p = 5, negative above, existence region enforced") {
    REQUIRE(kirchhoff_slope(3, 1.0, 2.0).j > 0.0);
    REQUIRE(kirchhoff_slope(5, 2.5, 4.5).j > 0.0);
    REQUIRE(kirchhoff_slope(3, 1.0, 6.0).j < 0.0);
    REQUIRE(kirchhoff_slope(3, 1.0, 5.0).j == 0.0);
    REQUIRE_THROWS_AS(slope_j(3, 1, -1.0, 0.5, 3.0), ExistenceError);
}
