#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdlib>
#include <json.hpp>
#include <random>

#include "starnls/report.hpp"
#include "starnls/sweep.hpp"

using namespace starnls;
using nlohmann::json;

TEST_CASE("format_double round-trips doubles exactly") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> expo(-300, 300);
    for (int rep = 0; rep < 200; ++rep) {
        const double x = std::ldexp(mant(rng), expo(rng));
        const std::string s = format_double(x);
        REQUIRE(std::strtod(s.c_str(), nullptr) == x);
    }
}

TEST_CASE("stability report JSON parses back with the same fields") {
    const auto spec = ProfileSpec::attractive(3, 1, -1.0, 4.0, 3.0);
    const auto report = classify_analytic(spec);
    const std::string text = render_report(report);
    const json parsed = json::parse(text);
    REQUIRE(parsed["profile"]["family"] == "attractive");
    REQUIRE(parsed["profile"]["N"] == 3);
    REQUIRE(parsed["profile"]["alpha"].get<double>() == -1.0);
    REQUIRE(parsed["verdict"] == "unstable-in-E");
    REQUIRE(parsed["source"] == "analytic-table");
    REQUIRE(parsed["n_H"] == 2);
}

TEST_CASE("cross-check JSON carries both reports") {
    const auto check = cross_check(ProfileSpec::repulsive(3, -6.0, 1.0, 3.0),
                                   default_grid(1.0, 1500));
    const json parsed = json::parse(render_cross_check(check));
    REQUIRE(parsed["source"] == "both-agree");
    REQUIRE(parsed["numerical"]["verdict"] == "stable-in-sector");
    REQUIRE(parsed["analytic"]["verdict"] == "stable-in-sector");
    REQUIRE(parsed["numerical"]["space"] == "E");
}

TEST_CASE("profile CSV has the documented header") {
    const auto phi = build_profile(ProfileSpec::kirchhoff(3, 1.0, 3.0), GridSpec{5.0, 10});
    const std::string csv = render_profile_csv(phi);
    REQUIRE(csv.rfind("edge,x,value\n", 0) == 0);
    REQUIRE(std::count(csv.begin(), csv.end(), '\n') == 1 + 3 * 11);
}

TEST_CASE("identical invocations produce byte-identical output") {
    const auto spec = ProfileSpec::attractive(3, 1, 1.0, 4.0, 2.0);
    const GridSpec grid = default_grid(spec.omega, 1500);
    const std::string a = render_cross_check(cross_check(spec, grid));
    const std::string b = render_cross_check(cross_check(spec, grid));
    REQUIRE(a == b);
}

TEST_CASE("sweep expansion validates every point and keeps the invalid ones") {
    SweepSpec sw;
    sw.families = {ProfileFamily::AttractiveDelta};
    sw.edge_counts = {3};
    sw.bump_counts = {1};
    sw.alphas = {-1.0};
    sw.omegas = {0.5, 4.0}; // 0.5 is below the existence threshold
    sw.exponents = {3.0};
    const auto points = expand_sweep(sw);
    REQUIRE(points.size() == 2);
    REQUIRE_FALSE(points[0].valid);
    REQUIRE(points[0].invalid_reason.find("omega") != std::string::npos);
    REQUIRE(points[1].valid);
}

TEST_CASE("sweep rows report verdicts and omega-rel tracks the threshold") {
    SweepSpec sw;
    sw.families = {ProfileFamily::AttractiveDelta};
    sw.edge_counts = {3};
    sw.bump_counts = {1};
    sw.alphas = {-1.0};
    sw.omega_rel = {2.0};
    sw.exponents = {3.0};
    sw.grid_segments = 1500;
    const auto rows = run_sweep(sw);
    REQUIRE(rows.size() == 1);
    REQUIRE(rows[0].status == "ok");
    REQUIRE(rows[0].point.spec.omega == 2.0); // 2 * alpha^2/(N-2k)^2
    REQUIRE(rows[0].check.agree());
    const std::string csv = render_sweep_csv(rows);
    REQUIRE(csv.rfind("family,N,k,alpha,omega,p,mu,n_H,p_omega,verdict,space,source,status,detail\n",
                      0) == 0);
    REQUIRE(csv.find("unstable-in-E") != std::string::npos);
    REQUIRE(csv.find("conflict") == std::string::npos);
}

TEST_CASE("unwritable output paths raise a validation error") {
    REQUIRE_THROWS_AS(write_file("/nonexistent-dir/out.csv", "x"), ValidationError);
}
