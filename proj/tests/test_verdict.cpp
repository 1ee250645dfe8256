#include <catch2/catch_amalgamated.hpp>

#include "starnls/verdict.hpp"

using namespace starnls;

TEST_CASE("numerical classification at the reference points") {
    SECTION("attractive well, p = 3: two negative directions, unstable in E") {
        const auto r = classify_numerical(ProfileSpec::attractive(3, 1, -1.0, 4.0, 3.0));
        REQUIRE(r.n_hessian == 2);
        REQUIRE(r.p_omega == SlopeIndicator::Positive);
        REQUIRE(r.verdict == Verdict::UnstableInE);
        REQUIRE(r.kernel_l1 == 0);
        REQUIRE(r.kernel_l2 == 1);
        REQUIRE_FALSE(r.wellposed_caveat); // p > 2
    }
    SECTION("barrier, p = 2: stable in the sector") {
        const auto r = classify_numerical(ProfileSpec::attractive(3, 1, 1.0, 4.0, 2.0));
        REQUIRE(r.n_hessian == 1);
        REQUIRE(r.p_omega == SlopeIndicator::Positive);
        REQUIRE(r.verdict == Verdict::StableInSector);
        REQUIRE(r.space == StabilitySpace::SectorK);
    }
    SECTION("repulsive: stable in the full space") {
        const auto r = classify_numerical(ProfileSpec::repulsive(3, -6.0, 1.0, 3.0));
        REQUIRE(r.verdict == Verdict::StableInSector);
        REQUIRE(r.space == StabilitySpace::Full);
        REQUIRE(r.n_hessian == 0);
        REQUIRE(r.p_omega == SlopeIndicator::NotUsed);
    }
    SECTION("instability at p <= 2 carries the well-posedness caveat") {
        const auto r = classify_numerical(ProfileSpec::attractive(3, 1, -1.0, 4.0, 2.0));
        REQUIRE(r.verdict == Verdict::UnstableInE);
        REQUIRE(r.wellposed_caveat);
    }
}

TEST_CASE("analytic classification follows the theorem tables") {
    SECTION("alpha < 0, p = 5: unstable") {
        const auto r = classify_analytic(ProfileSpec::attractive(3, 1, -1.0, 4.0, 5.0));
        REQUIRE(r.verdict == Verdict::UnstableInE);
    }
    SECTION("alpha > 0, p = 4: unstable below omega-hat, stable above") {
        const auto hat = find_critical_omega(3, 1, 1.0, 4.0);
        REQUIRE(hat.has_value());
        const auto below = classify_analytic(ProfileSpec::attractive(3, 1, 1.0, 0.9 * *hat, 4.0));
        REQUIRE(below.verdict == Verdict::UnstableInE);
        const auto above = classify_analytic(ProfileSpec::attractive(3, 1, 1.0, 1.5 * *hat, 4.0));
        REQUIRE(above.verdict == Verdict::StableInSector);
        REQUIRE(above.space == StabilitySpace::SectorK);
    }
    SECTION("Kirchhoff: stable below p = 5, unstable above, inconclusive at p = 5") {
        REQUIRE(classify_analytic(ProfileSpec::kirchhoff(3, 1.0, 3.0)).verdict ==
                Verdict::StableInSector);
        REQUIRE(classify_analytic(ProfileSpec::kirchhoff(3, 1.0, 3.0)).space ==
                StabilitySpace::Equal);
        REQUIRE(classify_analytic(ProfileSpec::kirchhoff(3, 1.0, 6.0)).verdict ==
                Verdict::UnstableInE);
        REQUIRE(classify_analytic(ProfileSpec::kirchhoff(3, 1.0, 5.0)).verdict ==
                Verdict::Inconclusive);
    }
    SECTION("repulsive: stable in E") {
        const auto r = classify_analytic(ProfileSpec::repulsive(4, -8.0, 1.0, 2.5));
        REQUIRE(r.verdict == Verdict::StableInSector);
        REQUIRE(r.space == StabilitySpace::Full);
    }
    SECTION("beyond omega*: no information") {
        const auto star = find_critical_omega(3, 1, -1.0, 7.0);
        const auto r = classify_analytic(ProfileSpec::attractive(3, 1, -1.0, 2.0 * *star, 7.0));
        REQUIRE(r.verdict == Verdict::Inconclusive);
    }
}

TEST_CASE("both classifiers return inconclusive past the slope root (alpha<0, p>5)") {
    const auto star = find_critical_omega(3, 1, -1.0, 7.0);
    const auto spec = ProfileSpec::attractive(3, 1, -1.0, 2.0 * *star, 7.0);
    REQUIRE(classify_analytic(spec).verdict == Verdict::Inconclusive);
    const auto num = classify_numerical(spec);
    REQUIRE(num.verdict == Verdict::Inconclusive);
    REQUIRE(num.n_hessian == 2);
    REQUIRE(num.p_omega == SlopeIndicator::Negative);
}

TEST_CASE("cross-check agrees at the reference points") {
    for (const auto& spec :
         {ProfileSpec::attractive(3, 1, -1.0, 4.0, 3.0), ProfileSpec::attractive(3, 1, 1.0, 4.0, 2.0),
          ProfileSpec::repulsive(3, -6.0, 1.0, 3.0), ProfileSpec::kirchhoff(4, 1.0, 3.0)}) {
        const auto c = cross_check(spec);
        REQUIRE(c.agree());
    }
}

TEST_CASE("verdict is invariant under grid refinement") {
    const auto spec = ProfileSpec::attractive(3, 1, 1.0, 4.0, 2.0);
    const auto coarse = classify_numerical(spec, default_grid(spec.omega, 2000));
    const auto fine = classify_numerical(spec, default_grid(spec.omega, 4000));
    REQUIRE(coarse.verdict == fine.verdict);
    REQUIRE(coarse.n_hessian == fine.n_hessian);
}

TEST_CASE("unsupported branches are rejected or inconclusive") {
    REQUIRE_THROWS_AS(classify_numerical(ProfileSpec::attractive(3, 0, -1.0, 4.0, 3.0)),
                      ValidationError);
    REQUIRE_THROWS_AS(classify_numerical(ProfileSpec::kirchhoff_shifted(4, 0.5, 1.0, 3.0)),
                      ValidationError);
    REQUIRE(classify_analytic(ProfileSpec::attractive(3, 0, -1.0, 4.0, 3.0)).verdict ==
            Verdict::Inconclusive);
    REQUIRE(classify_analytic(ProfileSpec::kirchhoff_shifted(4, 0.5, 1.0, 3.0)).verdict ==
            Verdict::Inconclusive);
}
