#include "dkg/harness.hpp"

#include <doctest.h>

#include "oracles.hpp"

using namespace dkg;

TEST_CASE("cone_delta_integral: infeasible branches give zero") {
    CHECK(cone_delta_integral({0.5, {1, 0}, 0, 0, ConeBranch::sum, ConeRegion::all}) == 0.0);
    CHECK(cone_delta_integral({1.5, {1, 0}, 0, 0, ConeBranch::difference, ConeRegion::all}) ==
          0.0);
    CHECK(!cone_branch_feasible({0.5, {1, 0}, 0, 0, ConeBranch::sum, ConeRegion::all}));
    CHECK(cone_branch_feasible({0.5, {1, 0}, 0, 0, ConeBranch::difference, ConeRegion::all}));
    CHECK_THROWS_AS(cone_delta_integral({0.5, {0, 0}, 0, 0, ConeBranch::sum, ConeRegion::all}),
                    ParameterError);
}

TEST_CASE("cone_delta_integral: unweighted ellipse has a closed form") {
    // Integrating delta(tau - |eta| - |xi-eta|) over the plane:
    // pi (2 tau^2 - a^2) / (4 sqrt(tau^2 - a^2)).
    const double tau = 2.0, a = 1.0;
    const double expect = pi * (2 * tau * tau - a * a) / (4.0 * std::sqrt(tau * tau - a * a));
    const double got = cone_delta_integral({tau, {a, 0}, 0, 0, ConeBranch::sum, ConeRegion::all});
    CHECK(got == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("cone_delta_integral agrees with the polar-ray oracle") {
    struct Case {
        ConeIntegralSpec spec;
    };
    const Case cases[] = {
        {{0.37, {1.1, -0.4}, 0.0, 0.0, ConeBranch::difference, ConeRegion::inner}},
        {{0.37, {1.1, -0.4}, 0.5, 0.9, ConeBranch::difference, ConeRegion::inner}},
        {{-0.62, {0.9, 0.8}, 0.25, 0.75, ConeBranch::difference, ConeRegion::inner}},
        {{2.3, {1.0, 0.5}, 0.0, 0.0, ConeBranch::sum, ConeRegion::all}},
        {{1.9, {0.6, -1.0}, 1.025, 0.375, ConeBranch::sum, ConeRegion::all}},
        {{3.1, {1.2, 0.0}, 0.375, 1.275, ConeBranch::sum, ConeRegion::all}},
    };
    for (const auto& c : cases) {
        const double mine = cone_delta_integral(c.spec);
        const double ref = oracle::cone_integral_polar(c.spec);
        CAPTURE(c.spec.tau);
        CHECK(mine == doctest::Approx(ref).epsilon(2e-6));
    }
}

TEST_CASE("cone_delta_integral scales like kappa^{1 - a1 - a2}") {
    const double a1 = 0.6, a2 = 0.85;
    const ConeIntegralSpec base{0.45, {1.0, 0.7}, a1, a2, ConeBranch::difference,
                                ConeRegion::inner};
    const double i0 = cone_delta_integral(base);
    for (double kappa : {2.0, 5.0, 0.25}) {
        ConeIntegralSpec scaled = base;
        scaled.tau *= kappa;
        scaled.xi = kappa * scaled.xi;
        const double ik = cone_delta_integral(scaled);
        CHECK(ik == doctest::Approx(std::pow(kappa, 1.0 - a1 - a2) * i0).epsilon(1e-8));
    }
    // Same law on the sum branch, with the full-plane region.
    const ConeIntegralSpec sum_base{2.6, {1.0, -0.2}, a1, a2, ConeBranch::sum, ConeRegion::all};
    const double s0 = cone_delta_integral(sum_base);
    ConeIntegralSpec sum_scaled = sum_base;
    sum_scaled.tau *= 3.0;
    sum_scaled.xi = 3.0 * sum_scaled.xi;
    CHECK(cone_delta_integral(sum_scaled) ==
          doctest::Approx(std::pow(3.0, 1.0 - a1 - a2) * s0).epsilon(1e-8));
}

TEST_CASE("difference branch: inner + outer = all") {
    const ConeIntegralSpec inner{0.3, {1.0, 0.2}, 1.2, 1.3, ConeBranch::difference,
                                 ConeRegion::inner};
    ConeIntegralSpec outer = inner;
    outer.region = ConeRegion::outer;
    ConeIntegralSpec all = inner;
    all.region = ConeRegion::all;
    CHECK(cone_delta_integral(all) ==
          doctest::Approx(cone_delta_integral(inner) + cone_delta_integral(outer))
              .epsilon(1e-10));
    // Outer region with a slowly decaying tail still converges.
    const ConeIntegralSpec slow{0.1, {1.0, 0.0}, 1.0, 1.02, ConeBranch::difference,
                                ConeRegion::outer};
    CHECK(cone_delta_integral(slow) > 0.0);
    // And diverges (by rejection) at the critical weight.
    const ConeIntegralSpec divergent{0.1, {1.0, 0.0}, 1.0, 1.0, ConeBranch::difference,
                                     ConeRegion::outer};
    CHECK_THROWS_AS(cone_delta_integral(divergent), ParameterError);
}

TEST_CASE("cone_exponent_fit recovers the paper exponents at r = 1.25") {
    const double r = 1.25;
    // Difference branch, inner region, weights |eta|^{-3/8 - r/2} |eta-xi|^{-5/8 - r/2}.
    {
        const auto rep = cone_exponent_fit(ConeBranch::difference, ConeRegion::inner,
                                           3.0 / 8 + r / 2, 5.0 / 8 + r / 2);
        CHECK(std::abs(rep.constants.at("A_fit") - (0.5 - r)) < 0.05);
        CHECK(std::abs(rep.constants.at("B_fit") + 0.5) < 0.05);
    }
    // Sum branch, weights |eta|^{-3/8} |eta-xi|^{-5/8 - r/2}.
    {
        const auto rep =
            cone_exponent_fit(ConeBranch::sum, ConeRegion::all, 3.0 / 8, 5.0 / 8 + r / 2);
        CHECK(std::abs(rep.constants.at("A_fit") - (0.5 - r / 2)) < 0.05);
        CHECK(std::abs(rep.constants.at("B_fit") + 0.5) < 0.05);
    }
}
