#include "dkg/harness.hpp"

#include <doctest.h>

#include "oracles.hpp"

using namespace dkg;

TEST_CASE("angle estimate (14): pinned antiparallel sample") {
    // eta=(1,0), xi=(2,0): angle(eta, eta-xi) = pi, RHS = 2.
    const Vec2 eta{1, 0}, xi{2, 0};
    CHECK(angle_lhs_14(eta, xi) == doctest::Approx(pi));
    CHECK(angle_rhs_14(eta, xi) == doctest::Approx(2.0));
}

TEST_CASE("angle estimate (15): collinear sample degenerates to 0/0") {
    const Vec2 eta{1, 0}, xi{2, 0};
    CHECK(angle_lhs_15(eta, xi) == doctest::Approx(0.0));
    CHECK(angle_rhs_15(eta, xi) == doctest::Approx(0.0));
}

TEST_CASE("verify_angle_equivalences: two-sided bounds over random samples") {
    SampleConfig cfg;
    cfg.count = 100000;
    cfg.seed = 11;
    const EstimateReport rep = verify_angle_equivalences(cfg);
    for (const char* key : {"eq14_min_ratio", "eq15_min_ratio"}) {
        CHECK(rep.constants.at(key) > 0.1);
    }
    for (const char* key : {"eq14_max_ratio", "eq15_max_ratio"}) {
        CHECK(rep.constants.at(key) < 10.0);
    }
    CHECK(rep.skipped * 100 <= cfg.count);
    CHECK(rep.warnings.empty());
}

TEST_CASE("angle bound (16): pinned behaviour") {
    const Vec2 eta{3, 1}, xi{1, -2};
    const SignPair pp{Sign::plus, Sign::plus};
    // Minimal modulations: lambda = -|eta|, tau - lambda = -|eta - xi|.
    const double lambda = -eta.norm();
    const double tau = lambda + (eta - xi).norm() * -1.0;
    const double rhs = angle_rhs_16(eta, xi, tau, lambda, pp);
    const double den = std::min(jbracket(xi), jbracket(eta - xi));
    CHECK(rhs >= std::sqrt(3.0 / den) - 1e-12);
    CHECK(angle_lhs_16(eta, xi, pp) <= pi);

    // xi = eta/2, signs (+,+): eta and eta - xi are parallel, LHS = 0.
    CHECK(angle_lhs_16(eta, 0.5 * eta, pp) == doctest::Approx(0.0));
}

TEST_CASE("verify_angle_bound_16: finite and stable sup") {
    SampleConfig cfg;
    cfg.count = 50000;
    cfg.seed = 5;
    const EstimateReport rep = verify_angle_bound_16(cfg);
    const double sup = rep.constants.at("sup_ratio");
    CHECK(sup > 0.0);
    CHECK(sup < 50.0);
    // The sup at half count is within 25% of the final value.
    double half = 0.0;
    for (const auto& [k, v] : rep.trend)
        if (k == "sup@half") half = v;
    CHECK(half >= 0.75 * sup);
}

TEST_CASE("nullform_13_sides: zero input gives zero on both sides") {
    GridSpec g{8, two_pi, 4, two_pi};
    SpaceTimeField psi(g, 2, Rep::fourier), zero(g, 2, Rep::fourier);
    psi.at(1, 5, 0) = cplx(1.0, 0.5);
    const auto sides = nullform_13_sides(psi, zero, {Sign::plus, Sign::minus});
    for (const auto& v : sides.lhs) CHECK(std::abs(v) == 0.0);
    for (double v : sides.rhs) CHECK(v == 0.0);
    CHECK(sides.c_max == 0.0);
}

TEST_CASE("nullform_13_sides: single-mode pair matches scalar arithmetic") {
    GridSpec g{8, two_pi, 4, two_pi};
    const SignPair signs{Sign::plus, Sign::minus};
    // psi at (lambda0, eta0), psi' at (lambda1, eta1); chosen so that the
    // output mode (lambda0 - lambda1, eta0 - eta1) stays inside the window.
    const int lt0 = 3, lt1 = 1;
    const int e0x = 2, e0y = 7, e1x = 1, e1y = 6; // DFT-ordered indices
    const std::size_t p0 = std::size_t(e0x) * 8 + e0y;
    const std::size_t p1 = std::size_t(e1x) * 8 + e1y;
    const std::array<cplx, 2> a{{{0.3, -1.1}, {0.7, 0.2}}};
    const std::array<cplx, 2> bb{{{-0.4, 0.9}, {1.2, 0.1}}};

    SpaceTimeField psi(g, 2, Rep::fourier), psi2(g, 2, Rep::fourier);
    psi.at(lt0, p0, 0) = a[0];
    psi.at(lt0, p0, 1) = a[1];
    psi2.at(lt1, p1, 0) = bb[0];
    psi2.at(lt1, p1, 1) = bb[1];

    const auto sides = nullform_13_sides(psi, psi2, signs);

    // Output lives at tau = lambda0 - lambda1, xi = eta0 - eta1.
    const Vec2 eta0 = g.xi_at(p0), eta1 = g.xi_at(p1);
    const int kt = GridSpec::signed_mode(lt0, 4) - GridSpec::signed_mode(lt1, 4);
    const int kx = GridSpec::signed_mode(e0x, 8) - GridSpec::signed_mode(e1x, 8);
    const int ky = GridSpec::signed_mode(e0y, 8) - GridSpec::signed_mode(e1y, 8);
    const int it = GridSpec::index_of_mode(kt, 4);
    const int ix = GridSpec::index_of_mode(kx, 8);
    const int iy = GridSpec::index_of_mode(ky, 8);
    REQUIRE(it >= 0);
    REQUIRE(ix >= 0);
    REQUIRE(iy >= 0);
    const std::size_t pout = std::size_t(ix) * 8 + iy;

    const double nf = 1.0 / std::sqrt(double(g.total_size()));
    const Mat2 beta = dirac_matrices().beta;
    const auto u = (projection(eta1, signs.s2) * beta * projection(eta0, signs.s1)).apply(a);
    const cplx expect_lhs = nf * (u[0] * std::conj(bb[0]) + u[1] * std::conj(bb[1]));
    const double mod_a = std::sqrt(std::norm(a[0]) + std::norm(a[1]));
    const double mod_b = std::sqrt(std::norm(bb[0]) + std::norm(bb[1]));
    const double expect_rhs =
        nf * angle(1.0 * eta0, -1.0 * eta1) * mod_a * mod_b;

    CHECK(std::abs(sides.lhs[std::size_t(it) * 64 + pout] - expect_lhs) < 1e-13);
    CHECK(sides.rhs[std::size_t(it) * 64 + pout] == doctest::Approx(expect_rhs));
    // Everything else vanishes.
    std::size_t nonzero = 0;
    for (const auto& v : sides.lhs)
        if (std::abs(v) > 0) ++nonzero;
    CHECK(nonzero <= 1);
    CHECK(sides.c_max <= 0.5 + 1e-9);
}

TEST_CASE("verify_nullform_13: pointwise constant is at most sin(theta/2)/theta sup") {
    GridSpec g{8, two_pi, 8, two_pi};
    SampleConfig cfg;
    cfg.count = 3;
    cfg.seed = 21;
    for (SignPair sp : {SignPair{Sign::plus, Sign::plus}, SignPair{Sign::plus, Sign::minus}}) {
        const EstimateReport rep = verify_nullform_13(g, sp, cfg);
        CHECK(rep.constants.at("C_pointwise") > 0.0);
        CHECK(rep.constants.at("C_pointwise") <= 0.5 + 1e-9);
    }
    CHECK_THROWS_AS(verify_nullform_13(GridSpec{64, two_pi, 64, two_pi},
                                       SignPair{Sign::plus, Sign::plus}, cfg),
                    ParameterError);
}

TEST_CASE("verify_nullform_13: stable across seeds") {
    GridSpec g{8, two_pi, 8, two_pi};
    SampleConfig cfg;
    cfg.count = 4;
    cfg.seed = 101;
    const double c1 =
        verify_nullform_13(g, {Sign::plus, Sign::minus}, cfg).constants.at("C_pointwise");
    cfg.seed = 202;
    const double c2 =
        verify_nullform_13(g, {Sign::plus, Sign::minus}, cfg).constants.at("C_pointwise");
    CHECK(std::abs(c1 - c2) <= 0.5 * std::max(c1, c2));
}

TEST_CASE("random X-space fields come out unit-norm") {
    GridSpec g{8, two_pi, 8, two_pi};
    Rng rng(77);
    const NormSpec spec{0.4, 1.3, 0.8, Branch::plus, false};
    const SpaceTimeField f = random_xsb_spinor(g, spec, rng);
    CHECK(xsb_norm(f, spec) == doctest::Approx(1.0).epsilon(1e-12));
    const NormSpec wspec{-0.25, 3.0, -0.4, Branch::wave, false};
    const SpaceTimeField h = random_xsb_scalar(g, wspec, rng);
    CHECK(xsb_norm(h, wspec) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("nullform_product_padded matches the direct convolution window") {
    GridSpec g{8, two_pi, 4, two_pi};
    const SignPair signs{Sign::minus, Sign::plus};
    Rng rng(31);
    SpaceTimeField psi(g, 2, Rep::fourier), psi2(g, 2, Rep::fourier);
    for (auto& v : psi.values()) v = rng.gaussian_cplx();
    for (auto& v : psi2.values()) v = rng.gaussian_cplx();

    const auto sides = nullform_13_sides(psi, psi2, signs);
    const SpaceTimeField q = nullform_product_padded(psi, psi2, signs);
    const GridSpec& gp = q.grid();
    REQUIRE(gp.n_x == 16);
    REQUIRE(gp.n_t == 8);

    // Stored padded coefficients carry sqrt(N_pad / N) relative to the
    // unitary convolution on the original window.
    const double factor = std::sqrt(double(gp.total_size()) / double(g.total_size()));
    for (int it = 0; it < g.n_t; ++it) {
        const int itp = GridSpec::index_of_mode(GridSpec::signed_mode(it, g.n_t), gp.n_t);
        for (int i1 = 0; i1 < g.n_x; ++i1)
            for (int i2 = 0; i2 < g.n_x; ++i2) {
                const int j1 = GridSpec::index_of_mode(GridSpec::signed_mode(i1, g.n_x), gp.n_x);
                const int j2 = GridSpec::index_of_mode(GridSpec::signed_mode(i2, g.n_x), gp.n_x);
                const cplx got = q.at(itp, std::size_t(j1) * gp.n_x + j2);
                const cplx want =
                    factor * sides.lhs[std::size_t(it) * g.spatial_size() +
                                       std::size_t(i1) * g.n_x + i2];
                CHECK(std::abs(got - want) < 1e-11);
            }
    }
}

TEST_CASE("bilinear hypothesis validator") {
    // r=2 criterion parameters are inside the r=2 region.
    CHECK(bilinear_hypothesis_violation({0.0, 0.26, 2.0, 0.51, 0.01, false}).empty());
    // Boundary l = 1/4 is excluded.
    CHECK(bilinear_hypothesis_violation({0.0, 0.25, 2.0, 0.51, 0.01, false}) ==
          "(s, l) inside the r=2 admissible region");
    // b must exceed 1/r.
    CHECK(bilinear_hypothesis_violation({0.0, 0.26, 2.0, 0.49, 0.01, false}) == "b > 1/r");
    // r near 1: the proposition block.
    CHECK(bilinear_hypothesis_violation({0.635, 1.245, 1.01, 1.0, 0.01, false}).empty());
    CHECK(bilinear_hypothesis_violation({0.635, 1.26, 1.01, 1.0, 0.01, false}) ==
          "l <= 1 + 1/(4r)");
    CHECK(bilinear_hypothesis_violation({0.55, 1.2, 1.01, 1.0, 0.01, false}) == "s >= 5/(8r)");
    // Mid-range r accepted through admissible-pair domination.
    CHECK(bilinear_hypothesis_violation({0.30, 0.60, 1.5, 0.70, 0.01, false}).empty());
}

TEST_CASE("bilinear_constant_11: zero hypothesis rejection and smoke run") {
    SampleConfig cfg;
    cfg.count = 8;
    cfg.seed = 3;
    CHECK_THROWS_WITH_AS(
        bilinear_constant_11({0.635, 1.26, 1.01, 1.0, 0.01, false}, {8}, cfg),
        doctest::Contains("l <= 1 + 1/(4r)"), ParameterError);

    const EstimateReport rep = bilinear_constant_11({0.0, 0.26, 2.0, 0.51, 0.01, false}, {8}, cfg);
    CHECK(rep.constants.at("max_ratio") > 0.0);
    CHECK(std::isfinite(rep.constants.at("max_ratio")));
    // Repeatability for a fixed seed.
    const EstimateReport rep2 =
        bilinear_constant_11({0.0, 0.26, 2.0, 0.51, 0.01, false}, {8}, cfg);
    CHECK(rep.constants.at("max_ratio") == rep2.constants.at("max_ratio"));
}

TEST_CASE("bilinear_constant_12 runs at admissible r=2 parameters") {
    SampleConfig cfg;
    cfg.count = 8;
    cfg.seed = 9;
    const EstimateReport rep = bilinear_constant_12({0.0, 0.26, 2.0, 0.51, 0.01, false}, {8}, cfg);
    CHECK(rep.constants.at("max_ratio") > 0.0);
    CHECK(std::isfinite(rep.constants.at("max_ratio")));
}

TEST_CASE("product hypothesis validator: pinned cases") {
    // Prop 2.3 at r=2, alphas 0.4, b's 0.4: 0.8 > 0.75 on both counts.
    ProductParams ok;
    ok.which = ProductWhich::prop_2_3;
    ok.r = 2.0;
    ok.alpha1 = ok.alpha2 = 0.4;
    ok.b1 = ok.b2 = 0.4;
    CHECK(product_hypothesis_violations(ok).empty());

    // Sum of alphas below 2/r fails Prop 1.4.
    ProductParams bad;
    bad.which = ProductWhich::prop_1_4;
    bad.r = 1.01;
    bad.alpha1 = bad.alpha2 = 3.0 / (2.0 * bad.r) * 0.6;
    bad.alpha0 = 0.6;
    bad.gamma = 0.6;
    bad.b = 1.1;
    const auto violations = product_hypothesis_violations(bad);
    bool found = false;
    for (const auto& v : violations) found = found || v == "alpha1 + alpha2 > 2/r";
    CHECK(found);

    // The (6') instantiation from the proof is accepted near r = 1.
    ProductParams red;
    red.which = ProductWhich::reductions_1_to_6;
    red.r = 1.01;
    red.s = 5.0 / (8.0 * red.r) + 0.01;
    red.l = 0.5 + 3.0 / (4.0 * red.r) + 0.01;
    red.b = 1.0 / red.r + 0.01;
    red.epsilon = 0.01;
    CHECK(product_hypothesis_violations(red).empty());
}

TEST_CASE("product_estimate_check: smoke run for Prop 2.3") {
    ProductParams p;
    p.which = ProductWhich::prop_2_3;
    p.r = 2.0;
    p.alpha1 = p.alpha2 = 0.4;
    p.b1 = p.b2 = 0.4;
    SampleConfig cfg;
    cfg.count = 6;
    cfg.seed = 17;
    const GridSpec g{8, two_pi, 8, two_pi};
    const EstimateReport rep = product_estimate_check(p, g, cfg);
    CHECK(rep.constants.at("max_ratio") > 0.0);
    CHECK(std::isfinite(rep.constants.at("max_ratio")));

    p.alpha1 = p.alpha2 = 0.1; // violates alpha sum
    CHECK_THROWS_AS(product_estimate_check(p, g, cfg), ParameterError);
    p.override_hypotheses = true;
    const EstimateReport forced = product_estimate_check(p, g, cfg);
    CHECK(!forced.warnings.empty());
}

TEST_CASE("scaling_check: measured dilation exponents") {
    const GridSpec g{32, 16.0, 1, 0.0};
    struct Case {
        double s, r;
        ScalingFieldKind kind;
    };
    const Case cases[] = {{0.0, 2.0, ScalingFieldKind::spinor},
                          {-0.5, 2.0, ScalingFieldKind::spinor},
                          {0.625, 1.25, ScalingFieldKind::spinor},
                          {0.3, 1.6, ScalingFieldKind::kg_field}};
    for (const Case& c : cases) {
        const EstimateReport rep = scaling_check(c.s, c.r, c.kind, g, {2, 4, 8}, 7);
        const double expect =
            (c.kind == ScalingFieldKind::spinor ? 1.5 : 1.0) + c.s - 2.0 / c.r;
        CHECK(rep.constants.at("exponent_expected") == doctest::Approx(expect));
        CHECK(rep.constants.at("exponent_measured") == doctest::Approx(expect).epsilon(1e-10));
    }
    // The scale-invariant choice measures zero.
    const EstimateReport flat =
        scaling_check(2.0 / 1.4 - 1.5, 1.4, ScalingFieldKind::spinor, g, {2, 4, 8}, 7);
    CHECK(std::abs(flat.constants.at("exponent_measured")) < 1e-10);
    // Unusable zero mode is rejected.
    CHECK_THROWS_AS(scaling_check(0.0, 2.0, ScalingFieldKind::kg_field, g, {2, 4}, 7, 1e-9),
                    ParameterError);
}

TEST_CASE("mixed_fourier_norm: single mode and sup behaviour") {
    GridSpec g{8, two_pi, 4, 2.0};
    SpaceTimeField u(g, 1, Rep::fourier);
    const cplx c{0.8, -0.6};
    u.at(2, 13) = c;
    const double scale = coeff_scale_spacetime(g);
    for (double p : {1.0, 2.0, 4.0}) {
        for (double q : {2.0, 3.0}) {
            const double qd = q / (q - 1.0);
            double expect = scale * std::abs(c) * std::pow(g.dxi_cell(), 1.0 / qd);
            if (p > 1.0) expect *= std::pow(g.dtau(), (p - 1.0) / p);
            CHECK(mixed_fourier_norm(u, p, q) == doctest::Approx(expect).epsilon(1e-12));
        }
    }
}

TEST_CASE("free_wave_mode: zero data and transfer direction") {
    GridSpec g{8, two_pi, 1, 0.0};
    Rng rng(41);
    ScalarField f1(g, Rep::fourier), f2(g, Rep::fourier);
    for (auto& v : f1.values()) v = rng.gaussian_cplx();

    FreeWaveParams params;
    params.signs = {Sign::plus, Sign::minus};
    params.p = 2.0;
    params.q = 2.0;
    params.r = 1.5;
    params.s1 = 0.25;
    params.s2 = 0.25;

    SampleConfig cfg;
    cfg.count = 6;
    cfg.seed = 19;
    const EstimateReport zero = free_wave_mode(f1, f2, 8, two_pi, params, cfg);
    CHECK(zero.constants.at("ratio_free_wave") == 0.0);

    for (auto& v : f2.values()) v = rng.gaussian_cplx();
    const EstimateReport rep = free_wave_mode(f1, f2, 8, two_pi, params, cfg);
    CHECK(rep.constants.at("ratio_free_wave") > 0.0);
    CHECK(rep.constants.at("ratio_x_fields") > 0.0);
}
