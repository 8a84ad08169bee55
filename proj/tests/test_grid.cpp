#include "dkg/field.hpp"
#include "dkg/field_io.hpp"
#include "dkg/rng.hpp"

#include <doctest.h>

#include <sstream>

#include "oracles.hpp"

using namespace dkg;

namespace {

ScalarField random_scalar(const GridSpec& g, Rep rep, Rng& rng) {
    ScalarField f(g, rep);
    for (auto& v : f.values()) v = rng.gaussian_cplx();
    return f;
}

SpaceTimeField random_spacetime(const GridSpec& g, int ncomp, Rep rep, Rng& rng) {
    SpaceTimeField f(g, ncomp, rep);
    for (auto& v : f.values()) v = rng.gaussian_cplx();
    return f;
}

double rel_err(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += std::norm(a[i] - b[i]);
        den += std::norm(b[i]);
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

} // namespace

TEST_CASE("GridSpec validation and frequency layout") {
    GridSpec g{8, two_pi, 1, 0.0};
    g.validate();
    CHECK(g.freq_x(0) == 0.0);
    CHECK(g.freq_x(1) == doctest::Approx(1.0));
    CHECK(g.freq_x(4) == doctest::Approx(-4.0)); // Nyquist is the negative end
    CHECK(g.freq_x(7) == doctest::Approx(-1.0));

    CHECK_THROWS_AS((GridSpec{7, two_pi, 1, 0.0}.validate()), GridError);
    CHECK_THROWS_AS((GridSpec{8, -1.0, 1, 0.0}.validate()), GridError);
    CHECK_THROWS_AS((GridSpec{8, two_pi, 16, 0.0}.validate()), GridError);
    CHECK_THROWS_AS((GridSpec{8, two_pi, 15, 1.0}.validate()), GridError);
}

TEST_CASE("dft_forward: constant field concentrates at the zero mode") {
    GridSpec g{8, two_pi, 1, 0.0};
    ScalarField f(g, Rep::physical);
    for (auto& v : f.values()) v = 1.0;
    ScalarField fh = dft_forward(f);
    CHECK(std::abs(fh.at(0) - cplx(8.0)) < 1e-12); // sqrt(64)
    for (std::size_t p = 1; p < fh.size(); ++p) CHECK(std::abs(fh.at(p)) < 1e-12);
}

TEST_CASE("dft_forward: pure lattice mode gives a single coefficient") {
    GridSpec g{8, 4.0, 1, 0.0};
    const int k1 = 2, k2 = -3;
    ScalarField f(g, Rep::physical);
    for (std::size_t p = 0; p < f.size(); ++p) {
        const Vec2 x = g.x_at(p);
        const double ph = (two_pi / g.period_L) * (k1 * x.x + k2 * x.y);
        f.at(p) = cplx(std::cos(ph), std::sin(ph));
    }
    ScalarField fh = dft_forward(f);
    const std::size_t target =
        std::size_t(GridSpec::index_of_mode(k1, 8)) * 8 + GridSpec::index_of_mode(k2, 8);
    CHECK(std::abs(fh.at(target) - cplx(8.0)) < 1e-11);
    for (std::size_t p = 0; p < fh.size(); ++p)
        if (p != target) CHECK(std::abs(fh.at(p)) < 1e-11);
}

TEST_CASE("dft matches the direct-summation oracle and round-trips") {
    Rng rng(42);
    GridSpec g{8, two_pi, 1, 0.0};
    ScalarField f = random_scalar(g, Rep::physical, rng);

    ScalarField fh = dft_forward(f);
    const auto ref = oracle::slow_dft(f.values(), 1, 8, 1, false, -1);
    CHECK(rel_err(fh.values(), ref) < 1e-12);

    ScalarField back = dft_inverse(fh);
    CHECK(rel_err(back.values(), f.values()) < 1e-12);

    // Parseval on stored values.
    CHECK(ell2_norm(fh) == doctest::Approx(ell2_norm(f)).epsilon(1e-12));
}

TEST_CASE("dft handles spinor and space-time fields") {
    Rng rng(7);
    GridSpec g{8, two_pi, 4, 1.0};

    SpinorField s(GridSpec{8, two_pi, 1, 0.0}, Rep::physical);
    for (auto& v : s.values()) v = rng.gaussian_cplx();
    SpinorField sh = dft_forward(s);
    const auto sref = oracle::slow_dft(s.values(), 1, 8, 2, false, -1);
    CHECK(rel_err(sh.values(), sref) < 1e-12);
    CHECK(rel_err(dft_inverse(sh).values(), s.values()) < 1e-12);

    SpaceTimeField u = random_spacetime(g, 2, Rep::physical, rng);
    SpaceTimeField uh = dft_forward(u);
    const auto uref = oracle::slow_dft(u.values(), 4, 8, 2, true, -1);
    CHECK(rel_err(uh.values(), uref) < 1e-12);
    CHECK(rel_err(dft_inverse(uh).values(), u.values()) < 1e-12);
    CHECK(ell2_norm(uh) == doctest::Approx(ell2_norm(u)).epsilon(1e-12));
}

TEST_CASE("dft representation contract is enforced") {
    GridSpec g{8, two_pi, 1, 0.0};
    ScalarField f(g, Rep::fourier);
    CHECK_THROWS_AS(dft_forward(f), ContractError);
    ScalarField p(g, Rep::physical);
    CHECK_THROWS_AS(dft_inverse(p), ContractError);
}

TEST_CASE("dft_inverse: zero field and single coefficient") {
    GridSpec g{8, two_pi, 1, 0.0};
    ScalarField z(g, Rep::fourier);
    ScalarField zp = dft_inverse(z);
    for (const auto& v : zp.values()) CHECK(std::abs(v) == 0.0);

    ScalarField one(g, Rep::fourier);
    const int k1 = 1, k2 = 2;
    one.at(std::size_t(GridSpec::index_of_mode(k1, 8)) * 8 + GridSpec::index_of_mode(k2, 8)) = 1.0;
    ScalarField w = dft_inverse(one);
    for (std::size_t p = 0; p < w.size(); ++p) {
        const Vec2 x = g.x_at(p);
        const double ph = k1 * x.x + k2 * x.y; // period 2*pi: frequencies are integers
        const cplx expect = cplx(std::cos(ph), std::sin(ph)) / 8.0;
        CHECK(std::abs(w.at(p) - expect) < 1e-13);
    }
}

TEST_CASE("apply_multiplier: identity, inverse pair, and bracket weight") {
    Rng rng(3);
    GridSpec g{8, two_pi, 1, 0.0};
    ScalarField f = dft_forward(random_scalar(g, Rep::physical, rng));

    ScalarField id = apply_multiplier(f, [](Vec2) { return 1.0; });
    CHECK(rel_err(id.values(), f.values()) == 0.0);

    auto a_half = [](Vec2 xi) { return std::sqrt(1.0 + xi.norm2()); };
    auto a_neg_half = [](Vec2 xi) { return 1.0 / std::sqrt(1.0 + xi.norm2()); };
    ScalarField round = apply_multiplier(apply_multiplier(f, a_half), a_neg_half);
    CHECK(rel_err(round.values(), f.values()) < 1e-12);

    // <xi>^s on a single mode, checked against scalar arithmetic.
    const double s = -0.7;
    ScalarField one(g, Rep::fourier);
    const int k1 = 3, k2 = -2;
    const std::size_t target =
        std::size_t(GridSpec::index_of_mode(k1, 8)) * 8 + GridSpec::index_of_mode(k2, 8);
    one.at(target) = cplx(0.3, -0.4);
    ScalarField weighted =
        apply_multiplier(one, [&](Vec2 xi) { return std::pow(1.0 + xi.norm2(), s / 2.0); });
    const double expect = std::pow(1.0 + double(k1 * k1 + k2 * k2), s / 2.0);
    CHECK(std::abs(weighted.at(target) - cplx(0.3, -0.4) * expect) < 1e-14);
}

TEST_CASE("apply_multiplier: non-finite symbol is rejected with location") {
    GridSpec g{8, two_pi, 1, 0.0};
    ScalarField f(g, Rep::fourier);
    auto bad = [](Vec2 xi) { return 1.0 / xi.norm(); }; // inf at xi = 0
    CHECK_THROWS_WITH_AS(apply_multiplier_inplace(f, bad),
                         doctest::Contains("xi=(0.000000,0.000000)"), std::domain_error);
}

TEST_CASE("Hermitian symmetry of real-field transforms survives real symbols") {
    Rng rng(11);
    GridSpec g{16, 5.0, 1, 0.0};
    ScalarField f(g, Rep::physical);
    for (auto& v : f.values()) v = rng.gaussian();
    ScalarField fh = dft_forward(f);
    CHECK(hermitian_symmetry_error(fh) < 1e-12);

    apply_multiplier_inplace(fh, [](Vec2 xi) { return std::exp(-0.1 * xi.norm2()); });
    CHECK(hermitian_symmetry_error(fh) < 1e-12);
}

TEST_CASE("pad_spectrum reproduces the same trigonometric polynomial") {
    Rng rng(5);
    GridSpec g{8, two_pi, 1, 0.0};
    ScalarField f = random_scalar(g, Rep::physical, rng);
    ScalarField fine = dft_inverse(pad_spectrum(dft_forward(f), 2));
    // Coarse nodes are the even-indexed fine nodes.
    for (int i1 = 0; i1 < 8; ++i1)
        for (int i2 = 0; i2 < 8; ++i2) {
            const cplx coarse = f.at(std::size_t(i1) * 8 + i2);
            const cplx refined = fine.at(std::size_t(2 * i1) * 16 + 2 * i2);
            CHECK(std::abs(coarse - refined) < 1e-12);
        }
}

TEST_CASE("pointwise product spectrum matches the convolution oracle") {
    Rng rng(9);
    GridSpec g{8, two_pi, 1, 0.0};
    ScalarField a = random_scalar(g, Rep::physical, rng);
    ScalarField b = random_scalar(g, Rep::physical, rng);
    ScalarField prod_hat = dft_forward(pointwise_product(a, b));
    ScalarField ref = oracle::product_spectrum_direct(dft_forward(a), dft_forward(b));
    CHECK(rel_err(prod_hat.values(), ref.values()) < 1e-12);
}

TEST_CASE("two-thirds dealiasing keeps only low modes") {
    GridSpec g{12, two_pi, 1, 0.0};
    ScalarField f(g, Rep::fourier);
    for (auto& v : f.values()) v = 1.0;
    dealias_twothirds(f);
    for (int i1 = 0; i1 < 12; ++i1)
        for (int i2 = 0; i2 < 12; ++i2) {
            const bool kept = std::abs(GridSpec::signed_mode(i1, 12)) <= 4 &&
                              std::abs(GridSpec::signed_mode(i2, 12)) <= 4;
            CHECK(f.at(std::size_t(i1) * 12 + i2) == (kept ? cplx(1.0) : cplx(0.0)));
        }
}

TEST_CASE("DKGF container round-trips all field kinds bit-exactly") {
    Rng rng(13);
    GridSpec gs{8, 3.5, 1, 0.0};
    GridSpec gst{8, 3.5, 4, 2.0};

    AnyField fields[3] = {random_scalar(gs, Rep::fourier, rng),
                          SpinorField(gs, Rep::physical),
                          random_spacetime(gst, 2, Rep::physical, rng)};
    std::get<SpinorField>(fields[1]).at(5, 1) = cplx(1.25, -2.5);

    for (const auto& f : fields) {
        std::stringstream ss;
        std::visit([&](const auto& field) { write_field(ss, field); }, f);
        AnyField back = read_field(ss);
        CHECK(back.index() == f.index());
        std::visit(
            [&](const auto& orig) {
                using T = std::decay_t<decltype(orig)>;
                const auto& rb = std::get<T>(back);
                CHECK(rb.grid() == orig.grid());
                CHECK(rb.rep() == orig.rep());
                REQUIRE(rb.values().size() == orig.values().size());
                for (std::size_t i = 0; i < orig.values().size(); ++i)
                    CHECK(rb.values()[i] == orig.values()[i]);
            },
            f);
    }
}

TEST_CASE("DKGF header layout is fixed") {
    GridSpec g{8, 2.0, 1, 0.0};
    ScalarField f(g, Rep::fourier);
    std::stringstream ss;
    write_field(ss, f);
    const std::string bytes = ss.str();
    REQUIRE(bytes.size() == 34 + 16 * 64);
    CHECK(bytes.substr(0, 4) == "DKGF");
    CHECK(std::uint8_t(bytes[8]) == 0);  // kind scalar
    CHECK(std::uint8_t(bytes[33]) == 1); // rep fourier
}
