// Delta-restricted integrals over conic sections {|eta| -+ |xi-eta| = tau},
// reduced to 1D by elliptic coordinates (u, v) = (r1 + r2, r1 - r2) with
// area element (u^2 - v^2) / (2 sqrt((u^2-a^2)(a^2-v^2))) du dv, a = |xi|.
#include "dkg/harness.hpp"
#include "dkg/quadrature.hpp"

#include <array>

namespace dkg {

namespace {

struct ConeGeometry {
    double a;   // |xi|
    double tau;
    double a1, a2;
};

// Difference branch: delta picks v = tau, leaving an integral over
// u = a cosh(s) (the substitution absorbs the 1/sqrt(u^2 - a^2) endpoint).
// Integrand in s, stable against cosh overflow at large s.
double diff_integrand(const ConeGeometry& g, double s) {
    const double pref = 1.0 / (2.0 * std::sqrt(g.a * g.a - g.tau * g.tau));
    if (s < 30.0) {
        const double u = g.a * std::cosh(s);
        return pref * (u * u - g.tau * g.tau) * std::pow((u + g.tau) / 2.0, -g.a1) *
               std::pow((u - g.tau) / 2.0, -g.a2);
    }
    // u ~ a e^s / 2; work with logarithms.
    const double log_u = std::log(g.a) + s - std::log(2.0) + std::log1p(std::exp(-2.0 * s));
    const double log_val = std::log(pref) + 2.0 * log_u + std::log1p(-g.tau * g.tau * std::exp(-2.0 * log_u)) -
                           g.a1 * (log_u - std::log(2.0) + std::log1p(g.tau * std::exp(-log_u))) -
                           g.a2 * (log_u - std::log(2.0) + std::log1p(-g.tau * std::exp(-log_u)));
    return std::exp(log_val);
}

double diff_inner(const ConeGeometry& g) {
    const double s2 = std::acosh(2.0);
    return integrate_adaptive([&](double s) { return diff_integrand(g, s); }, 0.0, s2);
}

// Tail over u >= 2a via sigma = exp(-kappa (s - s2)), which flattens the
// e^{-kappa s} decay (kappa can be arbitrarily small near critical weights).
double diff_outer(const ConeGeometry& g) {
    const double kappa = g.a1 + g.a2 - 2.0;
    if (!(kappa > 0.0))
        throw ParameterError(
            "cone_delta_integral: outer region diverges, needs a1 + a2 > 2");
    const double s2 = std::acosh(2.0);
    auto f = [&](double sigma) {
        const double s = s2 - std::log(sigma) / kappa;
        return diff_integrand(g, s) / (kappa * sigma);
    };
    return integrate_adaptive(f, 0.0, 1.0);
}

// Sum branch: delta picks u = tau; v = a sin(theta) removes both endpoint
// singularities at v = +-a.
double sum_integral(const ConeGeometry& g) {
    const double pref = 1.0 / (2.0 * std::sqrt(g.tau * g.tau - g.a * g.a));
    auto f = [&](double th) {
        const double v = g.a * std::sin(th);
        return pref * (g.tau * g.tau - v * v) * std::pow((g.tau + v) / 2.0, -g.a1) *
               std::pow((g.tau - v) / 2.0, -g.a2);
    };
    return integrate_adaptive(f, -pi / 2.0, pi / 2.0);
}

} // namespace

bool cone_branch_feasible(const ConeIntegralSpec& spec) {
    const double a = spec.xi.norm();
    if (spec.branch == ConeBranch::difference) return std::abs(spec.tau) < a;
    return spec.tau > a;
}

double cone_delta_integral(const ConeIntegralSpec& spec) {
    const double a = spec.xi.norm();
    if (a == 0.0) throw ParameterError("cone_delta_integral: xi must be nonzero");
    if (!cone_branch_feasible(spec)) return 0.0;

    const ConeGeometry g{a, spec.tau, spec.a1, spec.a2};
    if (spec.branch == ConeBranch::sum) {
        // u = tau is constant on the ellipse; the region filter is all-or-nothing.
        if (spec.region == ConeRegion::inner && spec.tau > 2.0 * a) return 0.0;
        if (spec.region == ConeRegion::outer && spec.tau < 2.0 * a) return 0.0;
        return sum_integral(g);
    }
    switch (spec.region) {
        case ConeRegion::inner: return diff_inner(g);
        case ConeRegion::outer: return diff_outer(g);
        case ConeRegion::all: return diff_inner(g) + diff_outer(g);
    }
    return 0.0;
}

EstimateReport cone_exponent_fit(ConeBranch branch, ConeRegion region, double a1, double a2,
                                 const ConeFitConfig& fit) {
    EstimateReport rep;
    rep.operation = "cone_exponent_fit";
    rep.parameters = {{"branch", branch == ConeBranch::difference ? "difference" : "sum"},
                      {"region", region == ConeRegion::inner   ? "inner"
                                 : region == ConeRegion::outer ? "outer"
                                                               : "all"},
                      {"a1", a1},
                      {"a2", a2}};

    // Normal equations for log I = C + A log|xi| + B log(||tau|-|xi||).
    std::array<std::array<double, 3>, 3> m{};
    std::array<double, 3> rhs_v{};
    std::size_t used = 0;
    for (int ia = 0; ia < fit.a_count; ++ia) {
        const double fa = fit.a_count > 1 ? double(ia) / (fit.a_count - 1) : 0.0;
        const double a = fit.a_lo * std::pow(fit.a_hi / fit.a_lo, fa);
        for (int ir = 0; ir < fit.rho_count; ++ir) {
            const double fr = fit.rho_count > 1 ? double(ir) / (fit.rho_count - 1) : 0.0;
            const double rho = fit.rho_lo * std::pow(fit.rho_hi / fit.rho_lo, fr);
            const double d = rho * a;
            const double tau = branch == ConeBranch::difference ? a - d : a + d;
            const double val =
                cone_delta_integral({tau, Vec2{a, 0.0}, a1, a2, branch, region});
            if (!(val > 0.0) || !std::isfinite(val)) {
                ++rep.skipped;
                continue;
            }
            const std::array<double, 3> row{1.0, std::log(a), std::log(d)};
            const double y = std::log(val);
            for (int i = 0; i < 3; ++i) {
                for (int j = 0; j < 3; ++j) m[i][j] += row[i] * row[j];
                rhs_v[i] += row[i] * y;
            }
            ++used;
            rep.trend.emplace_back("a=" + std::to_string(a) + ",d=" + std::to_string(d), val);
        }
    }
    rep.count = used;
    if (used < 4) throw ParameterError("cone_exponent_fit: not enough valid samples");

    // Solve the 3x3 system by Gaussian elimination with partial pivoting.
    std::array<std::array<double, 4>, 3> aug{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) aug[i][j] = m[i][j];
        aug[i][3] = rhs_v[i];
    }
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int rw = col + 1; rw < 3; ++rw)
            if (std::abs(aug[rw][col]) > std::abs(aug[piv][col])) piv = rw;
        std::swap(aug[col], aug[piv]);
        for (int rw = col + 1; rw < 3; ++rw) {
            const double f = aug[rw][col] / aug[col][col];
            for (int j = col; j < 4; ++j) aug[rw][j] -= f * aug[col][j];
        }
    }
    std::array<double, 3> sol{};
    for (int i = 2; i >= 0; --i) {
        double acc = aug[i][3];
        for (int j = i + 1; j < 3; ++j) acc -= aug[i][j] * sol[j];
        sol[i] = acc / aug[i][i];
    }

    rep.constants["A_fit"] = sol[1];
    rep.constants["B_fit"] = sol[2];
    rep.constants["A_expected"] = 1.5 - a1 - a2;
    rep.constants["B_expected"] = -0.5;
    if (std::max(a1, a2) >= 1.5)
        rep.warnings.push_back("weight exponent >= 3/2: expected exponents do not apply");
    rep.set_headline(sol[1], 1.5 - a1 - a2);
    return rep;
}

} // namespace dkg
