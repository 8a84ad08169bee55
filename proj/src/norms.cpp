#include "dkg/norms.hpp"

#include <algorithm>
#include <vector>

namespace dkg {

namespace detail {

double lp_accumulate(const std::vector<double>& amps, double p, double cell) {
    double m = 0.0;
    for (double a : amps) m = std::max(m, a);
    if (m == 0.0) return 0.0;
    if (std::isinf(p)) return m;
    double s = 0.0;
    for (double a : amps) s += std::pow(a / m, p);
    return m * std::pow(s * cell, 1.0 / p);
}

} // namespace detail

namespace {

using detail::lp_accumulate;

void check_fl_spec(const NormSpec& spec) {
    if (!(spec.r > 1.0 && spec.r <= 2.0))
        throw ParameterError("fourier_lebesgue_norm: r must lie in (1,2], got " +
                             std::to_string(spec.r));
    if (spec.branch != Branch::none)
        throw ParameterError("fourier_lebesgue_norm: spatial norm requires branch=none");
}

double spatial_weight(Vec2 xi, const NormSpec& spec) {
    if (spec.homogeneous) return std::pow(xi.norm(), spec.s);
    return std::pow(jbracket(xi), spec.s);
}

template <class Field>
double fl_norm_impl(const Field& f, const NormSpec& spec) {
    check_fl_spec(spec);
    detail::require_rep(f.rep(), Rep::fourier, "fourier_lebesgue_norm");
    const GridSpec& g = f.grid();
    const double scale = coeff_scale_spatial(g);
    const double rp = spec.r_dual();

    std::vector<double> amps;
    amps.reserve(g.spatial_size());
    for (std::size_t p = 0; p < g.spatial_size(); ++p) {
        const Vec2 xi = g.xi_at(p);
        if (spec.homogeneous && xi.norm() == 0.0) continue;
        double a;
        if constexpr (Field::components == 1) {
            a = std::abs(f.at(p));
        } else {
            a = std::sqrt(std::norm(f.at(p, 0)) + std::norm(f.at(p, 1)));
        }
        amps.push_back(spatial_weight(xi, spec) * scale * a);
    }
    return lp_accumulate(amps, rp, g.dxi_cell());
}

template <class Field>
double excluded_mass_impl(const Field& f, double r) {
    detail::require_rep(f.rep(), Rep::fourier, "homogeneous_excluded_mass");
    const GridSpec& g = f.grid();
    const double rp = r / (r - 1.0);
    std::vector<double> all, zero;
    for (std::size_t p = 0; p < g.spatial_size(); ++p) {
        double a;
        if constexpr (Field::components == 1) {
            a = std::abs(f.at(p));
        } else {
            a = std::sqrt(std::norm(f.at(p, 0)) + std::norm(f.at(p, 1)));
        }
        all.push_back(a);
        if (g.xi_at(p).norm() == 0.0) zero.push_back(a);
    }
    const double tot = lp_accumulate(all, rp, 1.0);
    if (tot == 0.0) return 0.0;
    return lp_accumulate(zero, rp, 1.0) / tot;
}

} // namespace

double fourier_lebesgue_norm(const ScalarField& f, const NormSpec& spec) {
    return fl_norm_impl(f, spec);
}
double fourier_lebesgue_norm(const SpinorField& f, const NormSpec& spec) {
    return fl_norm_impl(f, spec);
}
double homogeneous_excluded_mass(const ScalarField& f, double r) {
    return excluded_mass_impl(f, r);
}
double homogeneous_excluded_mass(const SpinorField& f, double r) {
    return excluded_mass_impl(f, r);
}

double xsb_norm(const SpaceTimeField& u, const NormSpec& spec) {
    if (spec.branch == Branch::none)
        throw ParameterError("xsb_norm: requires branch plus, minus or wave");
    if (!(spec.r > 1.0)) throw ParameterError("xsb_norm: r must exceed 1");
    if (spec.homogeneous) throw ParameterError("xsb_norm: homogeneous variant not defined");
    if (u.grid().n_t < 2) throw ParameterError("xsb_norm: needs a space-time field");
    detail::require_rep(u.rep(), Rep::fourier, "xsb_norm");

    const GridSpec& g = u.grid();
    const double scale = coeff_scale_spacetime(g);
    const double rp = spec.r_dual();
    const double cell = g.dxi_cell() * g.dtau();

    std::vector<double> amps;
    amps.reserve(g.total_size());
    for (int it = 0; it < g.n_t; ++it) {
        const double tau = g.freq_t(it);
        for (std::size_t p = 0; p < g.spatial_size(); ++p) {
            const Vec2 xi = g.xi_at(p);
            double mod;
            switch (spec.branch) {
                case Branch::plus: mod = tau + xi.norm(); break;
                case Branch::minus: mod = tau - xi.norm(); break;
                default: mod = std::abs(tau) - xi.norm(); break;
            }
            const double w = std::pow(jbracket(xi), spec.s) * std::pow(jbracket(mod), spec.b);
            double a = 0.0;
            for (int c = 0; c < u.ncomp(); ++c) a += std::norm(u.at(it, p, c));
            amps.push_back(w * scale * std::sqrt(a));
        }
    }
    return lp_accumulate(amps, rp, cell);
}

double restriction_cutoff(double t, double t_sub, double window_T) {
    // Position on the circle [0, window_T).
    double x = std::fmod(t, window_T);
    if (x < 0.0) x += window_T;
    const double w = t_sub / 4.0;
    double chi = 0.0;
    if (x <= t_sub) chi = 1.0;
    if (x > t_sub && x < t_sub + w)
        chi = std::max(chi, 0.5 * (1.0 + std::cos(pi * (x - t_sub) / w)));
    if (x > window_T - w)
        chi = std::max(chi, 0.5 * (1.0 + std::cos(pi * (window_T - x) / w)));
    return chi;
}

double restriction_norm(const SpaceTimeField& u, double t_sub, const NormSpec& spec) {
    const GridSpec& g = u.grid();
    if (!(t_sub > 0.0 && t_sub <= g.window_T))
        throw ParameterError("restriction_norm: T_sub must lie in (0, window_T]");
    if (t_sub == g.window_T) return xsb_norm(u, spec);

    SpaceTimeField cut = u.rep() == Rep::physical ? u : dft_inverse(u);
    for (int it = 0; it < g.n_t; ++it) {
        const double chi = restriction_cutoff(g.t_at(it), t_sub, g.window_T);
        for (std::size_t p = 0; p < g.spatial_size(); ++p)
            for (int c = 0; c < cut.ncomp(); ++c) cut.at(it, p, c) *= chi;
    }
    return xsb_norm(dft_forward(std::move(cut)), spec);
}

EstimateReport continuity_check(const SpaceTimeField& u_plus, const SpaceTimeField& u_minus,
                                const NormSpec& spec) {
    if (!(spec.b > 1.0 / spec.r))
        throw ParameterError("continuity_check: requires b > 1/r");
    detail::check_compatible(u_plus, u_minus, "continuity_check");

    SpaceTimeField u = u_plus;
    u += u_minus;
    if (u.rep() == Rep::fourier) u = dft_inverse(std::move(u));

    NormSpec spatial{spec.s, spec.r, 0.0, Branch::none, false};
    const GridSpec& g = u.grid();

    EstimateReport rep;
    rep.operation = "continuity_check";
    rep.parameters = {{"s", spec.s}, {"r", spec.r}, {"b", spec.b}};
    rep.grid = grid_json(g);
    rep.count = std::size_t(g.n_t - 1);

    double worst = 0.0;
    auto slice_norm_diff = [&](int it) {
        if (u.ncomp() == 1) {
            ScalarField d = time_slice_scalar(u, it + 1) - time_slice_scalar(u, it);
            return fourier_lebesgue_norm(dft_forward(std::move(d)), spatial);
        }
        SpinorField d = time_slice_spinor(u, it + 1) - time_slice_spinor(u, it);
        return fourier_lebesgue_norm(dft_forward(std::move(d)), spatial);
    };
    for (int it = 0; it + 1 < g.n_t; ++it) {
        const double v = slice_norm_diff(it);
        rep.trend.emplace_back("t=" + std::to_string(g.t_at(it)), v);
        worst = std::max(worst, v);
    }
    rep.constants["max_increment"] = worst;
    rep.constants["sample_spacing"] = g.dt();
    rep.set_headline(worst, 1.0);
    return rep;
}

} // namespace dkg
