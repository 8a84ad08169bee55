#include "dkg/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace dkg {

namespace {

using detail::dual_exponent;
using detail::lp_accumulate;

double sgn(Sign s) { return double(sign_value(s)); }

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    std::uint64_t h = seed ^ 0x9e3779b97f4a7c15ULL;
    for (std::uint64_t v : {a, b, c}) {
        h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 0xff51afd7ed558ccdULL;
    }
    return h;
}

// Deterministic max over per-sample evaluations; the reduction order is
// irrelevant for max, so worker scheduling cannot change the result.
template <class Fn>
double parallel_max(std::size_t count, Fn&& per_sample) {
    const unsigned workers =
        std::clamp(std::thread::hardware_concurrency(), 1u, 4u);
    if (workers == 1 || count < 4) {
        double best = 0.0;
        for (std::size_t i = 0; i < count; ++i) best = std::max(best, per_sample(i));
        return best;
    }
    std::atomic<std::size_t> next{0};
    std::vector<double> best(workers, 0.0);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1))
                best[w] = std::max(best[w], per_sample(i));
        });
    for (auto& t : pool) t.join();
    return *std::max_element(best.begin(), best.end());
}

const SignPair kAllSignPairs[4] = {{Sign::plus, Sign::plus},
                                   {Sign::plus, Sign::minus},
                                   {Sign::minus, Sign::plus},
                                   {Sign::minus, Sign::minus}};

std::string sign_pair_name(SignPair sp) {
    return std::string(sp.s1 == Sign::plus ? "+" : "-") + (sp.s2 == Sign::plus ? "+" : "-");
}

Branch branch_of(Sign s) { return s == Sign::plus ? Branch::plus : Branch::minus; }

} // namespace

// --- angle estimate evaluators -------------------------------------------------

double angle_lhs_14(Vec2 eta, Vec2 xi) { return angle(eta, eta - xi); }

double angle_rhs_14(Vec2 eta, Vec2 xi) {
    const double ae = eta.norm(), aw = (eta - xi).norm(), ax = xi.norm();
    const double gap = std::max(ax - std::abs(ae - aw), 0.0);
    return std::sqrt(ax * gap / (ae * aw));
}

double angle_lhs_15(Vec2 eta, Vec2 xi) { return angle(eta, xi - eta); }

double angle_rhs_15(Vec2 eta, Vec2 xi) {
    const double ae = eta.norm(), aw = (eta - xi).norm(), ax = xi.norm();
    const double gap = std::max(ae + aw - ax, 0.0);
    return std::sqrt((ae + aw) * gap / (ae * aw));
}

double angle_lhs_16(Vec2 eta, Vec2 xi, SignPair signs) {
    return angle(sgn(signs.s1) * eta, sgn(signs.s2) * (eta - xi));
}

double angle_rhs_16(Vec2 eta, Vec2 xi, double tau, double lambda, SignPair signs) {
    const double ae = eta.norm(), aw = (eta - xi).norm(), ax = xi.norm();
    const double num = jbracket(std::abs(tau) - ax) + jbracket(lambda + sgn(signs.s1) * ae) +
                       jbracket(lambda - tau + sgn(signs.s2) * aw);
    const double den = std::min(jbracket(xi), jbracket(eta - xi));
    return std::sqrt(num / den);
}

// --- angle equivalences (14), (15) ----------------------------------------------

EstimateReport verify_angle_equivalence(AngleEstimate which, const SampleConfig& cfg) {
    cfg.validate();
    Rng rng(cfg.seed);
    const bool is14 = which == AngleEstimate::eq14;

    EstimateReport rep;
    rep.operation = is14 ? "verify_angle_14" : "verify_angle_15";
    rep.parameters = {{"mag_lo", cfg.mag_lo}, {"mag_hi", cfg.mag_hi}};
    rep.seed = cfg.seed;
    rep.count = cfg.count;

    double mn = std::numeric_limits<double>::infinity(), mx = 0.0;
    const std::size_t half = cfg.count / 2;
    for (std::size_t i = 0; i < cfg.count; ++i) {
        const Vec2 eta = rng.vec2_log_uniform(cfg.mag_lo, cfg.mag_hi);
        const Vec2 xi = rng.vec2_log_uniform(cfg.mag_lo, cfg.mag_hi);
        if ((eta - xi).norm() == 0.0) {
            ++rep.skipped;
            continue;
        }
        const double lhs = is14 ? angle_lhs_14(eta, xi) : angle_lhs_15(eta, xi);
        const double rhs = is14 ? angle_rhs_14(eta, xi) : angle_rhs_15(eta, xi);
        if (lhs < 1e-9 && rhs < 1e-9) { // degenerate rays: both sides vanish
            ++rep.skipped;
            continue;
        }
        const double ratio = lhs / rhs;
        mn = std::min(mn, ratio);
        mx = std::max(mx, ratio);
        if (i + 1 == half) {
            rep.trend.emplace_back("min@half", mn);
            rep.trend.emplace_back("max@half", mx);
        }
    }
    rep.trend.emplace_back("min@full", mn);
    rep.trend.emplace_back("max@full", mx);
    rep.constants["min_ratio"] = mn;
    rep.constants["max_ratio"] = mx;
    if (rep.skipped * 100 > cfg.count)
        rep.warnings.push_back("more than 1% of samples were degenerate");
    rep.set_headline(mx, 1.0);
    return rep;
}

EstimateReport verify_angle_equivalences(const SampleConfig& cfg) {
    EstimateReport a = verify_angle_equivalence(AngleEstimate::eq14, cfg);
    EstimateReport b = verify_angle_equivalence(AngleEstimate::eq15, cfg);
    EstimateReport rep;
    rep.operation = "verify_angle_equivalences";
    rep.parameters = a.parameters;
    rep.seed = cfg.seed;
    rep.count = cfg.count;
    rep.skipped = a.skipped + b.skipped;
    for (const auto& [k, v] : a.constants) rep.constants["eq14_" + k] = v;
    for (const auto& [k, v] : b.constants) rep.constants["eq15_" + k] = v;
    for (const auto& [k, v] : a.trend) rep.trend.emplace_back("eq14_" + k, v);
    for (const auto& [k, v] : b.trend) rep.trend.emplace_back("eq15_" + k, v);
    rep.warnings.insert(rep.warnings.end(), a.warnings.begin(), a.warnings.end());
    rep.warnings.insert(rep.warnings.end(), b.warnings.begin(), b.warnings.end());
    rep.set_headline(std::max(a.lhs, b.lhs), 1.0);
    return rep;
}

EstimateReport verify_angle_bound_16(const SampleConfig& cfg) {
    cfg.validate();
    Rng rng(cfg.seed);

    EstimateReport rep;
    rep.operation = "verify_angle_16";
    rep.parameters = {{"mag_lo", cfg.mag_lo}, {"mag_hi", cfg.mag_hi}};
    rep.seed = cfg.seed;
    rep.count = cfg.count;

    double sup = 0.0;
    const std::size_t half = cfg.count / 2;
    for (std::size_t i = 0; i < cfg.count; ++i) {
        const Vec2 eta = rng.vec2_log_uniform(cfg.mag_lo, cfg.mag_hi);
        const Vec2 xi = rng.vec2_log_uniform(cfg.mag_lo, cfg.mag_hi);
        if ((eta - xi).norm() == 0.0) {
            ++rep.skipped;
            continue;
        }
        const bool near_cone = (i % 2) == 1;
        for (const SignPair sp : kAllSignPairs) {
            double lambda, tau;
            if (near_cone) {
                // Sit close to both characteristic surfaces, where the bound
                // is tightest.
                lambda = -sgn(sp.s1) * eta.norm() + rng.uniform(-2.0, 2.0);
                tau = lambda + sgn(sp.s2) * (eta - xi).norm() + rng.uniform(-2.0, 2.0);
            } else {
                lambda = (rng.uniform() < 0.5 ? -1.0 : 1.0) *
                         rng.log_uniform(cfg.mag_lo, cfg.mag_hi);
                tau = (rng.uniform() < 0.5 ? -1.0 : 1.0) *
                      rng.log_uniform(cfg.mag_lo, cfg.mag_hi);
            }
            const double lhs = angle_lhs_16(eta, xi, sp);
            const double rhs = angle_rhs_16(eta, xi, tau, lambda, sp);
            sup = std::max(sup, lhs / rhs);
        }
        if (i + 1 == half) rep.trend.emplace_back("sup@half", sup);
    }
    rep.trend.emplace_back("sup@full", sup);
    rep.constants["sup_ratio"] = sup;
    rep.set_headline(sup, 1.0);
    return rep;
}

// --- null-form convolution bound (13) --------------------------------------------

Nullform13Sides nullform_13_sides(const SpaceTimeField& psi, const SpaceTimeField& psi2,
                                  SignPair signs) {
    detail::check_compatible(psi, psi2, "nullform_13_sides");
    detail::require_rep(psi.rep(), Rep::fourier, "nullform_13_sides");
    const GridSpec& grid = psi.grid();
    const int nt = grid.n_t, nx = grid.n_x;
    const std::size_t nsp = grid.spatial_size();
    const double norm_factor = 1.0 / std::sqrt(double(grid.total_size()));

    Nullform13Sides out;
    out.lhs.assign(nt * nsp, cplx(0));
    out.rhs.assign(nt * nsp, 0.0);

    // Angle table over (eta, w = eta - xi) spatial mode pairs; pairs touching
    // the zero frequency get the safe maximal angle pi and are flagged.
    std::vector<double> angle_tab(nsp * nsp);
    for (std::size_t pe = 0; pe < nsp; ++pe) {
        const Vec2 eta = grid.xi_at(pe);
        for (std::size_t pw = 0; pw < nsp; ++pw) {
            const Vec2 w = grid.xi_at(pw);
            double a = pi;
            if (eta.norm() > 0.0 && w.norm() > 0.0)
                a = angle(sgn(signs.s1) * eta, sgn(signs.s2) * w);
            else
                out.zero_mode_touched = true;
            angle_tab[pe * nsp + pw] = a;
        }
    }

    const SpaceTimeField u1 = apply_beta(project_field(psi, signs.s1));
    const SpaceTimeField v2 = project_field(psi2, signs.s2);

    std::vector<double> mod1(std::size_t(nt) * nsp), mod2(std::size_t(nt) * nsp);
    for (int it = 0; it < nt; ++it)
        for (std::size_t p = 0; p < nsp; ++p) {
            mod1[it * nsp + p] =
                std::sqrt(std::norm(psi.at(it, p, 0)) + std::norm(psi.at(it, p, 1)));
            mod2[it * nsp + p] =
                std::sqrt(std::norm(psi2.at(it, p, 0)) + std::norm(psi2.at(it, p, 1)));
        }

    // Linear convolution on the lattice window: both spectra are compactly
    // supported, so out-of-window indices contribute nothing (no wrap).
    for (int pe1 = 0; pe1 < nx; ++pe1)
        for (int pe2 = 0; pe2 < nx; ++pe2) {
            const std::size_t pe = std::size_t(pe1) * nx + pe2;
            const int ke1 = GridSpec::signed_mode(pe1, nx);
            const int ke2 = GridSpec::signed_mode(pe2, nx);
            for (int px1 = 0; px1 < nx; ++px1)
                for (int px2 = 0; px2 < nx; ++px2) {
                    const std::size_t px = std::size_t(px1) * nx + px2;
                    const int iw1 = GridSpec::index_of_mode(ke1 - GridSpec::signed_mode(px1, nx), nx);
                    const int iw2 = GridSpec::index_of_mode(ke2 - GridSpec::signed_mode(px2, nx), nx);
                    if (iw1 < 0 || iw2 < 0) continue;
                    const std::size_t pw = std::size_t(iw1) * nx + iw2;
                    const double ang = angle_tab[pe * nsp + pw];
                    for (int itt = 0; itt < nt; ++itt) {
                        const int kt = GridSpec::signed_mode(itt, nt);
                        for (int itl = 0; itl < nt; ++itl) {
                            const int il =
                                GridSpec::index_of_mode(GridSpec::signed_mode(itl, nt) - kt, nt);
                            if (il < 0) continue;
                            out.lhs[std::size_t(itt) * nsp + px] +=
                                norm_factor *
                                (u1.at(itl, pe, 0) * std::conj(v2.at(il, pw, 0)) +
                                 u1.at(itl, pe, 1) * std::conj(v2.at(il, pw, 1)));
                            out.rhs[std::size_t(itt) * nsp + px] +=
                                norm_factor * ang * mod1[itl * nsp + pe] * mod2[il * nsp + pw];
                        }
                    }
                }
        }

    for (std::size_t i = 0; i < out.lhs.size(); ++i) {
        const double l = std::abs(out.lhs[i]);
        if (out.rhs[i] > 1e-12) {
            out.c_max = std::max(out.c_max, l / out.rhs[i]);
        } else if (l > 1e-10) {
            out.majorant_gap = true;
        }
    }
    return out;
}

EstimateReport verify_nullform_13(const GridSpec& grid, SignPair signs,
                                  const SampleConfig& cfg) {
    cfg.validate();
    grid.validate();
    if (grid.n_t < 2) throw ParameterError("verify_nullform_13: needs a space-time grid");
    if (grid.total_size() > 10000)
        throw ParameterError("verify_nullform_13: direct convolution cost grows with the "
                             "squared lattice size; use a smaller grid (n_t*n_x^2 <= 10000)");

    EstimateReport rep;
    rep.operation = "verify_nullform_13";
    rep.parameters = {{"signs", sign_pair_name(signs)}};
    rep.seed = cfg.seed;
    rep.count = cfg.count;
    rep.grid = grid_json(grid);

    double c_max = 0.0;
    bool zero_touched = false, gap = false;
    Rng rng(cfg.seed);
    for (std::size_t sample = 0; sample < cfg.count; ++sample) {
        SpaceTimeField psi(grid, 2, Rep::fourier), psi2(grid, 2, Rep::fourier);
        for (auto& v : psi.values()) v = rng.gaussian_cplx();
        for (auto& v : psi2.values()) v = rng.gaussian_cplx();
        const Nullform13Sides sides = nullform_13_sides(psi, psi2, signs);
        c_max = std::max(c_max, sides.c_max);
        zero_touched = zero_touched || sides.zero_mode_touched;
        gap = gap || sides.majorant_gap;
        rep.trend.emplace_back("sample=" + std::to_string(sample), c_max);
    }
    if (zero_touched)
        rep.warnings.push_back("zero-frequency pairs contribute; their angle weight is pi");
    if (gap) rep.warnings.push_back("pointwise bound violated where the majorant vanishes");

    rep.constants["C_pointwise"] = c_max;
    rep.set_headline(c_max, 1.0);
    return rep;
}

// --- random X-space fields and padded products -----------------------------------

namespace {

template <class FieldT>
void shape_xsb(FieldT& f, const NormSpec& spec, Rng& rng) {
    const GridSpec& g = f.grid();
    for (int it = 0; it < g.n_t; ++it) {
        const double tau = g.freq_t(it);
        for (std::size_t p = 0; p < g.spatial_size(); ++p) {
            const Vec2 xi = g.xi_at(p);
            double mod;
            switch (spec.branch) {
                case Branch::plus: mod = tau + xi.norm(); break;
                case Branch::minus: mod = tau - xi.norm(); break;
                case Branch::wave: mod = std::abs(tau) - xi.norm(); break;
                default: throw ParameterError("shape_xsb: branch required");
            }
            const double shape =
                std::pow(jbracket(xi), -spec.s) * std::pow(jbracket(mod), -spec.b);
            for (int c = 0; c < f.ncomp(); ++c) f.at(it, p, c) = shape * rng.gaussian_cplx();
        }
    }
    const double n = xsb_norm(f, spec);
    if (n > 0.0) f *= cplx(1.0 / n);
}

} // namespace

SpaceTimeField random_xsb_spinor(const GridSpec& g, const NormSpec& spec, Rng& rng) {
    SpaceTimeField f(g, 2, Rep::fourier);
    shape_xsb(f, spec, rng);
    return f;
}

SpaceTimeField random_xsb_scalar(const GridSpec& g, const NormSpec& spec, Rng& rng) {
    SpaceTimeField f(g, 1, Rep::fourier);
    shape_xsb(f, spec, rng);
    return f;
}

SpaceTimeField nullform_product_padded(const SpaceTimeField& a, const SpaceTimeField& b,
                                       SignPair signs) {
    const SpaceTimeField u1 =
        dft_inverse(pad_spectrum(apply_beta(project_field(a, signs.s1))));
    const SpaceTimeField v2 = dft_inverse(pad_spectrum(project_field(b, signs.s2)));
    return dft_forward(spinor_inner_product(u1, v2));
}

SpaceTimeField scalar_product_padded(const SpaceTimeField& a, const SpaceTimeField& b) {
    const SpaceTimeField up = dft_inverse(pad_spectrum(a));
    const SpaceTimeField vp = dft_inverse(pad_spectrum(b));
    return dft_forward(pointwise_product(up, vp));
}

// --- bilinear estimates (11), (12') ------------------------------------------------

namespace {

// Prop 2.2 hypothesis block for r near 1.
std::string prop22_violation(const BilinearParams& p) {
    if (!(p.l >= p.s)) return "l >= s";
    if (!(p.s >= 5.0 / (8.0 * p.r))) return "s >= 5/(8r)";
    if (!(0.5 + 3.0 / (4.0 * p.r) < p.l)) return "1/2 + 3/(4r) < l";
    if (!(p.l <= 1.0 + 1.0 / (4.0 * p.r))) return "l <= 1 + 1/(4r)";
    return {};
}

bool r2_region_contains_d(double s, double l) {
    if (!(s > -0.2)) return false;
    const double lower = std::max({0.25 - s / 2, 0.25 + s / 2, s});
    const double upper = std::min({0.75 + 2 * s, 0.75 + 1.5 * s, 1.0 + s});
    return lower < l && l < upper;
}

// Domination by a Theorem-pair (s0 + delta, l0 + delta): raising s or
// lowering l only helps.
bool theorem_pair_dominates(const BilinearParams& p) {
    for (auto variant : {RegionVariant::minimal_s, RegionVariant::minimal_l}) {
        const double base_s =
            variant == RegionVariant::minimal_s ? 33.0 / (20.0 * p.r) - 41.0 / 40.0
                                                : 5.0 / (4.0 * p.r) - 5.0 / 8.0;
        const double base_l = variant == RegionVariant::minimal_s
                                  ? 9.0 / (5.0 * p.r) - 11.0 / 20.0
                                  : 2.0 / p.r - 0.75;
        const double delta_needed = p.l - base_l;
        if (delta_needed > 0.0 && base_s + delta_needed <= p.s) return true;
    }
    return false;
}

} // namespace

std::string bilinear_hypothesis_violation(const BilinearParams& p) {
    if (!(p.r > 1.0 && p.r <= 2.0)) return "1 < r <= 2";
    if (!(p.b > 1.0 / p.r)) return "b > 1/r";
    if (p.r == 2.0)
        return r2_region_contains_d(p.s, p.l)
                   ? std::string{}
                   : "(s, l) inside the r=2 admissible region";
    if (prop22_violation(p).empty() || theorem_pair_dominates(p)) return {};
    return prop22_violation(p);
}

namespace {

EstimateReport bilinear_common(const char* op, bool is12, const BilinearParams& p,
                               const std::vector<int>& resolutions, const SampleConfig& cfg) {
    cfg.validate();
    const std::string violation = bilinear_hypothesis_violation(p);
    if (!violation.empty() && !p.override_hypotheses)
        throw ParameterError(std::string(op) + ": hypothesis violated, requires " + violation);

    EstimateReport rep;
    rep.operation = op;
    rep.parameters = {{"s", p.s}, {"l", p.l},
                      {"r", p.r}, {"b", p.b},
                      {"override", p.override_hypotheses}};
    rep.seed = cfg.seed;
    rep.count = cfg.count;
    rep.epsilon = p.epsilon;
    if (!violation.empty())
        rep.warnings.push_back("hypotheses overridden: " + violation);

    const double rp = p.r / (p.r - 1.0);
    double overall = 0.0;
    std::vector<double> per_resolution;
    for (int n : resolutions) {
        const GridSpec g{n, two_pi, n, two_pi};
        g.validate();
        double res_max = 0.0;
        for (int pair_idx = 0; pair_idx < 4; ++pair_idx) {
            const SignPair sp = kAllSignPairs[pair_idx];
            const NormSpec spec1{p.s, p.r, p.b, branch_of(sp.s1), false};
            const NormSpec spec2 = is12
                                       ? NormSpec{-p.s, rp, 1.0 - p.b - p.epsilon,
                                                  branch_of(sp.s2), false}
                                       : NormSpec{p.s, p.r, p.b, branch_of(sp.s2), false};
            const NormSpec out = is12 ? NormSpec{-p.l, rp, -p.b, Branch::wave, false}
                                      : NormSpec{p.l - 1.0, p.r, p.b - 1.0 + p.epsilon,
                                                 Branch::wave, false};
            const std::size_t samples = std::max<std::size_t>(1, cfg.count / 4);
            const double pair_max = parallel_max(samples, [&](std::size_t i) {
                Rng rng(mix_seed(cfg.seed, std::uint64_t(n), std::uint64_t(pair_idx), i));
                const SpaceTimeField psi = random_xsb_spinor(g, spec1, rng);
                const SpaceTimeField psi2 = random_xsb_spinor(g, spec2, rng);
                const SpaceTimeField q = nullform_product_padded(psi, psi2, sp);
                return xsb_norm(q, out);
            });
            rep.constants["max_n" + std::to_string(n) + "_" + sign_pair_name(sp)] = pair_max;
            res_max = std::max(res_max, pair_max);
        }
        rep.trend.emplace_back("n=" + std::to_string(n), res_max);
        per_resolution.push_back(res_max);
        overall = std::max(overall, res_max);
    }
    if (per_resolution.size() >= 2 && per_resolution.front() > 0.0)
        rep.constants["growth"] = per_resolution.back() / per_resolution.front();
    rep.constants["max_ratio"] = overall;
    rep.set_headline(overall, 1.0);
    return rep;
}

} // namespace

EstimateReport bilinear_constant_11(const BilinearParams& p, const std::vector<int>& resolutions,
                                    const SampleConfig& cfg) {
    return bilinear_common("bilinear_11", false, p, resolutions, cfg);
}

EstimateReport bilinear_constant_12(const BilinearParams& p, const std::vector<int>& resolutions,
                                    const SampleConfig& cfg) {
    return bilinear_common("bilinear_12", true, p, resolutions, cfg);
}

// --- product estimates -----------------------------------------------------------

namespace {

void check_prop23(std::vector<std::string>& out, const std::string& tag, double r,
                  double alpha1, double alpha2, double b1, double b2) {
    const double thr = 3.0 / (2.0 * r);
    if (!(r >= 1.0 && r <= 2.0)) out.push_back(tag + "1 <= r <= 2");
    if (!(alpha1 >= 0.0 && alpha2 >= 0.0)) out.push_back(tag + "alpha1, alpha2 >= 0");
    if (!(alpha1 + alpha2 > thr)) out.push_back(tag + "alpha1 + alpha2 > 3/(2r)");
    if (!(b1 + b2 > thr)) out.push_back(tag + "b1 + b2 > 3/(2r)");
    if (!(b1 > 0.5 / r && b2 > 0.5 / r)) out.push_back(tag + "b1, b2 > 1/(2r)");
}

void check_prop14(std::vector<std::string>& out, const std::string& tag, double r, double gamma,
                  double alpha0, double alpha1, double alpha2, double b) {
    if (!(r > 1.0 && r <= 2.0)) out.push_back(tag + "1 < r <= 2");
    if (!(alpha0 > 1.0 / r - gamma)) out.push_back(tag + "alpha0 > 1/r - gamma");
    if (!(alpha1 + alpha2 > 2.0 / r)) out.push_back(tag + "alpha1 + alpha2 > 2/r");
    if (!(alpha0 >= 0.0)) out.push_back(tag + "alpha0 >= 0");
    if (!(alpha0 <= std::min(alpha1, alpha2))) out.push_back(tag + "alpha0 <= min(alpha1, alpha2)");
    if (std::abs(std::max(alpha1, alpha2) - 1.5 / r) < 1e-12)
        out.push_back(tag + "max(alpha1, alpha2) != 3/(2r)");
    if (!(b >= gamma)) out.push_back(tag + "b >= gamma");
    const double excess = alpha1 + alpha2 - alpha0;
    const bool strong = excess > gamma + 1.0 / r && gamma >= 0.5 / r;
    const bool weak = excess >= gamma + 1.0 / r && gamma > 0.5 / r;
    if (!(strong || weak))
        out.push_back(tag +
                      "alpha1 + alpha2 - alpha0 > gamma + 1/r with gamma >= 1/(2r) "
                      "(or >= with strict gamma > 1/(2r))");
    if (!(gamma >= std::max(alpha1 - 1.0 / r, alpha2 - 1.0 / r)))
        out.push_back(tag + "gamma >= max(alpha1 - 1/r, alpha2 - 1/r)");
    if (!(b > 1.0 / r)) out.push_back(tag + "b > 1/r");
}

} // namespace

std::vector<std::string> product_hypothesis_violations(const ProductParams& p) {
    std::vector<std::string> out;
    switch (p.which) {
        case ProductWhich::prop_2_3:
            check_prop23(out, "", p.r, p.alpha1, p.alpha2, p.b1, p.b2);
            break;
        case ProductWhich::prop_1_4:
            check_prop14(out, "", p.r, p.gamma, p.alpha0, p.alpha1, p.alpha2, p.b);
            break;
        case ProductWhich::reductions_1_to_6: {
            if (!(p.r > 1.0 && p.r <= 2.0)) out.push_back("1 < r <= 2");
            if (!(p.b > 1.0 / p.r)) out.push_back("b > 1/r");
            if (!(p.l > 1.0 / p.r)) out.push_back("(1')-(4') l > 1/r");
            // (6'): Prop 1.4 at the instantiation from the proof, with the
            // stated harmless caps on s and l.
            const double s_eff = std::min(p.s, 2.0 / p.r - 1.0);
            const double l_eff = std::min(p.l, 2.5 / p.r - 1.0);
            const double gamma6 = p.b - 1.0 + 0.5 / p.r + p.epsilon;
            check_prop14(out, "(6') ", p.r, gamma6, s_eff, s_eff + 0.5 / p.r, l_eff, p.b);
            // (5a): gamma = 1 with a raised comparison index, plus Prop 2.3.
            check_prop14(out, "(5a) ", p.r, 1.0, 0.0, 0.5 / p.r, 1.0 + 0.5 / p.r + p.epsilon,
                         std::max(p.b, 1.0));
            check_prop23(out, "(5a) ", p.r, 0.5 / p.r, 1.0 / p.r + p.epsilon, p.b, p.b);
            // (5b): same pattern anchored at s.
            check_prop14(out, "(5b) ", p.r, 1.0, 0.0, s_eff, 1.0 + 1.0 / p.r - s_eff,
                         std::max(p.b, 1.0));
            check_prop23(out, "(5b) ", p.r, s_eff, 1.5 / p.r - s_eff + p.epsilon, p.b, p.b);
            break;
        }
    }
    return out;
}

EstimateReport product_estimate_check(const ProductParams& p, const GridSpec& grid,
                                      const SampleConfig& cfg) {
    cfg.validate();
    const auto violations = product_hypothesis_violations(p);
    if (!violations.empty() && !p.override_hypotheses)
        throw ParameterError("product_estimate_check: hypothesis violated, requires " +
                             violations.front());

    EstimateReport rep;
    rep.operation = "product_estimate_check";
    rep.parameters = {{"r", p.r}, {"which",
                                   p.which == ProductWhich::prop_2_3   ? "prop_2_3"
                                   : p.which == ProductWhich::prop_1_4 ? "prop_1_4"
                                                                       : "reductions_1_to_6"}};
    rep.seed = cfg.seed;
    rep.count = cfg.count;
    rep.epsilon = p.epsilon;
    rep.grid = grid_json(grid);
    for (const auto& v : violations) rep.warnings.push_back("overridden: " + v);

    struct Case {
        std::string name;
        NormSpec u, w, out;
    };
    std::vector<Case> cases;
    const double r = p.r, b = p.b, eps = p.epsilon, s = p.s, l = p.l;
    const double h = 0.5 / r; // 1/(2r)
    switch (p.which) {
        case ProductWhich::prop_2_3:
            cases.push_back({"prop_2_3",
                             {p.alpha1, r, p.b1, Branch::wave, false},
                             {p.alpha2, r, p.b2, Branch::wave, false},
                             {0.0, r, 0.0, Branch::wave, false}});
            break;
        case ProductWhich::prop_1_4:
            cases.push_back({"prop_1_4",
                             {p.alpha1, r, p.b, Branch::wave, false},
                             {p.alpha2, r, p.b, Branch::wave, false},
                             {p.alpha0, r, p.gamma, Branch::wave, false}});
            break;
        case ProductWhich::reductions_1_to_6:
            cases.push_back({"1'",
                             {s, r, b, Branch::wave, false},
                             {l, r, b - h, Branch::wave, false},
                             {s - h, r, b - 1 + eps, Branch::wave, false}});
            cases.push_back({"2'",
                             {s + h, r, b, Branch::wave, false},
                             {l, r, b - h, Branch::wave, false},
                             {s, r, b - 1 + eps, Branch::wave, false}});
            cases.push_back({"3'",
                             {s, r, b - h, Branch::wave, false},
                             {l, r, b, Branch::wave, false},
                             {s - h, r, b - 1 + eps, Branch::wave, false}});
            cases.push_back({"4'",
                             {s + h, r, b - h, Branch::wave, false},
                             {l, r, b, Branch::wave, false},
                             {s, r, b - 1 + eps, Branch::wave, false}});
            cases.push_back({"5'",
                             {s, r, b, Branch::wave, false},
                             {l, r, b, Branch::wave, false},
                             {s - h, r, b - 1 + h + eps, Branch::wave, false}});
            cases.push_back({"6'",
                             {s + h, r, b, Branch::wave, false},
                             {l, r, b, Branch::wave, false},
                             {s, r, b - 1 + h + eps, Branch::wave, false}});
            break;
    }

    double overall = 0.0;
    for (const auto& c : cases) {
        const double best = parallel_max(cfg.count, [&](std::size_t i) {
            Rng rng(mix_seed(cfg.seed, 0x70, std::hash<std::string>{}(c.name), i));
            const SpaceTimeField u = random_xsb_scalar(grid, c.u, rng);
            const SpaceTimeField w = random_xsb_scalar(grid, c.w, rng);
            return xsb_norm(scalar_product_padded(u, w), c.out);
        });
        rep.constants[c.name] = best;
        rep.trend.emplace_back(c.name, best);
        overall = std::max(overall, best);
    }
    rep.constants["max_ratio"] = overall;
    rep.set_headline(overall, 1.0);
    return rep;
}

// --- dilation exponents -------------------------------------------------------------

EstimateReport scaling_check(double s, double r, ScalingFieldKind kind, const GridSpec& grid,
                             const std::vector<int>& lambdas, std::uint64_t seed,
                             double zero_mode_threshold) {
    grid.validate();
    if (lambdas.empty()) throw ParameterError("scaling_check: needs at least one lambda");

    EstimateReport rep;
    rep.operation = "scaling_check";
    rep.parameters = {{"s", s},
                      {"r", r},
                      {"kind", kind == ScalingFieldKind::spinor ? "spinor" : "kg_field"}};
    rep.seed = seed;
    rep.grid = grid_json(grid);

    const double field_power = kind == ScalingFieldKind::spinor ? 1.5 : 1.0;
    const double expected = field_power + s - 2.0 / r;

    // Smooth concentrated data; a modulation keeps the spinor genuinely complex.
    Rng rng(seed);
    const double cx = grid.period_L * (0.4 + 0.2 * rng.uniform());
    const double cy = grid.period_L * (0.4 + 0.2 * rng.uniform());
    const double width = grid.period_L / 12.0;
    auto bump = [&](Vec2 x, double shift) {
        const double dx = x.x - cx - shift, dy = x.y - cy;
        return std::exp(-(dx * dx + dy * dy) / (2.0 * width * width));
    };

    // Modulations push the spectrum away from the excluded zero mode.
    SpinorField spinor(grid, Rep::physical);
    ScalarField scalar(grid, Rep::physical);
    const double kmod = two_pi / grid.period_L;
    for (std::size_t pidx = 0; pidx < grid.spatial_size(); ++pidx) {
        const Vec2 x = grid.x_at(pidx);
        if (kind == ScalingFieldKind::spinor) {
            spinor.at(pidx, 0) =
                bump(x, 0.0) * cplx(std::cos(kmod * 5 * x.y), std::sin(kmod * 5 * x.y));
            spinor.at(pidx, 1) =
                0.6 * bump(x, width) * cplx(std::cos(kmod * 5 * x.x), std::sin(kmod * 5 * x.x));
        } else {
            scalar.at(pidx) = bump(x, 0.0) * std::cos(kmod * 5 * x.x);
        }
    }

    const NormSpec hom{s, r, 0.0, Branch::none, true};
    double base, zero_mass;
    SpinorField spinor_hat;
    ScalarField scalar_hat;
    if (kind == ScalingFieldKind::spinor) {
        spinor_hat = dft_forward(spinor);
        zero_mass = homogeneous_excluded_mass(spinor_hat, r);
        base = fourier_lebesgue_norm(spinor_hat, hom);
    } else {
        scalar_hat = dft_forward(scalar);
        zero_mass = homogeneous_excluded_mass(scalar_hat, r);
        base = fourier_lebesgue_norm(scalar_hat, hom);
    }
    rep.constants["zero_mode_mass"] = zero_mass;
    if (zero_mass > zero_mode_threshold)
        throw ParameterError("scaling_check: zero-mode mass " + std::to_string(zero_mass) +
                             " exceeds threshold " + std::to_string(zero_mode_threshold));

    std::vector<std::pair<double, double>> pts{{0.0, std::log(base)}};
    rep.trend.emplace_back("lambda=1", base);
    for (int lam : lambdas) {
        if (lam < 2) {
            rep.warnings.push_back("lambda < 2 excluded from the fit");
            continue;
        }
        double val;
        const double amp = std::pow(double(lam), field_power);
        if (kind == ScalingFieldKind::spinor) {
            SpinorField f = dilate_domain(spinor_hat, double(lam));
            f *= cplx(amp);
            val = fourier_lebesgue_norm(f, hom);
        } else {
            ScalarField f = dilate_domain(scalar_hat, double(lam));
            f *= cplx(amp);
            val = fourier_lebesgue_norm(f, hom);
        }
        rep.trend.emplace_back("lambda=" + std::to_string(lam), val);
        pts.emplace_back(std::log(double(lam)), std::log(val));
    }
    if (pts.size() < 2) throw ParameterError("scaling_check: not enough lambda points");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double npts = double(pts.size());
    const double slope = (npts * sxy - sx * sy) / (npts * sxx - sx * sx);

    rep.count = pts.size();
    rep.constants["exponent_measured"] = slope;
    rep.constants["exponent_expected"] = expected;
    rep.set_headline(slope, expected);
    return rep;
}

// --- free waves and the transfer comparison -------------------------------------------

double mixed_fourier_norm(const SpaceTimeField& u, double p, double q) {
    detail::require_rep(u.rep(), Rep::fourier, "mixed_fourier_norm");
    const GridSpec& g = u.grid();
    const double scale = coeff_scale_spacetime(g);
    const double pd = dual_exponent(p), qd = dual_exponent(q);

    std::vector<double> outer;
    std::vector<double> inner(g.spatial_size());
    outer.reserve(g.n_t);
    for (int it = 0; it < g.n_t; ++it) {
        for (std::size_t pp = 0; pp < g.spatial_size(); ++pp) {
            double a = 0.0;
            for (int c = 0; c < u.ncomp(); ++c) a += std::norm(u.at(it, pp, c));
            inner[pp] = scale * std::sqrt(a);
        }
        outer.push_back(lp_accumulate(inner, qd, g.dxi_cell()));
    }
    return lp_accumulate(outer, pd, g.dtau());
}

EstimateReport free_wave_mode(const ScalarField& f1, const ScalarField& f2, int n_t,
                              double window_T, const FreeWaveParams& params,
                              const SampleConfig& cfg) {
    cfg.validate();
    detail::require_rep(f1.rep(), Rep::fourier, "free_wave_mode");
    detail::require_rep(f2.rep(), Rep::fourier, "free_wave_mode");
    if (!f1.grid().same_spatial(f2.grid()))
        throw GridError("free_wave_mode: data grids differ");

    GridSpec st = f1.grid();
    st.n_t = n_t;
    st.window_T = window_T;
    st.validate();

    EstimateReport rep;
    rep.operation = "free_wave_mode";
    rep.parameters = {{"signs", sign_pair_name(params.signs)},
                      {"p", params.p},
                      {"q", params.q},
                      {"r", params.r},
                      {"s1", params.s1},
                      {"s2", params.s2}};
    rep.seed = cfg.seed;
    rep.count = cfg.count;
    rep.epsilon = params.b_epsilon;
    rep.grid = grid_json(st);

    // Free waves u_i(t) = e^{sign_i i t D} f_i, assembled slice by slice.
    auto build_wave = [&](const ScalarField& f, Sign sign) {
        SpaceTimeField u(st, 1, Rep::physical);
        for (int it = 0; it < st.n_t; ++it) {
            const double t = st.t_at(it);
            ScalarField slice = f; // fourier rep
            apply_multiplier_inplace(slice, [&](Vec2 xi) {
                const double ph = sgn(sign) * t * xi.norm();
                return cplx(std::cos(ph), std::sin(ph));
            });
            set_time_slice(u, it, dft_inverse(std::move(slice)));
        }
        return dft_forward(std::move(u));
    };

    const SpaceTimeField w1 = build_wave(f1, params.signs.s1);
    const SpaceTimeField w2 = build_wave(f2, params.signs.s2);
    const double lhs_free = mixed_fourier_norm(scalar_product_padded(w1, w2), params.p, params.q);

    const NormSpec data1{params.s1, params.r, 0.0, Branch::none, false};
    const NormSpec data2{params.s2, params.r, 0.0, Branch::none, false};
    const double rhs_free = fourier_lebesgue_norm(f1, data1) * fourier_lebesgue_norm(f2, data2);
    const double ratio_free = rhs_free > 0.0 ? lhs_free / rhs_free : 0.0;

    // Generic X-space fields at b = 1/r + eps. The wave e^{+itD} concentrates
    // on tau = +|xi| where <tau - |xi|> is smallest, i.e. the minus branch.
    const double b = 1.0 / params.r + params.b_epsilon;
    auto xbranch = [](Sign s) { return s == Sign::plus ? Branch::minus : Branch::plus; };
    const NormSpec x1{params.s1, params.r, b, xbranch(params.signs.s1), false};
    const NormSpec x2{params.s2, params.r, b, xbranch(params.signs.s2), false};
    const double ratio_x = parallel_max(cfg.count, [&](std::size_t i) {
        Rng rng(mix_seed(cfg.seed, 0xF3EE, 0, i));
        const SpaceTimeField u = random_xsb_scalar(st, x1, rng);
        const SpaceTimeField v = random_xsb_scalar(st, x2, rng);
        return mixed_fourier_norm(scalar_product_padded(u, v), params.p, params.q);
    });

    rep.constants["ratio_free_wave"] = ratio_free;
    rep.constants["ratio_x_fields"] = ratio_x;
    rep.set_headline(ratio_free, ratio_x);
    return rep;
}

} // namespace dkg
