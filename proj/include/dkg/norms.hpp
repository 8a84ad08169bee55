// Fourier-Lebesgue norms H^{s,r} (hat) and the wave-adapted space-time norms
// X^r_{s,b,+-} / X^r_{s,b} on the discrete lattice. Stored DFT coefficients
// are rescaled to continuum normalization and lattice cell measures are
// included, so values converge to their continuum counterparts under
// refinement and the exact dilation law holds on re-gridded fields.
#pragma once

#include "dkg/field.hpp"
#include "dkg/report.hpp"

#include <limits>
#include <type_traits>
#include <vector>

namespace dkg {

enum class Branch : std::uint8_t { none, plus, minus, wave };

inline const char* branch_name(Branch b) {
    switch (b) {
        case Branch::none: return "none";
        case Branch::plus: return "plus";
        case Branch::minus: return "minus";
        case Branch::wave: return "wave";
    }
    return "?";
}

struct NormSpec {
    double s = 0.0;
    double r = 2.0;
    double b = 0.0;
    Branch branch = Branch::none;
    bool homogeneous = false;

    double r_dual() const { return r / (r - 1.0); }
};

namespace detail {
// Stable (sum a_i^p * cell)^{1/p} of nonnegative amplitudes, evaluated
// relative to the max so that large p (r near 1 gives r' ~ 100) neither
// overflows nor underflows. p = infinity gives the max.
double lp_accumulate(const std::vector<double>& amps, double p, double cell);
// Dual exponent, honoring p = 1 -> infinity.
inline double dual_exponent(double p) {
    if (!(p >= 1.0)) throw ParameterError("dual_exponent: p must be >= 1");
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    return p / (p - 1.0);
}
} // namespace detail

// Continuum rescaling of stored unitary-DFT coefficients: the Riemann-type
// approximation of the integral transform is (cell volume) * sum, which on
// stored values is this factor times the unitary coefficient.
inline double coeff_scale_spatial(const GridSpec& g) {
    return g.period_L * g.period_L / g.n_x;
}
inline double coeff_scale_spacetime(const GridSpec& g) {
    return g.window_T * g.period_L * g.period_L / (std::sqrt(double(g.n_t)) * g.n_x);
}

// || <xi>^s f^ ||_{l^{r'}} with lattice measure; |xi|^s when homogeneous
// (zero mode excluded). Spinor fields use the pointwise C^2 modulus.
double fourier_lebesgue_norm(const ScalarField& f, const NormSpec& spec);
double fourier_lebesgue_norm(const SpinorField& f, const NormSpec& spec);

// Fraction of (unweighted) l^{r'} coefficient mass carried by the zero mode;
// what the homogeneous norm silently drops.
double homogeneous_excluded_mass(const ScalarField& f, double r);
double homogeneous_excluded_mass(const SpinorField& f, double r);

// X^r_{s,b,+-} (branch plus/minus: weight <tau +- |xi|>^b) and X^r_{s,b}
// (branch wave: weight <|tau| - |xi|>^b). Accepts any r > 1 so that dual
// exponents r' can be evaluated directly.
double xsb_norm(const SpaceTimeField& u, const NormSpec& spec);

// Upper bound for the restriction norm X[0, T_sub]: evaluates xsb_norm after
// a smooth temporal cutoff (raised-cosine flanks of width T_sub/4). For
// T_sub == window_T the cutoff is identically 1.
double restriction_norm(const SpaceTimeField& u, double t_sub, const NormSpec& spec);

// The cutoff itself, for tests; t is taken modulo window_T.
double restriction_cutoff(double t, double t_sub, double window_T);

// Modulus-of-continuity table for u = u_plus + u_minus sampled at lattice
// times: H^{s,r} norms of adjacent-slice differences. Requires b > 1/r.
EstimateReport continuity_check(const SpaceTimeField& u_plus, const SpaceTimeField& u_minus,
                                const NormSpec& spec);

// The field x -> f(lambda x) realized on the torus of period L/lambda (and,
// for space-time fields, window T/lambda): sample values are reused verbatim,
// only the grid metadata changes, so the dilation is exact.
template <class Field>
Field dilate_domain(const Field& f, double lambda) {
    if (!(lambda > 0.0)) throw ParameterError("dilate_domain: lambda must be positive");
    GridSpec g = f.grid();
    g.period_L /= lambda;
    if (g.n_t > 1) g.window_T /= lambda;
    if constexpr (std::is_same_v<Field, SpaceTimeField>) {
        SpaceTimeField out(g, f.ncomp(), f.rep());
        out.values() = f.values();
        return out;
    } else {
        Field out(g, f.rep());
        out.values() = f.values();
        return out;
    }
}

} // namespace dkg
