// Empirical verification harness: angle equivalences, the null-form bound,
// bilinear and product estimates on random lattice fields, cone delta
// integrals with exponent regression, dilation exponents, and free-wave
// transfer comparisons.
#pragma once

#include "dkg/dirac.hpp"
#include "dkg/field.hpp"
#include "dkg/norms.hpp"
#include "dkg/region.hpp"
#include "dkg/report.hpp"
#include "dkg/rng.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dkg {

struct SampleConfig {
    std::size_t count = 100000;
    double mag_lo = 0.05; // magnitude range for |eta|, |xi|, |tau|, |lambda|
    double mag_hi = 50.0;
    std::uint64_t seed = 1;

    void validate() const {
        if (count < 1) throw ParameterError("SampleConfig: count must be >= 1");
        if (!(mag_lo > 0.0 && mag_hi > mag_lo))
            throw ParameterError("SampleConfig: magnitude range must be positive and ordered");
    }
};

// --- angle estimates ---------------------------------------------------------

enum class AngleEstimate { eq14, eq15 };

// Two-sided ratio range of one angle equivalence over random frequencies.
EstimateReport verify_angle_equivalence(AngleEstimate which, const SampleConfig& cfg);
// Both equivalences in one report (constants prefixed eq14_/eq15_).
EstimateReport verify_angle_equivalences(const SampleConfig& cfg);
// One-sided bound relating the signed angle to modulation weights.
EstimateReport verify_angle_bound_16(const SampleConfig& cfg);

// Scalar evaluators shared with tests.
double angle_lhs_14(Vec2 eta, Vec2 xi);
double angle_rhs_14(Vec2 eta, Vec2 xi);
double angle_lhs_15(Vec2 eta, Vec2 xi);
double angle_rhs_15(Vec2 eta, Vec2 xi);
double angle_lhs_16(Vec2 eta, Vec2 xi, SignPair signs);
double angle_rhs_16(Vec2 eta, Vec2 xi, double tau, double lambda, SignPair signs);

// --- null-form convolution bound (pointwise) ---------------------------------

// Direct-convolution check of |F<beta Pi psi, Pi psi'>| against the
// angle-weighted convolution, pointwise on the (tau, xi) lattice.
EstimateReport verify_nullform_13(const GridSpec& grid, SignPair signs, const SampleConfig& cfg);

// The two sides of that pointwise bound for given spinor fields, evaluated by
// direct linear convolution on the (tau, xi) window (flat index it*n_x^2 + p).
struct Nullform13Sides {
    std::vector<cplx> lhs;
    std::vector<double> rhs;
    double c_max = 0.0;          // max lhs/rhs where rhs > 0
    bool zero_mode_touched = false;
    bool majorant_gap = false;   // lhs nonzero where rhs vanishes (never expected)
};
Nullform13Sides nullform_13_sides(const SpaceTimeField& psi, const SpaceTimeField& psi2,
                                  SignPair signs);

// --- bilinear null-form estimates over X spaces --------------------------------

struct BilinearParams {
    double s = 0.0;
    double l = 0.25;
    double r = 2.0;
    double b = 0.51;
    double epsilon = 0.01;
    bool override_hypotheses = false;
};

// Empty if (s, l, r, b) satisfies a known sufficient hypothesis set
// (the r = 2 region, the r = 1+ proposition, or an admissible-pair
// domination); otherwise the first violated constraint, named.
std::string bilinear_hypothesis_violation(const BilinearParams& p);

EstimateReport bilinear_constant_11(const BilinearParams& p, const std::vector<int>& resolutions,
                                    const SampleConfig& cfg);
EstimateReport bilinear_constant_12(const BilinearParams& p, const std::vector<int>& resolutions,
                                    const SampleConfig& cfg);

// --- product estimates in X^r_{s,b} (wave weight) ------------------------------

enum class ProductWhich { prop_2_3, prop_1_4, reductions_1_to_6 };

struct ProductParams {
    ProductWhich which = ProductWhich::prop_2_3;
    double r = 2.0;
    // prop_2_3 inputs.
    double alpha1 = 0.0, alpha2 = 0.0, b1 = 0.0, b2 = 0.0;
    // prop_1_4 inputs (alpha1, alpha2 shared above).
    double gamma = 0.0, alpha0 = 0.0, b = 0.0;
    // reductions_1_to_6 inputs.
    double s = 0.0, l = 0.0;
    double epsilon = 0.01;
    bool override_hypotheses = false;
};

// All violated hypothesis inequalities of the selected proposition, named.
std::vector<std::string> product_hypothesis_violations(const ProductParams& p);

EstimateReport product_estimate_check(const ProductParams& p, const GridSpec& grid,
                                      const SampleConfig& cfg);

// --- cone delta integrals -------------------------------------------------------

enum class ConeBranch { difference, sum }; // delta(tau - |eta| + |xi-eta|) / (tau - |eta| - |xi-eta|)
enum class ConeRegion { all, inner, outer }; // |eta| + |xi-eta| <= / >= 2|xi|

struct ConeIntegralSpec {
    double tau = 0.0;
    Vec2 xi;
    double a1 = 0.0; // weight |eta|^{-a1}
    double a2 = 0.0; // weight |eta-xi|^{-a2}
    ConeBranch branch = ConeBranch::difference;
    ConeRegion region = ConeRegion::all;
};

// True when the conic section is non-empty (difference: |tau| < |xi|,
// sum: tau > |xi|).
bool cone_branch_feasible(const ConeIntegralSpec& spec);

// The delta-restricted line integral; 0 for an empty conic.
double cone_delta_integral(const ConeIntegralSpec& spec);

// Fits log(integral) ~ A log|xi| + B log||tau|-|xi|| over a log-spaced sample
// sweep and reports (A, B) next to the expected pair.
struct ConeFitConfig {
    double a_lo = 0.5, a_hi = 32.0; // |xi| sweep
    int a_count = 7;
    double rho_lo = 1e-5, rho_hi = 1e-3; // ||tau|-|xi|| / |xi| sweep
    int rho_count = 7;
};
EstimateReport cone_exponent_fit(ConeBranch branch, ConeRegion region, double a1, double a2,
                                 const ConeFitConfig& fit = {});

// --- scaling and transfer --------------------------------------------------------

enum class ScalingFieldKind { spinor, kg_field };

// Measures the homogeneous-norm dilation exponent on Gaussian data via exact
// lattice re-gridding and compares with 3/2 + s - 2/r (spinor) or
// 1 + s - 2/r (scalar).
EstimateReport scaling_check(double s, double r, ScalingFieldKind kind, const GridSpec& grid,
                             const std::vector<int>& lambdas, std::uint64_t seed,
                             double zero_mode_threshold = 0.25);

struct FreeWaveParams {
    SignPair signs;
    double p = 2.0, q = 2.0; // product measured in L^p_t(L^q_x) (hat)
    double r = 2.0;
    double s1 = 0.0, s2 = 0.0;
    double b_epsilon = 0.01; // b = 1/r + eps for the X-field comparison
};

// Free waves e^{+-itD} f_i versus generic X-space fields: the ratio of the
// product norm to the hypotheses' norms, reported side by side.
EstimateReport free_wave_mode(const ScalarField& f1, const ScalarField& f2, int n_t,
                              double window_T, const FreeWaveParams& params,
                              const SampleConfig& cfg);

// Mixed norm ||u||_{L^p_t(L^q_x)} (hat): l^{q'} over xi per tau, then l^{p'}
// over tau, continuum-normalized like xsb_norm.
double mixed_fourier_norm(const SpaceTimeField& u, double p, double q);

// --- shared sampling helpers (also used by tests) --------------------------------

// Unit-norm random field in X^r_{s,b,branch}: complex-Gaussian coefficients
// shaped by the inverse norm weight, then normalized.
SpaceTimeField random_xsb_spinor(const GridSpec& g, const NormSpec& spec, Rng& rng);
SpaceTimeField random_xsb_scalar(const GridSpec& g, const NormSpec& spec, Rng& rng);

// Exact linear-convolution product of two space-time fields via spectral
// padding; inputs in Fourier representation, output on the doubled lattice in
// Fourier representation. For spinors the pointwise C^2 inner product
// <beta Pi_{s1} a, Pi_{s2} b> is taken; for scalars the plain product a*b.
SpaceTimeField nullform_product_padded(const SpaceTimeField& a, const SpaceTimeField& b,
                                       SignPair signs);
SpaceTimeField scalar_product_padded(const SpaceTimeField& a, const SpaceTimeField& b);

} // namespace dkg
