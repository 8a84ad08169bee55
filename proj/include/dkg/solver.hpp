// Evolution of the split Dirac-Klein-Gordon system: half-wave spinor
// branches psi_{+-} and complex Klein-Gordon branches phi_{+-}, advanced by a
// twisted (integrating-factor) midpoint scheme or by Picard iteration on the
// Duhamel formula, plus reassembly and residual checks against the original
// second-order system.
#pragma once

#include "dkg/dirac.hpp"
#include "dkg/field.hpp"
#include "dkg/norms.hpp"

#include <functional>
#include <vector>

namespace dkg {

struct PhysicsParams {
    double M = 0.0; // Dirac mass
    double m = 0.0; // Klein-Gordon parameter of the original system
};

// Split state in Fourier representation.
struct DKGState {
    SpinorField psi_plus;
    SpinorField psi_minus;
    ScalarField phi_plus;
    ScalarField phi_minus;
    double time = 0.0;

    const GridSpec& grid() const { return psi_plus.grid(); }
};

enum class SolverMode { exponential_step, picard };

struct SolverConfig {
    double dt = 1e-3;
    int steps = 100;
    int picard_iters = 12;
    double tol = 1e-10;
    SolverMode mode = SolverMode::exponential_step;
    bool disable_coupling = false; // drop all nonlinear/mass couplings (free flow)

    void validate() const {
        if (!(dt > 0.0)) throw ParameterError("SolverConfig: dt must be positive");
        if (!(tol > 0.0)) throw ParameterError("SolverConfig: tol must be positive");
        if (steps < 0) throw ParameterError("SolverConfig: steps must be nonnegative");
    }
};

class BlowUpError : public std::runtime_error {
  public:
    BlowUpError(double t, const std::string& what)
        : std::runtime_error(what + " at t = " + std::to_string(t)), time(t) {}
    double time;
};

// psi_{+-}(0) = Pi_{+-}(D) psi0, phi_{+-}(0) = phi0 +- i A^{-1/2} phi1.
// Inputs in physical representation; phi0, phi1 real up to 1e-10 relative.
DKGState split_data(const SpinorField& psi0, const ScalarField& phi0, const ScalarField& phi1);

struct Reassembled {
    SpinorField psi;   // psi_+ + psi_-
    ScalarField phi;   // (phi_+ + phi_-) / 2
    ScalarField dtphi; // A^{1/2} (phi_+ - phi_-) / (2i)
};
// Physical representation; inverse of split_data on states generated from data.
Reassembled reassemble(const DKGState& state);

// Right-hand sides of the first-order split system, equivalent to the
// original equations: (-i d_t +- |D|) psi_{+-} = M beta psi_{-+} + Pi_{+-}(phi beta psi)
// and (i d_t -+ A^{1/2}) phi_{+-} = -+ A^{-1/2} (<beta psi, psi> + (m+1) phi),
// with psi = psi_+ + psi_-, phi = (phi_+ + phi_-)/2. Quadratic products are
// dealiased by the 2/3 rule.
SpinorField rhs_dirac(const DKGState& state, const PhysicsParams& params, Sign sign);
ScalarField rhs_kg(const DKGState& state, const PhysicsParams& params, Sign sign);

// One step of the twisted midpoint scheme (exact linear phases, second order
// in the coupling). Throws BlowUpError when non-finite values appear.
DKGState step_exponential(const DKGState& state, const PhysicsParams& params,
                          const SolverConfig& config);

// Spatial L2 norm (lattice measure included) of psi_+ + psi_-.
double charge(const SpinorField& psi_plus, const SpinorField& psi_minus);

// Uniform time samples of the reassembled solution, physical representation.
struct Trajectory {
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<SpinorField> psi;
    std::vector<ScalarField> phi;

    // Packs slices into space-time containers (sample count must be even).
    SpaceTimeField psi_field() const;
    SpaceTimeField phi_field() const;
};

struct EvolveResult {
    DKGState final_state;
    Trajectory traj;             // recorded every record_every steps
    std::vector<double> times;   // recording instants
    std::vector<double> charges; // charge at those instants
};
EvolveResult run_exponential(DKGState state, const PhysicsParams& params,
                             const SolverConfig& config, int record_every = 1);

// Space-time l2 residuals of the original system evaluated on a trajectory:
// first component i(d_t + alpha.grad) psi + M beta psi + phi beta psi, second
// (-d_t^2 + Lap) phi + m phi + <beta psi, psi>. Spatial derivatives are
// spectral, time derivatives centered second-order on interior samples.
std::pair<double, double> residual_original(const Trajectory& traj, const PhysicsParams& params);

struct PicardOptions {
    double t_local = 0.1; // contraction is measured on [0, t_local]
    int n_t = 32;         // samples over the working window [0, 2 t_local]
    int iters = 12;
    double tol = 1e-10;
    double s = 0.0; // X^r restriction norm used for Cauchy differences
    double r = 2.0;
    double b = 0.51;
};

struct PicardResult {
    std::vector<double> cauchy_diffs; // distance between successive iterates
    bool converged = false;
    bool diverged = false; // differences grew three times in a row
    std::vector<DKGState> states;     // final iterate at the sample times
    Trajectory traj;                  // its reassembly
};
PicardResult picard_iterate(const DKGState& state0, const PhysicsParams& params,
                            const PicardOptions& opts, bool disable_coupling = false);

// Relative size of the imaginary part, used by the reality diagnostics.
double relative_imag(const ScalarField& physical_field);

} // namespace dkg
