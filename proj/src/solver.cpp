#include "dkg/solver.hpp"

namespace dkg {

namespace {

double bracket_a(Vec2 xi) { return std::sqrt(1.0 + xi.norm2()); } // A = -Lap + 1

cplx phase(double w) { return {std::cos(w), std::sin(w)}; }

// e^{-+ i h |xi|} on the spinor branches, e^{-+ i h <xi>_A} on the KG branches.
void apply_free_flow(DKGState& st, double h) {
    apply_multiplier_inplace(st.psi_plus, [h](Vec2 xi) { return phase(-h * xi.norm()); });
    apply_multiplier_inplace(st.psi_minus, [h](Vec2 xi) { return phase(+h * xi.norm()); });
    apply_multiplier_inplace(st.phi_plus, [h](Vec2 xi) { return phase(-h * bracket_a(xi)); });
    apply_multiplier_inplace(st.phi_minus, [h](Vec2 xi) { return phase(+h * bracket_a(xi)); });
}

struct Derivative {
    SpinorField dpsi_plus, dpsi_minus;
    ScalarField dphi_plus, dphi_minus;
};

// d_t U = L U + N(U); this is N, i.e. i * rhs_dirac on the spinor branches
// and -i * rhs_kg on the KG branches.
Derivative coupling(const DKGState& st, const PhysicsParams& p, bool disabled) {
    Derivative d{SpinorField(st.grid(), Rep::fourier), SpinorField(st.grid(), Rep::fourier),
                 ScalarField(st.grid(), Rep::fourier), ScalarField(st.grid(), Rep::fourier)};
    if (disabled) return d;
    const cplx i(0.0, 1.0);
    d.dpsi_plus = i * rhs_dirac(st, p, Sign::plus);
    d.dpsi_minus = i * rhs_dirac(st, p, Sign::minus);
    d.dphi_plus = (-i) * rhs_kg(st, p, Sign::plus);
    d.dphi_minus = (-i) * rhs_kg(st, p, Sign::minus);
    return d;
}

void axpy(DKGState& st, double a, const Derivative& d) {
    st.psi_plus += cplx(a) * SpinorField(d.dpsi_plus);
    st.psi_minus += cplx(a) * SpinorField(d.dpsi_minus);
    st.phi_plus += cplx(a) * ScalarField(d.dphi_plus);
    st.phi_minus += cplx(a) * ScalarField(d.dphi_minus);
}

void check_finite(const DKGState& st) {
    auto bad = [](const std::vector<cplx>& v) {
        for (const auto& c : v)
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return true;
        return false;
    };
    if (bad(st.psi_plus.values()) || bad(st.psi_minus.values()) || bad(st.phi_plus.values()) ||
        bad(st.phi_minus.values()))
        throw BlowUpError(st.time, "solver blow-up: non-finite field values");
}

void check_real(const ScalarField& phys, const char* name) {
    double imag = 0.0, total = 0.0;
    for (const auto& v : phys.values()) {
        imag += v.imag() * v.imag();
        total += std::norm(v);
    }
    if (total > 0.0 && std::sqrt(imag / total) > 1e-10)
        throw ParameterError(std::string("split_data: ") + name + " must be real");
}

} // namespace

double relative_imag(const ScalarField& physical_field) {
    double imag = 0.0, total = 0.0;
    for (const auto& v : physical_field.values()) {
        imag += v.imag() * v.imag();
        total += std::norm(v);
    }
    return total > 0.0 ? std::sqrt(imag / total) : 0.0;
}

DKGState split_data(const SpinorField& psi0, const ScalarField& phi0, const ScalarField& phi1) {
    if (!psi0.grid().same_spatial(phi0.grid()) || !psi0.grid().same_spatial(phi1.grid()))
        throw GridError("split_data: grid mismatch");
    detail::require_rep(psi0.rep(), Rep::physical, "split_data");
    detail::require_rep(phi0.rep(), Rep::physical, "split_data");
    detail::require_rep(phi1.rep(), Rep::physical, "split_data");
    check_real(phi0, "phi0");
    check_real(phi1, "phi1");

    const SpinorField psi_hat = dft_forward(psi0);
    const ScalarField phi0_hat = dft_forward(phi0);
    ScalarField a_inv_phi1 = dft_forward(phi1);
    apply_multiplier_inplace(a_inv_phi1, [](Vec2 xi) { return 1.0 / bracket_a(xi); });

    DKGState st;
    st.psi_plus = project_field(psi_hat, Sign::plus);
    st.psi_minus = project_field(psi_hat, Sign::minus);
    const cplx i(0.0, 1.0);
    st.phi_plus = phi0_hat + i * ScalarField(a_inv_phi1);
    st.phi_minus = phi0_hat - i * ScalarField(a_inv_phi1);
    st.time = 0.0;
    return st;
}

Reassembled reassemble(const DKGState& state) {
    Reassembled out;
    out.psi = dft_inverse(state.psi_plus + state.psi_minus);
    out.phi = dft_inverse(cplx(0.5) * (state.phi_plus + state.phi_minus));
    ScalarField diff = state.phi_plus - state.phi_minus;
    apply_multiplier_inplace(diff, [](Vec2 xi) { return cplx(0.0, -0.5) * bracket_a(xi); });
    out.dtphi = dft_inverse(std::move(diff)); // A^{1/2} (phi_+ - phi_-) / (2i)
    return out;
}

SpinorField rhs_dirac(const DKGState& state, const PhysicsParams& params, Sign sign) {
    const GridSpec& g = state.grid();

    SpinorField psi = state.psi_plus + state.psi_minus;
    dealias_twothirds(psi);
    ScalarField phi = cplx(0.5) * (state.phi_plus + state.phi_minus);
    dealias_twothirds(phi);

    SpinorField prod = pointwise_product(dft_inverse(std::move(phi)),
                                         apply_beta(dft_inverse(std::move(psi))));
    SpinorField prod_hat = dft_forward(std::move(prod));
    dealias_twothirds(prod_hat);
    SpinorField out = project_field(std::move(prod_hat), sign);

    const SpinorField& other = sign == Sign::plus ? state.psi_minus : state.psi_plus;
    out += cplx(params.M) * apply_beta(other);
    return out;
}

ScalarField rhs_kg(const DKGState& state, const PhysicsParams& params, Sign sign) {
    SpinorField psi = state.psi_plus + state.psi_minus;
    dealias_twothirds(psi);
    const SpinorField psi_phys = dft_inverse(std::move(psi));
    ScalarField quad = dft_forward(spinor_inner_product(apply_beta(psi_phys), psi_phys));
    dealias_twothirds(quad);

    quad += cplx(0.5 * (params.m + 1.0)) * (state.phi_plus + state.phi_minus);
    const double s = sign == Sign::plus ? -1.0 : 1.0;
    apply_multiplier_inplace(quad, [s](Vec2 xi) { return s / bracket_a(xi); });
    return quad;
}

DKGState step_exponential(const DKGState& state, const PhysicsParams& params,
                          const SolverConfig& config) {
    config.validate();
    const double dt = config.dt;

    const Derivative n0 = coupling(state, params, config.disable_coupling);
    DKGState half = state;
    axpy(half, dt / 2.0, n0);
    apply_free_flow(half, dt / 2.0);
    half.time = state.time + dt / 2.0;

    const Derivative n1 = coupling(half, params, config.disable_coupling);

    DKGState next = state;
    apply_free_flow(next, dt);
    DKGState kick{n1.dpsi_plus, n1.dpsi_minus, n1.dphi_plus, n1.dphi_minus, 0.0};
    apply_free_flow(kick, dt / 2.0);
    next.psi_plus += cplx(dt) * kick.psi_plus;
    next.psi_minus += cplx(dt) * kick.psi_minus;
    next.phi_plus += cplx(dt) * kick.phi_plus;
    next.phi_minus += cplx(dt) * kick.phi_minus;
    next.time = state.time + dt;

    check_finite(next);
    return next;
}

double charge(const SpinorField& psi_plus, const SpinorField& psi_minus) {
    detail::check_compatible(psi_plus, psi_minus, "charge");
    const SpinorField sum = psi_plus + psi_minus;
    double acc = 0.0;
    for (const auto& v : sum.values()) acc += std::norm(v);
    // Stored-value l2 is representation-invariant (Parseval), the lattice
    // measure is dx^2.
    return sum.grid().dx() * std::sqrt(acc);
}

SpaceTimeField Trajectory::psi_field() const {
    if (psi.size() < 2 || psi.size() % 2 != 0)
        throw ParameterError("Trajectory: an even number (>= 2) of samples is required");
    GridSpec g = psi.front().grid();
    g.n_t = int(psi.size());
    g.window_T = dt * double(psi.size());
    SpaceTimeField out(g, 2, Rep::physical);
    for (std::size_t k = 0; k < psi.size(); ++k) set_time_slice(out, int(k), psi[k]);
    return out;
}

SpaceTimeField Trajectory::phi_field() const {
    if (phi.size() < 2 || phi.size() % 2 != 0)
        throw ParameterError("Trajectory: an even number (>= 2) of samples is required");
    GridSpec g = phi.front().grid();
    g.n_t = int(phi.size());
    g.window_T = dt * double(phi.size());
    SpaceTimeField out(g, 1, Rep::physical);
    for (std::size_t k = 0; k < phi.size(); ++k) set_time_slice(out, int(k), phi[k]);
    return out;
}

EvolveResult run_exponential(DKGState state, const PhysicsParams& params,
                             const SolverConfig& config, int record_every) {
    config.validate();
    if (record_every < 1) throw ParameterError("run_exponential: record_every must be >= 1");

    EvolveResult out;
    out.traj.t0 = state.time;
    out.traj.dt = config.dt * record_every;

    auto record = [&](const DKGState& st) {
        const Reassembled r = reassemble(st);
        out.traj.psi.push_back(r.psi);
        out.traj.phi.push_back(r.phi);
        out.times.push_back(st.time);
        out.charges.push_back(charge(st.psi_plus, st.psi_minus));
    };
    record(state);
    for (int step = 1; step <= config.steps; ++step) {
        state = step_exponential(state, params, config);
        if (step % record_every == 0) record(state);
    }
    out.final_state = std::move(state);
    return out;
}

std::pair<double, double> residual_original(const Trajectory& traj,
                                            const PhysicsParams& params) {
    const std::size_t n = traj.psi.size();
    if (n < 5 || traj.phi.size() != n)
        throw ParameterError("residual_original: needs at least 5 aligned time samples");
    const double dt = traj.dt;
    const GridSpec& g = traj.psi.front().grid();
    const double cell = g.dx() * g.dx() * dt;
    const cplx i(0.0, 1.0);

    double acc_dirac = 0.0, acc_kg = 0.0;
    for (std::size_t k = 1; k + 1 < n; ++k) {
        // i (d_t psi + alpha.grad psi) + M beta psi + phi beta psi.
        SpinorField dtpsi = traj.psi[k + 1] - traj.psi[k - 1];
        dtpsi *= cplx(1.0 / (2.0 * dt));

        SpinorField grad = dft_forward(traj.psi[k]);
        apply_matrix_multiplier_inplace(grad, [&](Vec2 xi) {
            Mat2 m = dirac_symbol(xi);
            for (auto& e : m.m) e *= i; // alpha.grad has symbol i xi.alpha
            return m;
        });
        SpinorField res = dft_inverse(std::move(grad));
        res += dtpsi;
        res *= i;
        res += cplx(params.M) * apply_beta(traj.psi[k]);
        res += pointwise_product(traj.phi[k], apply_beta(traj.psi[k]));
        for (const auto& v : res.values()) acc_dirac += std::norm(v);

        // (-d_t^2 + Lap) phi + m phi + <beta psi, psi>.
        ScalarField dtt = traj.phi[k + 1] - cplx(2.0) * ScalarField(traj.phi[k]);
        dtt += traj.phi[k - 1];
        dtt *= cplx(1.0 / (dt * dt));

        ScalarField lap = dft_forward(traj.phi[k]);
        apply_multiplier_inplace(lap, [](Vec2 xi) { return -xi.norm2(); });
        ScalarField resk = dft_inverse(std::move(lap));
        resk -= dtt;
        resk += cplx(params.m) * ScalarField(traj.phi[k]);
        resk += spinor_inner_product(apply_beta(traj.psi[k]), traj.psi[k]);
        for (const auto& v : resk.values()) acc_kg += std::norm(v);
    }
    return {std::sqrt(acc_dirac * cell), std::sqrt(acc_kg * cell)};
}

PicardResult picard_iterate(const DKGState& state0, const PhysicsParams& params,
                            const PicardOptions& opts, bool disable_coupling) {
    if (!(opts.t_local > 0.0)) throw ParameterError("picard_iterate: t_local must be positive");
    if (opts.n_t < 4 || opts.n_t % 2 != 0)
        throw ParameterError("picard_iterate: n_t must be even and >= 4");
    const int nt = opts.n_t;
    const double window = 2.0 * opts.t_local;
    const double dt = window / nt;

    // Free-flow trajectory as the initial iterate.
    auto free_at = [&](double t) {
        DKGState st = state0;
        apply_free_flow(st, t);
        st.time = state0.time + t;
        return st;
    };
    std::vector<DKGState> current(nt);
    for (int k = 0; k < nt; ++k) current[k] = free_at(k * dt);

    // Duhamel update: next_k = free_k + int_0^{t_k} E(t_k - s) N(current(s)) ds,
    // accumulated by trapezoid on the twisted integrand.
    auto iterate_once = [&](const std::vector<DKGState>& prev) {
        std::vector<Derivative> nl(nt);
        for (int k = 0; k < nt; ++k) nl[k] = coupling(prev[k], params, disable_coupling);

        std::vector<DKGState> next(nt);
        next[0] = state0;
        DKGState acc{SpinorField(state0.grid(), Rep::fourier),
                     SpinorField(state0.grid(), Rep::fourier),
                     ScalarField(state0.grid(), Rep::fourier),
                     ScalarField(state0.grid(), Rep::fourier), 0.0};
        for (int k = 1; k < nt; ++k) {
            // acc = int_0^{t_k} E(t_k - s) N ds via the recurrence
            // acc_k = E(dt) acc_{k-1} + dt/2 (E(dt) N_{k-1} + N_k).
            apply_free_flow(acc, dt);
            DKGState kick{nl[k - 1].dpsi_plus, nl[k - 1].dpsi_minus, nl[k - 1].dphi_plus,
                          nl[k - 1].dphi_minus, 0.0};
            apply_free_flow(kick, dt);
            acc.psi_plus += cplx(dt / 2) * kick.psi_plus;
            acc.psi_minus += cplx(dt / 2) * kick.psi_minus;
            acc.phi_plus += cplx(dt / 2) * kick.phi_plus;
            acc.phi_minus += cplx(dt / 2) * kick.phi_minus;
            acc.psi_plus += cplx(dt / 2) * nl[k].dpsi_plus;
            acc.psi_minus += cplx(dt / 2) * nl[k].dpsi_minus;
            acc.phi_plus += cplx(dt / 2) * nl[k].dphi_plus;
            acc.phi_minus += cplx(dt / 2) * nl[k].dphi_minus;

            next[k] = free_at(k * dt);
            next[k].psi_plus += acc.psi_plus;
            next[k].psi_minus += acc.psi_minus;
            next[k].phi_plus += acc.phi_plus;
            next[k].phi_minus += acc.phi_minus;
        }
        return next;
    };

    // Cauchy distance: restriction norms over [0, t_local] of the four
    // component differences, branches matched to the free flows.
    GridSpec stg = state0.grid();
    stg.n_t = nt;
    stg.window_T = window;
    auto distance = [&](const std::vector<DKGState>& a, const std::vector<DKGState>& b) {
        SpaceTimeField dpsi_p(stg, 2, Rep::physical), dpsi_m(stg, 2, Rep::physical);
        SpaceTimeField dphi_p(stg, 1, Rep::physical), dphi_m(stg, 1, Rep::physical);
        for (int k = 0; k < nt; ++k) {
            set_time_slice(dpsi_p, k, dft_inverse(a[k].psi_plus - b[k].psi_plus));
            set_time_slice(dpsi_m, k, dft_inverse(a[k].psi_minus - b[k].psi_minus));
            set_time_slice(dphi_p, k, dft_inverse(a[k].phi_plus - b[k].phi_plus));
            set_time_slice(dphi_m, k, dft_inverse(a[k].phi_minus - b[k].phi_minus));
        }
        const NormSpec plus{opts.s, opts.r, opts.b, Branch::plus, false};
        const NormSpec minus{opts.s, opts.r, opts.b, Branch::minus, false};
        return restriction_norm(dft_forward(std::move(dpsi_p)), opts.t_local, plus) +
               restriction_norm(dft_forward(std::move(dpsi_m)), opts.t_local, minus) +
               restriction_norm(dft_forward(std::move(dphi_p)), opts.t_local, plus) +
               restriction_norm(dft_forward(std::move(dphi_m)), opts.t_local, minus);
    };

    PicardResult out;
    int growth_streak = 0;
    for (int it = 0; it < opts.iters; ++it) {
        std::vector<DKGState> next = iterate_once(current);
        const double d = distance(next, current);
        out.cauchy_diffs.push_back(d);
        current = std::move(next);
        if (d < opts.tol) {
            out.converged = true;
            break;
        }
        const std::size_t nd = out.cauchy_diffs.size();
        if (nd >= 2 && out.cauchy_diffs[nd - 1] > out.cauchy_diffs[nd - 2]) {
            if (++growth_streak >= 3) {
                out.diverged = true;
                break;
            }
        } else {
            growth_streak = 0;
        }
    }

    out.states = std::move(current);
    out.traj.t0 = state0.time;
    out.traj.dt = dt;
    for (const DKGState& st : out.states) {
        const Reassembled r = reassemble(st);
        out.traj.psi.push_back(r.psi);
        out.traj.phi.push_back(r.phi);
    }
    return out;
}

} // namespace dkg
