#include "dkg/field.hpp"

namespace dkg {

ScalarField pointwise_product(const ScalarField& a, const ScalarField& b) {
    detail::check_compatible(a, b, "pointwise_product");
    detail::require_rep(a.rep(), Rep::physical, "pointwise_product");
    ScalarField out(a.grid(), Rep::physical);
    for (std::size_t p = 0; p < out.size(); ++p) out.at(p) = a.at(p) * b.at(p);
    return out;
}

SpaceTimeField pointwise_product(const SpaceTimeField& a, const SpaceTimeField& b) {
    detail::check_compatible(a, b, "pointwise_product");
    detail::require_rep(a.rep(), Rep::physical, "pointwise_product");
    if (a.ncomp() != 1 || b.ncomp() != 1)
        throw GridError("pointwise_product: scalar-valued fields expected");
    SpaceTimeField out(a.grid(), 1, Rep::physical);
    for (std::size_t i = 0; i < out.values().size(); ++i)
        out.values()[i] = a.values()[i] * b.values()[i];
    return out;
}

SpinorField pointwise_product(const ScalarField& phi, const SpinorField& psi) {
    if (!phi.grid().same_spatial(psi.grid()))
        throw GridError("pointwise_product: grid mismatch");
    detail::require_rep(phi.rep(), Rep::physical, "pointwise_product");
    detail::require_rep(psi.rep(), Rep::physical, "pointwise_product");
    SpinorField out(psi.grid(), Rep::physical);
    for (std::size_t p = 0; p < out.nodes(); ++p) {
        out.at(p, 0) = phi.at(p) * psi.at(p, 0);
        out.at(p, 1) = phi.at(p) * psi.at(p, 1);
    }
    return out;
}

ScalarField spinor_inner_product(const SpinorField& a, const SpinorField& b) {
    detail::check_compatible(a, b, "spinor_inner_product");
    detail::require_rep(a.rep(), Rep::physical, "spinor_inner_product");
    ScalarField out(a.grid(), Rep::physical);
    for (std::size_t p = 0; p < a.nodes(); ++p)
        out.at(p) = a.at(p, 0) * std::conj(b.at(p, 0)) + a.at(p, 1) * std::conj(b.at(p, 1));
    return out;
}

SpaceTimeField spinor_inner_product(const SpaceTimeField& a, const SpaceTimeField& b) {
    detail::check_compatible(a, b, "spinor_inner_product");
    detail::require_rep(a.rep(), Rep::physical, "spinor_inner_product");
    if (a.ncomp() != 2 || b.ncomp() != 2)
        throw GridError("spinor_inner_product: expects spinor-valued fields");
    SpaceTimeField out(a.grid(), 1, Rep::physical);
    const auto& g = a.grid();
    for (int it = 0; it < g.n_t; ++it)
        for (std::size_t p = 0; p < g.spatial_size(); ++p)
            out.at(it, p) = a.at(it, p, 0) * std::conj(b.at(it, p, 0)) +
                            a.at(it, p, 1) * std::conj(b.at(it, p, 1));
    return out;
}

namespace {

// Copy DFT-ordered modes of `src` (sizes n per axis) into `dst` (sizes m >= n),
// preserving signed mode indices, with an amplitude rescale.
void embed_modes(const GridSpec& gs, int ncomp, bool spacetime, const std::vector<cplx>& src,
                 const GridSpec& gd, std::vector<cplx>& dst, double scale) {
    const int nt_s = spacetime ? gs.n_t : 1;
    const std::size_t sp_s = gs.spatial_size(), sp_d = gd.spatial_size();
    for (int it = 0; it < nt_s; ++it) {
        const int it_d = spacetime ? GridSpec::index_of_mode(GridSpec::signed_mode(it, gs.n_t), gd.n_t) : 0;
        for (int i1 = 0; i1 < gs.n_x; ++i1) {
            const int j1 = GridSpec::index_of_mode(GridSpec::signed_mode(i1, gs.n_x), gd.n_x);
            for (int i2 = 0; i2 < gs.n_x; ++i2) {
                const int j2 = GridSpec::index_of_mode(GridSpec::signed_mode(i2, gs.n_x), gd.n_x);
                const std::size_t ps = std::size_t(it) * sp_s + std::size_t(i1) * gs.n_x + i2;
                const std::size_t pd = std::size_t(it_d) * sp_d + std::size_t(j1) * gd.n_x + j2;
                for (int c = 0; c < ncomp; ++c)
                    dst[pd * ncomp + c] = scale * src[ps * ncomp + c];
            }
        }
    }
}

} // namespace

ScalarField pad_spectrum(const ScalarField& f, int factor) {
    detail::require_rep(f.rep(), Rep::fourier, "pad_spectrum");
    GridSpec g = f.grid();
    g.n_x *= factor;
    ScalarField out(g, Rep::fourier);
    const double scale = std::sqrt(double(g.spatial_size()) / double(f.grid().spatial_size()));
    embed_modes(f.grid(), 1, false, f.values(), g, out.values(), scale);
    return out;
}

SpinorField pad_spectrum(const SpinorField& f, int factor) {
    detail::require_rep(f.rep(), Rep::fourier, "pad_spectrum");
    GridSpec g = f.grid();
    g.n_x *= factor;
    SpinorField out(g, Rep::fourier);
    const double scale = std::sqrt(double(g.spatial_size()) / double(f.grid().spatial_size()));
    embed_modes(f.grid(), 2, false, f.values(), g, out.values(), scale);
    return out;
}

SpaceTimeField pad_spectrum(const SpaceTimeField& f, int factor) {
    detail::require_rep(f.rep(), Rep::fourier, "pad_spectrum");
    GridSpec g = f.grid();
    g.n_x *= factor;
    g.n_t *= factor;
    SpaceTimeField out(g, f.ncomp(), Rep::fourier);
    const double scale = std::sqrt(double(g.total_size()) / double(f.grid().total_size()));
    embed_modes(f.grid(), f.ncomp(), true, f.values(), g, out.values(), scale);
    return out;
}

namespace {
bool keep_mode(int idx, int n) { return std::abs(GridSpec::signed_mode(idx, n)) <= n / 3; }
} // namespace

void dealias_twothirds(ScalarField& f) {
    detail::require_rep(f.rep(), Rep::fourier, "dealias_twothirds");
    const int n = f.grid().n_x;
    for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 < n; ++i2)
            if (!keep_mode(i1, n) || !keep_mode(i2, n)) f.at(std::size_t(i1) * n + i2) = 0.0;
}

void dealias_twothirds(SpinorField& f) {
    detail::require_rep(f.rep(), Rep::fourier, "dealias_twothirds");
    const int n = f.grid().n_x;
    for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 < n; ++i2)
            if (!keep_mode(i1, n) || !keep_mode(i2, n)) {
                f.at(std::size_t(i1) * n + i2, 0) = 0.0;
                f.at(std::size_t(i1) * n + i2, 1) = 0.0;
            }
}

double hermitian_symmetry_error(const ScalarField& f) {
    detail::require_rep(f.rep(), Rep::fourier, "hermitian_symmetry_error");
    const int n = f.grid().n_x;
    double err = 0.0;
    for (int i1 = 0; i1 < n; ++i1) {
        const int j1 = (n - i1) % n;
        for (int i2 = 0; i2 < n; ++i2) {
            const int j2 = (n - i2) % n;
            const cplx d = f.at(std::size_t(i1) * n + i2) -
                           std::conj(f.at(std::size_t(j1) * n + j2));
            err = std::max(err, std::abs(d));
        }
    }
    return err;
}

ScalarField time_slice_scalar(const SpaceTimeField& u, int it) {
    if (u.ncomp() != 1) throw GridError("time_slice_scalar: field is spinor-valued");
    GridSpec g = u.grid();
    g.n_t = 1;
    g.window_T = 0.0;
    ScalarField out(g, u.rep());
    for (std::size_t p = 0; p < g.spatial_size(); ++p) out.at(p) = u.at(it, p);
    return out;
}

SpinorField time_slice_spinor(const SpaceTimeField& u, int it) {
    if (u.ncomp() != 2) throw GridError("time_slice_spinor: field is scalar-valued");
    GridSpec g = u.grid();
    g.n_t = 1;
    g.window_T = 0.0;
    SpinorField out(g, u.rep());
    for (std::size_t p = 0; p < g.spatial_size(); ++p) {
        out.at(p, 0) = u.at(it, p, 0);
        out.at(p, 1) = u.at(it, p, 1);
    }
    return out;
}

void set_time_slice(SpaceTimeField& u, int it, const ScalarField& f) {
    if (u.ncomp() != 1) throw GridError("set_time_slice: component mismatch");
    if (!u.grid().same_spatial(f.grid())) throw GridError("set_time_slice: grid mismatch");
    for (std::size_t p = 0; p < f.size(); ++p) u.at(it, p) = f.at(p);
}

void set_time_slice(SpaceTimeField& u, int it, const SpinorField& f) {
    if (u.ncomp() != 2) throw GridError("set_time_slice: component mismatch");
    if (!u.grid().same_spatial(f.grid())) throw GridError("set_time_slice: grid mismatch");
    for (std::size_t p = 0; p < f.nodes(); ++p) {
        u.at(it, p, 0) = f.at(p, 0);
        u.at(it, p, 1) = f.at(p, 1);
    }
}

} // namespace dkg
