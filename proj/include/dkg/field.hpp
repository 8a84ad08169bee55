// Lattice fields (scalar, two-spinor, space-time) and the DFT contract:
// unitary normalization, so Parseval holds literally on stored values.
#pragma once

#include "dkg/grid.hpp"

#include <span>
#include <vector>

namespace dkg {

enum class Rep : std::uint8_t { physical = 0, fourier = 1 };

class ContractError : public std::runtime_error {
  public:
    explicit ContractError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {
// In-place unitary DFT over the trailing lattice axes; values interleaved by
// component. sign = -1 forward (physical -> fourier), +1 inverse.
void fft_inplace(std::span<cplx> data, int n_t, int n_x, int ncomp, bool spacetime, int sign);

inline void require_rep(Rep have, Rep want, const char* op) {
    if (have != want)
        throw ContractError(std::string(op) + ": field is in " +
                            (have == Rep::physical ? "physical" : "fourier") +
                            " representation, expected " +
                            (want == Rep::physical ? "physical" : "fourier"));
}
} // namespace detail

class ScalarField {
  public:
    ScalarField() = default;
    ScalarField(const GridSpec& g, Rep rep) : grid_(g), rep_(rep), v_(g.spatial_size()) {
        grid_.validate();
    }

    const GridSpec& grid() const { return grid_; }
    Rep rep() const { return rep_; }
    void set_rep(Rep r) { rep_ = r; }

    cplx& at(std::size_t p) { return v_[p]; }
    const cplx& at(std::size_t p) const { return v_[p]; }
    std::vector<cplx>& values() { return v_; }
    const std::vector<cplx>& values() const { return v_; }
    std::size_t size() const { return v_.size(); }

    static constexpr int components = 1;

  private:
    GridSpec grid_;
    Rep rep_ = Rep::physical;
    std::vector<cplx> v_;
};

class SpinorField {
  public:
    SpinorField() = default;
    SpinorField(const GridSpec& g, Rep rep) : grid_(g), rep_(rep), v_(2 * g.spatial_size()) {
        grid_.validate();
    }

    const GridSpec& grid() const { return grid_; }
    Rep rep() const { return rep_; }
    void set_rep(Rep r) { rep_ = r; }

    cplx& at(std::size_t p, int c) { return v_[2 * p + c]; }
    const cplx& at(std::size_t p, int c) const { return v_[2 * p + c]; }
    std::vector<cplx>& values() { return v_; }
    const std::vector<cplx>& values() const { return v_; }
    std::size_t nodes() const { return grid_.spatial_size(); }

    static constexpr int components = 2;

  private:
    GridSpec grid_;
    Rep rep_ = Rep::physical;
    std::vector<cplx> v_;
};

// Scalar- or spinor-valued field on the (t, x1, x2) lattice. Fourier
// representation is indexed by (tau, xi).
class SpaceTimeField {
  public:
    SpaceTimeField() = default;
    SpaceTimeField(const GridSpec& g, int ncomp, Rep rep)
        : grid_(g), ncomp_(ncomp), rep_(rep), v_(std::size_t(ncomp) * g.total_size()) {
        grid_.validate();
        if (g.n_t < 2) throw GridError("SpaceTimeField: grid needs n_t > 1");
        if (ncomp != 1 && ncomp != 2)
            throw GridError("SpaceTimeField: ncomp must be 1 or 2");
    }

    const GridSpec& grid() const { return grid_; }
    int ncomp() const { return ncomp_; }
    Rep rep() const { return rep_; }
    void set_rep(Rep r) { rep_ = r; }

    cplx& at(int it, std::size_t p, int c = 0) {
        return v_[(std::size_t(it) * grid_.spatial_size() + p) * ncomp_ + c];
    }
    const cplx& at(int it, std::size_t p, int c = 0) const {
        return v_[(std::size_t(it) * grid_.spatial_size() + p) * ncomp_ + c];
    }
    std::vector<cplx>& values() { return v_; }
    const std::vector<cplx>& values() const { return v_; }

  private:
    GridSpec grid_;
    int ncomp_ = 1;
    Rep rep_ = Rep::physical;
    std::vector<cplx> v_;
};

// --- transforms ------------------------------------------------------------

inline ScalarField dft_forward(ScalarField f) {
    detail::require_rep(f.rep(), Rep::physical, "dft_forward");
    detail::fft_inplace(f.values(), 1, f.grid().n_x, 1, false, -1);
    f.set_rep(Rep::fourier);
    return f;
}
inline ScalarField dft_inverse(ScalarField f) {
    detail::require_rep(f.rep(), Rep::fourier, "dft_inverse");
    detail::fft_inplace(f.values(), 1, f.grid().n_x, 1, false, +1);
    f.set_rep(Rep::physical);
    return f;
}
inline SpinorField dft_forward(SpinorField f) {
    detail::require_rep(f.rep(), Rep::physical, "dft_forward");
    detail::fft_inplace(f.values(), 1, f.grid().n_x, 2, false, -1);
    f.set_rep(Rep::fourier);
    return f;
}
inline SpinorField dft_inverse(SpinorField f) {
    detail::require_rep(f.rep(), Rep::fourier, "dft_inverse");
    detail::fft_inplace(f.values(), 1, f.grid().n_x, 2, false, +1);
    f.set_rep(Rep::physical);
    return f;
}
inline SpaceTimeField dft_forward(SpaceTimeField f) {
    detail::require_rep(f.rep(), Rep::physical, "dft_forward");
    detail::fft_inplace(f.values(), f.grid().n_t, f.grid().n_x, f.ncomp(), true, -1);
    f.set_rep(Rep::fourier);
    return f;
}
inline SpaceTimeField dft_inverse(SpaceTimeField f) {
    detail::require_rep(f.rep(), Rep::fourier, "dft_inverse");
    detail::fft_inplace(f.values(), f.grid().n_t, f.grid().n_x, f.ncomp(), true, +1);
    f.set_rep(Rep::physical);
    return f;
}

// --- Fourier multipliers ----------------------------------------------------

namespace detail {
inline void check_symbol_finite(cplx s, Vec2 xi, double tau, bool spacetime) {
    if (std::isfinite(s.real()) && std::isfinite(s.imag())) return;
    std::string where = "xi=(" + std::to_string(xi.x) + "," + std::to_string(xi.y) + ")";
    if (spacetime) where = "tau=" + std::to_string(tau) + ", " + where;
    throw std::domain_error("apply_multiplier: symbol not finite at " + where);
}
} // namespace detail

// sym: Vec2 -> (value convertible to cplx)
template <class Sym>
void apply_multiplier_inplace(ScalarField& f, Sym&& sym) {
    detail::require_rep(f.rep(), Rep::fourier, "apply_multiplier");
    const auto& g = f.grid();
    for (std::size_t p = 0; p < f.size(); ++p) {
        const Vec2 xi = g.xi_at(p);
        const cplx s = sym(xi);
        detail::check_symbol_finite(s, xi, 0.0, false);
        f.at(p) *= s;
    }
}

template <class Sym>
void apply_multiplier_inplace(SpinorField& f, Sym&& sym) {
    detail::require_rep(f.rep(), Rep::fourier, "apply_multiplier");
    const auto& g = f.grid();
    for (std::size_t p = 0; p < f.nodes(); ++p) {
        const Vec2 xi = g.xi_at(p);
        const cplx s = sym(xi);
        detail::check_symbol_finite(s, xi, 0.0, false);
        f.at(p, 0) *= s;
        f.at(p, 1) *= s;
    }
}

// sym: (tau, Vec2) -> (value convertible to cplx)
template <class Sym>
void apply_spacetime_multiplier_inplace(SpaceTimeField& f, Sym&& sym) {
    detail::require_rep(f.rep(), Rep::fourier, "apply_multiplier");
    const auto& g = f.grid();
    for (int it = 0; it < g.n_t; ++it) {
        const double tau = g.freq_t(it);
        for (std::size_t p = 0; p < g.spatial_size(); ++p) {
            const Vec2 xi = g.xi_at(p);
            const cplx s = sym(tau, xi);
            detail::check_symbol_finite(s, xi, tau, true);
            for (int c = 0; c < f.ncomp(); ++c) f.at(it, p, c) *= s;
        }
    }
}

// Spatial-only multiplier on a space-time field (acts per time frequency).
template <class Sym>
void apply_spatial_multiplier_inplace(SpaceTimeField& f, Sym&& sym) {
    apply_spacetime_multiplier_inplace(f, [&](double, Vec2 xi) { return cplx(sym(xi)); });
}

template <class Field, class Sym>
Field apply_multiplier(Field f, Sym&& sym) {
    apply_multiplier_inplace(f, std::forward<Sym>(sym));
    return f;
}

// --- element-wise algebra ---------------------------------------------------

template <class T>
concept LatticeField = requires(const T f) {
    f.values();
    f.grid();
    f.rep();
};

namespace detail {
template <LatticeField Field>
void check_compatible(const Field& a, const Field& b, const char* op) {
    if (!(a.grid() == b.grid())) throw GridError(std::string(op) + ": grid mismatch");
    if (a.rep() != b.rep()) throw ContractError(std::string(op) + ": representation mismatch");
}
} // namespace detail

template <LatticeField Field>
Field& operator+=(Field& a, const Field& b) {
    detail::check_compatible(a, b, "operator+=");
    for (std::size_t i = 0; i < a.values().size(); ++i) a.values()[i] += b.values()[i];
    return a;
}
template <LatticeField Field>
Field& operator-=(Field& a, const Field& b) {
    detail::check_compatible(a, b, "operator-=");
    for (std::size_t i = 0; i < a.values().size(); ++i) a.values()[i] -= b.values()[i];
    return a;
}
template <LatticeField Field>
Field& operator*=(Field& a, cplx s) {
    for (auto& v : a.values()) v *= s;
    return a;
}

inline ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
inline ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
inline ScalarField operator*(cplx s, ScalarField a) { return a *= s; }
inline SpinorField operator+(SpinorField a, const SpinorField& b) { return a += b; }
inline SpinorField operator-(SpinorField a, const SpinorField& b) { return a -= b; }
inline SpinorField operator*(cplx s, SpinorField a) { return a *= s; }
inline SpaceTimeField operator+(SpaceTimeField a, const SpaceTimeField& b) { return a += b; }
inline SpaceTimeField operator-(SpaceTimeField a, const SpaceTimeField& b) { return a -= b; }
inline SpaceTimeField operator*(cplx s, SpaceTimeField a) { return a *= s; }

// Plain l2 norm of stored values (no lattice measure); Parseval-invariant.
template <LatticeField Field>
double ell2_norm(const Field& f) {
    double s = 0.0;
    for (const auto& v : f.values()) s += std::norm(v);
    return std::sqrt(s);
}

// --- products, padding, dealiasing -------------------------------------------

// Pointwise product of physical-space fields.
ScalarField pointwise_product(const ScalarField& a, const ScalarField& b);
SpaceTimeField pointwise_product(const SpaceTimeField& a, const SpaceTimeField& b);
// phi * psi for scalar phi, spinor psi (component-wise).
SpinorField pointwise_product(const ScalarField& phi, const SpinorField& psi);
// Pointwise C^2 inner product <a,b> = a1*conj(b1) + a2*conj(b2).
ScalarField spinor_inner_product(const SpinorField& a, const SpinorField& b);
SpaceTimeField spinor_inner_product(const SpaceTimeField& a, const SpaceTimeField& b);

// Embed a Fourier-space field into a grid refined by `factor` per transformed
// axis, preserving the underlying trigonometric polynomial (coefficients are
// rescaled so that physical samples of the same function come out).
ScalarField pad_spectrum(const ScalarField& f, int factor = 2);
SpinorField pad_spectrum(const SpinorField& f, int factor = 2);
SpaceTimeField pad_spectrum(const SpaceTimeField& f, int factor = 2);

// Zero all Fourier modes with |k| > n/3 on any transformed axis (2/3 rule).
void dealias_twothirds(ScalarField& f);
void dealias_twothirds(SpinorField& f);

// Max deviation from Hermitian symmetry f(-xi) = conj(f(xi)) of a
// Fourier-space scalar field (zero for transforms of real fields).
double hermitian_symmetry_error(const ScalarField& f);

// Time slices of space-time fields.
ScalarField time_slice_scalar(const SpaceTimeField& u, int it);
SpinorField time_slice_spinor(const SpaceTimeField& u, int it);
void set_time_slice(SpaceTimeField& u, int it, const ScalarField& f);
void set_time_slice(SpaceTimeField& u, int it, const SpinorField& f);

} // namespace dkg
