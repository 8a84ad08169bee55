// 2x2 Dirac matrices, the eigenprojections of xi.alpha, the null-form symbol
// and angle functions behind the bilinear estimates.
#pragma once

#include "dkg/field.hpp"
#include "dkg/grid.hpp"

#include <array>

namespace dkg {

struct Mat2 {
    // Row-major entries m[2*i + j].
    std::array<cplx, 4> m{};

    static Mat2 identity() { return {{cplx(1), cplx(0), cplx(0), cplx(1)}}; }
    static Mat2 zero() { return {}; }

    cplx& operator()(int i, int j) { return m[2 * i + j]; }
    const cplx& operator()(int i, int j) const { return m[2 * i + j]; }

    Mat2 adjoint() const {
        return {{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}};
    }
    cplx trace() const { return m[0] + m[3]; }
    cplx det() const { return m[0] * m[3] - m[1] * m[2]; }

    double max_abs() const {
        double r = 0.0;
        for (const auto& v : m) r = std::max(r, std::abs(v));
        return r;
    }
    bool is_hermitian(double tol = 1e-12) const {
        const Mat2 d = *this - adjoint();
        return d.max_abs() <= tol;
    }

    // Largest singular value from the closed form for 2x2 matrices:
    // singular values^2 are eigenvalues of M^* M, i.e. (T +- sqrt(T^2-4D))/2
    // with T = tr(M^*M) and D = |det M|^2.
    double op_norm() const {
        double t = 0.0;
        for (const auto& v : m) t += std::norm(v);
        const double d = std::norm(det());
        const double disc = std::max(t * t - 4.0 * d, 0.0);
        return std::sqrt(0.5 * (t + std::sqrt(disc)));
    }

    Mat2 operator+(const Mat2& o) const {
        Mat2 r;
        for (int i = 0; i < 4; ++i) r.m[i] = m[i] + o.m[i];
        return r;
    }
    Mat2 operator-(const Mat2& o) const {
        Mat2 r;
        for (int i = 0; i < 4; ++i) r.m[i] = m[i] - o.m[i];
        return r;
    }
    Mat2 operator*(const Mat2& o) const {
        Mat2 r;
        r.m[0] = m[0] * o.m[0] + m[1] * o.m[2];
        r.m[1] = m[0] * o.m[1] + m[1] * o.m[3];
        r.m[2] = m[2] * o.m[0] + m[3] * o.m[2];
        r.m[3] = m[2] * o.m[1] + m[3] * o.m[3];
        return r;
    }
    friend Mat2 operator*(cplx s, const Mat2& a) {
        Mat2 r;
        for (int i = 0; i < 4; ++i) r.m[i] = s * a.m[i];
        return r;
    }

    std::array<cplx, 2> apply(const std::array<cplx, 2>& v) const {
        return {m[0] * v[0] + m[1] * v[1], m[2] * v[0] + m[3] * v[1]};
    }
};

struct DiracMatrices {
    Mat2 alpha1, alpha2, beta;
};

// alpha1 = [[0,1],[1,0]], alpha2 = [[0,-i],[i,0]], beta = [[1,0],[0,-1]].
inline DiracMatrices dirac_matrices() {
    const cplx i(0.0, 1.0);
    DiracMatrices d;
    d.alpha1 = {{cplx(0), cplx(1), cplx(1), cplx(0)}};
    d.alpha2 = {{cplx(0), -i, i, cplx(0)}};
    d.beta = {{cplx(1), cplx(0), cplx(0), cplx(-1)}};
    return d;
}

enum class Sign : int { plus = +1, minus = -1 };

inline int sign_value(Sign s) { return static_cast<int>(s); }
inline Sign flip(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }

struct SignPair {
    Sign s1 = Sign::plus;
    Sign s2 = Sign::plus;
};

// xi . alpha (the Dirac symbol); zero matrix at xi = 0.
inline Mat2 dirac_symbol(Vec2 xi) {
    const auto d = dirac_matrices();
    Mat2 r;
    for (int i = 0; i < 4; ++i) r.m[i] = xi.x * d.alpha1.m[i] + xi.y * d.alpha2.m[i];
    return r;
}

// Pi_{+-}(xi) = (I +- (xi/|xi|).alpha)/2, with the convention Pi_{+-}(0) = I/2
// for the zero lattice mode.
inline Mat2 projection(Vec2 xi, Sign sign) {
    Mat2 r = Mat2::identity();
    const double n = xi.norm();
    if (n > 0.0) {
        const Mat2 sym = dirac_symbol({xi.x / n, xi.y / n});
        const double s = sign_value(sign);
        for (int i = 0; i < 4; ++i) r.m[i] = 0.5 * (r.m[i] + s * sym.m[i]);
        return r;
    }
    for (int i = 0; i < 4; ++i) r.m[i] = 0.5 * r.m[i];
    return r;
}

// Angle between nonzero vectors, in [0, pi]. The atan2 form agrees with the
// clamped arccos of the normalized inner product but stays fully accurate
// near 0 and pi.
inline double angle(Vec2 u, Vec2 v) {
    if ((u.x == 0.0 && u.y == 0.0) || (v.x == 0.0 && v.y == 0.0))
        throw std::domain_error("angle: zero vector");
    return std::atan2(std::abs(cross(u, v)), dot(u, v));
}

// Null-form symbol Pi_{s2}(eta-xi) beta Pi_{s1}(eta); its operator norm is
// sin(angle(s1*eta, s2*(eta-xi))/2), vanishing exactly on parallel inputs.
inline Mat2 nullform_symbol(Vec2 eta, Vec2 xi, SignPair signs) {
    const Vec2 w = eta - xi;
    if (eta.norm() == 0.0 || w.norm() == 0.0)
        throw std::domain_error("nullform_symbol: zero frequency");
    const auto d = dirac_matrices();
    return projection(w, signs.s2) * d.beta * projection(eta, signs.s1);
}

// --- field-level applications -------------------------------------------------

// Multiply each Fourier coefficient pair by a matrix symbol M(xi).
template <class MatSym>
void apply_matrix_multiplier_inplace(SpinorField& f, MatSym&& sym) {
    detail::require_rep(f.rep(), Rep::fourier, "apply_matrix_multiplier");
    const auto& g = f.grid();
    for (std::size_t p = 0; p < f.nodes(); ++p) {
        const Mat2 mm = sym(g.xi_at(p));
        const auto r = mm.apply({f.at(p, 0), f.at(p, 1)});
        f.at(p, 0) = r[0];
        f.at(p, 1) = r[1];
    }
}

template <class MatSym>
void apply_matrix_multiplier_inplace(SpaceTimeField& f, MatSym&& sym) {
    detail::require_rep(f.rep(), Rep::fourier, "apply_matrix_multiplier");
    if (f.ncomp() != 2) throw GridError("apply_matrix_multiplier: spinor field expected");
    const auto& g = f.grid();
    for (std::size_t p = 0; p < g.spatial_size(); ++p) {
        const Mat2 mm = sym(g.xi_at(p));
        for (int it = 0; it < g.n_t; ++it) {
            const auto r = mm.apply({f.at(it, p, 0), f.at(it, p, 1)});
            f.at(it, p, 0) = r[0];
            f.at(it, p, 1) = r[1];
        }
    }
}

// Pi_{+-}(D) acting on a Fourier-space spinor field.
inline SpinorField project_field(SpinorField f, Sign sign) {
    apply_matrix_multiplier_inplace(f, [sign](Vec2 xi) { return projection(xi, sign); });
    return f;
}
inline SpaceTimeField project_field(SpaceTimeField f, Sign sign) {
    apply_matrix_multiplier_inplace(f, [sign](Vec2 xi) { return projection(xi, sign); });
    return f;
}

// beta acting pointwise (valid in either representation).
inline SpinorField apply_beta(SpinorField f) {
    for (std::size_t p = 0; p < f.nodes(); ++p) f.at(p, 1) = -f.at(p, 1);
    return f;
}
inline SpaceTimeField apply_beta(SpaceTimeField f) {
    if (f.ncomp() != 2) throw GridError("apply_beta: spinor field expected");
    const auto& g = f.grid();
    for (int it = 0; it < g.n_t; ++it)
        for (std::size_t p = 0; p < g.spatial_size(); ++p) f.at(it, p, 1) = -f.at(it, p, 1);
    return f;
}

// Relative mass of f outside the range of Pi_sign(D), zero mode excluded
// (Pi_{+-}(0) = I/2 keeps the zero mode in both ranges by convention).
inline double projection_leakage(const SpinorField& f, Sign sign) {
    SpinorField g = project_field(f, flip(sign));
    double num = 0.0, den = 0.0;
    for (std::size_t p = 0; p < f.nodes(); ++p) {
        if (f.grid().xi_at(p).norm() == 0.0) continue;
        num += std::norm(g.at(p, 0)) + std::norm(g.at(p, 1));
        den += std::norm(f.at(p, 0)) + std::norm(f.at(p, 1));
    }
    return den > 0.0 ? std::sqrt(num / den) : 0.0;
}

} // namespace dkg
