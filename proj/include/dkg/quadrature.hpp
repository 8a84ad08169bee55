// Adaptive Gauss-Kronrod (G7, K15) quadrature on finite intervals.
#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace dkg {

namespace detail {

// QUADPACK G7K15 nodes and weights on [-1, 1].
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
void gk15(F&& f, double a, double b, double& kronrod, double& err) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kXgk[i]);
        fv[14 - i] = f(c + h * kXgk[i]);
    }
    fv[7] = f(c);
    double resk = 0.0, resg = 0.0;
    for (int i = 0; i < 7; ++i) resk += kWgk[i] * (fv[i] + fv[14 - i]);
    resk += kWgk[7] * fv[7];
    for (int i = 0; i < 3; ++i) resg += kWg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
    resg += kWg[3] * fv[7];
    kronrod = resk * h;
    err = std::abs((resk - resg) * h);
}

} // namespace detail

// Bisect until the local Kronrod-Gauss discrepancy is below tol share.
template <class F>
double integrate_adaptive(F&& f, double a, double b, double abstol = 1e-10,
                          double reltol = 1e-10, int max_depth = 48) {
    struct Seg {
        double a, b;
        int depth;
    };
    double total = 0.0, rough = 0.0, rough_err = 0.0;
    detail::gk15(f, a, b, rough, rough_err);
    const double scale = std::max(std::abs(rough), 1e-300);

    Seg stack[2048];
    int top = 0;
    stack[top++] = {a, b, 0};
    while (top > 0) {
        const Seg s = stack[--top];
        double val, err;
        detail::gk15(f, s.a, s.b, val, err);
        const double budget =
            (abstol + reltol * scale) * std::abs(s.b - s.a) / std::abs(b - a);
        if (err <= budget || s.depth >= max_depth || top >= 2040) {
            total += val;
            continue;
        }
        const double m = 0.5 * (s.a + s.b);
        stack[top++] = {s.a, m, s.depth + 1};
        stack[top++] = {m, s.b, s.depth + 1};
    }
    return total;
}

} // namespace dkg
