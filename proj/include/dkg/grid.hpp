// Discrete space and space-time lattices for the periodic 2+1 dimensional setup.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace dkg {

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double two_pi = 2.0 * pi;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    double norm2() const { return x * x + y * y; }
    double norm() const { return std::hypot(x, y); }
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

// Japanese bracket <x> = sqrt(1+x^2), and the vector version <xi>.
inline double jbracket(double x) { return std::sqrt(1.0 + x * x); }
inline double jbracket(Vec2 v) { return std::sqrt(1.0 + v.norm2()); }

class GridError : public std::runtime_error {
  public:
    explicit GridError(const std::string& what) : std::runtime_error(what) {}
};

class ParameterError : public std::runtime_error {
  public:
    explicit ParameterError(const std::string& what) : std::runtime_error(what) {}
};

// Uniform periodic lattice: n_x points per spatial axis on a square torus of
// side period_L, and (for space-time fields) n_t samples over a window of
// length window_T. Frequencies per axis are 2*pi*k/period_L with
// k = -n/2 .. n/2-1, stored in DFT order (non-negative k first).
struct GridSpec {
    int n_x = 8;
    double period_L = two_pi;
    int n_t = 1;
    double window_T = 0.0;

    void validate() const {
        if (n_x < 8 || n_x % 2 != 0)
            throw GridError("GridSpec: n_x must be even and >= 8, got " + std::to_string(n_x));
        if (n_t < 1 || (n_t > 1 && n_t % 2 != 0))
            throw GridError("GridSpec: n_t must be 1 or even, got " + std::to_string(n_t));
        if (!(period_L > 0.0)) throw GridError("GridSpec: period_L must be positive");
        if (n_t > 1 && !(window_T > 0.0))
            throw GridError("GridSpec: window_T must be positive when n_t > 1");
    }

    std::size_t spatial_size() const { return std::size_t(n_x) * std::size_t(n_x); }
    std::size_t total_size() const { return std::size_t(n_t) * spatial_size(); }

    double dx() const { return period_L / n_x; }
    double dt() const { return n_t > 1 ? window_T / n_t : 0.0; }
    // Frequency-space cell sizes (2D spatial cell and 1D temporal cell).
    double dxi() const { return two_pi / period_L; }
    double dxi_cell() const { return dxi() * dxi(); }
    double dtau() const { return n_t > 1 ? two_pi / window_T : 1.0; }

    // Signed integer mode for a DFT-ordered index along an axis of n points.
    static int signed_mode(int idx, int n) { return idx < n / 2 ? idx : idx - n; }
    // DFT-ordered index of a signed mode, or -1 if out of range.
    static int index_of_mode(int k, int n) {
        if (k < -n / 2 || k >= n / 2) return -1;
        return k >= 0 ? k : k + n;
    }

    double freq_x(int idx) const { return dxi() * signed_mode(idx, n_x); }
    double freq_t(int idx) const { return dtau() * signed_mode(idx, n_t); }

    // Spatial frequency vector for a flat spatial index p = i1*n_x + i2.
    Vec2 xi_at(std::size_t p) const {
        const int i1 = int(p / n_x), i2 = int(p % n_x);
        return {freq_x(i1), freq_x(i2)};
    }
    Vec2 x_at(std::size_t p) const {
        const int i1 = int(p / n_x), i2 = int(p % n_x);
        return {dx() * i1, dx() * i2};
    }
    double t_at(int it) const { return dt() * it; }

    bool same_spatial(const GridSpec& o) const {
        return n_x == o.n_x && period_L == o.period_L;
    }
    bool operator==(const GridSpec& o) const {
        return n_x == o.n_x && period_L == o.period_L && n_t == o.n_t && window_T == o.window_T;
    }
};

} // namespace dkg
