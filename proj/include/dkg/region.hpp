// Admissible (s, l) data-regularity pairs as functions of the Fourier-Lebesgue
// index r, in exact rational arithmetic, plus the r=2 region predicate.
#pragma once

#include "dkg/grid.hpp"

#include <cstdint>
#include <numeric>
#include <string>

namespace dkg {

// Small exact rational on int64 (all quantities here have tiny denominators).
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n) : num(n), den(1) {}
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw ParameterError("Rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    double value() const { return double(num) / double(den); }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    friend Rational operator+(Rational a, Rational b) {
        return {a.num * b.den + b.num * a.den, a.den * b.den};
    }
    friend Rational operator-(Rational a, Rational b) {
        return {a.num * b.den - b.num * a.den, a.den * b.den};
    }
    friend Rational operator*(Rational a, Rational b) { return {a.num * b.num, a.den * b.den}; }
    friend Rational operator/(Rational a, Rational b) {
        if (b.num == 0) throw ParameterError("Rational: division by zero");
        return {a.num * b.den, a.den * b.num};
    }
    friend bool operator==(Rational a, Rational b) { return a.num == b.num && a.den == b.den; }
    friend bool operator<(Rational a, Rational b) { return a.num * b.den < b.num * a.den; }
    friend bool operator<=(Rational a, Rational b) { return a.num * b.den <= b.num * a.den; }
    friend bool operator>(Rational a, Rational b) { return b < a; }
    friend bool operator>=(Rational a, Rational b) { return b <= a; }
};

inline Rational rational_min(Rational a, Rational b) { return a < b ? a : b; }
inline Rational rational_max(Rational a, Rational b) { return a < b ? b : a; }

// Parses "2", "-3/4", "1.01" (decimal expansions are exact).
Rational parse_rational(const std::string& text);

enum class RegionVariant { minimal_s, minimal_l };

struct RegionQuery {
    Rational r;
    Rational delta;
    RegionVariant variant = RegionVariant::minimal_s;
};

struct RegionPoint {
    Rational s;
    Rational l;
};

// The base pairs (s0, l0): (33/(20r) - 41/40, 9/(5r) - 11/20) for minimal s,
// (5/(4r) - 5/8, 2/r - 3/4) for minimal l. Requires 1 < r <= 2.
RegionPoint region_base(Rational r, RegionVariant variant);

// (s0 + delta, l0 + delta) for delta > 0.
RegionPoint admissible_region(const RegionQuery& q);

// r=2 companion region: s > -1/5 and
// max(1/4 - s/2, 1/4 + s/2, s) < l < min(3/4 + 2s, 3/4 + 3s/2, 1 + s).
bool r2_region_contains(Rational s, Rational l);

} // namespace dkg
