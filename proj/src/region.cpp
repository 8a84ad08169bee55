#include "dkg/region.hpp"

#include <cctype>
#include <cstdlib>

namespace dkg {

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw ParameterError("parse_rational: empty string");
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const auto n = std::stoll(text.substr(0, slash));
        const auto d = std::stoll(text.substr(slash + 1));
        return {n, d};
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) return {std::stoll(text), 1};

    const std::string head = text.substr(0, dot);
    const std::string frac = text.substr(dot + 1);
    if (frac.size() > 15) throw ParameterError("parse_rational: too many decimal digits");
    for (char c : frac)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ParameterError("parse_rational: malformed decimal '" + text + "'");
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const bool negative = !head.empty() && head[0] == '-';
    std::int64_t whole = (head == "-" || head.empty()) ? 0 : std::stoll(head);
    if (whole < 0) whole = -whole;
    std::int64_t num = whole * den + (frac.empty() ? 0 : std::stoll(frac));
    if (negative) num = -num;
    return {num, den};
}

RegionPoint region_base(Rational r, RegionVariant variant) {
    if (!(Rational(1) < r && r <= Rational(2)))
        throw ParameterError("region: r must lie in (1, 2], got " + r.str());
    if (variant == RegionVariant::minimal_s) {
        return {Rational(33, 20) / r - Rational(41, 40), Rational(9, 5) / r - Rational(11, 20)};
    }
    return {Rational(5, 4) / r - Rational(5, 8), Rational(2) / r - Rational(3, 4)};
}

RegionPoint admissible_region(const RegionQuery& q) {
    if (!(Rational(0) < q.delta)) throw ParameterError("region: delta must be positive");
    const RegionPoint base = region_base(q.r, q.variant);
    return {base.s + q.delta, base.l + q.delta};
}

bool r2_region_contains(Rational s, Rational l) {
    if (!(Rational(-1, 5) < s)) return false;
    const Rational half_s = s / Rational(2);
    const Rational lower =
        rational_max(rational_max(Rational(1, 4) - half_s, Rational(1, 4) + half_s), s);
    const Rational upper =
        rational_min(rational_min(Rational(3, 4) + Rational(2) * s,
                                  Rational(3, 4) + Rational(3, 2) * s),
                     Rational(1) + s);
    return lower < l && l < upper;
}

} // namespace dkg
