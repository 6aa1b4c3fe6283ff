#ifndef GKKM_HALFINT_HPP
#define GKKM_HALFINT_HPP

#include <cmath>
#include <compare>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace gkkm {

/// Exact half-integer, stored as twice its value.  Quantum numbers that may
/// be half-integral (q, m, j, n, m+) are kept in this form so enumeration
/// never drifts.
struct Half {
    int twice = 0;

    constexpr Half() = default;
    constexpr explicit Half(int t) : twice(t) {}

    static constexpr Half of_int(int v) { return Half(2 * v); }
    static constexpr Half of_twice(int t) { return Half(t); }

    constexpr double value() const { return twice / 2.0; }
    constexpr bool is_integer() const { return twice % 2 == 0; }
    constexpr int as_int() const { return twice / 2; }  // requires is_integer

    constexpr Half operator+(Half o) const { return Half(twice + o.twice); }
    constexpr Half operator-(Half o) const { return Half(twice - o.twice); }
    constexpr Half operator-() const { return Half(-twice); }
    constexpr Half abs() const { return Half(twice < 0 ? -twice : twice); }
    friend constexpr auto operator<=>(Half, Half) = default;
};

inline constexpr Half half_one{2};

/// Parse a decimal that must round to an exact half-integer ("2", "-1.5", "0.5").
inline Half parse_half(const std::string& s) {
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw std::invalid_argument("not a number: '" + s + "'");
    double t = 2.0 * v;
    double r = std::round(t);
    if (std::fabs(t - r) > 1e-9)
        throw std::invalid_argument("'" + s + "' is not a half-integer");
    return Half(static_cast<int>(r));
}

inline std::string half_str(Half h) {
    if (h.is_integer()) return std::to_string(h.as_int());
    double v = h.value();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

} // namespace gkkm

#endif
