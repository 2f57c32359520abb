#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace chainsim {

//! Exact rational on int64 with 128-bit intermediates. Ratios asserted by the
//! acceptance suite (CR values, throughput, beta) must be equality-testable,
//! so nothing here ever rounds.
struct Rational {
    std::int64_t num{0};
    std::int64_t den{1};

    friend bool operator==(const Rational&, const Rational&) = default;
};

namespace detail {
inline __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) { __int128 t = a % b; a = b; b = t; }
    return a;
}

inline Rational reduce128(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("rational: zero denominator");
    if (d < 0) { n = -n; d = -d; }
    __int128 g = gcd128(n, d);
    if (g > 1) { n /= g; d /= g; }
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
        throw std::overflow_error("rational: value out of range");
    return Rational{static_cast<std::int64_t>(n), static_cast<std::int64_t>(d)};
}
} // namespace detail

inline Rational ratio(std::int64_t num, std::int64_t den) {
    return detail::reduce128(num, den);
}

inline Rational operator+(const Rational& a, const Rational& b) {
    return detail::reduce128(static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den,
                             static_cast<__int128>(a.den) * b.den);
}

inline Rational operator-(const Rational& a, const Rational& b) {
    return detail::reduce128(static_cast<__int128>(a.num) * b.den - static_cast<__int128>(b.num) * a.den,
                             static_cast<__int128>(a.den) * b.den);
}

inline Rational operator*(const Rational& a, const Rational& b) {
    return detail::reduce128(static_cast<__int128>(a.num) * b.num,
                             static_cast<__int128>(a.den) * b.den);
}

inline Rational operator/(const Rational& a, const Rational& b) {
    if (b.num == 0) throw std::domain_error("rational: division by zero");
    return detail::reduce128(static_cast<__int128>(a.num) * b.den,
                             static_cast<__int128>(a.den) * b.num);
}

inline bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}
inline bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
inline bool operator>(const Rational& a, const Rational& b) { return b < a; }
inline bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

inline double to_double(const Rational& r) { return static_cast<double>(r.num) / static_cast<double>(r.den); }

inline std::string to_string(const Rational& r) {
    if (r.den == 1) return std::to_string(r.num);
    return std::to_string(r.num) + "/" + std::to_string(r.den);
}

//! Fixed-point decimal rendering (round half away from zero); deterministic,
//! used for CSV fields so artifacts are byte-stable.
inline std::string to_decimal(const Rational& r, int places = 6) {
    std::int64_t scale = 1;
    for (int i = 0; i < places; ++i) scale *= 10;
    __int128 scaled = static_cast<__int128>(r.num) * scale;
    bool neg = scaled < 0;
    __int128 mag = neg ? -scaled : scaled;
    __int128 q = mag / r.den;
    __int128 rem = mag % r.den;
    if (2 * rem >= r.den) ++q;
    std::int64_t whole = static_cast<std::int64_t>(q / scale);
    std::int64_t frac = static_cast<std::int64_t>(q % scale);
    std::string f = std::to_string(frac);
    f.insert(0, static_cast<size_t>(places) - f.size(), '0');
    return (neg ? "-" : "") + std::to_string(whole) + "." + f;
}

} // namespace chainsim
