#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <compare>

namespace descdyn {

// Exact rational number over int64.
//
// Invariant: den > 0 and gcd(|num|, den) = 1 (num carries the sign,
// 0 is stored as 0/1). All intermediate products run through __int128
// and the result must fit back into int64, otherwise overflow_error
// is thrown. Denominators in this library stay small (angle grids,
// sector counts), so the headroom is never a practical concern.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : num(n), den(1) {}
    Rational(std::int64_t n, std::int64_t d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
        num = g ? n / g : 0;
        den = g ? d / g : 1;
    }

    static Rational checked(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        const __int128 a = n < 0 ? -n : n;
        __int128 g = gcd128(a, d);
        if (g == 0) g = 1;
        n /= g;
        d /= g;
        constexpr __int128 lo = std::numeric_limits<std::int64_t>::min();
        constexpr __int128 hi = std::numeric_limits<std::int64_t>::max();
        if (n < lo || n > hi || d > hi)
            throw std::overflow_error("Rational: value does not fit in int64");
        Rational r;
        r.num = static_cast<std::int64_t>(n);
        r.den = static_cast<std::int64_t>(d);
        return r;
    }

    friend Rational operator+(const Rational& x, const Rational& y) {
        return checked(static_cast<__int128>(x.num) * y.den +
                       static_cast<__int128>(y.num) * x.den,
                       static_cast<__int128>(x.den) * y.den);
    }
    friend Rational operator-(const Rational& x, const Rational& y) {
        return checked(static_cast<__int128>(x.num) * y.den -
                       static_cast<__int128>(y.num) * x.den,
                       static_cast<__int128>(x.den) * y.den);
    }
    friend Rational operator*(const Rational& x, const Rational& y) {
        return checked(static_cast<__int128>(x.num) * y.num,
                       static_cast<__int128>(x.den) * y.den);
    }
    friend Rational operator/(const Rational& x, const Rational& y) {
        if (y.num == 0) throw std::domain_error("Rational: division by zero");
        return checked(static_cast<__int128>(x.num) * y.den,
                       static_cast<__int128>(x.den) * y.num);
    }
    Rational operator-() const {
        Rational r;
        r.num = -num;
        r.den = den;
        return r;
    }

    friend bool operator==(const Rational& x, const Rational& y) = default;
    friend std::strong_ordering operator<=>(const Rational& x, const Rational& y) {
        const __int128 l = static_cast<__int128>(x.num) * y.den;
        const __int128 r = static_cast<__int128>(y.num) * x.den;
        return l < r ? std::strong_ordering::less
             : l > r ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    // Largest integer <= num/den (floor, not truncation).
    std::int64_t floor() const {
        std::int64_t q = num / den;
        if (num % den != 0 && num < 0) --q;
        return q;
    }

    // Fractional part in [0, 1).
    Rational frac() const {
        return *this - Rational(floor());
    }

    double to_double() const {
        return static_cast<double>(num) / static_cast<double>(den);
    }

    bool is_integer() const { return den == 1; }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    // Accepts "p", "p/q", optional leading '-'.
    static Rational parse(const std::string& text) {
        const auto slash = text.find('/');
        try {
            auto whole = [](const std::string& part) {
                std::size_t used = 0;
                const long long value = std::stoll(part, &used);
                if (used != part.size()) throw std::invalid_argument("trailing characters");
                return value;
            };
            if (slash == std::string::npos) return Rational(whole(text));
            return Rational(whole(text.substr(0, slash)), whole(text.substr(slash + 1)));
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("Rational: cannot parse '" + text + "'");
        } catch (const std::out_of_range&) {
            throw std::invalid_argument("Rational: literal out of range '" + text + "'");
        }
    }

private:
    static constexpr __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) {
            const __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }
};

}  // namespace descdyn
