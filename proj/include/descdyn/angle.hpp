#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

#include "descdyn/rational.hpp"

namespace descdyn {

// Format helpers shared by reports. A rational angle of t turns is
// printed as a reduced fraction of pi (2t = n/d radians/pi), e.g.
// t = 9/40 -> "9pi/20". Real values print with 12 significant digits.
std::string format_pi_fraction(const Rational& turns);
std::string format_real(double value);

// Point on the unit circle measured in turns (1 turn = 2*pi radians).
//
// Two representations, chosen at construction and never mixed:
//   exact  - Rational in [0, 1), closed under rotation by rational
//            amounts and under doubling; equality is exact.
//   real   - double in [0, 1); one rounding per derived value when the
//            closed-form k*lambda accumulation is used (absolute drift
//            <= a few ulps of k*lambda, ~1e-13 for k <= 1e6).
//
// operator== is representation equality: exact vs exact compares
// rationals, real vs real compares doubles, mixed is never equal.
class Angle {
public:
    Angle() : exact_(true), rat_(0), turns_(0.0) {}

    static Angle rational(const Rational& turns) {
        Angle a;
        a.exact_ = true;
        a.rat_ = turns.frac();
        a.turns_ = a.rat_.to_double();
        return a;
    }
    static Angle rational(std::int64_t p, std::int64_t q) {
        return rational(Rational(p, q));
    }
    static Angle real(double turns) {
        Angle a;
        a.exact_ = false;
        a.rat_ = Rational(0);
        double t = turns - std::floor(turns);
        if (t >= 1.0) t = 0.0;  // floor rounding at the seam
        a.turns_ = t;
        return a;
    }

    bool is_exact() const { return exact_; }
    const Rational& rat() const {
        if (!exact_) throw std::logic_error("Angle: no exact value for a real angle");
        return rat_;
    }
    double turns() const { return turns_; }
    double radians() const { return 2.0 * std::numbers::pi * turns_; }

    friend bool operator==(const Angle& a, const Angle& b) {
        if (a.exact_ != b.exact_) return false;
        return a.exact_ ? a.rat_ == b.rat_ : a.turns_ == b.turns_;
    }

    friend Angle operator+(const Angle& a, const Angle& b) {
        if (a.exact_ && b.exact_) return rational(a.rat_ + b.rat_);
        return real(a.turns_ + b.turns_);
    }

    // (a - b) mod 1 turn.
    static Angle diff(const Angle& a, const Angle& b) {
        if (a.exact_ && b.exact_) return rational(a.rat_ - b.rat_);
        return real(a.turns_ - b.turns_);
    }

    // Positional order on [0, 1); mixed representations compare as doubles.
    static bool less(const Angle& a, const Angle& b) {
        if (a.exact_ && b.exact_) return a.rat_ < b.rat_;
        return a.turns_ < b.turns_;
    }

    // theta + k*step mod 1, one rounding on the real path.
    static Angle advance(const Angle& theta, const Angle& step, std::uint64_t k) {
        if (theta.exact_ && step.exact_) {
            const Rational kk(static_cast<std::int64_t>(k));
            return rational(theta.rat_ + kk * step.rat_);
        }
        return real(theta.turns_ + static_cast<double>(k) * step.turns_);
    }

    // 2^k * theta mod 1. Exact angles use modular exponentiation on the
    // numerator; real angles double stepwise (each step is exact in
    // binary floating point, so the orbit is the true orbit of the
    // rounded seed).
    static Angle doubled(const Angle& theta, std::uint64_t k) {
        if (theta.exact_) {
            const std::int64_t q = theta.rat_.den;
            std::int64_t p = theta.rat_.num % q;
            __int128 base = 2 % q, acc = 1;
            std::uint64_t e = k;
            while (e) {
                if (e & 1) acc = acc * base % q;
                base = base * base % q;
                e >>= 1;
            }
            p = static_cast<std::int64_t>(acc * p % q);
            return rational(Rational(p, q));
        }
        double t = theta.turns_;
        for (std::uint64_t i = 0; i < k; ++i) {
            t *= 2.0;
            if (t >= 1.0) t -= 1.0;
        }
        return real(t);
    }

    // Index of the half-open sector [i/m, (i+1)/m) containing the angle.
    int sector(int m) const {
        if (m < 1) throw std::invalid_argument("Angle::sector: m must be positive");
        if (exact_) {
            const __int128 i = static_cast<__int128>(m) * rat_.num / rat_.den;
            return static_cast<int>(i);
        }
        int i = static_cast<int>(std::floor(static_cast<double>(m) * turns_));
        if (i < 0) i = 0;
        if (i >= m) i = m - 1;
        return i;
    }

    // Shortest arc distance in radians, exact rational path when possible.
    static double distance_radians(const Angle& a, const Angle& b) {
        if (a.exact_ && b.exact_) {
            const Rational d = (a.rat_ - b.rat_).frac();
            const Rational shorter = d + d <= Rational(1) ? d : Rational(1) - d;
            return 2.0 * std::numbers::pi * shorter.to_double();
        }
        double d = std::fabs(a.turns_ - b.turns_);
        if (d > 0.5) d = 1.0 - d;
        return 2.0 * std::numbers::pi * d;
    }

    // "p/q" for exact angles, 12 significant digits otherwise.
    std::string str() const {
        return exact_ ? rat_.str() : format_real(turns_);
    }

private:
    bool exact_;
    Rational rat_;
    double turns_;
};

inline std::string format_real(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

inline std::string format_pi_fraction(const Rational& turns) {
    const Rational two_t = turns * Rational(2);  // multiple of pi
    if (two_t.num == 0) return "0";
    std::string head;
    if (two_t.num == -1) head = "-pi";
    else if (two_t.num == 1) head = "pi";
    else head = std::to_string(two_t.num) + "pi";
    if (two_t.den == 1) return head;
    return head + "/" + std::to_string(two_t.den);
}

}  // namespace descdyn
