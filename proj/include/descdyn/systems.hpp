#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "descdyn/angle.hpp"
#include "descdyn/probe.hpp"

namespace descdyn {

// Raised where a computation is undefined for the representation at
// hand (e.g. exact-equality period search on real angles).
struct UnsupportedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------
// Circle maps

// T(theta) = theta + lambda mod 1 turn. Rational lambda keeps rational
// angles rational; any real input promotes the result to real.
struct CircleRotation {
    Angle lambda;

    Angle apply(const Angle& theta) const { return theta + lambda; }
    Angle apply(const Angle& theta, std::uint64_t k) const {
        return Angle::advance(theta, lambda, k);
    }
};

// D(theta) = 2 theta mod 1 turn.
inline Angle double_angle(const Angle& theta, std::uint64_t k = 1) {
    return Angle::doubled(theta, k);
}

// ---------------------------------------------------------------------
// Toroidal grid

// Pixel coordinate on the n x n torus, components reduced mod n.
struct GridPoint {
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t n = 1;

    GridPoint() = default;
    GridPoint(std::int64_t a_, std::int64_t b_, std::int64_t n_) : n(n_) {
        if (n_ < 1) throw std::invalid_argument("GridPoint: n must be positive");
        a = ((a_ % n_) + n_) % n_;
        b = ((b_ % n_) + n_) % n_;
    }

    friend bool operator==(const GridPoint&, const GridPoint&) = default;

    std::string str() const { return std::to_string(a) + "," + std::to_string(b); }
};

// Minimum over wraparound images of the Euclidean distance.
inline double toroidal_distance(const GridPoint& p, const GridPoint& q) {
    if (p.n != q.n) throw std::invalid_argument("toroidal_distance: modulus mismatch");
    std::int64_t dx = std::llabs(p.a - q.a);
    std::int64_t dy = std::llabs(p.b - q.b);
    dx = std::min(dx, p.n - dx);
    dy = std::min(dy, p.n - dy);
    return std::sqrt(static_cast<double>(dx * dx + dy * dy));
}

// 2x2 integer matrix with arithmetic mod n, used for torus maps.
struct Mat2 {
    std::int64_t a = 1, b = 0, c = 0, d = 1;

    static Mat2 mulmod(const Mat2& x, const Mat2& y, std::int64_t n) {
        auto m = [n](__int128 v) { return static_cast<std::int64_t>(((v % n) + n) % n); };
        return {m(static_cast<__int128>(x.a) * y.a + static_cast<__int128>(x.b) * y.c),
                m(static_cast<__int128>(x.a) * y.b + static_cast<__int128>(x.b) * y.d),
                m(static_cast<__int128>(x.c) * y.a + static_cast<__int128>(x.d) * y.c),
                m(static_cast<__int128>(x.c) * y.b + static_cast<__int128>(x.d) * y.d)};
    }

    static Mat2 powmod(Mat2 base, std::uint64_t k, std::int64_t n) {
        Mat2 acc;  // identity
        acc.a = 1 % n;
        acc.d = 1 % n;
        base.a %= n; base.b %= n; base.c %= n; base.d %= n;
        while (k) {
            if (k & 1) acc = mulmod(acc, base, n);
            base = mulmod(base, base, n);
            k >>= 1;
        }
        return acc;
    }

    bool is_identity(std::int64_t n) const {
        return a == 1 % n && b == 0 && c == 0 && d == 1 % n;
    }
};

// The torus automorphism (a, b) -> (a + b, a + 2b) mod n. Determinant 1,
// so it permutes the n^2 grid cells; the inverse is (2a - b, -a + b).
struct CatMap {
    std::int64_t n = 1;

    explicit CatMap(std::int64_t n_) : n(n_) {
        if (n_ < 1) throw std::invalid_argument("CatMap: n must be positive");
    }

    static constexpr Mat2 matrix() { return {1, 1, 1, 2}; }
    static constexpr Mat2 inverse_matrix() { return {2, -1, -1, 1}; }

    GridPoint step(const GridPoint& p) const {
        check(p);
        return GridPoint(p.a + p.b, p.a + 2 * p.b, n);
    }

    GridPoint inverse_step(const GridPoint& p) const {
        check(p);
        return GridPoint(2 * p.a - p.b, -p.a + p.b, n);
    }

    GridPoint apply(const GridPoint& p, std::uint64_t k) const {
        check(p);
        const Mat2 m = Mat2::powmod(matrix(), k, n);
        return GridPoint(m.a * p.a + m.b * p.b, m.c * p.a + m.d * p.b, n);
    }

private:
    void check(const GridPoint& p) const {
        if (p.n != n) throw std::invalid_argument("CatMap: point modulus mismatch");
    }
};

inline GridPoint cat_step(const CatMap& map, const GridPoint& p) { return map.step(p); }

// ---------------------------------------------------------------------
// Descriptive dynamical system: a domain self-map plus a probe.

template <typename Point>
struct DescriptiveSystem {
    std::string name;
    // f^k(x); must satisfy power(x, 0) = x and the semigroup law.
    std::function<Point(const Point&, std::uint64_t)> power;
    Probe<Point> probe;
    // True when exact inputs produce exact outputs for all k.
    bool exact = false;

    Point step(const Point& x) const { return power(x, 1); }
};

template <typename Point>
Point iterate(const DescriptiveSystem<Point>& sys, const Point& x, std::uint64_t k) {
    return sys.power(x, k);
}

inline DescriptiveSystem<Angle> make_rotation_system(const Angle& lambda,
                                                     Probe<Angle> probe) {
    DescriptiveSystem<Angle> sys;
    sys.name = "rotation(" + lambda.str() + ")";
    const CircleRotation rot{lambda};
    sys.power = [rot](const Angle& theta, std::uint64_t k) { return rot.apply(theta, k); };
    sys.probe = std::move(probe);
    sys.exact = lambda.is_exact();
    return sys;
}

inline DescriptiveSystem<Angle> make_doubling_system(Probe<Angle> probe) {
    DescriptiveSystem<Angle> sys;
    sys.name = "doubling";
    sys.power = [](const Angle& theta, std::uint64_t k) { return Angle::doubled(theta, k); };
    sys.probe = std::move(probe);
    sys.exact = true;
    return sys;
}

inline DescriptiveSystem<GridPoint> make_cat_system(std::int64_t n, Probe<GridPoint> probe) {
    DescriptiveSystem<GridPoint> sys;
    sys.name = "cat(" + std::to_string(n) + ")";
    const CatMap map(n);
    sys.power = [map](const GridPoint& p, std::uint64_t k) { return map.apply(p, k); };
    sys.probe = std::move(probe);
    sys.exact = true;
    return sys;
}

// Unit shift on the real line, f(x) = x + 1.
inline DescriptiveSystem<double> make_unit_shift_system(Probe<double> probe) {
    DescriptiveSystem<double> sys;
    sys.name = "unit-shift";
    sys.power = [](const double& x, std::uint64_t k) {
        return x + static_cast<double>(k);
    };
    sys.probe = std::move(probe);
    sys.exact = false;
    return sys;
}

// Arbitrary user map given by its single step; powers iterate stepwise.
template <typename Point>
DescriptiveSystem<Point> make_custom_system(std::string name,
                                            std::function<Point(const Point&)> step,
                                            Probe<Point> probe, bool exact = false) {
    DescriptiveSystem<Point> sys;
    sys.name = std::move(name);
    sys.power = [step = std::move(step)](const Point& x, std::uint64_t k) {
        Point y = x;
        for (std::uint64_t i = 0; i < k; ++i) y = step(y);
        return y;
    };
    sys.probe = std::move(probe);
    sys.exact = exact;
    return sys;
}

// ---------------------------------------------------------------------
// Per-domain operations used by sensitivity estimation and reports.

template <typename Point>
struct PointTraits;

template <>
struct PointTraits<Angle> {
    static bool is_exact(const Angle& a) { return a.is_exact(); }
    // Distances and neighborhood radii are measured in radians.
    static double distance(const Angle& a, const Angle& b) {
        return Angle::distance_radians(a, b);
    }
    static std::string str(const Angle& a) { return a.str(); }
};

template <>
struct PointTraits<GridPoint> {
    static bool is_exact(const GridPoint&) { return true; }
    static double distance(const GridPoint& p, const GridPoint& q) {
        return toroidal_distance(p, q);
    }
    static std::string str(const GridPoint& p) { return p.str(); }
};

template <>
struct PointTraits<double> {
    static bool is_exact(double) { return false; }
    static double distance(double x, double y) { return std::fabs(x - y); }
    static std::string str(double x) { return format_real(x); }
};

}  // namespace descdyn
