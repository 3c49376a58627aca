#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "angle.hpp"
#include "proximity.hpp"
#include "systems.hpp"

namespace descdyn {

// Open arc (lo, lo + width) on the circle, measured in turns.  Width stays in
// (0, 1); a full-circle arc (the image of an expanding interval once it wraps)
// is flagged explicitly.  Endpoints are excluded, so adjacent basis arcs that
// share an endpoint do not overlap.
struct Arc {
    Angle lo;
    Angle width;
    bool full = false;

    bool is_exact() const { return full || (lo.is_exact() && width.is_exact()); }

    bool contains(const Angle& theta) const {
        if (full) return true;
        Angle delta = Angle::diff(theta, lo);
        bool at_lo = delta.is_exact() ? delta.rat() == Rational(0) : delta.turns() == 0.0;
        if (at_lo) return false;
        return Angle::less(delta, width);
    }

    bool overlaps(const Arc& other) const {
        if (full || other.full) return true;
        Angle fwd = Angle::diff(other.lo, lo);
        Angle bwd = Angle::diff(lo, other.lo);
        return Angle::less(fwd, width) || Angle::less(bwd, other.width);
    }

    std::string str() const {
        if (full) return "(full circle)";
        if (lo.is_exact() && width.is_exact()) {
            Rational hi = lo.rat() + width.rat();
            return "(" + lo.rat().str() + ", " + hi.str() + ")";
        }
        return "(" + format_real(lo.turns()) + ", " + format_real(lo.turns() + width.turns()) + ")";
    }
};

// Render an exact arc as an open interval in multiples of pi, choosing the
// signed representative when the arc straddles angle zero, e.g. (-pi/20, pi/20).
inline std::string format_arc_pi(const Arc& arc) {
    if (arc.full) return "(full circle)";
    if (!arc.is_exact()) return arc.str();
    Rational lo = arc.lo.rat();
    Rational hi = lo + arc.width.rat();
    if (Rational(1) < hi) {
        lo = lo - Rational(1);
        hi = hi - Rational(1);
    }
    return "(" + format_pi_fraction(lo) + ", " + format_pi_fraction(hi) + ")";
}

inline Arc make_arc(const Angle& lo, const Angle& width) {
    double w = width.turns();
    if (!(w > 0.0) || w >= 1.0) throw std::invalid_argument("arc width must lie in (0, 1)");
    return Arc{lo, width, false};
}

inline Arc full_circle() { return Arc{Angle(), Angle(), true}; }

// Image of an arc under k steps of the rotation by lambda: a rigid shift.
inline Arc rotate_arc(const Arc& arc, const Angle& lambda, std::uint64_t k) {
    if (arc.full) return arc;
    return Arc{Angle::advance(arc.lo, lambda, k), arc.width, false};
}

// Image of an arc under k steps of angle doubling.  The width doubles each
// step and the image becomes the whole circle once it reaches a full turn.
inline Arc double_arc(const Arc& arc, std::uint64_t k) {
    if (arc.full) return arc;
    Angle lo = arc.lo;
    Angle width = arc.width;
    for (std::uint64_t i = 0; i < k; ++i) {
        bool wraps = width.is_exact() ? !(width.rat() < Rational(1, 2))
                                      : !(width.turns() < 0.5);
        if (wraps) return full_circle();
        width = width.is_exact() ? Angle::rational(width.rat() * Rational(2))
                                 : Angle::real(width.turns() * 2.0);
        lo = Angle::doubled(lo, 1);
    }
    return Arc{lo, width, false};
}

// Evenly spaced interior samples plus the midpoint.  Positions are at
// fractions (2j+1)/(2s) of the width, so for rational arcs every sample is an
// exact rational angle and none lands on an arc endpoint.
inline Sample<Angle> arc_samples(const Arc& arc, int samples_per_arc) {
    if (samples_per_arc < 1) throw std::invalid_argument("samples_per_arc must be positive");
    if (arc.full) {
        Arc whole = make_arc(Angle(), Angle::rational(Rational(1, 2)));
        Sample<Angle> a = arc_samples(whole, samples_per_arc);
        Arc rest = make_arc(Angle::rational(Rational(1, 2)), Angle::rational(Rational(1, 2)));
        for (const Angle& t : arc_samples(rest, samples_per_arc)) a.push_back(t);
        return a;
    }
    Sample<Angle> out;
    out.reserve(static_cast<std::size_t>(samples_per_arc) + 1);
    bool exact = arc.is_exact();
    for (int j = 0; j < samples_per_arc; ++j) {
        if (exact) {
            Rational t(2 * j + 1, 2 * samples_per_arc);
            out.push_back(Angle::rational(arc.lo.rat() + arc.width.rat() * t));
        } else {
            double t = (2.0 * j + 1.0) / (2.0 * samples_per_arc);
            out.push_back(Angle::real(arc.lo.turns() + arc.width.turns() * t));
        }
    }
    Angle center = exact
        ? Angle::rational(arc.lo.rat() + arc.width.rat() * Rational(1, 2))
        : Angle::real(arc.lo.turns() + arc.width.turns() * 0.5);
    bool seen = false;
    for (const Angle& t : out) seen = seen || t == center;
    if (!seen) out.push_back(center);
    return out;
}

// Basis of m equal open arcs (i/m, (i+1)/m) with cached sample sets.
struct CircleBasis {
    std::vector<Arc> arcs;
    std::vector<std::string> labels;
    std::vector<Sample<Angle>> samples;
    int samples_per_arc = 16;

    std::size_t size() const { return arcs.size(); }
};

inline CircleBasis equal_arc_basis(int arc_count = 8, int samples_per_arc = 16) {
    if (arc_count < 1) throw std::invalid_argument("arc_count must be positive");
    CircleBasis basis;
    basis.samples_per_arc = samples_per_arc;
    for (int i = 0; i < arc_count; ++i) {
        Arc arc = make_arc(Angle::rational(Rational(i, arc_count)),
                           Angle::rational(Rational(1, arc_count)));
        basis.arcs.push_back(arc);
        basis.labels.push_back(arc.str());
        basis.samples.push_back(arc_samples(arc, samples_per_arc));
    }
    return basis;
}

// Basis for the n-by-n grid.  Cells are finite point sets, so sampling is
// exhaustive and topological questions reduce to exact membership.
struct GridBasis {
    std::int64_t modulus = 1;
    std::vector<Sample<GridPoint>> sets;
    std::vector<std::string> labels;

    std::size_t size() const { return sets.size(); }
};

inline GridBasis singleton_basis(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("grid modulus must be positive");
    GridBasis basis;
    basis.modulus = n;
    basis.sets.reserve(static_cast<std::size_t>(n * n));
    for (std::int64_t a = 0; a < n; ++a) {
        for (std::int64_t b = 0; b < n; ++b) {
            GridPoint p(a, b, n);
            basis.sets.push_back(Sample<GridPoint>{p});
            basis.labels.push_back("{" + p.str() + "}");
        }
    }
    return basis;
}

// Domain-neutral read access to a basis: sampled points, display labels, and
// an exact membership test per set.  Checks that must work across state
// spaces (conjugacy transport) consume this instead of a concrete basis.
template <typename Point>
struct BasisView {
    std::vector<Sample<Point>> samples;
    std::vector<std::string> labels;
    std::function<bool(std::size_t, const Point&)> contains;

    std::size_t size() const { return samples.size(); }
};

inline BasisView<Angle> view(const CircleBasis& basis) {
    BasisView<Angle> v;
    v.samples = basis.samples;
    v.labels = basis.labels;
    v.contains = [arcs = basis.arcs](std::size_t i, const Angle& theta) {
        return arcs.at(i).contains(theta);
    };
    return v;
}

inline GridBasis grid_basis_from_sets(std::int64_t n, std::vector<Sample<GridPoint>> sets) {
    GridBasis basis;
    basis.modulus = n;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (sets[i].empty()) throw std::invalid_argument("basis sets must be nonempty");
        std::string label = "{";
        for (std::size_t j = 0; j < sets[i].size(); ++j) {
            if (j) label += "; ";
            label += sets[i][j].str();
        }
        label += "}";
        basis.labels.push_back(label);
    }
    basis.sets = std::move(sets);
    return basis;
}

inline BasisView<GridPoint> view(const GridBasis& basis) {
    BasisView<GridPoint> v;
    v.samples = basis.sets;
    v.labels = basis.labels;
    v.contains = [sets = basis.sets](std::size_t i, const GridPoint& p) {
        for (const GridPoint& q : sets.at(i)) {
            if (q == p) return true;
        }
        return false;
    };
    return v;
}

}  // namespace descdyn
