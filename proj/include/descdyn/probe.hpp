#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "descdyn/angle.hpp"
#include "descdyn/feature.hpp"

namespace descdyn {

// Named total map from domain points to feature vectors. Deterministic
// by construction (the callable must be pure); a point outside the
// declared domain raises std::domain_error from the callable.
template <typename Point>
struct Probe {
    std::string name;
    int dimension = 1;
    ValueKind kind = ValueKind::ExactInteger;
    std::function<FeatureVector(const Point&)> eval;

    FeatureVector operator()(const Point& x) const {
        FeatureVector v = eval(x);
        if (static_cast<int>(v.dim()) != dimension)
            throw std::logic_error("Probe '" + name + "': dimension mismatch");
        return v;
    }
};

template <typename Point>
FeatureVector evaluate(const Probe<Point>& probe, const Point& x) {
    return probe(x);
}

// Partition of the circle into m half-open sectors [i/m, (i+1)/m) of
// equal length; sector i maps to the i-th standard basis vector of R^m,
// so distinct sectors compare unequal exactly.
inline Probe<Angle> sector_probe(int sectors = 4) {
    if (sectors < 1) throw std::invalid_argument("sector_probe: need >= 1 sectors");
    Probe<Angle> p;
    p.name = "sector" + std::to_string(sectors);
    p.dimension = sectors;
    p.kind = ValueKind::ExactInteger;
    p.eval = [sectors](const Angle& theta) {
        std::vector<double> v(static_cast<std::size_t>(sectors), 0.0);
        v[static_cast<std::size_t>(theta.sector(sectors))] = 1.0;
        return FeatureVector(std::move(v));
    };
    return p;
}

template <typename Point>
Probe<Point> constant_probe(FeatureVector value, std::string name = "constant") {
    Probe<Point> p;
    p.name = std::move(name);
    p.dimension = static_cast<int>(value.dim());
    p.kind = ValueKind::ExactInteger;
    p.eval = [value](const Point&) { return value; };
    return p;
}

// Two-valued probe on the real line: r1 on [0, 1], r2 elsewhere.
inline Probe<double> step_probe(double r1 = 0.0, double r2 = 1.0) {
    Probe<double> p;
    p.name = "step";
    p.dimension = 1;
    p.kind = ValueKind::ExactInteger;
    p.eval = [r1, r2](const double& x) {
        return FeatureVector{(0.0 <= x && x <= 1.0) ? r1 : r2};
    };
    return p;
}

// Real-valued probe on the circle: the point's planar coordinates
// (cos theta, sin theta). Compares with tolerance.
inline Probe<Angle> position_probe() {
    Probe<Angle> p;
    p.name = "position";
    p.dimension = 2;
    p.kind = ValueKind::RealWithTolerance;
    p.eval = [](const Angle& theta) {
        const double r = theta.radians();
        return FeatureVector{std::cos(r), std::sin(r)};
    };
    return p;
}

// Finite table probe over named objects (e.g. color wavelengths in nm).
inline Probe<std::string> table_probe(std::map<std::string, double> table,
                                      std::string name = "table") {
    Probe<std::string> p;
    p.name = std::move(name);
    p.dimension = 1;
    p.kind = ValueKind::ExactInteger;
    p.eval = [table = std::move(table), n = p.name](const std::string& key) {
        const auto it = table.find(key);
        if (it == table.end())
            throw std::domain_error("probe '" + n + "': object '" + key +
                                    "' outside declared domain");
        return FeatureVector{it->second};
    };
    return p;
}

}  // namespace descdyn
