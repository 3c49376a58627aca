#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "proximity.hpp"
#include "systems.hpp"

namespace descdyn {

template <typename Point>
struct OrbitRow {
    std::uint64_t k = 0;
    Point x{};
    FeatureVector phi;
};

// First `count` orbit points starting at k = 0, with their feature values.
template <typename Point>
std::vector<OrbitRow<Point>> orbit_rows(const DescriptiveSystem<Point>& sys, const Point& x0,
                                        std::uint64_t count) {
    std::vector<OrbitRow<Point>> rows;
    rows.reserve(count);
    for (std::uint64_t k = 0; k < count; ++k) {
        Point x = sys.power(x0, k);
        FeatureVector phi = sys.probe(x);
        rows.push_back(OrbitRow<Point>{k, std::move(x), std::move(phi)});
    }
    return rows;
}

// Least m in [1, m_max] with phi(f^m(x0)) matching phi(x0), i.e. the first
// return of the orbit's feature value.  Integer-valued probes compare
// exactly; real-valued probes use the tolerance.
template <typename Point>
std::optional<std::uint64_t> find_descriptive_period(const DescriptiveSystem<Point>& sys,
                                                     const Point& x0, std::uint64_t m_max,
                                                     const Tolerance& tol = {}) {
    const FeatureVector phi0 = sys.probe(x0);
    const double eps = tol.effective(sys.probe.kind);
    for (std::uint64_t m = 1; m <= m_max; ++m) {
        if (features_equal(phi0, sys.probe(sys.power(x0, m)), eps)) return m;
    }
    return std::nullopt;
}

// Least m in [1, m_max] with f^m(x0) = x0 under exact state equality.
// Refuses to guess on inexact state: floating-point orbits cannot certify
// exact recurrence, so callers must handle UnsupportedError.
template <typename Point>
std::optional<std::uint64_t> find_classical_period(const DescriptiveSystem<Point>& sys,
                                                   const Point& x0, std::uint64_t m_max) {
    if (!sys.exact || !PointTraits<Point>::is_exact(x0)) {
        throw UnsupportedError("classical period search needs an exact map and exact state");
    }
    for (std::uint64_t m = 1; m <= m_max; ++m) {
        if (sys.power(x0, m) == x0) return m;
    }
    return std::nullopt;
}

// Both period notions side by side.  The classical side records whether the
// search was even meaningful; when it is not, `classical_period` stays empty
// and `classical_supported` is false instead of an exception escaping.
template <typename Point>
struct PeriodReport {
    Point seed{};
    std::uint64_t m_max = 0;
    std::optional<std::uint64_t> descriptive_period;
    std::optional<std::uint64_t> classical_period;
    bool classical_supported = false;
};

template <typename Point>
PeriodReport<Point> scan_periods(const DescriptiveSystem<Point>& sys, const Point& x0,
                                 std::uint64_t m_max, const Tolerance& tol = {}) {
    PeriodReport<Point> report;
    report.seed = x0;
    report.m_max = m_max;
    report.descriptive_period = find_descriptive_period(sys, x0, m_max, tol);
    try {
        report.classical_period = find_classical_period(sys, x0, m_max);
        report.classical_supported = true;
    } catch (const UnsupportedError&) {
        report.classical_supported = false;
    }
    return report;
}

// Recurrence classes over a sample: for each m <= m_max, which sample members
// return to their feature value (descriptive) or their exact state
// (classical) after m steps.  Membership is recurrence at m, not minimality,
// so a point of least period p appears at every multiple of p.
template <typename Point>
struct PeriodicObjectSets {
    std::uint64_t m_max = 0;
    std::vector<std::vector<std::size_t>> descriptive_per_m;  // index m-1 -> sample indices
    std::vector<std::size_t> descriptive_per;                 // union over m
    bool classical_supported = false;
    std::vector<std::vector<std::size_t>> classical_per_m;
    std::vector<std::size_t> classical_per;
};

template <typename Point>
PeriodicObjectSets<Point> periodic_object_sets(const DescriptiveSystem<Point>& sys,
                                               const Sample<Point>& sample,
                                               std::uint64_t m_max,
                                               const Tolerance& tol = {}) {
    if (sample.empty()) throw std::invalid_argument("periodic_object_sets: empty sample");
    PeriodicObjectSets<Point> sets;
    sets.m_max = m_max;
    sets.descriptive_per_m.resize(m_max);
    sets.classical_supported = sys.exact;
    for (const Point& x : sample) {
        sets.classical_supported = sets.classical_supported && PointTraits<Point>::is_exact(x);
    }
    if (sets.classical_supported) sets.classical_per_m.resize(m_max);

    std::vector<bool> in_descriptive(sample.size(), false);
    std::vector<bool> in_classical(sample.size(), false);
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const FeatureVector phi0 = sys.probe(sample[i]);
        const double eps = tol.effective(sys.probe.kind);
        for (std::uint64_t m = 1; m <= m_max; ++m) {
            Point y = sys.power(sample[i], m);
            if (features_equal(phi0, sys.probe(y), eps)) {
                sets.descriptive_per_m[m - 1].push_back(i);
                in_descriptive[i] = true;
            }
            if (sets.classical_supported && y == sample[i]) {
                sets.classical_per_m[m - 1].push_back(i);
                in_classical[i] = true;
            }
        }
    }
    for (std::size_t i = 0; i < sample.size(); ++i) {
        if (in_descriptive[i]) sets.descriptive_per.push_back(i);
        if (in_classical[i]) sets.classical_per.push_back(i);
    }
    return sets;
}

}  // namespace descdyn
