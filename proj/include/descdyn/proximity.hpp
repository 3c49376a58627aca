#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "descdyn/feature.hpp"
#include "descdyn/probe.hpp"

namespace descdyn {

template <typename Point>
using Sample = std::vector<Point>;

// Phi(A) for a finite sample, deduplicated under the probe's equality
// rule.
template <typename Point>
FeatureSet feature_set(const Sample<Point>& sample, const Probe<Point>& probe,
                       const Tolerance& tol = Tolerance()) {
    FeatureSet set(tol.effective(probe.kind));
    for (const Point& x : sample) set.insert(probe(x));
    return set;
}

// A and B are descriptively near when their feature-vector images
// intersect. Samples must be nonempty.
template <typename Point>
bool descriptively_near(const Sample<Point>& a, const Sample<Point>& b,
                        const Probe<Point>& probe, const Tolerance& tol = Tolerance()) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("descriptively_near: empty sample");
    return feature_set(a, probe, tol).intersects(feature_set(b, probe, tol));
}

// Members of A union B whose feature vector lies in Phi(A) and Phi(B).
// The union deduplicates points by representation equality, keeping
// first occurrence order (A before B).
template <typename Point>
Sample<Point> descriptive_intersection(const Sample<Point>& a, const Sample<Point>& b,
                                       const Probe<Point>& probe,
                                       const Tolerance& tol = Tolerance()) {
    Sample<Point> unioned;
    for (const Point& x : a)
        if (std::find(unioned.begin(), unioned.end(), x) == unioned.end())
            unioned.push_back(x);
    for (const Point& x : b)
        if (std::find(unioned.begin(), unioned.end(), x) == unioned.end())
            unioned.push_back(x);

    const FeatureSet fa = feature_set(a, probe, tol);
    const FeatureSet fb = feature_set(b, probe, tol);
    Sample<Point> out;
    for (const Point& x : unioned) {
        const FeatureVector v = probe(x);
        if (fa.contains(v) && fb.contains(v)) out.push_back(x);
    }
    return out;
}

// Result of checking that a map preserves descriptive nearness over the
// supplied sample pairs. On failure, the first witness pair (A, B) has
// A near B under the source probe while h(A) and h(B) are far under the
// destination probe.
template <typename Point>
struct ContinuityVerdict {
    bool pass = true;
    std::optional<std::size_t> witness_index;
    Sample<Point> witness_a;
    Sample<Point> witness_b;
};

template <typename PX, typename PY>
ContinuityVerdict<PX> check_descriptive_continuity(
    const std::function<PY(const PX&)>& h, const Probe<PX>& probe_src,
    const Probe<PY>& probe_dst,
    const std::vector<std::pair<Sample<PX>, Sample<PX>>>& pairs,
    const Tolerance& tol = Tolerance()) {
    ContinuityVerdict<PX> verdict;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& [a, b] = pairs[i];
        if (a.empty() || b.empty()) continue;
        if (!descriptively_near(a, b, probe_src, tol)) continue;
        Sample<PY> ha, hb;
        ha.reserve(a.size());
        hb.reserve(b.size());
        for (const PX& x : a) ha.push_back(h(x));
        for (const PX& x : b) hb.push_back(h(x));
        if (!descriptively_near(ha, hb, probe_dst, tol)) {
            verdict.pass = false;
            verdict.witness_index = i;
            verdict.witness_a = a;
            verdict.witness_b = b;
            return verdict;
        }
    }
    return verdict;
}

// ---------------------------------------------------------------------
// Embedded wavelength fixture: six named objects with their dominant
// color wavelength in nm. Two of them (A and C') share a value, so they
// are the one descriptively-near pair across distinct objects.

inline const std::vector<std::string>& wavelength_objects() {
    static const std::vector<std::string> names = {"A", "A'", "B", "B'", "C", "C'"};
    return names;
}

inline const std::map<std::string, double>& wavelength_table() {
    static const std::map<std::string, double> table = {
        {"A", 617.0}, {"A'", 510.0}, {"B", 639.0},
        {"B'", 411.0}, {"C", 480.0}, {"C'", 617.0},
    };
    return table;
}

inline Probe<std::string> wavelength_probe() {
    return table_probe(wavelength_table(), "wavelength");
}

struct RelationRow {
    std::string obj1;
    std::string obj2;
    bool near = false;
};

// All unordered object pairs (self pairs included) with their nearness
// flag, in fixture order.
inline std::vector<RelationRow> relation_matrix() {
    const auto& names = wavelength_objects();
    const Probe<std::string> probe = wavelength_probe();
    std::vector<RelationRow> rows;
    for (std::size_t i = 0; i < names.size(); ++i)
        for (std::size_t j = i; j < names.size(); ++j)
            rows.push_back({names[i], names[j],
                            descriptively_near<std::string>({names[i]}, {names[j]}, probe)});
    return rows;
}

}  // namespace descdyn
