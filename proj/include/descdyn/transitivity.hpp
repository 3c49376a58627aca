#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "basis.hpp"
#include "orbit.hpp"

namespace descdyn {

enum class TransitivityMode { Topological, Descriptive };

// Outcome for one ordered pair of basis sets: the least k >= 1 within the
// horizon such that the k-th image of the first set meets the second, or
// empty when no such k was found.
struct PairWitness {
    std::size_t from = 0;
    std::size_t to = 0;
    std::optional<std::uint64_t> k;
};

struct TransitivityVerdict {
    TransitivityMode mode = TransitivityMode::Descriptive;
    std::uint64_t horizon = 0;
    bool holds = false;
    std::vector<PairWitness> witnesses;  // every ordered pair, row-major

    std::optional<PairWitness> first_failure() const {
        for (const PairWitness& w : witnesses) {
            if (!w.k) return w;
        }
        return std::nullopt;
    }
};

// Exact image of an arc under the k-th power of a map; implementations exist
// for the maps whose arc images stay arcs.
using ArcImage = std::function<Arc(const Arc&, std::uint64_t)>;

inline ArcImage rotation_arc_image(const Angle& lambda) {
    return [lambda](const Arc& arc, std::uint64_t k) { return rotate_arc(arc, lambda, k); };
}

inline ArcImage doubling_arc_image() {
    return [](const Arc& arc, std::uint64_t k) { return double_arc(arc, k); };
}

// Least k in [1, horizon] whose image of `from` overlaps `to`, by exact
// interval arithmetic.
inline std::optional<std::uint64_t> first_arc_overlap(const Arc& from, const Arc& to,
                                                      const ArcImage& image,
                                                      std::uint64_t horizon) {
    for (std::uint64_t k = 1; k <= horizon; ++k) {
        if (image(from, k).overlaps(to)) return k;
    }
    return std::nullopt;
}

// Successive exact images of an arc: orbit[k] is the image at time k, with
// orbit[0] the arc itself.
inline std::vector<Arc> arc_orbit(const Arc& arc, const ArcImage& image, std::uint64_t count) {
    std::vector<Arc> orbit;
    orbit.reserve(count + 1);
    for (std::uint64_t k = 0; k <= count; ++k) orbit.push_back(image(arc, k));
    return orbit;
}

// Topological transitivity over a family of arcs, decided by exact interval
// arithmetic rather than sampling.
inline TransitivityVerdict topological_arc_transitivity(const std::vector<Arc>& arcs,
                                                        const ArcImage& image,
                                                        std::uint64_t horizon) {
    TransitivityVerdict verdict;
    verdict.mode = TransitivityMode::Topological;
    verdict.horizon = horizon;
    verdict.holds = true;
    for (std::size_t u = 0; u < arcs.size(); ++u) {
        for (std::size_t v = 0; v < arcs.size(); ++v) {
            PairWitness w{u, v, first_arc_overlap(arcs[u], arcs[v], image, horizon)};
            if (!w.k) verdict.holds = false;
            verdict.witnesses.push_back(w);
        }
    }
    return verdict;
}

// Topological transitivity over exhaustive finite point sets (grid cells).
// Set images are computed pointwise and membership is exact equality, so the
// state and the map must both be exact.
template <typename Point>
TransitivityVerdict topological_set_transitivity(const DescriptiveSystem<Point>& sys,
                                                 const std::vector<Sample<Point>>& sets,
                                                 std::uint64_t horizon) {
    if (!sys.exact) {
        throw UnsupportedError("exact set transitivity needs an exact map");
    }
    for (const Sample<Point>& s : sets) {
        for (const Point& x : s) {
            if (!PointTraits<Point>::is_exact(x)) {
                throw UnsupportedError("exact set transitivity needs exact states");
            }
        }
    }
    TransitivityVerdict verdict;
    verdict.mode = TransitivityMode::Topological;
    verdict.horizon = horizon;
    verdict.holds = true;
    for (std::size_t u = 0; u < sets.size(); ++u) {
        for (std::size_t v = 0; v < sets.size(); ++v) {
            PairWitness w{u, v, std::nullopt};
            for (std::uint64_t k = 1; k <= horizon && !w.k; ++k) {
                for (const Point& x : sets[u]) {
                    Point y = sys.power(x, k);
                    bool hit = false;
                    for (const Point& t : sets[v]) hit = hit || y == t;
                    if (hit) {
                        w.k = k;
                        break;
                    }
                }
            }
            if (!w.k) verdict.holds = false;
            verdict.witnesses.push_back(w);
        }
    }
    return verdict;
}

// Descriptive transitivity over sampled basis sets: the pair (u, v) is
// witnessed at the least k >= 1 where the feature values seen on the k-th
// image of u's samples meet the feature values seen on v's samples.
template <typename Point>
TransitivityVerdict descriptive_transitivity(const DescriptiveSystem<Point>& sys,
                                             const std::vector<Sample<Point>>& sets,
                                             std::uint64_t horizon,
                                             const Tolerance& tol = {}) {
    TransitivityVerdict verdict;
    verdict.mode = TransitivityMode::Descriptive;
    verdict.horizon = horizon;
    verdict.holds = true;

    std::vector<FeatureSet> targets;
    targets.reserve(sets.size());
    for (const Sample<Point>& s : sets) targets.push_back(feature_set(s, sys.probe, tol));

    for (std::size_t u = 0; u < sets.size(); ++u) {
        std::vector<FeatureSet> images;  // images[k - 1] = features of f^k(U)
        images.reserve(horizon);
        for (std::uint64_t k = 1; k <= horizon; ++k) {
            Sample<Point> img;
            img.reserve(sets[u].size());
            for (const Point& x : sets[u]) img.push_back(sys.power(x, k));
            images.push_back(feature_set(img, sys.probe, tol));
        }
        for (std::size_t v = 0; v < sets.size(); ++v) {
            PairWitness w{u, v, std::nullopt};
            for (std::uint64_t k = 1; k <= horizon; ++k) {
                if (images[k - 1].intersects(targets[v])) {
                    w.k = k;
                    break;
                }
            }
            if (!w.k) verdict.holds = false;
            verdict.witnesses.push_back(w);
        }
    }
    return verdict;
}

// ---------------------------------------------------------------------
// Density of descriptively periodic points over a basis.

template <typename Point>
struct DensityWitness {
    std::size_t set_index = 0;
    std::size_t sample_index = 0;
    Point point{};
    std::uint64_t period = 0;
};

template <typename Point>
struct DensityReport {
    bool dense = false;  // every set contains a descriptively periodic sample
    std::uint64_t period_bound = 0;
    std::vector<DensityWitness<Point>> witnesses;  // one per set that has one
    std::vector<std::size_t> unwitnessed;          // sets with no find within the bound
};

// For each basis set, the first sample that is descriptively periodic with
// period at most m_max.
template <typename Point>
DensityReport<Point> descriptive_periodic_density(const DescriptiveSystem<Point>& sys,
                                                  const std::vector<Sample<Point>>& sets,
                                                  std::uint64_t m_max,
                                                  const Tolerance& tol = {}) {
    DensityReport<Point> report;
    report.period_bound = m_max;
    report.dense = true;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        std::optional<DensityWitness<Point>> found;
        for (std::size_t j = 0; j < sets[i].size() && !found; ++j) {
            if (auto m = find_descriptive_period(sys, sets[i][j], m_max, tol)) {
                found = DensityWitness<Point>{i, j, sets[i][j], *m};
            }
        }
        if (found) {
            report.witnesses.push_back(*found);
        } else {
            report.dense = false;
            report.unwitnessed.push_back(i);
        }
    }
    return report;
}

}  // namespace descdyn
