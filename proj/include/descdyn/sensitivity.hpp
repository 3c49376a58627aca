#pragma once

#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "orbit.hpp"
#include "systems.hpp"

namespace descdyn {

// Derive doubles from raw engine output so streams are reproducible across
// standard libraries; std::uniform_real_distribution is not portable.
inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
}

inline double uniform_signed(std::mt19937_64& rng) {
    return 2.0 * uniform_unit(rng) - 1.0;  // [-1, 1)
}

// How separation between nearby orbits is measured: the Euclidean gap between
// feature values, or the distance between the states themselves.
enum class GapMode { Feature, Metric };

// Maps a point to a nearby one; the offset is a signed displacement in the
// domain's own metric (radians on the circle).
template <typename Point>
using Perturb = std::function<Point(const Point&, double offset)>;

inline Perturb<Angle> angle_perturb() {
    return [](const Angle& theta, double offset) {
        return Angle::real(theta.turns() + offset / (2.0 * std::numbers::pi));
    };
}

inline Perturb<double> line_perturb() {
    return [](const double& x, double offset) { return x + offset; };
}

struct SensitivityParams {
    double delta = 1.0;        // separation threshold the gap must exceed
    double radius = 1e-3;      // perturbation magnitude bound
    std::uint64_t horizon = 50;
    int trials = 32;
    std::uint64_t rng_seed = 0;
};

struct SeedSeparation {
    double max_gap = 0.0;
    std::uint64_t argmax_k = 0;
    int argmax_trial = 0;
    bool separated = false;  // max_gap > delta
};

template <typename Point>
struct SensitivityReport {
    GapMode mode = GapMode::Feature;
    SensitivityParams params;
    std::vector<Point> seeds;
    std::vector<SeedSeparation> per_seed;
    bool sensitive = false;  // separation observed at every seed
    double max_gap = 0.0;    // largest separation over all seeds
};

// Randomized lower-bound search for sensitive dependence: perturb each seed
// `trials` times within the radius and record the largest gap the two orbits
// reach within the horizon.  "Sensitive" here means separation beyond delta
// was exhibited at every seed; a negative answer is absence of evidence, not
// a proof.
template <typename Point>
SensitivityReport<Point> estimate_sensitivity(const DescriptiveSystem<Point>& sys,
                                              const std::vector<Point>& seeds,
                                              const Perturb<Point>& perturb,
                                              const SensitivityParams& params = {},
                                              GapMode mode = GapMode::Feature) {
    SensitivityReport<Point> report;
    report.mode = mode;
    report.params = params;
    report.seeds = seeds;
    report.sensitive = !seeds.empty();

    std::mt19937_64 rng(params.rng_seed);
    for (const Point& a : seeds) {
        SeedSeparation sep;
        for (int t = 0; t < params.trials; ++t) {
            double offset = uniform_signed(rng) * params.radius;
            Point b = perturb(a, offset);
            for (std::uint64_t k = 1; k <= params.horizon; ++k) {
                Point xa = sys.power(a, k);
                Point xb = sys.power(b, k);
                double gap = mode == GapMode::Feature
                                 ? feature_gap(sys.probe(xa), sys.probe(xb))
                                 : PointTraits<Point>::distance(xa, xb);
                if (gap > sep.max_gap) {
                    sep.max_gap = gap;
                    sep.argmax_k = k;
                    sep.argmax_trial = t;
                }
            }
        }
        sep.separated = sep.max_gap > params.delta;
        if (!sep.separated) report.sensitive = false;
        if (sep.max_gap > report.max_gap) report.max_gap = sep.max_gap;
        report.per_seed.push_back(sep);
    }
    return report;
}

}  // namespace descdyn
