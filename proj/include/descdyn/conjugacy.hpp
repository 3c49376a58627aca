#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "basis.hpp"
#include "transitivity.hpp"

namespace descdyn {

// Two systems tied together by a bridge map h from the source state space to
// the target state space.  The bridge claims h(f(x)) = g(h(x)); everything
// here either checks that claim on samples or leans on it.
template <typename X, typename Y>
struct ConjugacyInstance {
    DescriptiveSystem<X> source;
    DescriptiveSystem<Y> target;
    std::function<Y(const X&)> bridge;
    std::string bridge_name = "bridge";
    Sample<X> sample;      // states the commutation check runs on
    BasisView<X> basis_x;  // open sets on the source side
    BasisView<Y> basis_y;  // open sets on the target side
};

template <typename Y>
struct CommutationWitness {
    std::size_t sample_index = 0;
    std::uint64_t k = 0;
    Y via_bridge{};  // h(f^k(x))
    Y via_target{};  // g^k(h(x))
    double residual = 0.0;
};

template <typename Y>
struct SemiConjugacyVerdict {
    bool pass = true;
    std::uint64_t horizon = 0;
    double worst_residual = 0.0;
    std::optional<CommutationWitness<Y>> witness;  // worst offending pair when failing
};

// Checks h(f^k(x)) = g^k(h(x)) for every sampled x and k = 1..K.  Exact
// states must agree exactly; otherwise the distance must stay within the
// tolerance.  The reported residual is the largest distance seen.
template <typename X, typename Y>
SemiConjugacyVerdict<Y> verify_semi_conjugacy(const ConjugacyInstance<X, Y>& inst,
                                              std::uint64_t horizon,
                                              const Tolerance& tol = {}) {
    if (inst.sample.empty()) throw std::invalid_argument("conjugacy sample is empty");
    SemiConjugacyVerdict<Y> verdict;
    verdict.horizon = horizon;
    for (std::size_t i = 0; i < inst.sample.size(); ++i) {
        const X& x = inst.sample[i];
        for (std::uint64_t k = 1; k <= horizon; ++k) {
            Y lhs = inst.bridge(inst.source.power(x, k));
            Y rhs = inst.target.power(inst.bridge(x), k);
            double residual = PointTraits<Y>::distance(lhs, rhs);
            bool exact = PointTraits<Y>::is_exact(lhs) && PointTraits<Y>::is_exact(rhs);
            bool agree = exact ? lhs == rhs : residual <= tol.epsilon;
            if (residual > verdict.worst_residual) verdict.worst_residual = residual;
            if (!agree) {
                if (!verdict.witness || residual > verdict.witness->residual) {
                    verdict.witness = CommutationWitness<Y>{i, k, lhs, rhs, residual};
                }
                verdict.pass = false;
            }
        }
    }
    return verdict;
}

struct TransportParams {
    std::uint64_t commute_horizon = 16;
    std::uint64_t transitivity_horizon = 16;
    std::uint64_t m_max = 64;
    Tolerance tol{};
};

// Descriptively-near pairs of source basis sets, the evidence base for the
// bridge-continuity hypothesis.
template <typename X>
std::vector<std::pair<Sample<X>, Sample<X>>> near_basis_pairs(const BasisView<X>& basis,
                                                              const Probe<X>& probe,
                                                              const Tolerance& tol = {}) {
    std::vector<std::pair<Sample<X>, Sample<X>>> pairs;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = i; j < basis.size(); ++j) {
            if (descriptively_near(basis.samples[i], basis.samples[j], probe, tol)) {
                pairs.emplace_back(basis.samples[i], basis.samples[j]);
            }
        }
    }
    return pairs;
}

// Which target basis sets contain some bridge image of a source basis
// sample; finite evidence for surjectivity of the bridge.
template <typename X, typename Y>
std::vector<bool> bridge_coverage(const ConjugacyInstance<X, Y>& inst) {
    std::vector<Y> images;
    for (const Sample<X>& s : inst.basis_x.samples) {
        for (const X& x : s) images.push_back(inst.bridge(x));
    }
    std::vector<bool> covered(inst.basis_y.size(), false);
    for (std::size_t v = 0; v < inst.basis_y.size(); ++v) {
        for (const Y& y : images) {
            if (inst.basis_y.contains(v, y)) {
                covered[v] = true;
                break;
            }
        }
    }
    return covered;
}

template <typename X, typename Y>
struct TransitivityTransport {
    TransitivityVerdict source;              // descriptive transitivity on the source basis
    ContinuityVerdict<X> bridge_continuity;  // near pairs stay near through the bridge
    TransitivityVerdict target;              // descriptive transitivity on the target basis
    bool applicable = false;                 // both hypotheses evidenced
    bool consistent = true;                  // applicable implies target holds
};

// If the source is descriptively transitive and the bridge is descriptively
// continuous, the target must be descriptively transitive.  Evaluates all
// three claims and reports whether the implication held; with a failed
// hypothesis the implication asserts nothing.  Requires a passing
// commutation check first.
template <typename X, typename Y>
TransitivityTransport<X, Y> transported_transitivity_check(const ConjugacyInstance<X, Y>& inst,
                                                           const TransportParams& params = {}) {
    if (!verify_semi_conjugacy(inst, params.commute_horizon, params.tol).pass) {
        throw std::invalid_argument("transport checks need a passing commutation check");
    }
    TransitivityTransport<X, Y> out;
    out.source = descriptive_transitivity(inst.source, inst.basis_x.samples,
                                          params.transitivity_horizon, params.tol);
    out.bridge_continuity = check_descriptive_continuity<X, Y>(
        inst.bridge, inst.source.probe, inst.target.probe,
        near_basis_pairs(inst.basis_x, inst.source.probe, params.tol), params.tol);
    out.target = descriptive_transitivity(inst.target, inst.basis_y.samples,
                                          params.transitivity_horizon, params.tol);
    out.applicable = out.source.holds && out.bridge_continuity.pass;
    out.consistent = !out.applicable || out.target.holds;
    return out;
}

template <typename X, typename Y>
struct DensityTransport {
    DensityReport<X> source;                 // density on the source basis
    ContinuityVerdict<X> bridge_continuity;  // shared hypothesis with the other lemma
    DensityReport<Y> target;  // target sets witnessed by bridge images of source points
    std::vector<bool> coverage;  // bridge images reach each target set (sampled evidence)
    bool applicable = false;
    bool consistent = true;
};

// If descriptively periodic points are dense on the source basis and the
// bridge is descriptively continuous, bridge images of those points must
// witness density on the target basis.  Target witnesses are searched among
// bridge images only — first the source density witnesses, then all source
// basis samples.
template <typename X, typename Y>
DensityTransport<X, Y> transported_periodic_density_check(const ConjugacyInstance<X, Y>& inst,
                                                          const TransportParams& params = {}) {
    if (!verify_semi_conjugacy(inst, params.commute_horizon, params.tol).pass) {
        throw std::invalid_argument("transport checks need a passing commutation check");
    }
    DensityTransport<X, Y> out;
    out.source = descriptive_periodic_density(inst.source, inst.basis_x.samples, params.m_max,
                                              params.tol);
    out.bridge_continuity = check_descriptive_continuity<X, Y>(
        inst.bridge, inst.source.probe, inst.target.probe,
        near_basis_pairs(inst.basis_x, inst.source.probe, params.tol), params.tol);
    out.coverage = bridge_coverage(inst);

    std::vector<Y> pool;
    for (const DensityWitness<X>& w : out.source.witnesses) pool.push_back(inst.bridge(w.point));
    for (const Sample<X>& s : inst.basis_x.samples) {
        for (const X& x : s) pool.push_back(inst.bridge(x));
    }

    out.target.period_bound = params.m_max;
    out.target.dense = true;
    for (std::size_t v = 0; v < inst.basis_y.size(); ++v) {
        std::optional<DensityWitness<Y>> found;
        for (std::size_t j = 0; j < pool.size() && !found; ++j) {
            if (!inst.basis_y.contains(v, pool[j])) continue;
            if (auto m = find_descriptive_period(inst.target, pool[j], params.m_max, params.tol)) {
                found = DensityWitness<Y>{v, j, pool[j], *m};
            }
        }
        if (found) {
            out.target.witnesses.push_back(*found);
        } else {
            out.target.dense = false;
            out.target.unwitnessed.push_back(v);
        }
    }
    out.applicable = out.source.dense && out.bridge_continuity.pass;
    out.consistent = !out.applicable || out.target.dense;
    return out;
}

}  // namespace descdyn
