#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "basis.hpp"
#include "conjugacy.hpp"
#include "image.hpp"
#include "orbit.hpp"
#include "sensitivity.hpp"
#include "transitivity.hpp"

namespace descdyn {

// Effective parameters of a run.  Every report starts with a header echoing
// all of them, so identical configurations produce identical output.
struct RunConfig {
    double epsilon = 1e-9;                  // feature tolerance for real-valued probes
    int arcs = 8;                           // M: equal arcs in the circle basis
    int samples = 16;                       // S: interior samples per arc (plus center)
    int sectors = 4;                        // sector count of the default circle probe
    std::uint64_t horizon = 16;             // K: transitivity search bound
    std::uint64_t m_max = 1000;             // period search bound
    double delta = 1.0;                     // sensitivity separation threshold
    double radius = 1e-3;                   // sensitivity perturbation radius (radians)
    int trials = 32;                        // perturbations per seed
    std::uint64_t sensitivity_horizon = 50; // K for sensitivity search
    std::uint64_t seed = 0;                 // RNG seed, always recorded

    std::string header(const std::string& subcommand) const {
        std::string h = "# descdyn " + subcommand + "\n";
        h += "# epsilon=" + format_real(epsilon) + "\n";
        h += "# arcs=" + std::to_string(arcs) + "\n";
        h += "# samples=" + std::to_string(samples) + "\n";
        h += "# sectors=" + std::to_string(sectors) + "\n";
        h += "# horizon=" + std::to_string(horizon) + "\n";
        h += "# mmax=" + std::to_string(m_max) + "\n";
        h += "# delta=" + format_real(delta) + "\n";
        h += "# radius=" + format_real(radius) + "\n";
        h += "# trials=" + std::to_string(trials) + "\n";
        h += "# sensitivity-horizon=" + std::to_string(sensitivity_horizon) + "\n";
        h += "# seed=" + std::to_string(seed) + "\n";
        return h;
    }

    Tolerance tolerance() const { return Tolerance{epsilon}; }
};

// ---------------------------------------------------------------------
// Wavelength relation matrix

inline std::string table1_csv(const RunConfig& config) {
    std::string out = config.header("table1");
    out += "object1,object2,near\n";
    for (const RelationRow& row : relation_matrix()) {
        out += row.obj1 + "," + row.obj2 + "," + (row.near ? "1" : "0") + "\n";
    }
    return out;
}

// ---------------------------------------------------------------------
// Rotation analysis: transitivity both ways, the fixed witness pair, and
// period searches over the basis samples.

// The standing demonstration pair: U straddles angle zero and V sits a
// fifth of a turn away, both one-twentieth of a turn wide.  Under the
// quarter-turn rotation the orbit of U never meets V.
inline Arc demo_arc_u() {
    return make_arc(Angle::rational(Rational(39, 40)), Angle::rational(Rational(1, 20)));
}

inline Arc demo_arc_v() {
    return make_arc(Angle::rational(Rational(4, 40)), Angle::rational(Rational(1, 20)));
}

struct RotationResult {
    Angle lambda;
    CircleBasis basis;
    TransitivityVerdict topological;   // exact arc arithmetic on the basis
    TransitivityVerdict descriptive;   // sampled features on the basis
    Arc demo_u, demo_v;
    std::optional<std::uint64_t> demo_witness;  // first overlap of the demo pair
    std::vector<Arc> demo_iterates;             // images of U at k = 0..3
    std::vector<PeriodReport<Angle>> periods;   // one per basis sample point
    bool classical_supported = false;
    DensityReport<Angle> density;
};

inline RotationResult run_rotation(const RunConfig& config, const Angle& lambda) {
    RotationResult result;
    result.lambda = lambda;
    result.basis = equal_arc_basis(config.arcs, config.samples);
    DescriptiveSystem<Angle> sys = make_rotation_system(lambda, sector_probe(config.sectors));
    const Tolerance tol = config.tolerance();

    ArcImage image = rotation_arc_image(lambda);
    result.topological = topological_arc_transitivity(result.basis.arcs, image, config.horizon);
    result.descriptive = descriptive_transitivity(sys, result.basis.samples, config.horizon, tol);

    result.demo_u = demo_arc_u();
    result.demo_v = demo_arc_v();
    result.demo_witness = first_arc_overlap(result.demo_u, result.demo_v, image, config.horizon);
    result.demo_iterates = arc_orbit(result.demo_u, image, 3);

    result.classical_supported = true;
    for (const Sample<Angle>& arc : result.basis.samples) {
        for (const Angle& theta : arc) {
            PeriodReport<Angle> report = scan_periods(sys, theta, config.m_max, tol);
            result.classical_supported = result.classical_supported && report.classical_supported;
            result.periods.push_back(std::move(report));
        }
    }
    result.density = descriptive_periodic_density(sys, result.basis.samples, config.m_max, tol);
    return result;
}

inline std::string rotation_report(const RunConfig& config, const RotationResult& r) {
    std::string out = config.header("rotation");
    out += "# lambda=" + r.lambda.str() + "\n";
    out += "lambda " + r.lambda.str() + "\n";

    out += "topological-transitivity " + std::string(r.topological.holds ? "HOLDS" : "FAILS") +
           " on-basis horizon=" + std::to_string(r.topological.horizon) + "\n";
    if (auto fail = r.topological.first_failure()) {
        out += "  failing-pair " + r.basis.labels[fail->from] + " -> " +
               r.basis.labels[fail->to] + "\n";
    }
    out += "descriptive-transitivity " + std::string(r.descriptive.holds ? "HOLDS" : "FAILS") +
           " on-basis horizon=" + std::to_string(r.descriptive.horizon) + "\n";

    out += "witness-pair U=" + format_arc_pi(r.demo_u) + " V=" + format_arc_pi(r.demo_v) + "\n";
    for (std::size_t k = 1; k < r.demo_iterates.size(); ++k) {
        out += "  U-iterate " + std::to_string(k) + " " + format_arc_pi(r.demo_iterates[k]) + "\n";
    }
    out += r.demo_witness
               ? "  pair-overlap k=" + std::to_string(*r.demo_witness) + "\n"
               : "  pair-overlap NONE within horizon\n";

    out += "classical-periods " +
           std::string(r.classical_supported ? "supported" : "unsupported (real angles)") + "\n";
    out += "periods theta,classical,descriptive\n";
    for (const PeriodReport<Angle>& p : r.periods) {
        std::string classical = !p.classical_supported ? "unsupported"
                                : p.classical_period    ? std::to_string(*p.classical_period)
                                                        : "none";
        std::string descriptive = p.descriptive_period ? std::to_string(*p.descriptive_period)
                                                       : "none";
        out += "  " + p.seed.str() + "," + classical + "," + descriptive + "\n";
    }

    out += "descriptive-periodic-density " +
           std::string(r.density.dense ? "DENSE-ON-BASIS" : "NOT-DENSE-ON-BASIS") + " mmax=" +
           std::to_string(r.density.period_bound) + "\n";
    for (const DensityWitness<Angle>& w : r.density.witnesses) {
        out += "  arc " + r.basis.labels[w.set_index] + " witness theta=" + w.point.str() +
               " period=" + std::to_string(w.period) + "\n";
    }
    return out;
}

// ---------------------------------------------------------------------
// The doubling map with a constant probe: descriptively transitive with
// dense descriptive periodic points, yet never descriptively sensitive —
// while the same map is topologically transitive and metrically sensitive.

struct BanksResult {
    TransitivityVerdict descriptive_transitivity;
    DensityReport<Angle> density;
    bool all_periods_one = false;
    SensitivityReport<Angle> descriptive_sensitivity;
    TransitivityVerdict topological_transitivity;  // exact arc doubling
    SensitivityReport<Angle> metric_sensitivity;
    bool expected = false;  // the three descriptive verdicts came out as asserted
};

inline BanksResult run_banks(const RunConfig& config, const DescriptiveSystem<Angle>& sys,
                             const ArcImage& image) {
    BanksResult result;
    CircleBasis basis = equal_arc_basis(config.arcs, config.samples);
    const Tolerance tol = config.tolerance();

    result.descriptive_transitivity =
        descriptive_transitivity(sys, basis.samples, config.horizon, tol);
    result.density = descriptive_periodic_density(sys, basis.samples, config.m_max, tol);
    result.all_periods_one = result.density.dense;
    for (const DensityWitness<Angle>& w : result.density.witnesses) {
        result.all_periods_one = result.all_periods_one && w.period == 1;
    }

    std::vector<Angle> seeds;
    for (int i = 0; i < config.arcs; ++i) {
        seeds.push_back(Angle::rational(Rational(2 * i + 1, 2 * config.arcs)));
    }
    SensitivityParams sens;
    sens.delta = config.delta;
    sens.radius = config.radius;
    sens.horizon = config.sensitivity_horizon;
    sens.trials = config.trials;
    sens.rng_seed = config.seed;
    result.descriptive_sensitivity =
        estimate_sensitivity(sys, seeds, angle_perturb(), sens, GapMode::Feature);

    result.topological_transitivity =
        topological_arc_transitivity(basis.arcs, image, config.horizon);
    result.metric_sensitivity =
        estimate_sensitivity(sys, seeds, angle_perturb(), sens, GapMode::Metric);

    result.expected = result.descriptive_transitivity.holds && result.density.dense &&
                      result.all_periods_one && !result.descriptive_sensitivity.sensitive &&
                      result.descriptive_sensitivity.max_gap == 0.0;
    return result;
}

inline BanksResult run_banks(const RunConfig& config) {
    return run_banks(config, make_doubling_system(constant_probe<Angle>(FeatureVector{{1.0}})),
                     doubling_arc_image());
}

inline std::string banks_report(const RunConfig& config, const BanksResult& r,
                                const std::string& system_label = "doubling-map",
                                const std::string& probe_label = "constant",
                                bool comparison = true) {
    std::string out = config.header("banks");
    out += "system " + system_label + " probe " + probe_label + "\n";
    out += "descriptive-transitivity " +
           std::string(r.descriptive_transitivity.holds ? "HOLDS" : "FAILS") + "\n";
    out += "descriptive-periodic-density " +
           std::string(r.density.dense ? "DENSE-ON-BASIS" : "NOT-DENSE-ON-BASIS") +
           (r.all_periods_one ? " all-periods-1" : "") + "\n";
    out += "descriptive-sensitivity " +
           std::string(r.descriptive_sensitivity.sensitive ? "SENSITIVE" : "NOT-OBSERVED") +
           " max-separation=" + format_real(r.descriptive_sensitivity.max_gap) + "\n";
    if (comparison) {
        out += "comparison topological-transitivity " +
               std::string(r.topological_transitivity.holds ? "HOLDS" : "FAILS") + "\n";
        out += "comparison metric-sensitivity " +
               std::string(r.metric_sensitivity.sensitive ? "SENSITIVE" : "NOT-OBSERVED") +
               " max-separation=" + format_real(r.metric_sensitivity.max_gap) + " radians\n";
    }
    return out;
}

// ---------------------------------------------------------------------
// Conjugacy transport

template <typename X, typename Y>
struct ConjugacyOutcome {
    SemiConjugacyVerdict<Y> commutation;
    std::optional<TransitivityTransport<X, Y>> transitivity;
    std::optional<DensityTransport<X, Y>> density;
    bool lemma_violation = false;
};

template <typename X, typename Y>
ConjugacyOutcome<X, Y> run_conjugacy(const ConjugacyInstance<X, Y>& inst,
                                     const TransportParams& params) {
    ConjugacyOutcome<X, Y> outcome;
    outcome.commutation = verify_semi_conjugacy(inst, params.commute_horizon, params.tol);
    if (!outcome.commutation.pass) return outcome;
    outcome.transitivity = transported_transitivity_check(inst, params);
    outcome.density = transported_periodic_density_check(inst, params);
    outcome.lemma_violation =
        !outcome.transitivity->consistent || !outcome.density->consistent;
    return outcome;
}

template <typename X, typename Y>
std::string conjugacy_report(const ConjugacyInstance<X, Y>& inst,
                             const ConjugacyOutcome<X, Y>& outcome,
                             const TransportParams& params) {
    std::string out;
    out += "bridge " + inst.bridge_name + "\n";
    out += "semi-conjugacy " + std::string(outcome.commutation.pass ? "PASS" : "FAIL") +
           " horizon=" + std::to_string(outcome.commutation.horizon) + " worst-residual=" +
           format_real(outcome.commutation.worst_residual) + "\n";
    if (outcome.commutation.witness) {
        const auto& w = *outcome.commutation.witness;
        out += "  witness x=" + PointTraits<X>::str(inst.sample[w.sample_index]) + " k=" +
               std::to_string(w.k) + " h(f^k(x))=" + PointTraits<Y>::str(w.via_bridge) +
               " g^k(h(x))=" + PointTraits<Y>::str(w.via_target) + "\n";
    }
    if (!outcome.commutation.pass) {
        out += "transport-lemmas SKIPPED (no semi-conjugacy)\n";
        return out;
    }

    const auto& tt = *outcome.transitivity;
    out += "transitivity-transport " +
           std::string(!tt.applicable ? "NOT-APPLICABLE"
                       : tt.consistent ? "HOLDS"
                                       : "VIOLATED") + "\n";
    out += "  source-transitivity " + std::string(tt.source.holds ? "HOLDS" : "FAILS") + "\n";
    out += "  bridge-continuity " + std::string(tt.bridge_continuity.pass ? "PASS" : "FAIL") + "\n";
    out += "  target-transitivity " + std::string(tt.target.holds ? "HOLDS" : "FAILS") + "\n";

    const auto& dt = *outcome.density;
    out += "density-transport " +
           std::string(!dt.applicable ? "NOT-APPLICABLE"
                       : dt.consistent ? "HOLDS"
                                       : "VIOLATED") + "\n";
    out += "  source-density " +
           std::string(dt.source.dense ? "DENSE-ON-BASIS" : "NOT-DENSE-ON-BASIS") + "\n";
    out += "  target-density " +
           std::string(dt.target.dense ? "DENSE-ON-BASIS" : "NOT-DENSE-ON-BASIS") +
           " mmax=" + std::to_string(params.m_max) + "\n";
    std::size_t covered = 0;
    for (bool c : dt.coverage) covered += c ? 1 : 0;
    out += "  bridge-coverage " + std::to_string(covered) + "/" +
           std::to_string(dt.coverage.size()) + " target sets reached\n";
    return out;
}

}  // namespace descdyn
