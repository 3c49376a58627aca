#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace descdyn {

// Point in R^n produced by a probe. Components must be finite.
struct FeatureVector {
    std::vector<double> values;

    FeatureVector() = default;
    FeatureVector(std::initializer_list<double> v) : values(v) { validate(); }
    explicit FeatureVector(std::vector<double> v) : values(std::move(v)) { validate(); }

    std::size_t dim() const { return values.size(); }

    void validate() const {
        if (values.empty())
            throw std::invalid_argument("FeatureVector: dimension must be >= 1");
        for (double x : values)
            if (!std::isfinite(x))
                throw std::invalid_argument("FeatureVector: non-finite component");
    }

    friend bool operator==(const FeatureVector& a, const FeatureVector& b) = default;

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) s += ",";
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%g", values[i]);
            s += buf;
        }
        return s + ")";
    }
};

// Whether a probe's values compare exactly or with componentwise slack.
enum class ValueKind { ExactInteger, RealWithTolerance };

// Componentwise feature-equality slack. Exact-integer probes always
// compare with epsilon = 0 regardless of the configured value.
struct Tolerance {
    double epsilon = 1e-9;

    Tolerance() = default;
    explicit Tolerance(double e) : epsilon(e) {
        if (!(e >= 0.0)) throw std::invalid_argument("Tolerance: epsilon must be >= 0");
    }

    double effective(ValueKind kind) const {
        return kind == ValueKind::ExactInteger ? 0.0 : epsilon;
    }
};

// Componentwise |a - b| <= eps. This is the feature EQUALITY rule; the
// Euclidean norm below is only used for gaps and sensitivity.
inline bool features_equal(const FeatureVector& a, const FeatureVector& b, double eps) {
    if (a.dim() != b.dim()) return false;
    for (std::size_t i = 0; i < a.dim(); ++i)
        if (std::fabs(a.values[i] - b.values[i]) > eps) return false;
    return true;
}

inline double feature_gap(const FeatureVector& a, const FeatureVector& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("feature_gap: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        const double d = a.values[i] - b.values[i];
        s += d * d;
    }
    return std::sqrt(s);
}

// Finite image Phi(A) of a sample, deduplicated by greedy clustering in
// insertion order (eps-equality is not transitive, so the rule is fixed:
// a vector joins the set only if it matches no existing member).
class FeatureSet {
public:
    explicit FeatureSet(double eps = 0.0) : eps_(eps) {}

    void insert(const FeatureVector& v) {
        if (!contains(v)) members_.push_back(v);
    }

    bool contains(const FeatureVector& v) const {
        for (const auto& m : members_)
            if (features_equal(m, v, eps_)) return true;
        return false;
    }

    const std::vector<FeatureVector>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    double epsilon() const { return eps_; }

    // True when some member of this set matches some member of other.
    bool intersects(const FeatureSet& other) const {
        const double eps = std::max(eps_, other.eps_);
        for (const auto& a : members_)
            for (const auto& b : other.members_)
                if (features_equal(a, b, eps)) return true;
        return false;
    }

private:
    double eps_;
    std::vector<FeatureVector> members_;
};

}  // namespace descdyn
