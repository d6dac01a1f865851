#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace shellzeta {

enum class Norm { euclidean, sup };

enum class MeasureClass { finite, infinite, unknown };

enum class VolumeMethod { exact, monte_carlo };

// A tube or shell volume together with its uncertainty.  Exact evaluations
// carry abs_error == 0.
struct VolumeResult {
    double value = 0.0;
    double abs_error = 0.0;  // 3-sigma bound on the Monte Carlo path
    VolumeMethod method = VolumeMethod::exact;
    std::int64_t samples_used = 0;
};

// Deterministic Monte Carlo configuration.  Identical plans on identical
// inputs give bit-identical results; per-stratum generators are derived from
// (seed, stratum index) so parallel execution is schedule-independent.
struct SamplingPlan {
    std::uint64_t seed = 42;
    int strata = 16;               // radial subdivisions, >= 1
    int samples_per_stratum = 100000;  // >= 100

    void validate() const;
};

// Finite evaluation window standing in for t -> +infinity.
struct GridSpec {
    double t_min = 1e2;   // >= 1
    double t_max = 1e6;   // t_max / t_min >= 100
    int points_per_decade = 16;  // >= 8
    int refinement_rounds = 1;   // >= 0

    void validate() const;
    std::vector<double> points() const;  // geometric, includes both endpoints
};

// Windowed surrogate for the limsup/liminf of the normalized shell function.
// upper/lower bound, not certify, the true limits.
struct ContentEstimate {
    double r = 0.0;
    double phi = 2.0;
    double upper = 0.0;
    double lower = 0.0;
    double upper_error = 0.0;  // propagated MC error at the arg-max
    double lower_error = 0.0;
    GridSpec window;
    std::vector<double> per_point_errors;
    std::vector<std::string> warnings;
};

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_rms = 0.0;
};

constexpr double kMinusInfinity = -std::numeric_limits<double>::infinity();

struct DimensionEstimate {
    double upper_dim = 0.0;
    double lower_dim = 0.0;  // kMinusInfinity when the lower dimension degenerates
    bool lower_is_minus_infinity = false;
    SlopeFit slope_fit;  // global log-log fit, diagnostic only
    double phi = 2.0;
    std::vector<std::string> warnings;
};

// One two-sided or one-sided inequality evaluation.  slack = rhs - lhs must
// stay >= -tolerance.
struct InequalityReport {
    struct Entry {
        std::string name;
        double lhs = 0.0;
        double rhs = 0.0;
        double slack = 0.0;
        double tolerance = 0.0;
        bool pass = false;
        std::string note;
    };
    std::vector<Entry> entries;

    bool all_pass() const {
        for (const auto& e : entries)
            if (!e.pass) return false;
        return true;
    }
    void add(const std::string& name, double lhs, double rhs, double tol,
             const std::string& note = "") {
        Entry e;
        e.name = name;
        e.lhs = lhs;
        e.rhs = rhs;
        e.slack = rhs - lhs;
        e.tolerance = tol;
        e.pass = e.slack >= -tol;
        e.note = note;
        entries.push_back(e);
    }
};

}  // namespace shellzeta
