#include "shellzeta/content.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "shellzeta/errors.hpp"
#include "shellzeta/shell_volume.hpp"
#include "shellzeta/util.hpp"

namespace shellzeta {

namespace {

struct Samples {
    std::vector<double> t;
    std::vector<double> value;  // normalized by t^{N+r}
    std::vector<double> error;
};

Samples eval_normalized(const Region& region, double phi, double r,
                        const std::vector<double>& ts, const SamplingPlan& plan) {
    Samples s;
    s.t = ts;
    s.value.resize(ts.size());
    s.error.resize(ts.size());
    const double expo = region.ambient_dim + r;
    parallel_for(ts.size(), [&](std::size_t i) {
        const VolumeResult v = shell_volume(region, ts[i], phi, plan);
        const double scale = std::pow(ts[i], expo);
        s.value[i] = v.value / scale;
        s.error[i] = v.abs_error / scale;
    });
    return s;
}

// Windowed extremum with local refinement: candidates restricted to
// [window_lo, window_hi], refinement densifies around the current
// arg-extremum within one original grid step.
struct Extremum {
    double value = 0.0;
    double error = 0.0;
    double arg = 0.0;
};

template <class Eval>
Extremum windowed_extremum(const Samples& s, bool maximize, double window_lo,
                           double window_hi, int refinement_rounds,
                           double step_factor, const Eval& eval) {
    Extremum best;
    bool found = false;
    for (std::size_t i = 0; i < s.t.size(); ++i) {
        if (s.t[i] < window_lo || s.t[i] > window_hi) continue;
        const bool better =
            !found || (maximize ? s.value[i] > best.value : s.value[i] < best.value);
        if (better) {
            best = {s.value[i], s.error[i], s.t[i]};
            found = true;
        }
    }
    for (int round = 0; round < refinement_rounds && found; ++round) {
        const double lo = std::max(window_lo, best.arg / step_factor);
        const double hi = std::min(window_hi, best.arg * step_factor);
        const int kDense = 33;
        for (int j = 0; j <= kDense; ++j) {
            const double t = lo * std::pow(hi / lo, static_cast<double>(j) / kDense);
            auto [v, e] = eval(t);
            const bool better = maximize ? v > best.value : v < best.value;
            if (better) best = {v, e, t};
        }
    }
    return best;
}

SlopeFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    SlopeFit fit;
    const auto n = static_cast<Eigen::Index>(x.size());
    if (n < 2) return fit;
    Eigen::MatrixXd A(n, 2);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        A(i, 0) = x[i];
        A(i, 1) = 1.0;
        b(i) = y[i];
    }
    const Eigen::Vector2d coef = (A.transpose() * A).ldlt().solve(A.transpose() * b);
    fit.slope = coef(0);
    fit.intercept = coef(1);
    fit.residual_rms = std::sqrt((A * coef - b).squaredNorm() / static_cast<double>(n));
    return fit;
}

}  // namespace

ContentEstimate phi_shell_content(const Region& region, double phi, double r,
                                  const GridSpec& grid, const SamplingPlan& plan) {
    if (!(phi > 1.0)) throw input_error("shell content: phi must exceed 1");
    grid.validate();
    const auto ts = grid.points();
    const Samples s = eval_normalized(region, phi, r, ts, plan);

    const double expo = region.ambient_dim + r;
    auto eval_one = [&](double t) {
        const VolumeResult v = shell_volume(region, t, phi, plan);
        const double scale = std::pow(t, expo);
        return std::pair<double, double>(v.value / scale, v.abs_error / scale);
    };
    const double window_lo = grid.t_max / 10.0;
    const double step = std::pow(10.0, 1.0 / grid.points_per_decade);
    const Extremum up = windowed_extremum(s, true, window_lo, grid.t_max,
                                          grid.refinement_rounds, step, eval_one);
    const Extremum dn = windowed_extremum(s, false, window_lo, grid.t_max,
                                          grid.refinement_rounds, step, eval_one);

    ContentEstimate out;
    out.r = r;
    out.phi = phi;
    out.upper = up.value;
    out.lower = dn.value;
    out.upper_error = up.error;
    out.lower_error = dn.error;
    out.window = grid;
    out.per_point_errors = s.error;
    if (up.error > 0.1 * std::abs(up.value) && up.error > 0.0)
        out.warnings.push_back("precision warning: MC error exceeds 10% of the upper estimate");
    if (dn.error > 0.1 * std::abs(dn.value) && dn.error > 0.0)
        out.warnings.push_back("precision warning: MC error exceeds 10% of the lower estimate");
    return out;
}

ContentEstimate phi_shell_content_at(const Region& region, double phi, double r,
                                     const std::vector<double>& ts,
                                     const SamplingPlan& plan) {
    if (!(phi > 1.0)) throw input_error("shell content: phi must exceed 1");
    if (ts.empty()) throw input_error("shell content: empty evaluation grid");
    const Samples s = eval_normalized(region, phi, r, ts, plan);
    ContentEstimate out;
    out.r = r;
    out.phi = phi;
    const auto [mn, mx] = std::minmax_element(s.value.begin(), s.value.end());
    out.lower = *mn;
    out.upper = *mx;
    out.lower_error = s.error[mn - s.value.begin()];
    out.upper_error = s.error[mx - s.value.begin()];
    out.window.t_min = *std::min_element(ts.begin(), ts.end());
    out.window.t_max = *std::max_element(ts.begin(), ts.end());
    out.per_point_errors = s.error;
    return out;
}

DimensionEstimate estimate_phi_dimension(const Region& region, double phi,
                                         const GridSpec& grid,
                                         const SamplingPlan& plan) {
    if (!(phi > 1.0)) throw input_error("shell dimension: phi must exceed 1");
    grid.validate();
    const auto ts = grid.points();
    Samples s;
    s.t = ts;
    s.value.resize(ts.size());
    s.error.resize(ts.size());
    parallel_for(ts.size(), [&](std::size_t i) {
        const VolumeResult v = shell_volume(region, ts[i], phi, plan);
        s.value[i] = v.value;
        s.error[i] = v.abs_error;
    });

    if (std::all_of(s.value.begin(), s.value.end(), [](double v) { return v == 0.0; }))
        throw unsupported_error(
            "degenerate region: the shell function vanishes on the entire grid");

    const double lg_min = std::log10(grid.t_min);
    const int decades =
        std::max(1, static_cast<int>(std::ceil(std::log10(grid.t_max) - lg_min - 1e-9)));
    std::vector<double> bin_max(decades, -1.0), bin_min(decades, -1.0);
    std::vector<double> bin_max_t(decades, 0.0), bin_min_t(decades, 0.0);
    for (std::size_t i = 0; i < ts.size(); ++i) {
        int d = static_cast<int>(std::floor(std::log10(ts[i]) - lg_min - 1e-9));
        d = std::clamp(d, 0, decades - 1);
        if (bin_max[d] < 0.0 || s.value[i] > bin_max[d]) {
            bin_max[d] = s.value[i];
            bin_max_t[d] = ts[i];
        }
        if (bin_min[d] < 0.0 || s.value[i] < bin_min[d]) {
            bin_min[d] = s.value[i];
            bin_min_t[d] = ts[i];
        }
    }

    DimensionEstimate out;
    out.phi = phi;

    std::vector<double> xs, ys;
    for (int d = 0; d < decades; ++d) {
        if (bin_max[d] > 0.0) {
            xs.push_back(std::log(bin_max_t[d]));
            ys.push_back(std::log(bin_max[d]));
        }
    }
    if (xs.size() < 2)
        throw unsupported_error(
            "degenerate region: too few decades with nonzero shell volume");
    out.upper_dim = least_squares(xs, ys).slope - region.ambient_dim;

    int zero_decades = 0;
    std::vector<double> xl, yl;
    for (int d = 0; d < decades; ++d) {
        if (bin_min[d] == 0.0) {
            ++zero_decades;
        } else if (bin_min[d] > 0.0) {
            xl.push_back(std::log(bin_min_t[d]));
            yl.push_back(std::log(bin_min[d]));
        }
    }
    if (zero_decades >= 3 || xl.size() < 2) {
        out.lower_is_minus_infinity = true;
        out.lower_dim = kMinusInfinity;
        if (zero_decades > 0)
            out.warnings.push_back("shell function vanishes on " +
                                   std::to_string(zero_decades) + " decade(s)");
    } else {
        out.lower_dim = least_squares(xl, yl).slope - region.ambient_dim;
        if (zero_decades > 0)
            out.warnings.push_back(
                "lower fit skipped " + std::to_string(zero_decades) +
                " decade(s) with vanishing shell volume");
    }

    std::vector<double> gx, gy;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (s.value[i] > 0.0) {
            gx.push_back(std::log(ts[i]));
            gy.push_back(std::log(s.value[i]));
        }
    }
    out.slope_fit = least_squares(gx, gy);
    return out;
}

ContentEstimate classic_content_at_infinity(const Region& region, double r,
                                            const GridSpec& grid,
                                            const SamplingPlan& plan) {
    if (region.measure_class != MeasureClass::finite)
        throw unsupported_error(
            "classical content at infinity requires a finite-measure region");
    if (!(r < -region.ambient_dim))
        throw input_error("classical content at infinity requires r < -N");
    grid.validate();
    const auto ts = grid.points();
    Samples s;
    s.t = ts;
    s.value.resize(ts.size());
    s.error.resize(ts.size());
    const double expo = region.ambient_dim + r;
    parallel_for(ts.size(), [&](std::size_t i) {
        const VolumeResult v = complement_volume(region, ts[i], plan);
        const double scale = std::pow(ts[i], expo);
        s.value[i] = v.value / scale;
        s.error[i] = v.abs_error / scale;
    });
    auto eval_one = [&](double t) {
        const VolumeResult v = complement_volume(region, t, plan);
        const double scale = std::pow(t, expo);
        return std::pair<double, double>(v.value / scale, v.abs_error / scale);
    };
    const double window_lo = grid.t_max / 10.0;
    const double step = std::pow(10.0, 1.0 / grid.points_per_decade);
    const Extremum up = windowed_extremum(s, true, window_lo, grid.t_max,
                                          grid.refinement_rounds, step, eval_one);
    const Extremum dn = windowed_extremum(s, false, window_lo, grid.t_max,
                                          grid.refinement_rounds, step, eval_one);
    ContentEstimate out;
    out.r = r;
    out.phi = 0.0;  // not a shell content
    out.upper = up.value;
    out.lower = dn.value;
    out.upper_error = up.error;
    out.lower_error = dn.error;
    out.window = grid;
    out.per_point_errors = s.error;
    return out;
}

InequalityReport check_comparison_inequalities(const Region& region,
                                               ComparisonMode mode,
                                               const ComparisonParams& params,
                                               const GridSpec& grid,
                                               const SamplingPlan& plan) {
    const int n = region.ambient_dim;
    InequalityReport rep;
    // comparisons are pointwise in t, so both sides use the raw common grid
    GridSpec g = grid;
    g.refinement_rounds = 0;

    if (mode == ComparisonMode::phi_vs_classic) {
        const double r = params.r;
        const double phi = params.phi;
        if (!(phi > 1.0)) throw input_error("comparison: phi must exceed 1");
        if (region.measure_class != MeasureClass::finite)
            throw input_error("comparison vs classical content requires finite measure");
        if (!(r < -n)) throw input_error("comparison vs classical content requires r < -N");
        const ContentEstimate cs = phi_shell_content(region, phi, r, g, plan);
        const ContentEstimate cc = classic_content_at_infinity(region, r, g, plan);
        const double factor = 1.0 / (1.0 - std::pow(phi, n + r));
        const double base_tol = 1e-9;
        rep.add("upper shell content <= upper classical content", cs.upper, cc.upper,
                cs.upper_error + cc.upper_error + base_tol);
        rep.add("upper classical content <= upper shell content / (1 - phi^{N+r})",
                cc.upper, factor * cs.upper,
                cc.upper_error + factor * cs.upper_error + base_tol);
        rep.add("lower shell content / (1 - phi^{N+r}) <= lower classical content",
                factor * cs.lower, cc.lower,
                factor * cs.lower_error + cc.lower_error + base_tol);
        return rep;
    }

    const double r = params.r;
    const double phi1 = params.phi1;
    const double phi2 = params.phi2;
    if (!(1.0 < phi1 && phi1 < phi2))
        throw input_error("comparison: need 1 < phi1 < phi2");
    const ContentEstimate c1 = phi_shell_content(region, phi1, r, g, plan);
    const ContentEstimate c2 = phi_shell_content(region, phi2, r, g, plan);
    const double k = std::floor(std::log(phi2) / std::log(phi1) + 1e-12);
    double upper_factor, lower_factor;
    if (std::abs(n + r) < 1e-12) {
        upper_factor = k + 1.0;
        lower_factor = k;
    } else {
        const double sfac = std::pow(phi1, n + r);
        upper_factor = (1.0 - std::pow(sfac, k + 1.0)) / (1.0 - sfac);
        lower_factor = (1.0 - std::pow(sfac, k)) / (1.0 - sfac);
    }
    const double base_tol = 1e-9;
    rep.add("upper content nondecreasing in phi", c1.upper, c2.upper,
            c1.upper_error + c2.upper_error + base_tol);
    rep.add("upper content at phi2 <= stacking factor * upper content at phi1",
            c2.upper, upper_factor * c1.upper,
            c2.upper_error + upper_factor * c1.upper_error + base_tol);
    rep.add("stacking factor * lower content at phi1 <= lower content at phi2",
            lower_factor * c1.lower, c2.lower,
            lower_factor * c1.lower_error + c2.lower_error + base_tol);
    return rep;
}

}  // namespace shellzeta
