#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace shellzeta {

using CFun = std::function<std::complex<double>(double)>;
using RFun = std::function<double(double)>;

struct FiniteIntegral {
    std::complex<double> value{0.0, 0.0};
    double error = 0.0;
};

// Adaptive Gauss-Kronrod (G7/K15) on [a, b].  Breakpoints split the interval
// so integrand kinks sit on panel edges.
FiniteIntegral integrate_interval(const CFun& f, double a, double b,
                                  double rel_tol = 1e-10,
                                  const std::vector<double>& breakpoints = {});

struct TailIntegralOptions {
    double panel_ratio = 1.189207115002721;  // 2^(1/4), one panel per quarter octave
    double panel_rel_tol = 1e-9;
    int max_panel_depth = 24;   // set 0 for noisy (Monte Carlo) integrands
    double target_rel = 1e-9;   // stop once the tail bound is this small vs the accumulated value
    int max_decades = 70;
    int min_decades = 4;
    std::vector<double> breakpoints;   // integrand kinks (region non-smooth radii)
    RFun data_error;                   // optional pointwise error of the integrand (MC paths)
    bool detect_divergence = true;
    // For eventually-positive integrands: add the fitted power tail to the
    // value and only its uncertainty to the error.  Needed near a pole, where
    // the tail carries a fixed share of the integral at every cutoff.
    bool estimate_tail = false;
};

struct TailIntegral {
    std::complex<double> value{0.0, 0.0};
    double quad_error = 0.0;   // panel estimates + propagated data error
    double tail_bound = 0.0;   // analytic bound on the neglected tail
    double t_end = 0.0;
    double fitted_exponent = 0.0;  // log-log slope of |f| over the last decade

    double total_error() const { return quad_error + tail_bound; }
};

// Integral of f over [T, +inf) by geometric panels.  The tail beyond the last
// panel is bounded by fitting |f(t)| <= C t^sigma over the final decade and
// summing the resulting power tail; throws divergence_error when the fitted
// exponent or the per-decade masses show the integral cannot converge, and
// precision_error when the tail bound fails to come down within max_decades.
TailIntegral integrate_to_infinity(const CFun& f, double T,
                                   const TailIntegralOptions& opt = {});

}  // namespace shellzeta
