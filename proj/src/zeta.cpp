#include "shellzeta/zeta.hpp"

#include <algorithm>
#include <cmath>

#include "shellzeta/content.hpp"
#include "shellzeta/errors.hpp"
#include "shellzeta/quadrature.hpp"
#include "shellzeta/shell_volume.hpp"
#include "shellzeta/util.hpp"

namespace shellzeta {

namespace {

double estimated_dimension(const Region& region, const SamplingPlan& plan) {
    if (region.declared_dimension) return *region.declared_dimension;
    GridSpec grid;  // defaults: [1e2, 1e6], 16 points per decade
    return estimate_phi_dimension(region, 2.0, grid, plan).upper_dim;
}

bool exact_tube_at(const Region& region, double T) {
    return region.exact_tube_volume &&
           region.exact_tube_volume(T, 2.0 * T).has_value();
}

bool exact_complement_at(const Region& region, double T) {
    return region.measure_class == MeasureClass::finite &&
           region.exact_complement_volume &&
           region.exact_complement_volume(T).has_value();
}

struct ZetaOptions {
    double panel_ratio = 1.189207115002721;   // 2^(1/4)
    double panel_rel_tol = 1e-9;
    double target_rel = 1e-9;
    // refusal margin above a numerically estimated dimension; analytically
    // declared dimensions only need to keep off the pole itself
    double estimated_dim_margin = 0.05;
    double declared_dim_margin = 1e-9;
    bool estimate_tail = true;  // credited only for one-signed real integrands
    bool derivative = false;    // integrate d/ds of the integrand instead
};

ZetaValue zeta_core(const Region& region, std::complex<double> s, double T,
                    const SamplingPlan& plan, const ZetaOptions& zopt) {
    if (!(T > 0.0)) throw input_error("zeta: truncation radius T must be positive");
    const int n = region.ambient_dim;
    const double dim = estimated_dimension(region, plan);
    const double margin = region.declared_dimension ? zopt.declared_dim_margin
                                                    : zopt.estimated_dim_margin;
    if (!(s.real() > dim + margin))
        throw divergence_error(
            "zeta integral diverges for Re s at or below the upper shell dimension "
            "(" + std::to_string(dim) + "); refusing evaluation for Re s <= " +
            std::to_string(dim + margin));

    // Finite-measure regions saturate the tube function, so the tube-form
    // integral only converges for Re s > -N; below that the complement form
    // is required.  Infinite-measure regions have dimension >= -N and the
    // tube form converges on the whole half-plane above it.
    const bool complement_path = exact_complement_at(region, T);
    if (!complement_path && region.measure_class == MeasureClass::finite &&
        !(s.real() > -n + 0.05))
        throw precision_error(
            "zeta below Re s = -N requires an exact complement volume for the region");

    const std::complex<double> spn = s + static_cast<double>(n);
    TailIntegralOptions opt;
    opt.panel_ratio = zopt.panel_ratio;
    opt.panel_rel_tol = zopt.panel_rel_tol;
    opt.target_rel = zopt.target_rel;
    opt.estimate_tail = zopt.estimate_tail && s.imag() == 0.0;
    opt.breakpoints = region.nonsmooth_in(T, 1e300);
    opt.detect_divergence = false;  // convergence is guaranteed by the dim guard

    ZetaValue out;
    out.s = s;
    out.T = T;

    if (complement_path) {
        auto W = [&](double t) { return complement_volume(region, t, plan).value; };
        CFun f;
        if (zopt.derivative) {
            f = [&](double t) {
                return std::pow(t, -s - static_cast<double>(n) - 1.0) * W(t) *
                       (1.0 - spn * std::log(t));
            };
        } else {
            f = [&](double t) {
                return std::pow(t, -s - static_cast<double>(n) - 1.0) * W(t);
            };
        }
        const TailIntegral integral = integrate_to_infinity(f, T, opt);
        const VolumeResult WT = complement_volume(region, T, plan);
        const std::complex<double> boundary = std::pow(T, -s - static_cast<double>(n));
        if (zopt.derivative) {
            out.value = -std::log(T) * boundary * WT.value - integral.value;
        } else {
            out.value = boundary * WT.value - spn * integral.value;
        }
        out.quad_error = std::abs(boundary) * WT.abs_error +
                         (zopt.derivative ? 1.0 : std::abs(spn)) * integral.total_error();
        return out;
    }

    const bool exact = exact_tube_at(region, T);
    if (!exact) {
        opt.max_panel_depth = 0;
        opt.data_error = [&](double t) {
            const double e = tube_volume(region, T, t, plan).abs_error;
            const double w = std::pow(t, -s.real() - n - 1.0);
            return zopt.derivative
                       ? w * e * std::abs(1.0 - spn * std::log(t))
                       : w * e;
        };
    }
    CFun f;
    if (zopt.derivative) {
        f = [&](double t) {
            const double v = tube_volume(region, T, t, plan).value;
            return std::pow(t, -s - static_cast<double>(n) - 1.0) * v *
                   (1.0 - spn * std::log(t));
        };
    } else {
        f = [&](double t) {
            const double v = tube_volume(region, T, t, plan).value;
            return std::pow(t, -s - static_cast<double>(n) - 1.0) * v;
        };
    }
    const TailIntegral integral = integrate_to_infinity(f, T, opt);
    if (zopt.derivative) {
        out.value = integral.value;
        out.quad_error = integral.total_error();
    } else {
        out.value = spn * integral.value;
        out.quad_error = std::abs(spn) * integral.total_error();
    }
    return out;
}

}  // namespace

ZetaValue zeta_eval(const Region& region, std::complex<double> s, double T,
                    const SamplingPlan& plan) {
    return zeta_core(region, s, T, plan, {});
}

ZetaValue zeta_eval_refined(const Region& region, std::complex<double> s, double T,
                            const SamplingPlan& plan) {
    ZetaOptions zopt;
    zopt.panel_ratio = 1.0905077326652577;  // 2^(1/8)
    zopt.panel_rel_tol = 1e-10;
    zopt.target_rel = 1e-10;
    return zeta_core(region, s, T, plan, zopt);
}

ZetaValue zeta_derivative(const Region& region, std::complex<double> s, double T,
                          const SamplingPlan& plan) {
    ZetaOptions zopt;
    zopt.derivative = true;
    return zeta_core(region, s, T, plan, zopt);
}

std::complex<double> zeta_derivative_fd(const Region& region, std::complex<double> s,
                                        double T, const SamplingPlan& plan,
                                        double step) {
    const ZetaValue hi = zeta_eval(region, s + step, T, plan);
    const ZetaValue lo = zeta_eval(region, s - step, T, plan);
    return (hi.value - lo.value) / (2.0 * step);
}

std::complex<double> annulus_zeta_integral(const Region& region,
                                           std::complex<double> s, double T1,
                                           double T2, const SamplingPlan& plan) {
    if (!(0.0 < T1 && T1 < T2)) throw input_error("annulus integral: need 0 < T1 < T2");
    const int n = region.ambient_dim;
    const std::complex<double> spn = s + static_cast<double>(n);
    auto f = [&](double t) {
        const double v = tube_volume(region, T1, t, plan).value;
        return std::pow(t, -s - static_cast<double>(n) - 1.0) * v;
    };
    const FiniteIntegral integral =
        integrate_interval(f, T1, T2, 1e-10, region.nonsmooth_in(T1, T2));
    const double vol = tube_volume(region, T1, T2, plan).value;
    return std::pow(T2, -s - static_cast<double>(n)) * vol + spn * integral.value;
}

ResidueEstimate residue_at_dimension(const Region& region, double D, double T,
                                     const SamplingPlan& plan) {
    const std::vector<double> eps{0.2, 0.1, 0.05, 0.025};
    std::vector<double> g(eps.size());
    double max_quad_err = 0.0;
    // near the pole the tail carries a fixed share of the integral at any
    // cutoff; relax the accuracy target so the fitted-tail spread can meet it
    ZetaOptions zopt;
    zopt.estimated_dim_margin = 1e-9;
    zopt.target_rel = 2e-3;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        const ZetaValue z = zeta_core(region, {D + eps[i], 0.0}, T, plan, zopt);
        g[i] = eps[i] * z.value.real();
        max_quad_err = std::max(max_quad_err, eps[i] * z.quad_error);
    }

    ResidueEstimate out;
    out.D = D;
    if (std::abs(g[3]) > 1.2 * std::abs(g[2]) && std::abs(g[2]) > 1.2 * std::abs(g[1]) &&
        std::abs(g[1]) > 1.2 * std::abs(g[0])) {
        out.warnings.push_back(
            "pole-order warning: eps * zeta(D + eps) grows as eps shrinks; the pole "
            "may not be simple or D may be misestimated");
    }

    // Neville extrapolation of the polynomial through (eps_i, g_i) to eps = 0
    std::vector<double> f = g;
    double prev_diag = f[0];
    std::vector<double> diag;
    for (std::size_t k = 1; k < eps.size(); ++k) {
        for (std::size_t i = 0; i + k < eps.size(); ++i) {
            f[i] = ((0.0 - eps[i + k]) * f[i] - (0.0 - eps[i]) * f[i + 1]) /
                   (eps[i] - eps[i + k]);
        }
        diag.push_back(f[0]);
    }
    out.value = diag.back();
    const double last_delta = std::abs(diag.back() - (diag.size() >= 2
                                                          ? diag[diag.size() - 2]
                                                          : prev_diag));
    out.extrapolation_error = last_delta + 3.0 * max_quad_err;
    if (diag.size() >= 3 &&
        std::abs(diag[2] - diag[1]) > std::abs(diag[1] - diag[0]) &&
        std::abs(diag[2] - diag[1]) > 10.0 * max_quad_err) {
        out.warnings.push_back(
            "pole-order warning: extrapolation deltas are not contracting");
    }
    return out;
}

InequalityReport check_residue_bounds(const Region& region, double D, double phi,
                                      ResidueEstimate& residue,
                                      const ContentEstimate& contents) {
    if (!(phi > 1.0)) throw input_error("residue bounds: phi must exceed 1");
    if (D > 1e-9) throw input_error("residue bounds: D must be nonpositive");
    const int n = region.ambient_dim;
    double lower_bound, upper_bound;
    std::string branch;
    if (D >= -static_cast<double>(n)) {
        lower_bound = contents.lower / (std::pow(phi, n + D) * std::log(phi));
        upper_bound = contents.upper / std::log(phi);
        branch = "dimension within [-N, 0]";
    } else {
        const double factor = -(n + D) / (1.0 - std::pow(phi, n + D));
        lower_bound = factor * contents.lower;
        upper_bound = factor * contents.upper;
        branch = "dimension below -N";
    }
    const double tol = residue.extrapolation_error + contents.upper_error +
                       contents.lower_error + 1e-9;
    InequalityReport rep;
    rep.add("scaled lower shell content <= residue (" + branch + ")", lower_bound,
            residue.value, tol);
    rep.add("residue <= scaled upper shell content (" + branch + ")", residue.value,
            upper_bound, tol);
    residue.bounds = std::make_pair(lower_bound, upper_bound);
    return rep;
}

ResidueLimitResult residue_limit_phi(const Region& region, double D,
                                     const std::vector<double>& psi_grid,
                                     const GridSpec& grid, const SamplingPlan& plan) {
    std::vector<double> psis = psi_grid;
    if (psis.empty()) psis = {1.5, 1.25, 1.1, 1.05};
    ResidueLimitResult out;
    for (double psi : psis) {
        if (!(psi > 1.0)) throw input_error("residue limit: psi values must exceed 1");
        const ContentEstimate c = phi_shell_content(region, psi, D, grid, plan);
        const double mid = 0.5 * (c.upper + c.lower);
        if (std::abs(c.upper - c.lower) >
            0.05 * std::max(std::abs(c.upper), 1e-300)) {
            out.warnings.push_back(
                "not shell-measurable at psi = " + format_double(psi) +
                ": upper and lower contents disagree beyond 5%");
        }
        out.psi.push_back(psi);
        out.ratio.push_back(mid / std::log(psi));
    }
    // linear extrapolation of ratio against (psi - 1) to psi = 1
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(out.psi.size());
    for (std::size_t i = 0; i < out.psi.size(); ++i) {
        const double x = out.psi[i] - 1.0;
        sx += x;
        sy += out.ratio[i];
        sxx += x * x;
        sxy += x * out.ratio[i];
    }
    const double den = m * sxx - sx * sx;
    if (den > 0.0) {
        const double slope = (m * sxy - sx * sy) / den;
        out.limit_estimate = (sy - slope * sx) / m;
    } else {
        out.limit_estimate = out.ratio.empty() ? 0.0 : out.ratio.back();
    }
    return out;
}

}  // namespace shellzeta
