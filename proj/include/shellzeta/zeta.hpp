#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "shellzeta/region.hpp"
#include "shellzeta/types.hpp"

namespace shellzeta {

struct ZetaValue {
    std::complex<double> s;
    double T = 1.0;
    std::complex<double> value;
    double quad_error = 0.0;
    // values depend on the truncation radius, singularities and residues do not
    std::string T_note =
        "changing T adds an entire function; poles and residues are unaffected";
};

// Distance zeta at infinity, evaluated through the tube-function identity
// zeta(s;T) = (s+N) \int_T^inf t^{-s-N-1} |B_{T,t}(0) ∩ Ω| dt.  Finite-measure
// regions are integrated through the complement volume instead, which stays
// valid below Re s = -N and decays at the rate set by the dimension.
// Refuses evaluation for Re s <= (upper shell dimension) + 0.05.
ZetaValue zeta_eval(const Region& region, std::complex<double> s, double T,
                    const SamplingPlan& plan);

// Same integral on an independent, twice-refined panel scheme.
ZetaValue zeta_eval_refined(const Region& region, std::complex<double> s, double T,
                            const SamplingPlan& plan);

// d/ds of the zeta value, by differentiating the integrand in s.
ZetaValue zeta_derivative(const Region& region, std::complex<double> s, double T,
                          const SamplingPlan& plan);

// Central finite difference of zeta_eval; cross-check for the analytic form.
std::complex<double> zeta_derivative_fd(const Region& region, std::complex<double> s,
                                        double T, const SamplingPlan& plan,
                                        double step = 1e-4);

// \int_{B_{T1,T2}(0) ∩ Ω} |x|^{-s-N} dx; the entire function added when the
// truncation radius moves from T1 to T2.
std::complex<double> annulus_zeta_integral(const Region& region,
                                           std::complex<double> s, double T1,
                                           double T2, const SamplingPlan& plan);

struct ResidueEstimate {
    double D = 0.0;
    double value = 0.0;
    double extrapolation_error = 0.0;
    std::optional<std::pair<double, double>> bounds;  // filled by check_residue_bounds
    std::vector<std::string> warnings;
};

// Richardson extrapolation of eps * zeta(D + eps) over a halving eps ladder.
ResidueEstimate residue_at_dimension(const Region& region, double D, double T,
                                     const SamplingPlan& plan);

// Residue sandwich: for D in [-N, 0] the bounds are
//   lower shell content / (phi^{N+D} log phi) <= res <= upper shell content / log phi,
// for D < -N both bounds carry the factor -(N+D)/(1 - phi^{N+D}).
InequalityReport check_residue_bounds(const Region& region, double D, double phi,
                                      ResidueEstimate& residue,
                                      const ContentEstimate& contents);

struct ResidueLimitResult {
    double limit_estimate = 0.0;
    std::vector<double> psi;
    std::vector<double> ratio;  // content(psi)/log(psi)
    std::vector<std::string> warnings;
};

// res = lim_{psi->1+} content_psi^D / log psi, linear extrapolation in
// (psi - 1); warns when upper and lower contents disagree beyond 5% at some
// psi (the shell-measurability hypothesis fails there).
ResidueLimitResult residue_limit_phi(const Region& region, double D,
                                     const std::vector<double>& psi_grid,
                                     const GridSpec& grid, const SamplingPlan& plan);

}  // namespace shellzeta
