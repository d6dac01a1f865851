#pragma once

#include <vector>

#include "shellzeta/region.hpp"
#include "shellzeta/types.hpp"

namespace shellzeta {

// Windowed sup/inf of shell_volume(t, phi)/t^{N+r}: extrema over the top
// decade of the grid with refinement_rounds rounds of local densification
// around each arg-extremum.  These bound, not certify, the true
// limsup/liminf.
ContentEstimate phi_shell_content(const Region& region, double phi, double r,
                                  const GridSpec& grid, const SamplingPlan& plan);

// Same protocol on an explicit list of evaluation radii (no refinement).
ContentEstimate phi_shell_content_at(const Region& region, double phi, double r,
                                     const std::vector<double>& ts,
                                     const SamplingPlan& plan);

// Envelope regression of log shell_volume against log t: slope through the
// per-decade maxima (minima) minus N gives the upper (lower) dimension.  A
// shell function that is exactly zero on three or more decades flags the
// lower dimension as -infinity.
DimensionEstimate estimate_phi_dimension(const Region& region, double phi,
                                         const GridSpec& grid,
                                         const SamplingPlan& plan);

// Classical content at infinity for finite-measure regions (r < -N):
// windowed extrema of |B_t(0)^c ∩ Ω| / t^{N+r}.
ContentEstimate classic_content_at_infinity(const Region& region, double r,
                                            const GridSpec& grid,
                                            const SamplingPlan& plan);

enum class ComparisonMode { phi_vs_classic, phi1_vs_phi2 };

struct ComparisonParams {
    double r = 0.0;
    double phi = 2.0;   // phi_vs_classic
    double phi1 = 2.0;  // phi1_vs_phi2
    double phi2 = 4.0;
};

// Replays the shell-vs-classical content sandwich (finite measure, r < -N)
// or the phi1-vs-phi2 comparison with its floor-function factors, on
// windowed estimates over a common grid.
InequalityReport check_comparison_inequalities(const Region& region,
                                               ComparisonMode mode,
                                               const ComparisonParams& params,
                                               const GridSpec& grid,
                                               const SamplingPlan& plan);

}  // namespace shellzeta
