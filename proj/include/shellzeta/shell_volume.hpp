#pragma once

#include "shellzeta/region.hpp"
#include "shellzeta/types.hpp"

namespace shellzeta {

// |B_{T,t}(0) ∩ Ω| in the region's norm.  Uses the region's closed form when
// it applies, otherwise stratified Monte Carlo over the radial annulus with
// sampling density proportional to r^{N-1} (exact annulus inverse CDF) and a
// 3-sigma error bound.
VolumeResult tube_volume(const Region& region, double T, double t,
                         const SamplingPlan& plan);

// |B_{t, phi t}(0) ∩ Ω|.
VolumeResult shell_volume(const Region& region, double t, double phi,
                          const SamplingPlan& plan);

// |B_t(0)^c ∩ Ω| for finite-measure regions.  Exact when the region carries a
// complement form; otherwise octave sums of tube volumes with an analytic
// bound (from the fitted decay exponent) on the truncated tail.
VolumeResult complement_volume(const Region& region, double t,
                               const SamplingPlan& plan);

struct LayerCakeResult {
    double lhs = 0.0;       // (sigma+N) * Mellin integral of the tube function
    double rhs = 0.0;       // the same integral on an independent refined panel scheme
    double abs_gap = 0.0;
    double lhs_error = 0.0;
    double rhs_error = 0.0;
};

// Two independent quadratures of \int_{B_T(0)^c ∩ Ω} |x|^{-sigma-N} dx via the
// tube-function identity.  Throws divergence_error when sigma is at or below
// the upper shell dimension.
LayerCakeResult layer_cake_check(const Region& region, double T, double sigma,
                                 const SamplingPlan& plan);

}  // namespace shellzeta
