#pragma once

#include <Eigen/Dense>
#include <vector>

#include "shellzeta/region.hpp"
#include "shellzeta/types.hpp"

namespace shellzeta {

// One-point compactification of R^N onto the unit sphere S^N, the point at
// infinity landing on the north pole (0, ..., 0, 1).
Eigen::VectorXd stereographic_project(const Eigen::VectorXd& x);
Eigen::VectorXd stereographic_inverse(const Eigen::VectorXd& y);  // y != north pole

// Area of the unit n-sphere S^n embedded in R^{n+1}.
double sphere_area_sn(int n);

// Spherical N-volume of the projected region: integral over Ω of the
// conformal weight 2^N / (1 + |x|^2)^N.  Euclidean regions only.
double spherical_volume(const Region& region, const SamplingPlan& plan);

// Forced Monte Carlo path (uniform points on S^N pulled back through the
// projection); cross-check for the quadrature path.
double spherical_volume_mc(const Region& region, const SamplingPlan& plan);

// Weighted volume of the geodesic delta-neighborhood of the north pole
// intersected with the projected region: the pullback is the exterior of the
// ball of radius cot(delta/2).
double spherical_nbhd_volume(const Region& region, double delta,
                             const SamplingPlan& plan);

struct DeltaGrid {
    double delta_min = 1e-6;
    double delta_max = 1e-2;
    int points_per_decade = 16;
    int refinement_rounds = 1;

    std::vector<double> points() const;
};

struct SphericalContentEstimate {
    double r = 0.0;
    double upper = 0.0;
    double lower = 0.0;
    DeltaGrid window;
};

// Windowed sup/inf of nbhd_volume(delta)/delta^{N-r} over the small-delta
// decade of the grid.
SphericalContentEstimate spherical_content(const Region& region, double r,
                                           const DeltaGrid& grid,
                                           const SamplingPlan& plan);

// Spherical-vs-at-infinity content sandwich for finite-measure regions and
// r < -N, evaluated on matched windows (delta = 2 arccot t).
InequalityReport check_sphere_comparison(const Region& region, double r,
                                         const GridSpec& t_grid,
                                         const SamplingPlan& plan);

// H^{N-1}(S_t(0) ∩ Ω) on the centered sphere of radius t (Euclidean).
VolumeResult surface_measure(const Region& region, double t,
                             const SamplingPlan& plan);

struct SurfaceContentEstimate {
    double r = 0.0;
    double upper = 0.0;
    double lower = 0.0;
    GridSpec window;
};

// Windowed sup/inf of surface_measure(t)/t^{N-1+r} over the top decade.
SurfaceContentEstimate surface_content(const Region& region, double r,
                                       const GridSpec& grid,
                                       const SamplingPlan& plan);

// Pointwise checks at each grid radius (skipping declared non-smooth radii):
// (i) the central difference of the tube volume equals the surface measure,
// (ii) shell_volume(t, phi)/log phi extrapolated in (phi - 1) equals
// t * surface_measure(t).  Entries report relative errors against a 1e-3 gate.
InequalityReport check_derivative_relation(const Region& region,
                                           const std::vector<double>& t_grid,
                                           const SamplingPlan& plan);

}  // namespace shellzeta
