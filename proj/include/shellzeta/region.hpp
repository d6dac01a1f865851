#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "shellzeta/types.hpp"

namespace shellzeta {

// An unbounded measurable subset of R^N.  Membership is the ground truth;
// the exact_* closures are optional closed forms consulted before any Monte
// Carlo fallback.  Regions are immutable after construction and safe to
// share across threads.
struct Region {
    int ambient_dim = 1;
    Norm norm = Norm::euclidean;
    MeasureClass measure_class = MeasureClass::unknown;
    std::string name;

    std::function<bool(const Eigen::VectorXd&)> membership;

    // |B_{T,t}(0) ∩ Ω| in the region's norm; nullopt where the closed form
    // does not apply (the caller then falls back to Monte Carlo).
    std::function<std::optional<double>(double, double)> exact_tube_volume;

    // |B_t(0)^c ∩ Ω|; only meaningful for finite-measure regions.
    std::function<std::optional<double>(double)> exact_complement_volume;

    // H^{N-1}(S_t(0) ∩ Ω) on Euclidean spheres.
    std::function<std::optional<double>(double)> exact_surface_measure;

    std::optional<double> total_measure;

    // Upper phi-shell dimension when known analytically; spares numeric
    // estimation in the zeta convergence guard.
    std::optional<double> declared_dimension;

    // Infimum of |x| over the region (0 when the region reaches the origin).
    double min_radius = 0.0;

    // Radii in [lo, hi] where the tube function has kinks; used as
    // quadrature breakpoints and as the skip list for derivative checks.
    std::function<std::vector<double>(double, double)> nonsmooth_radii;

    double radius(const Eigen::VectorXd& p) const {
        return norm == Norm::euclidean ? p.norm() : p.lpNorm<Eigen::Infinity>();
    }

    bool contains(const Eigen::VectorXd& p) const;  // input_error on dim mismatch

    std::vector<double> nonsmooth_in(double lo, double hi) const {
        return nonsmooth_radii ? nonsmooth_radii(lo, hi) : std::vector<double>{};
    }
};

// Builders for every family used by the tool.
Region build_full_space(int n, Norm norm = Norm::euclidean);
Region build_strip(double h);                       // {0 < y < h} in R^2
Region build_envelope(double x0, double b);         // {x > x0, 0 < y < x^{-b}} in R^2
Region build_tent(double q);                        // union of (2^{2n+1}, 2^{2n+1} + 4^{-nq}) in R
Region build_stacked_two_param(double a, double b, Norm norm = Norm::sup);
Region build_disjoint_union(std::vector<Region> components);
Region build_translate(Region inner, const Eigen::VectorXd& offset);
Region build_scale(Region inner, double factor);

// JSON region documents: {"kind": ..., "params": {...}, "norm": ...};
// composites nest recursively.
Region load_region(const std::string& json_text);
Region load_region_file(const std::string& path);

// Unit-ball volume and unit-sphere area in R^n (Euclidean).
double unit_ball_volume(int n);
double unit_sphere_area(int n);  // area of S^{n-1} = boundary of the unit ball

}  // namespace shellzeta
