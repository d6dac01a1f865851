#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "shellzeta/content.hpp"
#include "shellzeta/errors.hpp"
#include "shellzeta/region.hpp"

using namespace shellzeta;

namespace {

SamplingPlan small_plan() {
    SamplingPlan p;
    p.seed = 7;
    p.strata = 8;
    p.samples_per_stratum = 2000;
    return p;
}

}  // namespace

TEST_CASE("full-space content and dimension") {
    const Region r2 = build_full_space(2);
    GridSpec grid;
    const ContentEstimate c = phi_shell_content(r2, 2.0, 0.0, grid, small_plan());
    CHECK(c.upper == doctest::Approx(3.0 * M_PI).epsilon(1e-12));
    CHECK(c.lower == doctest::Approx(3.0 * M_PI).epsilon(1e-12));
    const DimensionEstimate d = estimate_phi_dimension(r2, 2.0, grid, small_plan());
    CHECK(std::abs(d.upper_dim) <= 0.02);
    CHECK(std::abs(d.lower_dim) <= 0.02);
    CHECK_FALSE(d.lower_is_minus_infinity);
}

TEST_CASE("envelope b=1: content log(phi), dimension -2") {
    const Region env = build_envelope(1.0, 1.0);
    GridSpec grid;
    grid.t_min = 1e3;
    const ContentEstimate c =
        phi_shell_content(env, std::exp(1.0), -2.0, grid, small_plan());
    CHECK(std::abs(c.upper - 1.0) <= 0.02);
    CHECK(std::abs(c.lower - 1.0) <= 0.02);
    for (double phi : {2.0, 4.0}) {
        const DimensionEstimate d =
            estimate_phi_dimension(env, phi, grid, small_plan());
        CHECK(std::abs(d.upper_dim + 2.0) <= 0.05);
    }
}

TEST_CASE("tent example: empty shells, degenerate lower dimension") {
    const Region tent = build_tent(0.5);
    std::vector<double> tks;
    for (int k = 1; k <= 9; ++k) tks.push_back(std::pow(4.0, k));
    const ContentEstimate c =
        phi_shell_content_at(tent, 2.0, -1.5, tks, small_plan());
    CHECK(c.lower == 0.0);

    GridSpec grid;
    const DimensionEstimate d4 = estimate_phi_dimension(tent, 4.0, grid, small_plan());
    CHECK(std::abs(d4.upper_dim + 1.5) <= 0.05);
    CHECK(std::abs(d4.lower_dim + 1.5) <= 0.05);

    const DimensionEstimate d2 = estimate_phi_dimension(tent, 2.0, grid, small_plan());
    CHECK(d2.lower_is_minus_infinity);
    CHECK(std::abs(d2.upper_dim + 1.5) <= 0.05);

    // the 4-shell contents sit inside the closed-form bracket
    const ContentEstimate c4 = phi_shell_content(tent, 4.0, -1.5, grid, small_plan());
    const double hi = std::sqrt(2.0) * (1.0 + 3.0 * std::pow(4.0, -1.5));
    CHECK(c4.lower >= 1.0 - 1e-9);
    CHECK(c4.upper <= hi + 1e-9);
}

TEST_CASE("classical content at infinity") {
    const Region env = build_envelope(1.0, 3.0);
    GridSpec grid;
    const ContentEstimate c =
        classic_content_at_infinity(env, -4.0, grid, small_plan());
    CHECK(std::abs(c.upper - 0.5) <= 0.01);
    CHECK(std::abs(c.lower - 0.5) <= 0.01);

    CHECK_THROWS_AS(classic_content_at_infinity(build_strip(1.0), -4.0, grid,
                                                small_plan()),
                    unsupported_error);
    CHECK_THROWS_AS(classic_content_at_infinity(env, -1.5, grid, small_plan()),
                    input_error);

    // r above the dimension: the windowed estimate decays with the window
    GridSpec near;
    near.t_min = 1e2;
    near.t_max = 1e4;
    GridSpec far;
    far.t_min = 1e4;
    far.t_max = 1e6;
    const double v_near =
        classic_content_at_infinity(env, -3.5, near, small_plan()).upper;
    const double v_far =
        classic_content_at_infinity(env, -3.5, far, small_plan()).upper;
    CHECK(v_far < 0.2 * v_near);
}

TEST_CASE("degenerate region raises instead of fitting zeros") {
    Region empty;
    empty.ambient_dim = 1;
    empty.norm = Norm::euclidean;
    empty.measure_class = MeasureClass::finite;
    empty.name = "empty";
    empty.membership = [](const Eigen::VectorXd&) { return false; };
    empty.exact_tube_volume = [](double, double) -> std::optional<double> {
        return 0.0;
    };
    GridSpec grid;
    CHECK_THROWS_AS(estimate_phi_dimension(empty, 2.0, grid, small_plan()),
                    unsupported_error);
}

TEST_CASE("shell-vs-classical comparison inequalities") {
    GridSpec grid;
    ComparisonParams p;
    p.r = -4.0;
    p.phi = 2.0;
    const InequalityReport rep = check_comparison_inequalities(
        build_envelope(1.0, 3.0), ComparisonMode::phi_vs_classic, p, grid,
        small_plan());
    REQUIRE(rep.entries.size() == 3);
    for (const auto& e : rep.entries) {
        CAPTURE(e.name);
        CHECK(e.pass);
    }
    CHECK_THROWS_AS(
        check_comparison_inequalities(build_strip(1.0),
                                      ComparisonMode::phi_vs_classic, p, grid,
                                      small_plan()),
        input_error);
}

TEST_CASE("phi1-vs-phi2 comparison with the floor-function factor") {
    GridSpec grid;
    ComparisonParams p;
    p.phi1 = 2.0;
    p.phi2 = 8.0;
    p.r = 0.0;
    const InequalityReport rep = check_comparison_inequalities(
        build_full_space(2), ComparisonMode::phi1_vs_phi2, p, grid, small_plan());
    for (const auto& e : rep.entries) {
        CAPTURE(e.name);
        CHECK(e.pass);
    }
    // exact equality case: full space, r = 0, phi2 = phi1^k
    // M(phi2) = 63 pi and the lower factor gives exactly (1-4^3)/(1-4) = 21
    CHECK(rep.entries[2].lhs == doctest::Approx(21.0 * 3.0 * M_PI).epsilon(1e-12));
    CHECK(rep.entries[2].rhs == doctest::Approx(63.0 * M_PI).epsilon(1e-12));

    p.phi1 = 0.9;
    CHECK_THROWS_AS(
        check_comparison_inequalities(build_full_space(2),
                                      ComparisonMode::phi1_vs_phi2, p, grid,
                                      small_plan()),
        input_error);
}

TEST_CASE("lower dimension can depend on phi, upper cannot") {
    GridSpec grid;
    const std::vector<Region> regions = {
        build_full_space(2), build_strip(1.0), build_envelope(1.0, 1.0),
        build_tent(0.5)};
    for (const auto& region : regions) {
        CAPTURE(region.name);
        double first = 0.0;
        bool have = false;
        for (double phi : {1.5, 2.0, 4.0}) {
            const DimensionEstimate d =
                estimate_phi_dimension(region, phi, grid, small_plan());
            if (!have) {
                first = d.upper_dim;
                have = true;
            } else {
                CHECK(std::abs(d.upper_dim - first) <= 0.05);
            }
        }
    }
    // the tent separates the lower dimensions: -inf at phi=2, -1.5 at phi=4
    const Region tent = build_tent(0.5);
    const DimensionEstimate d2 = estimate_phi_dimension(tent, 2.0, grid, small_plan());
    const DimensionEstimate d4 = estimate_phi_dimension(tent, 4.0, grid, small_plan());
    CHECK(d2.lower_is_minus_infinity);
    CHECK_FALSE(d4.lower_is_minus_infinity);
}

TEST_CASE("dimension range reflects the measure class") {
    GridSpec grid;
    // infinite measure forces the upper dimension into [-N, 0]
    for (const auto& region :
         {build_full_space(2), build_strip(1.0), build_envelope(1.0, 1.0)}) {
        const DimensionEstimate d =
            estimate_phi_dimension(region, 2.0, grid, small_plan());
        CHECK(d.upper_dim <= 0.05);
        CHECK(d.upper_dim >= -region.ambient_dim - 0.05);
        CHECK(d.lower_dim <= d.upper_dim + 1e-9);
    }
}

TEST_CASE("content is monotone in phi on matched grids") {
    GridSpec grid;
    grid.refinement_rounds = 0;
    const SamplingPlan plan = small_plan();
    for (const auto& region : {build_strip(1.0), build_tent(0.5)}) {
        CAPTURE(region.name);
        const double r = (region.ambient_dim == 2) ? -1.0 : -1.5;
        double prev = -1.0;
        for (double phi : {1.5, 2.0, 4.0}) {
            const double up = phi_shell_content(region, phi, r, grid, plan).upper;
            if (prev >= 0.0) CHECK(prev <= up + 1e-9);
            prev = up;
        }
    }
}

TEST_CASE("normalization exponent shifts contents by the window scale") {
    GridSpec grid;
    grid.refinement_rounds = 0;
    const Region strip = build_strip(1.0);
    const double r1 = -0.2, r2 = -0.4;  // both above the dimension -1
    const double u1 = phi_shell_content(strip, 2.0, r1, grid, small_plan()).upper;
    const double u2 = phi_shell_content(strip, 2.0, r2, grid, small_plan()).upper;
    // value(r1; t) = value(r2; t) * t^{r2-r1} <= value(r2; t) * window_min^{r2-r1}
    CHECK(u1 <= u2 * std::pow(grid.t_max / 10.0, r2 - r1) * (1.0 + 1e-12));
}
