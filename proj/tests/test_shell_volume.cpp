#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "shellzeta/errors.hpp"
#include "shellzeta/region.hpp"
#include "shellzeta/rng.hpp"
#include "shellzeta/shell_volume.hpp"

using namespace shellzeta;

namespace {

SamplingPlan small_plan(std::uint64_t seed = 7) {
    SamplingPlan p;
    p.seed = seed;
    p.strata = 8;
    p.samples_per_stratum = 4000;
    return p;
}

}  // namespace

TEST_CASE("tube volume input validation") {
    const Region r2 = build_full_space(2);
    const SamplingPlan plan = small_plan();
    CHECK_THROWS_AS(tube_volume(r2, 2.0, 1.0, plan), input_error);
    CHECK_THROWS_AS(tube_volume(r2, 0.0, 1.0, plan), input_error);
    CHECK_THROWS_AS(tube_volume(r2, -1.0, 1.0, plan), input_error);
    CHECK_THROWS_AS(shell_volume(r2, 1.0, 1.0, plan), input_error);
    CHECK_THROWS_AS(shell_volume(r2, 1.0, 0.5, plan), input_error);
    CHECK_THROWS_AS(shell_volume(r2, 0.0, 2.0, plan), input_error);
}

TEST_CASE("closed-form values") {
    const SamplingPlan plan = small_plan();
    const Region r2 = build_full_space(2);
    CHECK(tube_volume(r2, 1.0, 2.0, plan).value ==
          doctest::Approx(3.0 * M_PI).epsilon(1e-15));
    CHECK(shell_volume(r2, 5.0, 2.0, plan).value ==
          doctest::Approx(75.0 * M_PI).epsilon(1e-15));

    // strip: value sits inside the slab bounds 2h(sqrt(phi^2 t^2-h^2)-t) and
    // 2h(phi t - sqrt(t^2-h^2))
    const Region strip = build_strip(1.0);
    const double v = tube_volume(strip, 10.0, 20.0, plan).value;
    CHECK(v >= 2.0 * (std::sqrt(400.0 - 1.0) - 10.0));
    CHECK(v <= 2.0 * (20.0 - std::sqrt(100.0 - 1.0)));

    // envelope b=1 in the asymptotic regime: shells carry log(phi)
    const Region env = build_envelope(1.0, 1.0);
    const double ve = tube_volume(env, 1e3, 2e3, plan).value;
    CHECK(std::abs(ve - std::log(2.0)) <= 0.01 * std::log(2.0));

    // tent, q = 1/2: an empty 2-shell at t = 4 and the first 4-shell branch
    const Region tent = build_tent(0.5);
    CHECK(shell_volume(tent, 4.0, 2.0, plan).value == 0.0);
    CHECK(shell_volume(tent, 4.0, 4.0, plan).value ==
          doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("shell volume is nondecreasing in phi on the exact path") {
    const SamplingPlan plan = small_plan();
    const std::vector<Region> regions = {build_strip(1.0), build_tent(0.5),
                                         build_envelope(1.0, 3.0)};
    Rng rng(5);
    for (const auto& region : regions) {
        CAPTURE(region.name);
        for (int i = 0; i < 50; ++i) {
            const double t = std::pow(10.0, rng.uniform(0.5, 5.0));
            const double p1 = 1.0 + rng.uniform() * 3.0;
            const double p2 = p1 + rng.uniform() * 3.0;
            const double v1 = shell_volume(region, t, p1, plan).value;
            const double v2 = shell_volume(region, t, p2, plan).value;
            CHECK(v1 <= v2 + 1e-12 * std::max(1.0, v2));
        }
    }
}

TEST_CASE("identical sampling plans give bit-identical Monte Carlo results") {
    Region strip = build_strip(1.0);
    strip.exact_tube_volume = {};  // force the sampling path
    const SamplingPlan plan = small_plan(99);
    const VolumeResult a = tube_volume(strip, 10.0, 20.0, plan);
    const VolumeResult b = tube_volume(strip, 10.0, 20.0, plan);
    CHECK(a.method == VolumeMethod::monte_carlo);
    CHECK(a.value == b.value);
    CHECK(a.abs_error == b.abs_error);
    SamplingPlan other = plan;
    other.seed = 100;
    CHECK(tube_volume(strip, 10.0, 20.0, other).value != a.value);
}

TEST_CASE("3-sigma error bound covers the truth in nearly all trials") {
    // full plane: every annulus sample hits, so the estimate is exact
    Region full = build_full_space(2);
    full.exact_tube_volume = {};
    SamplingPlan tiny;
    tiny.strata = 4;
    tiny.samples_per_stratum = 100;
    int full_covered = 0;
    for (int k = 0; k < 1000; ++k) {
        tiny.seed = 5000 + k;
        const VolumeResult mc = tube_volume(full, 1.0, 2.0, tiny);
        if (std::abs(mc.value - 3.0 * M_PI) <= std::max(mc.abs_error, 1e-12))
            ++full_covered;
    }
    CHECK(full_covered >= 990);

    // strip: binomial sampling with enough hits per stratum for the normal
    // approximation behind the 3-sigma bound
    Region strip = build_strip(1.0);
    const double exact = tube_volume(strip, 10.0, 20.0, small_plan()).value;
    strip.exact_tube_volume = {};
    SamplingPlan plan;
    plan.strata = 4;
    plan.samples_per_stratum = 2000;
    int covered = 0;
    const int trials = 1000;
    for (int k = 0; k < trials; ++k) {
        plan.seed = 1000 + k;
        const VolumeResult mc = tube_volume(strip, 10.0, 20.0, plan);
        if (std::abs(mc.value - exact) <= mc.abs_error) ++covered;
    }
    CHECK(covered >= 985);
}

TEST_CASE("Monte Carlo shell additivity within combined error bars") {
    Region env = build_envelope(1.0, 3.0);
    env.exact_tube_volume = {};
    SamplingPlan plan = small_plan(21);
    plan.samples_per_stratum = 20000;
    const VolumeResult ab = tube_volume(env, 2.0, 8.0, plan);
    SamplingPlan plan2 = plan;
    plan2.seed = 22;
    const VolumeResult bc = tube_volume(env, 8.0, 32.0, plan2);
    SamplingPlan plan3 = plan;
    plan3.seed = 23;
    const VolumeResult ac = tube_volume(env, 2.0, 32.0, plan3);
    CHECK(std::abs(ab.value + bc.value - ac.value) <=
          ab.abs_error + bc.abs_error + ac.abs_error);
}

TEST_CASE("sup-norm sampling: stacked family against its slab closed form") {
    const Region st = build_stacked_two_param(1.0 / 3.0, 2.0);
    Region mc_only = st;
    mc_only.exact_tube_volume = {};
    SamplingPlan plan = small_plan(31);
    plan.samples_per_stratum = 30000;
    const double exact = tube_volume(st, 3.0, 27.0, plan).value;
    CHECK(exact == doctest::Approx(2.0 / 9.0 + 2.0 / 9.0).epsilon(1e-12));
    const VolumeResult mc = tube_volume(mc_only, 3.0, 27.0, plan);
    CHECK(std::abs(mc.value - exact) <= mc.abs_error);
}

TEST_CASE("complement volumes") {
    const SamplingPlan plan = small_plan();
    const Region env = build_envelope(1.0, 3.0);
    // beyond the corner geometry the tail is x^{1-b}/(b-1) up to slivers
    CHECK(complement_volume(env, 10.0, plan).value ==
          doctest::Approx(0.005).epsilon(1e-4));
    CHECK(complement_volume(env, 0.5, plan).value ==
          doctest::Approx(0.5).epsilon(1e-12));

    const Region tent = build_tent(0.5);
    // t = 4: interval (2,3) is inside, everything from n=1 on is outside
    const double tail = complement_volume(tent, 4.0, plan).value;
    double oracle = 0.0;
    for (int n = 1; n < 60; ++n) oracle += std::exp2(-static_cast<double>(n));
    CHECK(tail == doctest::Approx(oracle).epsilon(1e-12));

    const Region st = build_stacked_two_param(1.0 / 3.0, 2.0);
    CHECK(complement_volume(st, 1.0, plan).value ==
          doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(complement_volume(build_strip(1.0), 2.0, plan),
                    unsupported_error);

    // Monte Carlo fallback: strip of exact forms, octave sums with tail fit
    Region mc_env = env;
    mc_env.exact_complement_volume = {};
    SamplingPlan big = small_plan(41);
    big.samples_per_stratum = 20000;
    const VolumeResult w = complement_volume(mc_env, 10.0, big);
    CHECK(std::abs(w.value - 0.005) <= w.abs_error + 2e-5);
}

TEST_CASE("layer-cake identity on two independent panel schemes") {
    const SamplingPlan plan = small_plan();
    const Region r2 = build_full_space(2);
    const LayerCakeResult lc = layer_cake_check(r2, 1.0, 1.0, plan);
    CHECK(std::abs(lc.lhs - 2.0 * M_PI) <= 1e-6);
    CHECK(std::abs(lc.rhs - 2.0 * M_PI) <= 1e-6);
    CHECK(lc.abs_gap <= 1e-6);

    const Region env = build_envelope(1.0, 1.0);
    const LayerCakeResult lce = layer_cake_check(env, 10.0, -1.0, plan);
    CHECK(lce.abs_gap <= 1e-6);

    CHECK_THROWS_AS(layer_cake_check(r2, 1.0, -2.5, plan), divergence_error);
    CHECK_THROWS_AS(layer_cake_check(r2, 0.0, 1.0, plan), input_error);
}

TEST_CASE("Monte Carlo is refused above six dimensions") {
    Region r7 = build_full_space(7);
    r7.exact_tube_volume = {};
    CHECK_THROWS_AS(tube_volume(r7, 1.0, 2.0, small_plan()), unsupported_error);
}
