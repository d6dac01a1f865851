#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "shellzeta/closed_forms.hpp"
#include "shellzeta/errors.hpp"
#include "shellzeta/region.hpp"
#include "shellzeta/rng.hpp"
#include "shellzeta/shell_volume.hpp"

using namespace shellzeta;

namespace {

Eigen::VectorXd pt(double x) {
    Eigen::VectorXd p(1);
    p << x;
    return p;
}
Eigen::VectorXd pt(double x, double y) {
    Eigen::VectorXd p(2);
    p << x, y;
    return p;
}

SamplingPlan small_plan(std::uint64_t seed = 7) {
    SamplingPlan p;
    p.seed = seed;
    p.strata = 8;
    p.samples_per_stratum = 4000;
    return p;
}

// brute-force membership in the union of (2^{2n+1}, 2^{2n+1} + 4^{-nq})
bool tent_member_oracle(double q, double x) {
    for (int n = 0; n < 60; ++n) {
        const double l = std::ldexp(1.0, 2 * n + 1);
        if (l > x) return false;
        if (x > l && x < l + std::exp2(-2.0 * n * q)) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("membership of the built-in families") {
    const Region strip = build_strip(1.0);
    CHECK(strip.contains(pt(100.0, 0.5)));
    CHECK_FALSE(strip.contains(pt(100.0, 1.5)));
    CHECK_FALSE(strip.contains(pt(100.0, 0.0)));

    const Region env = build_envelope(1.0, 1.0);
    CHECK_FALSE(env.contains(pt(2.0, 0.6)));  // 0.6 > 2^{-1}
    CHECK(env.contains(pt(2.0, 0.4)));
    CHECK_FALSE(env.contains(pt(0.5, 0.1)));

    const Region tent = build_tent(0.5);
    CHECK(tent.contains(pt(2.5)));
    CHECK(tent_member_oracle(0.5, 2.5));
    Rng rng(11);
    for (int i = 0; i < 4000; ++i) {
        const double x = std::pow(2.0, rng.uniform(0.0, 24.0));
        CHECK(tent.contains(pt(x)) == tent_member_oracle(0.5, x));
    }

    CHECK_THROWS_AS((void)strip.contains(pt(1.0)), input_error);
}

TEST_CASE("builder constraints name the violated bound") {
    CHECK_THROWS_AS(build_strip(-1.0), constraint_error);
    CHECK_THROWS_AS(build_tent(0.0), constraint_error);
    CHECK_THROWS_AS(build_envelope(1.0, -2.0), constraint_error);
    CHECK_THROWS_AS(build_stacked_two_param(0.7, 2.0), constraint_error);
    // b must exceed log_{1/a} 2
    CHECK_THROWS_AS(build_stacked_two_param(1.0 / 3.0, 0.5), constraint_error);
    CHECK_THROWS_AS(build_scale(build_strip(1.0), 0.0), constraint_error);
}

TEST_CASE("measure classes and totals") {
    CHECK(build_full_space(2).measure_class == MeasureClass::infinite);
    CHECK(build_strip(1.0).measure_class == MeasureClass::infinite);
    CHECK(build_envelope(1.0, 1.0).measure_class == MeasureClass::infinite);
    CHECK(build_envelope(1.0, 3.0).measure_class == MeasureClass::finite);
    CHECK(*build_envelope(1.0, 3.0).total_measure == doctest::Approx(0.5));

    const Region tent1 = build_tent(1.0);
    CHECK(*tent1.total_measure == doctest::Approx(4.0 / 3.0).epsilon(1e-14));

    // finite iff b > 1 + log_{1/a} 2
    const Region fin = build_stacked_two_param(1.0 / 3.0, 2.0);
    CHECK(fin.measure_class == MeasureClass::finite);
    CHECK(*fin.total_measure == doctest::Approx(1.0).epsilon(1e-14));
    const Region inf = build_stacked_two_param(1.0 / 3.0, 1.2);
    CHECK(inf.measure_class == MeasureClass::infinite);
}

TEST_CASE("full-space tube volume is the annulus volume") {
    const Region r2 = build_full_space(2);
    CHECK(*r2.exact_tube_volume(1.0, 2.0) == doctest::Approx(3.0 * M_PI).epsilon(1e-15));
    const Region r2s = build_full_space(2, Norm::sup);
    CHECK(*r2s.exact_tube_volume(1.0, 2.0) == doctest::Approx(12.0).epsilon(1e-15));
}

TEST_CASE("exact tube volumes: zero width, monotone, shell-additive") {
    const SamplingPlan plan = small_plan();
    const std::vector<Region> regions = {
        build_full_space(2), build_strip(1.0),      build_envelope(1.0, 1.0),
        build_envelope(1.0, 3.0), build_tent(0.5),
        build_stacked_two_param(1.0 / 3.0, 2.0),
    };
    Rng rng(3);
    for (const auto& region : regions) {
        CAPTURE(region.name);
        for (int i = 0; i < 40; ++i) {
            const double lo = region.name == "stacked_two_param" ? 1.0 : 0.5;
            double a = lo * std::pow(10.0, rng.uniform(0.0, 4.0));
            double m = a * std::pow(10.0, rng.uniform(0.0, 1.0));
            double c = m * std::pow(10.0, rng.uniform(0.0, 1.0));
            const double vaa = tube_volume(region, a, a, plan).value;
            CHECK(vaa == 0.0);
            const double vam = tube_volume(region, a, m, plan).value;
            const double vmc = tube_volume(region, m, c, plan).value;
            const double vac = tube_volume(region, a, c, plan).value;
            CHECK(vam <= vac + 1e-12 * std::max(1.0, vac));
            CHECK(std::abs(vam + vmc - vac) <= 1e-12 * std::max(1.0, vac));
        }
    }
}

TEST_CASE("tent shell function against the piecewise closed form") {
    const double q = 0.5;
    const Region tent = build_tent(q);
    const SamplingPlan plan = small_plan();
    Rng rng(17);
    for (int i = 0; i < 500; ++i) {
        const double t = 4.0 * std::pow(2.0, rng.uniform() * 26.0);
        const int n = static_cast<int>(std::floor(0.5 * std::log2(t)));
        const double l = std::ldexp(1.0, 2 * n + 1);
        const double a1 = std::exp2(-2.0 * n * q);
        const double a2 = std::exp2(-2.0 * (n + 1) * q);
        double expected;
        if (t <= l) expected = a1;
        else if (t <= l + 0.25 * a2) expected = a1 + 3.0 * (t - l);
        else if (t <= l + a1) expected = a1 + a2 + (l - t);
        else expected = a2;
        const double got = tube_volume(tent, t, 4.0 * t, plan).value;
        CHECK(std::abs(got - expected) <= 1e-12);
    }
}

TEST_CASE("Monte Carlo agrees with the exact forms at 3 sigma") {
    const std::vector<Region> regions = {
        build_strip(1.0),
        build_envelope(1.0, 1.0),
        build_stacked_two_param(1.0 / 3.0, 2.0),
    };
    for (const auto& region : regions) {
        CAPTURE(region.name);
        Region mc_only = region;
        mc_only.exact_tube_volume = {};
        for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
            SamplingPlan plan = small_plan(seed);
            plan.samples_per_stratum = 40000;
            const double T = 5.0, t = 40.0;
            const double exact = tube_volume(region, T, t, plan).value;
            const VolumeResult mc = tube_volume(mc_only, T, t, plan);
            CHECK(mc.method == VolumeMethod::monte_carlo);
            CHECK(std::abs(mc.value - exact) <= std::max(mc.abs_error, 1e-12));
        }
    }
}

TEST_CASE("disjoint union adds exact tube volumes and matches Monte Carlo") {
    // envelope below y = 1 and a detached horizontal band {5 < y < 6}
    Region band;
    band.ambient_dim = 2;
    band.norm = Norm::euclidean;
    band.measure_class = MeasureClass::infinite;
    band.name = "band";
    band.membership = [](const Eigen::VectorXd& p) {
        return p(1) > 5.0 && p(1) < 6.0;
    };
    auto half_area = [](double h, double t) {
        // area of B_t(0) ∩ {0 < y < h}
        if (t <= 0.0) return 0.0;
        if (t <= h) return 0.5 * M_PI * t * t;
        return h * std::sqrt(t * t - h * h) + t * t * std::asin(h / t);
    };
    band.exact_tube_volume = [half_area](double T, double t) -> std::optional<double> {
        auto at = [&](double s) { return half_area(6.0, s) - half_area(5.0, s); };
        return std::max(0.0, at(t) - at(T));
    };
    const Region env = build_envelope(1.0, 3.0);
    const Region uni = build_disjoint_union({env, band});

    const SamplingPlan plan = small_plan();
    const double sum = tube_volume(env, 2.0, 50.0, plan).value +
                       tube_volume(band, 2.0, 50.0, plan).value;
    CHECK(tube_volume(uni, 2.0, 50.0, plan).value ==
          doctest::Approx(sum).epsilon(1e-14));

    Region uni_mc = uni;
    uni_mc.exact_tube_volume = {};
    SamplingPlan big = small_plan(5);
    big.samples_per_stratum = 20000;
    const VolumeResult mc = tube_volume(uni_mc, 2.0, 50.0, big);
    CHECK(std::abs(mc.value - sum) <= mc.abs_error);

    CHECK_THROWS_AS(build_disjoint_union({build_strip(1.0), build_tent(0.5)}),
                    input_error);
}

TEST_CASE("translate keeps 1-D exactness and full-space invariance") {
    const Region tent = build_tent(0.5);
    Eigen::VectorXd shift(1);
    shift << 3.0;
    const Region moved = build_translate(tent, shift);
    CHECK(moved.contains(pt(5.5)));       // 2.5 + 3
    CHECK_FALSE(moved.contains(pt(2.5)));
    const SamplingPlan plan = small_plan();
    // window [T, t) against the shifted interval layout
    const double direct = tube_volume(moved, 6.0, 40.0, plan).value;
    const double expected = tube_volume(tent, 3.0, 37.0, plan).value;
    CHECK(direct == doctest::Approx(expected).epsilon(1e-13));

    const Region full = build_full_space(2);
    Eigen::VectorXd v2(2);
    v2 << 4.0, -1.0;
    const Region moved_full = build_translate(full, v2);
    CHECK(*moved_full.exact_tube_volume(1.0, 2.0) ==
          doctest::Approx(3.0 * M_PI).epsilon(1e-15));

    // a 2-D shift of the strip invalidates the closed forms
    const Region moved_strip = build_translate(build_strip(1.0), v2);
    CHECK_FALSE(static_cast<bool>(moved_strip.exact_tube_volume));
    CHECK(moved_strip.contains(pt(0.0, -0.5)));
}

TEST_CASE("scale rescales volumes, surfaces and totals") {
    const Region env = build_envelope(1.0, 3.0);
    const Region big = build_scale(env, 2.0);
    CHECK(*big.total_measure == doctest::Approx(4.0 * 0.5).epsilon(1e-14));
    const SamplingPlan plan = small_plan();
    const double direct = tube_volume(big, 4.0, 20.0, plan).value;
    const double expected = 4.0 * tube_volume(env, 2.0, 10.0, plan).value;
    CHECK(direct == doctest::Approx(expected).epsilon(1e-13));
    CHECK(*big.exact_surface_measure(8.0) ==
          doctest::Approx(2.0 * *env.exact_surface_measure(4.0)).epsilon(1e-13));
    CHECK(big.contains(pt(4.0, 0.01)));
    CHECK_FALSE(env.contains(pt(4.0, 0.02)));
    CHECK(big.contains(pt(4.0, 0.02)));  // (2, 0.01) is inside the base region
}

TEST_CASE("region specs load from JSON") {
    const Region r2 = load_region(R"({"kind": "full_space", "params": {"n": 2}})");
    CHECK(r2.ambient_dim == 2);
    CHECK(r2.norm == Norm::euclidean);

    const Region st = load_region(
        R"({"kind": "stacked_two_param", "params": {"a": 0.3333333333333333, "b": 2.0}})");
    CHECK(st.norm == Norm::sup);

    const Region nested = load_region(R"({
      "kind": "scale",
      "params": {"factor": 2.0, "inner": {"kind": "tent", "params": {"q": 0.5}}}
    })");
    CHECK(nested.contains(pt(5.0)));  // 2.5 * 2

    const Region moved = load_region(R"({
      "kind": "translate",
      "params": {"offset": [3.0], "inner": {"kind": "tent", "params": {"q": 0.5}}}
    })");
    CHECK(moved.contains(pt(5.5)));

    CHECK_THROWS_AS(load_region("{\"kind\": \"banana\"}"), input_error);
    CHECK_THROWS_AS(load_region("{\"kind\": \"strip\"}"), input_error);
    try {
        load_region("{\n  \"kind\": \"strip\",\n  oops\n}");
        CHECK(false);
    } catch (const input_error& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("stacked membership respects the strip height") {
    const Region st = build_stacked_two_param(1.0 / 3.0, 2.0);
    const double S = TwoParamFamily(1.0 / 3.0, 2.0).strip_height();
    Rng rng(23);
    for (int i = 0; i < 2000; ++i) {
        const double x = std::pow(10.0, rng.uniform(0.0, 5.0));
        const double y = S + 1e-12 + rng.uniform() * 2.0;
        CHECK_FALSE(st.contains(pt(x, y)));
    }
    // a point of the first copy: x > 3, 0 < y < x^{-2}
    CHECK(st.contains(pt(4.0, 0.05)));
    CHECK_FALSE(st.contains(pt(2.0, 0.05)));
}
