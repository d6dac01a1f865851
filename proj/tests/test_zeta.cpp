#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "shellzeta/closed_forms.hpp"
#include "shellzeta/content.hpp"
#include "shellzeta/errors.hpp"
#include "shellzeta/region.hpp"
#include "shellzeta/zeta.hpp"

using namespace shellzeta;
using namespace std::complex_literals;

namespace {

SamplingPlan small_plan() {
    SamplingPlan p;
    p.seed = 7;
    p.strata = 8;
    p.samples_per_stratum = 2000;
    return p;
}

}  // namespace

TEST_CASE("full-space zeta matches 2*pi*T^{-s}/s") {
    const Region r2 = build_full_space(2);
    const SamplingPlan plan = small_plan();
    for (double s : {0.5, 1.0, 2.0, 3.5}) {
        const ZetaValue z = zeta_eval(r2, {s, 0.0}, 1.0, plan);
        CHECK(std::abs(z.value.real() - 2.0 * M_PI / s) <=
              std::max(z.quad_error * 3.0, 1e-8));
        CHECK(std::abs(z.value.imag()) <= z.quad_error + 1e-12);
    }
    const ZetaValue zT = zeta_eval(r2, {1.0, 0.0}, 2.0, plan);
    CHECK(std::abs(zT.value.real() - 2.0 * M_PI / 2.0) <= 1e-7);
}

TEST_CASE("conjugate symmetry of the zeta values") {
    const Region strip = build_strip(1.0);
    const SamplingPlan plan = small_plan();
    const std::complex<double> s{0.5, 2.0};
    const ZetaValue z = zeta_eval(strip, s, 1.0, plan);
    const ZetaValue zc = zeta_eval(strip, std::conj(s), 1.0, plan);
    CHECK(std::abs(zc.value - std::conj(z.value)) <=
          z.quad_error + zc.quad_error + 1e-12);
}

TEST_CASE("changing T adds exactly the annulus integral") {
    const SamplingPlan plan = small_plan();
    for (const auto& region : {build_strip(1.0), build_envelope(1.0, 1.0)}) {
        CAPTURE(region.name);
        const std::complex<double> s{0.3, 1.0};
        const ZetaValue z1 = zeta_eval(region, s, 2.0, plan);
        const ZetaValue z2 = zeta_eval(region, s, 16.0, plan);
        const std::complex<double> shift = annulus_zeta_integral(region, s, 2.0, 16.0, plan);
        CHECK(std::abs((z1.value - z2.value) - shift) <=
              z1.quad_error + z2.quad_error + 1e-8);
    }
}

TEST_CASE("independent panel schemes agree within their reported errors") {
    const SamplingPlan plan = small_plan();
    const Region strip = build_strip(1.0);
    for (double s : {0.0, 1.0, -0.5}) {
        const ZetaValue a = zeta_eval(strip, {s, 0.0}, 1.0, plan);
        const ZetaValue b = zeta_eval_refined(strip, {s, 0.0}, 1.0, plan);
        CHECK(std::abs(a.value - b.value) <=
              2.0 * std::max(a.quad_error, b.quad_error) + 1e-12);
    }
}

TEST_CASE("zeta derivative: closed form and finite differences") {
    const Region r2 = build_full_space(2);
    const SamplingPlan plan = small_plan();
    const ZetaValue d1 = zeta_derivative(r2, {1.0, 0.0}, 1.0, plan);
    CHECK(std::abs(d1.value.real() + 2.0 * M_PI) <= 1e-6);
    const ZetaValue d2 = zeta_derivative(r2, {2.0, 0.0}, 1.0, plan);
    CHECK(std::abs(d2.value.real() + 2.0 * M_PI / 4.0) <= 1e-6);

    for (const auto& region :
         {build_full_space(2), build_strip(1.0), build_envelope(1.0, 1.0)}) {
        CAPTURE(region.name);
        const std::complex<double> s{0.7, 0.0};
        const ZetaValue d = zeta_derivative(region, s, 1.0, plan);
        const std::complex<double> fd = zeta_derivative_fd(region, s, 1.0, plan);
        CHECK(std::abs(d.value - fd) / std::abs(d.value) < 1e-5);
    }
}

TEST_CASE("evaluation is refused at and below the dimension") {
    const SamplingPlan plan = small_plan();
    CHECK_THROWS_AS(zeta_eval(build_full_space(2), {-2.5, 0.0}, 1.0, plan),
                    divergence_error);
    CHECK_THROWS_AS(zeta_eval(build_full_space(2), {0.04, 0.0}, 1.0, plan),
                    divergence_error);
    const Region st = build_stacked_two_param(1.0 / 3.0, 2.0);
    CHECK_THROWS_AS(zeta_eval(st, {*st.declared_dimension + 0.01, 0.0}, 1.0, plan),
                    divergence_error);
    CHECK_THROWS_AS(zeta_eval(build_strip(1.0), {0.5, 0.0}, 0.0, plan), input_error);
}

TEST_CASE("strip zeta blows up toward its pole") {
    const SamplingPlan plan = small_plan();
    const Region strip = build_strip(1.0);
    const double a = zeta_eval(strip, {-0.5, 0.0}, 10.0, plan).value.real();
    const double b = zeta_eval(strip, {-0.99, 0.0}, 10.0, plan).value.real();
    CHECK(a > 0.0);
    CHECK(b > a);
}

TEST_CASE("stacked family: functional equation matches the closed form") {
    const Region st = build_stacked_two_param(1.0 / 3.0, 2.0);
    const TwoParamFamily fam(1.0 / 3.0, 2.0);
    const SamplingPlan plan = small_plan();
    for (const std::complex<double> s : {std::complex<double>{0.0, 0.0},
                                         std::complex<double>{-2.1, 0.0},
                                         std::complex<double>{1.0, 2.0}}) {
        const ZetaValue z = zeta_eval(st, s, 1.0, plan);
        const std::complex<double> closed = fam.zeta(s);
        CHECK(std::abs(z.value - closed) / std::abs(closed) <= 1e-6);
    }
    const ZetaValue z0 = zeta_eval(st, {0.0, 0.0}, 1.0, plan);
    CHECK(z0.value.real() == doctest::Approx(1.0 / 75.0).epsilon(1e-6));
}

TEST_CASE("residues by Richardson extrapolation") {
    const SamplingPlan plan = small_plan();
    const Region strip = build_strip(1.0);
    const ResidueEstimate rs = residue_at_dimension(strip, -1.0, 1.0, plan);
    CHECK(std::abs(rs.value - 2.0) <= 0.05 * 2.0);

    const Region r2 = build_full_space(2);
    const ResidueEstimate rf = residue_at_dimension(r2, 0.0, 1.0, plan);
    CHECK(std::abs(rf.value - 2.0 * M_PI) <= 0.05 * 2.0 * M_PI);

    // envelope: the psi-shell content is (1 - psi^{1-b})/(b-1), whose
    // log-derivative limit at 1 is exactly 1 for every b
    const Region env3 = build_envelope(1.0, 3.0);
    const ResidueEstimate re3 = residue_at_dimension(env3, -4.0, 1.0, plan);
    CHECK(std::abs(re3.value - 1.0) <= 0.05);

    const Region st = build_stacked_two_param(1.0 / 3.0, 2.0);
    const double D = *st.declared_dimension;
    const ResidueEstimate rst = residue_at_dimension(st, D, 1.0, plan);
    const double expected = 1.0 / (2.0 * std::log(2.0));
    CHECK(std::abs(rst.value - expected) <= 0.05 * expected);
}

TEST_CASE("a double pole triggers the pole-order warning") {
    // tube function pi t^2 (log t + 1) has zeta (s+2) * pi * d/ds ... with a
    // double pole at 0: eps * zeta(eps) diverges like 1/eps
    Region weird;
    weird.ambient_dim = 2;
    weird.norm = Norm::euclidean;
    weird.measure_class = MeasureClass::infinite;
    weird.name = "log_layered";
    weird.membership = [](const Eigen::VectorXd&) { return true; };
    weird.exact_tube_volume = [](double T, double t) -> std::optional<double> {
        auto f = [](double u) { return u * u * (std::log(u) + 1.0); };
        return std::max(0.0, M_PI * (f(t) - f(T)));
    };
    weird.declared_dimension = 0.0;
    const ResidueEstimate r = residue_at_dimension(weird, 0.0, 1.0, small_plan());
    bool warned = false;
    for (const auto& w : r.warnings)
        if (w.find("pole-order") != std::string::npos) warned = true;
    CHECK(warned);
}

TEST_CASE("residue sandwich between scaled shell contents") {
    const SamplingPlan plan = small_plan();
    GridSpec grid;
    const Region strip = build_strip(1.0);
    ResidueEstimate rs = residue_at_dimension(strip, -1.0, 1.0, plan);
    const ContentEstimate cs = phi_shell_content(strip, 2.0, -1.0, grid, plan);
    const InequalityReport rep = check_residue_bounds(strip, -1.0, 2.0, rs, cs);
    for (const auto& e : rep.entries) {
        CAPTURE(e.name);
        CHECK(e.pass);
    }
    REQUIRE(rs.bounds.has_value());
    // 2h(phi-1) = 2 at phi = 2: bounds 1/(2 log 2) * 2 and 2 / log 2
    CHECK(rs.bounds->first == doctest::Approx(1.0 / std::log(2.0)).epsilon(0.02));
    CHECK(rs.bounds->second == doctest::Approx(2.0 / std::log(2.0)).epsilon(0.02));

    // below -N the bounds carry -(N+D)/(1-phi^{N+D})
    const Region env3 = build_envelope(1.0, 3.0);
    ResidueEstimate re3 = residue_at_dimension(env3, -4.0, 1.0, plan);
    const ContentEstimate ce3 = phi_shell_content(env3, 2.0, -4.0, grid, plan);
    const InequalityReport rep3 = check_residue_bounds(env3, -4.0, 2.0, re3, ce3);
    for (const auto& e : rep3.entries) {
        CAPTURE(e.name);
        CHECK(e.pass);
    }
    const double factor = 2.0 / (1.0 - std::pow(2.0, -2.0));
    CHECK(re3.bounds->first ==
          doctest::Approx(factor * ce3.lower).epsilon(1e-12));
}

TEST_CASE("residue via the psi -> 1 limit of contents") {
    const SamplingPlan plan = small_plan();
    GridSpec grid;
    const ResidueLimitResult ls = residue_limit_phi(build_strip(1.0), -1.0, {}, grid, plan);
    CHECK(std::abs(ls.limit_estimate - 2.0) <= 0.03 * 2.0);
    CHECK(ls.warnings.empty());

    const ResidueLimitResult lf =
        residue_limit_phi(build_full_space(2), 0.0, {}, grid, plan);
    CHECK(std::abs(lf.limit_estimate - 2.0 * M_PI) <= 0.03 * 2.0 * M_PI);

    const ResidueLimitResult lt = residue_limit_phi(
        build_tent(0.5), -1.5, {2.0, 1.5, 1.25, 1.1}, grid, plan);
    CHECK_FALSE(lt.warnings.empty());
}
