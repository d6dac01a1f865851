#include "shellzeta/shell_volume.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <thread>
#include <vector>

#include "shellzeta/errors.hpp"
#include "shellzeta/quadrature.hpp"
#include "shellzeta/rng.hpp"
#include "shellzeta/util.hpp"

namespace shellzeta {

int worker_threads() {
    static const int cached = [] {
        int n = static_cast<int>(std::thread::hardware_concurrency());
        if (n < 1) n = 1;
        if (const char* env = std::getenv("SHELLZETA_THREADS")) {
            const int cap = std::atoi(env);
            if (cap >= 1) n = std::min(n, cap);
        }
        return n;
    }();
    return cached;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const int workers = std::min<std::size_t>(worker_threads(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void SamplingPlan::validate() const {
    if (strata < 1) throw input_error("sampling plan: strata must be >= 1");
    if (samples_per_stratum < 100)
        throw input_error("sampling plan: samples_per_stratum must be >= 100");
}

void GridSpec::validate() const {
    if (!(t_min >= 1.0)) throw input_error("grid: t_min must be >= 1");
    if (!(t_max / t_min >= 100.0))
        throw input_error("grid: t_max/t_min must span at least two decades");
    if (points_per_decade < 8)
        throw input_error("grid: points_per_decade must be >= 8");
    if (refinement_rounds < 0)
        throw input_error("grid: refinement_rounds must be >= 0");
}

std::vector<double> GridSpec::points() const {
    const double decades = std::log10(t_max / t_min);
    const int n = std::max(2, static_cast<int>(std::round(decades * points_per_decade)));
    std::vector<double> out(n + 1);
    for (int i = 0; i <= n; ++i)
        out[i] = t_min * std::pow(t_max / t_min, static_cast<double>(i) / n);
    out.front() = t_min;
    out.back() = t_max;
    return out;
}

namespace {

// Sample a point of the annulus {r_lo <= |x| < r_hi} uniformly: radius from
// the exact inverse CDF (volume grows like r^N in both norms), direction
// uniform on the unit sphere / cube surface.
void sample_annulus_point(Rng& rng, int n, Norm norm, double r_lo, double r_hi,
                          Eigen::VectorXd& out) {
    const double u = rng.uniform();
    const double pn_lo = std::pow(r_lo, n);
    const double pn_hi = std::pow(r_hi, n);
    const double r = std::pow(pn_lo + u * (pn_hi - pn_lo), 1.0 / n);
    if (norm == Norm::euclidean) {
        double norm2 = 0.0;
        do {
            for (int i = 0; i < n; ++i) {
                out(i) = rng.gaussian();
            }
            norm2 = out.squaredNorm();
        } while (norm2 == 0.0);
        out *= r / std::sqrt(norm2);
    } else {
        // uniform on the boundary of the cube [-r, r]^n: pick a face, then
        // uniform coordinates on it
        const std::uint64_t face = rng.next_u64() % (2u * n);
        const int axis = static_cast<int>(face / 2);
        const double sign = (face % 2 == 0) ? 1.0 : -1.0;
        for (int i = 0; i < n; ++i) out(i) = rng.uniform(-r, r);
        out(axis) = sign * r;
    }
}

VolumeResult mc_tube_volume(const Region& region, double T, double t,
                            const SamplingPlan& plan) {
    plan.validate();
    const int n = region.ambient_dim;
    if (n > 6)
        throw unsupported_error(
            "Monte Carlo volume estimation is limited to ambient dimension <= 6");
    const double shell_coeff =
        (region.norm == Norm::euclidean) ? unit_ball_volume(n) : std::pow(2.0, n);

    const int K = plan.strata;
    std::vector<double> est(K, 0.0), var(K, 0.0);
    parallel_for(K, [&](std::size_t k) {
        Rng rng = Rng::stream(plan.seed, k);
        const double r_lo = T * std::pow(t / T, static_cast<double>(k) / K);
        const double r_hi = T * std::pow(t / T, static_cast<double>(k + 1) / K);
        const double band_vol =
            shell_coeff * (std::pow(r_hi, n) - std::pow(r_lo, n));
        Eigen::VectorXd p(n);
        std::int64_t hits = 0;
        for (int i = 0; i < plan.samples_per_stratum; ++i) {
            sample_annulus_point(rng, n, region.norm, r_lo, r_hi, p);
            if (region.membership(p)) ++hits;
        }
        const double m = static_cast<double>(plan.samples_per_stratum);
        const double frac = static_cast<double>(hits) / m;
        est[k] = band_vol * frac;
        var[k] = band_vol * band_vol * frac * (1.0 - frac) / m;
    });

    VolumeResult out;
    out.method = VolumeMethod::monte_carlo;
    out.samples_used = static_cast<std::int64_t>(K) * plan.samples_per_stratum;
    double v = 0.0, s2 = 0.0;
    for (int k = 0; k < K; ++k) {
        v += est[k];
        s2 += var[k];
    }
    out.value = v;
    out.abs_error = 3.0 * std::sqrt(s2);
    return out;
}

}  // namespace

VolumeResult tube_volume(const Region& region, double T, double t,
                         const SamplingPlan& plan) {
    if (!(T > 0.0)) throw input_error("tube volume: inner radius T must be positive");
    if (T > t) throw input_error("tube volume: need T <= t");
    if (T == t) return VolumeResult{0.0, 0.0, VolumeMethod::exact, 0};
    if (region.exact_tube_volume) {
        if (auto v = region.exact_tube_volume(T, t))
            return VolumeResult{std::max(0.0, *v), 0.0, VolumeMethod::exact, 0};
    }
    return mc_tube_volume(region, T, t, plan);
}

VolumeResult shell_volume(const Region& region, double t, double phi,
                          const SamplingPlan& plan) {
    if (!(t > 0.0)) throw input_error("shell volume: t must be positive");
    if (!(phi > 1.0)) throw input_error("shell volume: phi must exceed 1");
    return tube_volume(region, t, phi * t, plan);
}

VolumeResult complement_volume(const Region& region, double t,
                               const SamplingPlan& plan) {
    if (!(t > 0.0)) throw input_error("complement volume: t must be positive");
    if (region.measure_class != MeasureClass::finite)
        throw unsupported_error(
            "complement volume requires a declared finite-measure region");
    if (region.exact_complement_volume) {
        if (auto v = region.exact_complement_volume(t))
            return VolumeResult{std::max(0.0, *v), 0.0, VolumeMethod::exact, 0};
    }
    // octave sums t..2t..4t.. until the fitted decay bounds the tail below
    // 1e-3 of the running total
    VolumeResult out;
    out.method = VolumeMethod::monte_carlo;  // the truncation makes this approximate
    double lo = t;
    double acc = 0.0, err2 = 0.0;
    std::vector<double> inc;
    for (int k = 0; k < 60; ++k) {
        const VolumeResult v = tube_volume(region, lo, 2.0 * lo, plan);
        err2 += v.abs_error * v.abs_error;
        out.samples_used += v.samples_used;
        acc += v.value;
        inc.push_back(v.value);
        lo *= 2.0;
        if (inc.size() >= 4 && acc > 0.0) {
            // octave decay ratio over the last increments
            double num = 0.0, den = 0.0;
            for (std::size_t i = inc.size() - 3; i < inc.size(); ++i) {
                num += inc[i];
                den += inc[i - 1];
            }
            if (den > 0.0) {
                const double rho = num / den;
                if (rho < 0.9) {
                    const double tail = inc.back() * rho / (1.0 - rho);
                    if (tail < 1e-3 * (acc + tail)) {
                        out.value = acc + tail;
                        out.abs_error = std::sqrt(err2) + tail;
                        return out;
                    }
                }
            } else if (inc.back() == 0.0) {
                out.value = acc;
                out.abs_error = std::sqrt(err2);
                return out;
            }
        }
    }
    throw precision_error(
        "complement volume: truncated tail did not fall below the 1e-3 target");
}

LayerCakeResult layer_cake_check(const Region& region, double T, double sigma,
                                 const SamplingPlan& plan) {
    if (!(T > 0.0)) throw input_error("layer cake: T must be positive");
    const int n = region.ambient_dim;
    auto integrand = [&](double t) {
        const double v = tube_volume(region, T, t, plan).value;
        return std::complex<double>(std::pow(t, -sigma - n - 1.0) * v, 0.0);
    };
    const bool exact_path =
        region.exact_tube_volume && region.exact_tube_volume(T, 2.0 * T).has_value();

    TailIntegralOptions opt_a;
    opt_a.breakpoints = region.nonsmooth_in(T, 1e300);
    if (!exact_path) {
        opt_a.max_panel_depth = 0;  // bisection cannot converge on sampling noise
        opt_a.data_error = [&](double t) {
            return std::pow(t, -sigma - n - 1.0) *
                   tube_volume(region, T, t, plan).abs_error;
        };
    }
    TailIntegralOptions opt_b = opt_a;
    opt_b.panel_ratio = 1.0905077326652577;  // 2^(1/8): refined, disjoint panel grid
    opt_b.panel_rel_tol = 1e-10;

    const TailIntegral ia = integrate_to_infinity(integrand, T, opt_a);
    const TailIntegral ib = integrate_to_infinity(integrand, T, opt_b);

    LayerCakeResult out;
    out.lhs = (sigma + n) * ia.value.real();
    out.rhs = (sigma + n) * ib.value.real();
    out.abs_gap = std::abs(out.lhs - out.rhs);
    out.lhs_error = std::abs(sigma + n) * ia.total_error();
    out.rhs_error = std::abs(sigma + n) * ib.total_error();
    return out;
}

}  // namespace shellzeta
