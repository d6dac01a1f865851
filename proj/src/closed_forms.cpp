#include "shellzeta/closed_forms.hpp"

#include <algorithm>
#include <cmath>

#include "shellzeta/errors.hpp"
#include "shellzeta/region.hpp"
#include "shellzeta/shell_volume.hpp"

namespace shellzeta {

namespace {

double power_integral(double lo, double hi, double b) {
    // integral of x^{-b} over [lo, hi]
    if (hi <= lo) return 0.0;
    if (b == 1.0) return std::log(hi / lo);
    return (std::pow(hi, 1.0 - b) - std::pow(lo, 1.0 - b)) / (1.0 - b);
}

}  // namespace

TwoParamFamily::TwoParamFamily(double a, double b) : a_(a), b_(b) {
    if (!(a > 0.0 && a < 0.5))
        throw constraint_error("two-parameter family: a must lie in (0, 1/2), got " +
                               std::to_string(a));
    const double b_min = std::log(2.0) / std::log(1.0 / a);
    if (!(b > b_min))
        throw constraint_error(
            "two-parameter family: b must exceed log_{1/a} 2 = " +
            std::to_string(b_min) + ", got " + std::to_string(b));
    const double ab = std::pow(a, b);
    strip_height_ = ab / (1.0 - 2.0 * ab);
}

bool TwoParamFamily::finite_measure() const {
    return b_ > 1.0 + std::log(2.0) / std::log(1.0 / a_);
}

std::optional<double> TwoParamFamily::total_measure() const {
    if (!finite_measure()) return std::nullopt;
    const double beta = 2.0 * std::pow(a_, b_ - 1.0);  // < 1 here
    return 0.5 * beta / ((1.0 - beta) * (b_ - 1.0));
}

double TwoParamFamily::shell_volume(double t1, double t2) const {
    if (!(t1 <= t2)) throw input_error("two-parameter shell: need t1 <= t2");
    if (t1 < strip_height_)
        throw unsupported_error(
            "two-parameter shell: slab reduction requires t1 >= strip height " +
            std::to_string(strip_height_));
    if (t1 == t2) return 0.0;
    const double inv_a = 1.0 / a_;
    double acc = 0.0;
    for (int m = 1;; ++m) {
        const double xm = std::pow(inv_a, m);
        if (xm >= t2) break;
        const double lo = std::max(xm, t1);
        if (lo < t2) acc += std::ldexp(1.0, m - 1) * power_integral(lo, t2, b_);
    }
    return acc;
}

double TwoParamFamily::complement_volume(double t) const {
    if (!finite_measure())
        throw unsupported_error("two-parameter complement volume requires finite measure");
    if (t < strip_height_)
        throw unsupported_error("two-parameter complement volume requires t >= strip height");
    const double log_inv_a = std::log(1.0 / a_);
    const double beta = 2.0 * std::pow(a_, b_ - 1.0);
    const int M = std::max(0, static_cast<int>(std::floor(std::log(t) / log_inv_a + 1e-12)));
    const double full_tail = 0.5 * std::pow(beta, M + 1) / (1.0 - beta);
    return ((std::ldexp(1.0, M) - 1.0) * std::pow(t, 1.0 - b_) + full_tail) / (b_ - 1.0);
}

std::complex<double> TwoParamFamily::zeta(std::complex<double> s) const {
    const double log_inv_a = std::log(1.0 / a_);
    const std::complex<double> w = s + (b_ + 1.0);
    // distance to the nearest pole: w = 0 or w = (log 2 + 2 pi i k)/log(1/a)
    const double d_principal = std::abs(w);
    const double k = std::round(w.imag() * log_inv_a / (2.0 * M_PI));
    const std::complex<double> wk(std::log(2.0) / log_inv_a,
                                  2.0 * M_PI * k / log_inv_a);
    const double d_lattice = std::abs(w - wk);
    if (std::min(d_principal, d_lattice) < 1e-12)
        throw input_error("two-parameter zeta: s is within 1e-12 of a pole");
    const std::complex<double> aw = std::exp(w * log_inv_a);  // a^{-w}
    return 1.0 / (w * (aw - 2.0));
}

double TwoParamFamily::upper_dimension() const {
    return std::log(2.0) / std::log(1.0 / a_) - (b_ + 1.0);
}

double TwoParamFamily::lattice_real() const { return upper_dimension(); }

double TwoParamFamily::imag_spacing() const {
    return 2.0 * M_PI / std::log(1.0 / a_);
}

std::vector<double> TwoParamFamily::nonsmooth_radii(double lo, double hi) const {
    std::vector<double> out;
    if (strip_height_ >= lo && strip_height_ <= hi) out.push_back(strip_height_);
    const double inv_a = 1.0 / a_;
    for (int m = 1;; ++m) {
        const double xm = std::pow(inv_a, m);
        if (xm > hi) break;
        if (xm >= lo) out.push_back(xm);
    }
    return out;
}

std::complex<double> two_param_zeta(double a, double b, std::complex<double> s) {
    return TwoParamFamily(a, b).zeta(s);
}

double two_param_shell_volume(double a, double b, double t1, double t2) {
    return TwoParamFamily(a, b).shell_volume(t1, t2);
}

ComplexDimensionLattice two_param_complex_dimensions(double a, double b,
                                                     const PoleWindow& window) {
    TwoParamFamily fam(a, b);
    ComplexDimensionLattice lat;
    lat.principal_pole = fam.principal_pole();
    lat.lattice_real = fam.lattice_real();
    lat.imag_spacing = fam.imag_spacing();
    lat.window = window;
    if (window.im_max < window.im_min) return lat;

    if (fam.principal_pole() >= window.re_min && window.im_min <= 0.0 &&
        window.im_max >= 0.0) {
        Pole p;
        p.location = {fam.principal_pole(), 0.0};
        p.residue = {-1.0, 0.0};
        p.principal = true;
        lat.poles.push_back(p);
    }
    if (lat.lattice_real >= window.re_min) {
        const double sp = lat.imag_spacing;
        const long k_lo = static_cast<long>(std::ceil(window.im_min / sp - 1e-12));
        const long k_hi = static_cast<long>(std::floor(window.im_max / sp + 1e-12));
        for (long k = k_lo; k <= k_hi; ++k) {
            Pole p;
            p.location = {lat.lattice_real, static_cast<double>(k) * sp};
            // 1 / (d/ds denominator) at the pole reduces to 1/(2 (log 2 + 2 pi i k))
            p.residue = 1.0 / (2.0 * std::complex<double>(std::log(2.0),
                                                          2.0 * M_PI * static_cast<double>(k)));
            p.principal = false;
            lat.poles.push_back(p);
        }
    }
    return lat;
}

QuasiperiodicProfile::QuasiperiodicProfile(
    std::vector<Component> components, Kind kind, bool declared_infinite,
    std::function<double(const std::vector<double>&)> combiner)
    : components_(std::move(components)),
      kind_(kind),
      declared_infinite_(declared_infinite),
      combiner_(std::move(combiner)) {
    if (components_.empty())
        throw constraint_error("quasiperiodic profile: needs at least one component");
    if (static_cast<int>(components_.size()) > kMaxComponents) {
        if (!declared_infinite_)
            throw constraint_error("quasiperiodic profile: at most " +
                                   std::to_string(kMaxComponents) + " components");
        components_.resize(kMaxComponents);
    }
    for (const auto& c : components_) {
        if (!(c.period > 0.0))
            throw constraint_error("quasiperiodic profile: periods must be positive");
        if (c.samples.size() < 4)
            throw constraint_error("quasiperiodic profile: each component needs >= 4 samples");
        const auto [mn, mx] = std::minmax_element(c.samples.begin(), c.samples.end());
        if (!(*mx - *mn > 1e-9 * (std::abs(*mx) + 1e-30)))
            throw constraint_error(
                "quasiperiodic profile: component is constant over its period");
        periods_.push_back(c.period);
    }
    // G must stay positive and finite on the evaluation window
    double period_sum = 0.0;
    for (double p : periods_) period_sum += p;
    const int kProbe = 2048;
    for (int i = 0; i < kProbe; ++i) {
        const double tau = 4.0 * period_sum * i / kProbe;
        const double g = eval(tau);
        if (!(std::isfinite(g) && g > 0.0))
            throw constraint_error(
                "quasiperiodic profile: G(tau) must be positive and finite on the window");
    }
}

double QuasiperiodicProfile::eval(double tau) const {
    std::vector<double> vals;
    vals.reserve(components_.size());
    for (const auto& c : components_) {
        double phase = std::fmod(tau, c.period);
        if (phase < 0.0) phase += c.period;
        const double pos = phase / c.period * static_cast<double>(c.samples.size());
        const std::size_t i0 = std::min(static_cast<std::size_t>(pos), c.samples.size() - 1);
        const std::size_t i1 = (i0 + 1) % c.samples.size();  // wrap at the period
        const double frac = pos - static_cast<double>(i0);
        vals.push_back(c.samples[i0] * (1.0 - frac) + c.samples[i1] * frac);
    }
    if (combiner_) return combiner_(vals);
    double s = 0.0;
    for (double v : vals) s += v;
    return s;
}

QuasiperiodicProfile two_param_profile(double a, double b, int samples_per_period) {
    TwoParamFamily fam(a, b);
    const double beta = 2.0 * std::pow(a, b - 1.0);
    if (std::abs(b - 1.0) < 1e-9 || std::abs(beta - 1.0) < 1e-9)
        throw constraint_error(
            "two-parameter profile: unavailable at the logarithmic boundary cases");
    QuasiperiodicProfile::Component comp;
    comp.period = std::log(1.0 / a);
    comp.samples.resize(samples_per_period);
    for (int i = 0; i < samples_per_period; ++i) {
        const double u = static_cast<double>(i) / samples_per_period;
        double g;
        if (beta < 1.0) {
            // finite measure: profile of the normalized tail volume
            g = (std::pow(2.0, -u) + std::pow(beta, 1.0 - u) / (2.0 * (1.0 - beta))) /
                (b - 1.0);
        } else {
            // infinite measure: profile of the normalized tube volume
            g = (std::pow(beta, 1.0 - u) / (2.0 * (beta - 1.0)) - std::pow(2.0, -u)) /
                (b - 1.0);
        }
        comp.samples[i] = g;
    }
    return QuasiperiodicProfile({comp}, QuasiperiodicProfile::Kind::algebraic);
}

namespace {

AsymptoticsFit misfit_against(const Region& region, double D,
                              const std::function<double(double)>& model,
                              const GridSpec& grid, const SamplingPlan& plan) {
    grid.validate();
    const auto ts = grid.points();
    const bool finite = region.measure_class == MeasureClass::finite;
    std::vector<double> y(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double t = ts[i];
        double v;
        if (finite) {
            v = complement_volume(region, t, plan).value;
        } else {
            const double T = std::min(1.0, t / 10.0);
            v = tube_volume(region, T, t, plan).value;
        }
        y[i] = v / std::pow(t, region.ambient_dim + D);
    }

    AsymptoticsFit fit;
    const double lg_min = std::log10(grid.t_min);
    const int decades = static_cast<int>(std::ceil(std::log10(grid.t_max) - lg_min - 1e-9));
    std::vector<double> se(decades, 0.0), sy(decades, 0.0);
    std::vector<int> cnt(decades, 0);
    for (std::size_t i = 0; i < ts.size(); ++i) {
        int d = static_cast<int>(std::floor(std::log10(ts[i]) - lg_min - 1e-9));
        d = std::clamp(d, 0, decades - 1);
        const double err = y[i] - model(std::log(ts[i]));
        se[d] += err * err;
        sy[d] += y[i] * y[i];
        cnt[d]++;
    }
    fit.decade_rms.resize(decades, 0.0);
    for (int d = 0; d < decades; ++d) {
        if (cnt[d] > 0 && sy[d] > 0.0)
            fit.decade_rms[d] = std::sqrt(se[d] / sy[d]);
    }
    fit.rms_misfit = fit.decade_rms.empty() ? 0.0 : fit.decade_rms.back();
    return fit;
}

}  // namespace

AsymptoticsFit fit_asymptotics(const Region& region, double D,
                               const QuasiperiodicProfile& profile,
                               const GridSpec& grid, const SamplingPlan& plan) {
    return misfit_against(region, D, [&](double tau) { return profile.eval(tau); },
                          grid, plan);
}

AsymptoticsFit fit_asymptotics_constant(const Region& region, double D,
                                        const GridSpec& grid,
                                        const SamplingPlan& plan) {
    // two passes: first fit the constant, then report the misfit against it
    grid.validate();
    const auto ts = grid.points();
    const bool finite = region.measure_class == MeasureClass::finite;
    double mean = 0.0;
    for (double t : ts) {
        double v;
        if (finite) {
            v = complement_volume(region, t, plan).value;
        } else {
            const double T = std::min(1.0, t / 10.0);
            v = tube_volume(region, T, t, plan).value;
        }
        mean += v / std::pow(t, region.ambient_dim + D);
    }
    mean /= static_cast<double>(ts.size());
    return misfit_against(region, D, [=](double) { return mean; }, grid, plan);
}

}  // namespace shellzeta
